#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "elimdist/graph.hpp"

namespace elimdist {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t byte_offset)
      : std::runtime_error(message + " (byte " + std::to_string(byte_offset) + ")"),
        message_(message),
        offset_(byte_offset) {}

  // The message without the byte-offset suffix.
  const std::string& message() const { return message_; }

  std::size_t offset() const { return offset_; }

 private:
  std::string message_;
  std::size_t offset_;
};

namespace detail {

inline int g6_byte(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) throw ParseError("graph6 string truncated", pos);
  unsigned char c = static_cast<unsigned char>(text[pos]);
  if (c < 63 || c > 126) throw ParseError("non-printable graph6 byte", pos);
  return c - 63;
}

}  // namespace detail

// Decodes the published graph6 format. The ">>graph6<<" header is optional.
inline Graph parse_graph6(std::string_view text) {
  std::size_t pos = 0;
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) pos = header.size();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (pos >= text.size()) throw ParseError("empty graph6 string", pos);

  long long n = 0;
  if (static_cast<unsigned char>(text[pos]) == 126) {
    ++pos;
    if (pos < text.size() && static_cast<unsigned char>(text[pos]) == 126) {
      ++pos;
      for (int k = 0; k < 6; ++k) n = (n << 6) | detail::g6_byte(text, pos++);
    } else {
      for (int k = 0; k < 3; ++k) n = (n << 6) | detail::g6_byte(text, pos++);
      if (n < 63) throw ParseError("malformed length prefix: long form for small n", pos - 3);
    }
  } else {
    n = detail::g6_byte(text, pos++);
  }
  if (n > kMaxVertices)
    throw ParseError("vertex count " + std::to_string(n) + " exceeds supported maximum", 0);

  Graph g(static_cast<int>(n));
  long long bits = n * (n - 1) / 2;
  long long bytes = (bits + 5) / 6;
  if (static_cast<long long>(text.size() - pos) != bytes)
    throw ParseError("bit-payload length mismatch: expected " + std::to_string(bytes) +
                         " payload bytes, got " + std::to_string(text.size() - pos),
                     pos);

  long long bit_index = 0;
  int value = 0;
  std::size_t value_pos = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (bit_index % 6 == 0) {
        value_pos = pos;
        value = detail::g6_byte(text, pos++);
      }
      int shift = 5 - static_cast<int>(bit_index % 6);
      if ((value >> shift) & 1) g.add_edge(i, j);
      ++bit_index;
    }
  }
  if (bits % 6 != 0) {
    int pad = 6 - static_cast<int>(bits % 6);
    if ((value & ((1 << pad) - 1)) != 0)
      throw ParseError("nonzero padding bits in final byte", value_pos);
  }
  return g;
}

// Encodes in graph6; colours are not representable in this format and are dropped.
inline std::string write_graph6(const Graph& g) {
  int n = g.vertex_count();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back(126);
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  }
  int value = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      value = (value << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(value + 63));
        value = 0;
        filled = 0;
      }
    }
  }
  if (filled != 0) out.push_back(static_cast<char>((value << (6 - filled)) + 63));
  return out;
}

// Edge-list fixture format: first line "n m", then m lines "u v" (0-based).
inline Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError("edge list, line " + std::to_string(line_no) + ": " + msg, line_no);
  };

  if (!next_line()) throw ParseError("edge list: empty input", 0);
  long long n = -1, m = -1;
  {
    std::istringstream hdr(line);
    std::string extra;
    if (!(hdr >> n >> m) || (hdr >> extra)) throw fail("expected header \"n m\"");
  }
  if (n < 0 || n > kMaxVertices) throw fail("vertex count out of range");
  if (m < 0) throw fail("negative edge count");

  Graph g(static_cast<int>(n));
  for (long long e = 0; e < m; ++e) {
    if (!next_line()) throw ParseError("edge list: expected " + std::to_string(m) +
                                           " edges, got " + std::to_string(e),
                                       line_no);
    std::istringstream row(line);
    long long u = -1, v = -1;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra)) throw fail("expected edge \"u v\"");
    if (u < 0 || u >= n || v < 0 || v >= n) throw fail("vertex index out of range");
    if (u == v) throw fail("self-loop");
    if (g.has_edge(static_cast<int>(u), static_cast<int>(v))) throw fail("duplicate edge");
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  if (next_line()) throw fail("trailing content after last edge");
  return g;
}

inline std::string write_edge_list(const Graph& g) {
  std::string out = std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + "\n";
  for (auto [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

}  // namespace elimdist
