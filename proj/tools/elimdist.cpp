// Command-line surface over the library: distance computations, minor
// queries, the obstruction calculus, the formula engine, and the named
// property suites. Exit codes: 0 success, 1 computation or suite failure,
// 2 usage or parse error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elimdist/distances.hpp"
#include "elimdist/enumerate.hpp"
#include "elimdist/eval.hpp"
#include "elimdist/fo_builders.hpp"
#include "elimdist/json_io.hpp"
#include "elimdist/suites.hpp"

using namespace elimdist;
using ojson = nlohmann::ordered_json;

namespace {

// Bad invocation or bad input files: reported without a byte offset, exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  bool as_json = false;
  bool timings = false;
  std::uint64_t node_budget = kDefaultNodeBudget;
};

struct Report {
  std::string command;
  std::vector<ojson> items;
  int failures = 0;

  ojson& item() {
    items.emplace_back(ojson::object());
    return items.back();
  }
};

std::string render_value(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void emit_report(const Report& report, const GlobalOptions& global) {
  if (global.as_json) {
    std::cout << ojson{{"command", report.command}}.dump() << "\n";
    for (const ojson& item : report.items) std::cout << item.dump() << "\n";
    std::cout << ojson{{"summary", {{"items", report.items.size()}, {"failures", report.failures}}}}
                     .dump()
              << "\n";
    return;
  }
  std::cout << "# command: " << report.command << "\n";
  for (const ojson& item : report.items) {
    bool first = true;
    for (const auto& [key, value] : item.items()) {
      std::cout << (first ? "" : "  ") << key << "=" << render_value(value);
      first = false;
    }
    std::cout << "\n";
  }
  std::cout << "# summary: items=" << report.items.size() << " failures=" << report.failures
            << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// graph6 files carry one graph per line; edge-list files carry one graph.
std::vector<Graph> load_graphs(const std::string& path, const std::string& format) {
  std::string text = read_file(path);
  std::string effective = format;
  if (effective == "auto") {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    effective =
        (first != std::string::npos && std::isdigit(static_cast<unsigned char>(text[first])))
            ? "edges"
            : "g6";
  }
  std::vector<Graph> graphs;
  if (effective == "edges") {
    graphs.push_back(parse_edge_list(text));
    return graphs;
  }
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      graphs.push_back(parse_graph6(line));
    } catch (const ParseError& e) {
      throw ParseError(path + ", line " + std::to_string(line_no) + ": " + e.message(),
                       e.offset());
    }
  }
  return graphs;
}

ObstructionSet load_obstructions(const std::string& path, std::uint64_t node_budget) {
  std::vector<Graph> graphs = load_graphs(path, "g6");
  try {
    return ObstructionSet::from_graphs(std::move(graphs), node_budget);
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": invalid obstruction set: " + e.what());
  }
}

fo::FormulaPtr load_formula(const std::string& spec) {
  std::string text = spec;
  if (!spec.empty() && spec[0] != '(') text = read_file(spec);
  std::size_t end = text.find_last_not_of(" \t\r\n");
  if (end != std::string::npos) text = text.substr(0, end + 1);
  return fo::parse_formula(text);
}

ClassSpec load_class(const std::string& obstructions_path, const std::string& formula_spec,
                     std::uint64_t node_budget) {
  if (!obstructions_path.empty())
    return ClassSpec::excluded_minors(load_obstructions(obstructions_path, node_budget));
  fo::FormulaPtr phi = load_formula(formula_spec);
  if (!fo::is_sentence(phi))
    throw UsageError("class formula must be a sentence (no free variables)");
  return ClassSpec::fo_sentence(phi);
}

// Runs fn per graph, timing it and catching budget exhaustion as an item
// error rather than aborting the whole report.
template <typename Fn>
void per_graph(Report& report, const std::vector<Graph>& graphs, const GlobalOptions& global,
               Fn&& fn) {
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    ojson& item = report.item();
    item["id"] = i;
    item["graph"] = write_graph6(graphs[i]);
    auto start = std::chrono::steady_clock::now();
    try {
      fn(graphs[i], item);
    } catch (const BudgetExhausted& e) {
      item["error"] = e.what();
      ++report.failures;
    }
    if (global.timings) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
      item["ms"] = static_cast<long long>(ms);
    }
  }
}

void write_obstruction_files(const std::string& out_path, const ObstructionSet& set,
                             const std::optional<int>& partial_up_to,
                             const std::vector<Graph>& base, std::optional<int> k) {
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot write file " + out_path);
  for (const Graph& g : set.members) out << write_graph6(g) << "\n";
  std::ofstream sidecar(out_path + ".json", std::ios::binary);
  sidecar << obstruction_sidecar(partial_up_to, base, k).dump(2) << "\n";
}

std::string echo_command(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) out += " ";
    out += argv[i];
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact graph distances to minor- and formula-defined classes"};
  app.require_subcommand(1);

  GlobalOptions global;
  if (const char* env_budget = std::getenv("ELIMDIST_BUDGET"))
    global.node_budget = std::strtoull(env_budget, nullptr, 10);
  app.add_flag("--json", global.as_json, "one JSON object per line instead of a table");
  app.add_flag("--timings", global.timings, "include per-item timings (breaks byte-stable output)");
  app.add_option("--budget", global.node_budget, "minor-search node budget (env ELIMDIST_BUDGET)");

  std::string input, format = "auto", obstructions_path, formula_spec, out_path;
  std::string h_spec, builder, suite_name, base_formula = "(forall u (forall v (not (E u v))))";
  int cap = -1, k_param = 0, r_param = 0, n_max = 5;
  int vdel = 0, edel = 0, eadd = 0, total = -1;
  int additions = 0, deletions = 0;
  std::uint64_t seed = 0;
  int suite_n = -1, suite_k = -1, suite_r = -1;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("input", input, "graph file (graph6 lines or edge list)")->required();
    cmd->add_option("--format", format, "input format: auto, g6, edges")
        ->check(CLI::IsMember({"auto", "g6", "edges"}));
  };

  CLI::App* cmd_treedepth = app.add_subcommand("treedepth", "exact tree-depth per graph");
  add_input(cmd_treedepth);
  cmd_treedepth->add_option("--cap", cap, "prune branches above this value");

  CLI::App* cmd_elimdist =
      app.add_subcommand("elimdist", "elimination distance to a class per graph");
  add_input(cmd_elimdist);
  cmd_elimdist->add_option("--obstructions", obstructions_path, "excluded-minor file (graph6 lines)");
  cmd_elimdist->add_option("--class-formula", formula_spec, "class sentence (text or file)");
  cmd_elimdist->add_option("--cap", cap, "prune branches above this value");

  CLI::App* cmd_deldist = app.add_subcommand("deldist", "deletion distance to a class per graph");
  add_input(cmd_deldist);
  cmd_deldist->add_option("--obstructions", obstructions_path, "excluded-minor file (graph6 lines)");
  cmd_deldist->add_option("--class-formula", formula_spec, "class sentence (text or file)");
  cmd_deldist->add_option("--cap", cap, "prune branches above this value");

  CLI::App* cmd_editdist = app.add_subcommand("editdist", "edit plan into a class per graph");
  add_input(cmd_editdist);
  cmd_editdist->add_option("--obstructions", obstructions_path, "excluded-minor file (graph6 lines)");
  cmd_editdist->add_option("--class-formula", formula_spec, "class sentence (text or file)");
  cmd_editdist->add_option("--vdel", vdel, "vertex deletion budget");
  cmd_editdist->add_option("--edel", edel, "edge deletion budget");
  cmd_editdist->add_option("--eadd", eadd, "edge addition budget");
  cmd_editdist->add_option("--total", total, "scalar budget covering all three categories");

  CLI::App* cmd_minor = app.add_subcommand("minor", "minor / depth-minor containment per graph");
  add_input(cmd_minor);
  cmd_minor->add_option("-H,--pattern", h_spec, "pattern graph H (graph6 string or file)")
      ->required();
  cmd_minor->add_option("--radius", r_param, "depth bound r; omit for unrestricted minors")
      ->default_val(-1);

  CLI::App* cmd_dis = app.add_subcommand("dis", "distance independent set per graph");
  add_input(cmd_dis);
  cmd_dis->add_option("--k", k_param, "set size")->required();
  cmd_dis->add_option("--r", r_param, "pairwise distance lower bound")->required();

  CLI::App* cmd_obs = app.add_subcommand("obstructions", "obstruction-set calculus");
  cmd_obs->require_subcommand(1);
  CLI::App* obs_union = cmd_obs->add_subcommand(
      "union-closure", "obstructions of the disjoint-union closure of a class");
  obs_union->add_option("--base", obstructions_path, "base obstruction file")->required();
  obs_union->add_option("-o,--out", out_path, "output obstruction file")->required();
  CLI::App* obs_enum = cmd_obs->add_subcommand(
      "enumerate", "minor-minimal non-members of a class, up to a size bound");
  obs_enum->add_option("--base", obstructions_path, "membership by excluded minors");
  obs_enum->add_option("--class-formula", formula_spec, "membership by a sentence");
  obs_enum->add_option("--n-max", n_max, "enumeration bound")->required();
  obs_enum->add_option("-o,--out", out_path, "output obstruction file")->required();
  CLI::App* obs_ck = cmd_obs->add_subcommand(
      "ck", "obstructions of the elimination-distance-k class over a base");
  obs_ck->add_option("--base", obstructions_path, "base obstruction file")->required();
  obs_ck->add_option("--k", k_param, "tower level")->required();
  obs_ck->add_option("--n-max", n_max, "apex enumeration bound")->required();
  obs_ck->add_option("-o,--out", out_path, "output obstruction file")->required();

  CLI::App* cmd_fo = app.add_subcommand("fo", "first-order formula engine");
  cmd_fo->require_subcommand(1);
  CLI::App* fo_eval = cmd_fo->add_subcommand("eval", "evaluate a sentence per graph");
  fo_eval->add_option("--formula", formula_spec, "sentence (text or file)");
  fo_eval->add_option("--builder", builder, "build the sentence: treedepth, deletion, edge-edit")
      ->check(CLI::IsMember({"treedepth", "deletion", "edge-edit"}));
  fo_eval->add_option("--k", k_param, "bound for treedepth/deletion builders");
  fo_eval->add_option("--additions", additions, "edge additions for edge-edit");
  fo_eval->add_option("--deletions", deletions, "edge deletions for edge-edit");
  fo_eval->add_option("--base-formula", base_formula, "base sentence (default: edgeless)");
  fo_eval->add_option("input", input, "graph file")->required();
  fo_eval->add_option("--format", format, "input format: auto, g6, edges")
      ->check(CLI::IsMember({"auto", "g6", "edges"}));
  CLI::App* fo_build = cmd_fo->add_subcommand("build", "print a built formula");
  fo_build->add_option("--builder", builder, "treedepth, deletion, or edge-edit")
      ->required()
      ->check(CLI::IsMember({"treedepth", "deletion", "edge-edit"}));
  fo_build->add_option("--k", k_param, "bound for treedepth/deletion builders");
  fo_build->add_option("--additions", additions, "edge additions for edge-edit");
  fo_build->add_option("--deletions", deletions, "edge deletions for edge-edit");
  fo_build->add_option("--base-formula", base_formula, "base sentence (default: edgeless)");

  CLI::App* cmd_suite = app.add_subcommand("suite", "run a named property suite");
  cmd_suite->add_option("name", suite_name, "suite name; see --list")->required();
  cmd_suite->add_option("--n", suite_n, "vertex-count bound override");
  cmd_suite->add_option("--k", suite_k, "parameter bound override");
  cmd_suite->add_option("--r", suite_r, "radius bound override");
  cmd_suite->add_option("--seed", seed, "seed for sampled suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Report report;
  report.command = echo_command(argc, argv);

  try {
    if (app.got_subcommand(cmd_treedepth)) {
      std::vector<Graph> graphs = load_graphs(input, format);
      per_graph(report, graphs, global, [&](const Graph& g, ojson& item) {
        DistanceResult r = tree_depth(g, cap, global.node_budget);
        item["value"] = r.value ? ojson(*r.value) : ojson("exceeds_cap");
        if (r.elimination)
          item["witness"] = ojson::parse(
              json{{"elimination_forest", elimination_forest_to_json(*r.elimination)}}.dump());
      });
    } else if (app.got_subcommand(cmd_elimdist) || app.got_subcommand(cmd_deldist)) {
      bool elim = app.got_subcommand(cmd_elimdist);
      if (obstructions_path.empty() && formula_spec.empty())
        throw UsageError("need --obstructions or --class-formula");
      ClassSpec cls = load_class(obstructions_path, formula_spec, global.node_budget);
      std::vector<Graph> graphs = load_graphs(input, format);
      per_graph(report, graphs, global, [&](const Graph& g, ojson& item) {
        DistanceResult r = elim ? elimination_distance(g, cls, cap, global.node_budget)
                                : deletion_distance(g, cls, cap, global.node_budget);
        item["value"] = r.value ? ojson(*r.value) : ojson("exceeds_cap");
        item["witness"] = ojson::parse(distance_result_to_json(r)["witness"].dump());
      });
    } else if (app.got_subcommand(cmd_editdist)) {
      if (obstructions_path.empty() && formula_spec.empty())
        throw UsageError("need --obstructions or --class-formula");
      ClassSpec cls = load_class(obstructions_path, formula_spec, global.node_budget);
      std::vector<Graph> graphs = load_graphs(input, format);
      per_graph(report, graphs, global, [&](const Graph& g, ojson& item) {
        std::optional<EditPlan> plan =
            total >= 0 ? edit_distance_total(g, cls, total, global.node_budget)
                       : edit_distance(g, cls, {vdel, edel, eadd}, global.node_budget);
        item["feasible"] = plan.has_value();
        if (plan) item["plan"] = ojson::parse(edit_plan_to_json(*plan).dump());
      });
    } else if (app.got_subcommand(cmd_minor)) {
      std::string h_text = h_spec;
      if (!h_spec.empty() && h_spec[0] != '>' &&
          !(static_cast<unsigned char>(h_spec[0]) >= 63 &&
            static_cast<unsigned char>(h_spec[0]) <= 126))
        h_text = read_file(h_spec);
      Graph h = [&]() {
        try {
          return parse_graph6(h_text);
        } catch (const ParseError&) {
          return load_graphs(h_spec, "auto").at(0);
        }
      }();
      std::vector<Graph> graphs = load_graphs(input, format);
      per_graph(report, graphs, global, [&](const Graph& g, ojson& item) {
        std::optional<MinorMap> map =
            r_param < 0 ? find_minor(h, g, global.node_budget)
                        : find_depth_minor(h, g, r_param, global.node_budget);
        item["found"] = map.has_value();
        if (map) item["witness"] = ojson::parse(minor_map_to_json(*map).dump());
      });
    } else if (app.got_subcommand(cmd_dis)) {
      std::vector<Graph> graphs = load_graphs(input, format);
      per_graph(report, graphs, global, [&](const Graph& g, ojson& item) {
        auto set = distance_independent_set(g, k_param, r_param);
        item["found"] = set.has_value();
        if (set) item["vertices"] = *set;
      });
    } else if (app.got_subcommand(cmd_obs)) {
      ObstructionSet result;
      std::optional<int> partial;
      std::vector<Graph> base_members;
      std::optional<int> level;
      if (cmd_obs->got_subcommand(obs_union)) {
        ObstructionSet base = load_obstructions(obstructions_path, global.node_budget);
        base_members = base.members;
        result = union_closure_obstructions(base, global.node_budget);
      } else if (cmd_obs->got_subcommand(obs_enum)) {
        if (obstructions_path.empty() && formula_spec.empty())
          throw UsageError("need --base or --class-formula");
        ClassSpec cls = load_class(obstructions_path, formula_spec, global.node_budget);
        if (!obstructions_path.empty())
          base_members = load_obstructions(obstructions_path, global.node_budget).members;
        auto membership = [&](const Graph& g) {
          try {
            return cls.contains(g, global.node_budget);
          } catch (const BudgetExhausted& e) {
            throw std::runtime_error(std::string(e.what()) + " while testing candidate " +
                                     write_graph6(g));
          }
        };
        PartialObstructionSet r = enumerate_obstructions(membership, n_max);
        result = std::move(r.set);
        partial = r.partial_up_to;
      } else {
        ObstructionSet base = load_obstructions(obstructions_path, global.node_budget);
        base_members = base.members;
        level = k_param;
        PartialObstructionSet r = ck_obstructions({base, k_param}, n_max, global.node_budget);
        result = std::move(r.set);
        partial = r.partial_up_to;
      }
      write_obstruction_files(out_path, result, partial, base_members, level);
      for (const Graph& g : result.members) {
        ojson& item = report.item();
        item["graph"] = write_graph6(g);
        item["n"] = g.vertex_count();
        item["m"] = g.edge_count();
      }
    } else if (app.got_subcommand(cmd_fo)) {
      auto built_formula = [&]() -> fo::FormulaPtr {
        if (builder == "treedepth") return fo::treedepth_formula(k_param);
        if (builder == "deletion") return fo::deletion_formula(load_formula(base_formula), k_param);
        return fo::edge_edit_formula(load_formula(base_formula), additions, deletions);
      };
      if (cmd_fo->got_subcommand(fo_eval)) {
        if (formula_spec.empty() == builder.empty())
          throw UsageError("fo eval needs exactly one of --formula or --builder");
        fo::FormulaPtr phi = builder.empty() ? load_formula(formula_spec) : built_formula();
        if (!fo::is_sentence(phi))
          throw UsageError("fo eval requires a sentence (no free variables)");
        std::vector<Graph> graphs = load_graphs(input, format);
        per_graph(report, graphs, global,
                  [&](const Graph& g, ojson& item) { item["value"] = fo::evaluate(phi, g); });
      } else {
        fo::FormulaPtr phi = built_formula();
        ojson& item = report.item();
        item["builder"] = builder;
        item["formula"] = fo::to_text(phi);
        item["quantifier_rank"] = fo::quantifier_rank(phi);
      }
    } else if (app.got_subcommand(cmd_suite)) {
      suites::SuiteParams params{suite_n, suite_k, suite_r, seed, global.node_budget};
      suites::SuiteResult r = [&]() {
        try {
          return suites::run_suite(suite_name, params);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }();
      ojson& item = report.item();
      item["suite"] = r.name;
      item["pass"] = r.pass;
      item["checked"] = r.checked;
      if (!r.counterexample.empty()) item["counterexample"] = r.counterexample;
      if (!r.detail.empty()) item["detail"] = r.detail;
      if (!r.pass) ++report.failures;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  emit_report(report, global);
  return report.failures == 0 ? 0 : 1;
}
