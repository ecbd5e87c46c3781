// qoct: quasi-octagon regions, tiling counts, closed forms and rewrites.

#include "qoct/formulas.hpp"
#include "qoct/graph.hpp"
#include "qoct/instances.hpp"
#include "qoct/matchcount.hpp"
#include "qoct/region.hpp"
#include "qoct/render.hpp"
#include "qoct/sweep.hpp"
#include "qoct/transforms.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace qoct;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, mismatch = 1, usage = 2, internal = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  int max_vertices = 40;
  bool max_vertices_given = false;
};

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : " ") + p;
  return s;
}

std::string text_of(const ojson& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void emit(const Globals& g, const ojson& j) {
  if (g.json || !j.is_object()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (const auto& [k, v] : j.items()) std::cout << k << ": " << text_of(v) << "\n";
}

// key=value tokens, values kept as text.
std::map<std::string, std::string> keyvals(const std::vector<std::string>& tokens) {
  std::map<std::string, std::string> out;
  for (const auto& t : tokens) {
    std::istringstream ss(t);
    std::string tok;
    while (ss >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value, got '" + tok + "'");
      out[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
  }
  return out;
}

int int_param(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw UsageError("missing parameter " + key);
  try {
    size_t used = 0;
    int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("parameter " + key + " is not an integer: " + it->second);
  }
}

void guard(const Globals& g, const PMGraph& graph, const std::string& what) {
  if (graph.num_vertices() > g.max_vertices)
    throw UsageError(what + " has " + std::to_string(graph.num_vertices()) + " vertices, above --max-vertices " +
                     std::to_string(g.max_vertices));
}

// ---------------------------------------------------------------- region

int cmd_region(const Globals& g, const std::vector<std::string>& spec, bool dump_graph) {
  Region r(parse_spec(join(spec)));
  auto stats = to_json(region_stats(r));
  if (!dump_graph) {
    emit(g, stats);
    return ok;
  }
  ojson j;
  j["stats"] = stats;
  j["graph"] = to_json(dual_graph(r));
  emit(g, j);
  return ok;
}

// ---------------------------------------------------------------- count

PMGraph load_graph(const std::vector<std::string>& spec, const std::string& aztec, const std::string& file) {
  int given = !spec.empty() + !aztec.empty() + !file.empty();
  if (given != 1) throw UsageError("give exactly one of a region spec, --aztec or --graph");
  if (!spec.empty()) return dual_graph(Region(parse_spec(join(spec))));
  if (!aztec.empty()) {
    auto mn = detail::parse_csv("aztec", aztec);
    if (mn.size() != 2 || mn[0] < 0 || mn[1] < 0) throw UsageError("--aztec expects m,n");
    return aztec_rectangle(mn[0], mn[1]);
  }
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read " + file);
  nlohmann::json j;
  try {
    in >> j;
    if (j.contains("graph")) j = j["graph"];
    return graph_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad graph file: ") + e.what());
  }
}

int cmd_count(const Globals& g, const PMGraph& graph, const std::string& backend) {
  std::vector<Backend> run;
  if (backend == "all")
    run = {Backend::brute, Backend::permanent, Backend::fkt};
  else if (backend == "brute")
    run = {Backend::brute};
  else if (backend == "permanent")
    run = {Backend::permanent};
  else
    run = {Backend::fkt};
  if (backend != "fkt") guard(g, graph, "graph");
  ojson j;
  std::vector<Rational> values;
  for (auto b : run) {
    values.push_back(count(graph, b));
    j[to_string(b)] = to_string(values.back());
  }
  bool agree = std::all_of(values.begin(), values.end(), [&](const Rational& v) { return v == values[0]; });
  if (run.size() > 1) j["agree"] = agree;
  emit(g, j);
  return agree ? ok : mismatch;
}

// ---------------------------------------------------------------- formula

int cmd_formula(const Globals& g, const std::string& which, const std::vector<std::string>& params) {
  FormulaResult f;
  if (which == "thm1" || which == "thm32" || which == "thm33") {
    auto s = region_stats(Region(parse_spec(join(params))));
    f = which == "thm1" ? quasi_octagon_count(s) : which == "thm32" ? special_cases(s) : unequal_width_sum(s);
  } else if (which == "krat") {
    auto kv = keyvals(params);
    f = krattenthaler(int_param(kv, "m"), int_param(kv, "n"), int_param(kv, "c"), int_param(kv, "f"),
                      int_param(kv, "d"));
  } else {
    auto kv = keyvals(params);
    int a = int_param(kv, "a"), b = int_param(kv, "b");
    if (!kv.count("r")) throw UsageError("missing parameter r");
    f = finish(semihex_dented(a, b, detail::parse_csv("r", kv["r"])), "hexdent");
  }
  if (!f.in_domain) throw UsageError("parameters lie outside the domain of " + which);
  ojson j;
  j["value"] = to_string(f.value);
  j["variant_used"] = f.variant_used;
  j["integrality_ok"] = f.integrality_ok;
  emit(g, j);
  return f.integrality_ok ? ok : internal;
}

// ---------------------------------------------------------------- transform

int cmd_transform(const Globals& g, const std::string& rule, const std::string& variant, int instances, bool verify) {
  Rng rng(g.seed);
  std::string r = rule;
  if (rule == "composite") {
    std::string v = variant.empty() ? (detail::uniform(rng, 0, 1) ? "black" : "white") : variant;
    r = "composite-" + v;
  }
  ojson out = ojson::array();
  bool all_hold = true;
  for (int i = 0; i < instances; ++i) {
    auto c = random_transform_case(r, rng, g.max_vertices);
    ojson j;
    j["rule"] = c.rule;
    j["params"] = c.params;
    j["before"] = {{"vertices", c.before.num_vertices()}, {"edges", c.before.num_edges()}};
    j["after"] = {{"vertices", c.after.num_vertices()}, {"edges", c.after.num_edges()}};
    j["multiplier"] = to_string(c.multiplier);
    if (verify) {
      guard(g, c.before, "instance");
      guard(g, c.after, "rewritten instance");
      auto mb = count_bruteforce(c.before), ma = count_bruteforce(c.after);
      bool holds = mb == c.multiplier * ma;
      all_hold = all_hold && holds;
      j["before"]["count"] = to_string(mb);
      j["after"]["count"] = to_string(ma);
      j["holds"] = holds;
    }
    out.push_back(j);
  }
  if (instances == 1)
    emit(g, out[0]);
  else
    emit(g, out);
  return all_hold ? ok : mismatch;
}

// ---------------------------------------------------------------- verify

const char* kind_name(SweepKind k) {
  switch (k) {
    case SweepKind::equal_width: return "equal";
    case SweepKind::special: return "special";
    default: return "unequal";
  }
}

int cmd_verify(const Globals& g, const std::string& kind, const SweepBounds& b, unsigned threads, bool list) {
  std::vector<SweepKind> kinds;
  if (kind == "equal" || kind == "all") kinds.push_back(SweepKind::equal_width);
  if (kind == "special" || kind == "all") kinds.push_back(SweepKind::special);
  if (kind == "unequal" || kind == "all") kinds.push_back(SweepKind::unequal_width);
  ojson reports = ojson::array();
  bool passed = true;
  for (auto k : kinds) {
    SweepOptions opt;
    opt.threads = threads;
    opt.keep_cases = list;
    if (g.max_vertices_given) opt.max_vertices = g.max_vertices;
    auto rep = run_sweep(k, b, opt);
    ojson j;
    j["kind"] = kind_name(k);
    j["bounds"] = {{"max_w", b.max_w}, {"max_h", b.max_h}, {"max_k", b.max_k}, {"max_t", b.max_t},
                   {"max_l", b.max_l}, {"max_gap_sum", b.max_gap_sum}};
    j["complete"] = rep.complete();
    j["total"] = rep.total;
    j["balanced"] = rep.balanced;
    j["unbalanced"] = rep.unbalanced;
    j["excluded"] = rep.excluded;
    j["skipped"] = rep.skipped;
    j["mismatches"] = rep.mismatches;
    std::map<std::string, ojson> families;
    for (const auto& [key, tally] : rep.readings) {
      auto colon = key.find(':');
      families[key.substr(0, colon)][key.substr(colon + 1)] = {{"agree", tally.first}, {"disagree", tally.second}};
    }
    j["readings"] = ojson::object();
    j["resolved"] = ojson::object();
    bool readings_ok = true;
    for (const auto& family : reading_families(k)) {
      j["readings"][family] = families.count(family) ? families[family] : ojson::object();
      auto alive = rep.survivors(family + ":");
      if (alive.size() == 1) {
        j["resolved"][family] = alive[0].substr(family.size() + 1);
      } else {
        j["resolved"][family] = nullptr;
        readings_ok = false;
      }
    }
    j["cases"] = ojson::array();
    for (const auto& c : rep.cases) {
      if (!list && c.match) continue;
      j["cases"].push_back({{"spec", c.spec},
                            {"oracle", to_string(c.oracle)},
                            {"formula", to_string(c.formula)},
                            {"rule", c.rule},
                            {"match", c.match}});
    }
    bool pass = rep.mismatches == 0 && readings_ok && rep.complete();
    j["pass"] = pass;
    passed = passed && pass;
    reports.push_back(j);
  }
  if (g.json) {
    std::cout << (reports.size() == 1 ? reports[0] : reports).dump(2) << "\n";
  } else {
    for (const auto& j : reports) {
      std::cout << j["kind"].get<std::string>() << ": " << j["total"] << " regions, " << j["mismatches"]
                << " mismatches, " << j["excluded"] << " excluded, " << j["skipped"] << " skipped\n";
      for (const auto& [family, v] : j["resolved"].items())
        std::cout << "  " << family << ": " << (v.is_null() ? "unresolved" : v.get<std::string>()) << "\n";
      for (const auto& c : j["cases"])
        if (!c["match"].get<bool>())
          std::cout << "  MISMATCH " << text_of(c["spec"]) << " oracle " << text_of(c["oracle"]) << " formula "
                    << text_of(c["formula"]) << "\n";
      std::cout << "  " << (j["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
    }
  }
  return passed ? ok : mismatch;
}

// ---------------------------------------------------------------- render

int cmd_render(const std::vector<std::string>& spec, int tiling, const std::string& output, bool no_diagonals) {
  Region r(parse_spec(join(spec)));
  RenderOptions opt;
  opt.diagonals = !no_diagonals;
  std::string svg = tiling >= 0 ? render_tiling_svg(r, static_cast<std::size_t>(tiling), opt) : render_svg(r, nullptr, opt);
  if (output.empty() || output == "-") {
    std::cout << svg;
    return ok;
  }
  std::ofstream out(output);
  if (!out || !(out << svg)) throw std::runtime_error("cannot write " + output);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-octagon tilings: regions, exact counts, closed forms and rewrites"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "JSON output");
  app.add_option("--seed", g.seed, "Seed for random instances");
  auto* mv = app.add_option("--max-vertices", g.max_vertices, "Vertex limit for brute-force counting")
                 ->check(CLI::PositiveNumber);

  std::vector<std::string> spec;

  auto* region = app.add_subcommand("region", "Statistics of a region");
  bool dump_graph = false;
  region->add_option("spec", spec, "a=<int> d=<csv> dbar=<csv> dprime=<csv>")->required();
  region->add_flag("--dump-graph", dump_graph, "Also print the dual graph");

  auto* cnt = app.add_subcommand("count", "Count perfect matchings");
  std::string backend = "fkt", aztec, graph_file;
  cnt->add_option("spec", spec, "Region spec");
  cnt->add_option("--aztec", aztec, "Aztec rectangle m,n");
  cnt->add_option("--graph", graph_file, "Graph JSON file");
  cnt->add_option("--backend", backend, "brute|permanent|fkt|all")
      ->check(CLI::IsMember({"brute", "permanent", "fkt", "all"}));

  auto* formula = app.add_subcommand("formula", "Evaluate a closed form");
  std::string which;
  std::vector<std::string> params;
  formula->add_option("--which", which, "thm1|thm32|thm33|krat|hexdent")
      ->required()
      ->check(CLI::IsMember({"thm1", "thm32", "thm33", "krat", "hexdent"}));
  formula->add_option("--params", params, "Region spec, or m= n= c= f= d=, or a= b= r=")->required();

  auto* transform = app.add_subcommand("transform", "Apply a rewrite to random instances");
  std::string rule, variant;
  int instances = 1;
  bool verify = false;
  transform->add_option("--rule", rule, "vs|star|spider|composite|t1|otrans-a|otrans-b|t6|hexpair")
      ->required()
      ->check(CLI::IsMember({"vs", "star", "spider", "composite", "t1", "otrans-a", "otrans-b", "t6", "hexpair"}));
  transform->add_option("--variant", variant, "Composite variant: white|black")
      ->check(CLI::IsMember({"white", "black"}));
  transform->add_option("--instances", instances, "Number of instances")->check(CLI::PositiveNumber);
  transform->add_flag("--verify", verify, "Count both sides and check the multiplier");

  auto* ver = app.add_subcommand("verify", "Compare the closed forms with exact counts over a sweep");
  std::string kind = "equal";
  SweepBounds b;
  unsigned threads = 0;
  bool list = false;
  ver->add_option("--kind", kind, "equal|special|unequal|all")
      ->check(CLI::IsMember({"equal", "special", "unequal", "all"}));
  ver->add_option("--max-w", b.max_w, "Largest width")->check(CLI::NonNegativeNumber);
  ver->add_option("--max-h", b.max_h, "Largest height")->check(CLI::NonNegativeNumber);
  ver->add_option("--max-k", b.max_k, "Most upper gaps")->check(CLI::NonNegativeNumber);
  ver->add_option("--max-t", b.max_t, "Most middle gaps")->check(CLI::NonNegativeNumber);
  ver->add_option("--max-l", b.max_l, "Most lower gaps")->check(CLI::NonNegativeNumber);
  ver->add_option("--max-gap-sum", b.max_gap_sum, "Largest gap sum per part, 0 for automatic")
      ->check(CLI::NonNegativeNumber);
  ver->add_option("--threads", threads, "Worker threads, 0 for all cores");
  ver->add_flag("--list", list, "List every case");

  auto* render = app.add_subcommand("render", "Draw a region as SVG");
  int tiling = -1;
  std::string output;
  bool no_diagonals = false;
  render->add_option("spec", spec, "Region spec")->required();
  render->add_option("--tiling", tiling, "Overlay tiling number k (0-based)")->check(CLI::NonNegativeNumber);
  render->add_option("--output,-o", output, "Output file");
  render->add_flag("--no-diagonals", no_diagonals, "Leave out the drawn-in diagonals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }
  g.max_vertices_given = mv->count() > 0;

  try {
    if (*region) return cmd_region(g, spec, dump_graph);
    if (*cnt) return cmd_count(g, load_graph(spec, aztec, graph_file), backend);
    if (*formula) return cmd_formula(g, which, params);
    if (*transform) return cmd_transform(g, rule, variant, instances, verify);
    if (*ver) return cmd_verify(g, kind, b, threads, list);
    if (*render) return cmd_render(spec, tiling, output, no_diagonals);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return internal;
  }
  return usage;
}
