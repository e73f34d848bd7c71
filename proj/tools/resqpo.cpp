#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "resqpo/resqpo.hpp"

using namespace resqpo;
using io::json;

namespace {

std::chrono::milliseconds parse_duration(const std::string& text) {
  std::size_t pos = 0;
  double value = 0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw format_error("bad duration '" + text + "'");
  }
  const std::string unit = text.substr(pos);
  double ms;
  if (unit == "ms") ms = value;
  else if (unit == "s" || unit.empty()) ms = value * 1000;
  else if (unit == "m") ms = value * 60000;
  else if (unit == "h") ms = value * 3600000;
  else throw format_error("bad duration unit in '" + text + "'");
  if (!(ms > 0)) throw format_error("duration must be positive");
  return std::chrono::milliseconds(static_cast<long long>(ms));
}

struct Constraints {
  std::string name;
  ForbiddenRelationSet relations;
};

Constraints load_constraints(const std::string& arg) {
  ConstraintSet c;
  if (arg == "rigid") c = rigid_constraints();
  else if (arg != "none") c = io::constraints_from_json(io::read_file(arg));
  return {arg, decompose_forbidden_relations(c)};
}

Graph load_graph(const std::string& path) { return io::graph_from_json(io::read_file(path)); }

// Builtins get their minimal NACs; rules read from a file keep the ones
// they carry, which must not be constant false or over illegal contexts.
ConditionalRule load_rule(const std::string& arg, const Constraints& c) {
  if (auto r = rules::builtin(arg)) return with_minimal_nacs(*r, c.relations);
  if (!std::filesystem::exists(arg)) throw format_error("'" + arg + "' is neither a builtin rule nor a file");
  ConditionalRule r = io::rule_from_json(io::read_file(arg));
  for (const Graph* g : {&r.rule.output(), &r.rule.interface(), &r.rule.input()})
    if (!satisfies(*g, c.relations.source)) throw precondition_error("rule graphs must satisfy the constraints");
  for (const auto& n : r.nacs)
    if (!satisfies(n.context(), c.relations.source))
      throw precondition_error("negative condition context violates the constraints");
  return r;
}

// Rule graphs only; used where a bare rule is needed.
Rule load_plain_rule(const std::string& arg) {
  if (auto r = rules::builtin(arg)) return *r;
  if (!std::filesystem::exists(arg)) throw format_error("'" + arg + "' is neither a builtin rule nor a file");
  return io::rule_from_json(io::read_file(arg)).rule;
}

void emit(const std::string& out, const json& j) {
  if (!out.empty()) io::write_file(out, j);
}

int cmd_overlaps(const std::string& left, const std::string& right, const std::string& constraints,
                 const std::string& strategy, const std::string& out) {
  auto st = parse_strategy(strategy);
  if (!st) throw format_error("unknown strategy '" + strategy + "'");
  Graph a = load_graph(left), b = load_graph(right);
  Constraints c = load_constraints(constraints);
  CurationResult r = curate(a, b, c.relations, *st);
  json os = json::array();
  for (const auto& o : r.overlaps) os.push_back(io::to_json(o));
  const bool show = *st == Strategy::direct && r.candidates;
  emit(out, {{"left", io::to_json(a)},
             {"right", io::to_json(b)},
             {"constraints", c.name},
             {"strategy", to_string(*st)},
             {"candidates", show ? json(*r.candidates) : json(nullptr)},
             {"correct", r.overlaps.size()},
             {"overlaps", os}});
  if (show) std::cout << "candidates: " << *r.candidates;
  else std::cout << "candidates: n/a (not enumerated)";
  std::cout << ", correct: " << r.overlaps.size() << "\n";
  return 0;
}

int cmd_compose(const std::string& rule1, const std::string& rule2, const std::string& constraints,
                const std::string& strategy, const std::string& out) {
  auto st = parse_strategy(strategy);
  if (!st) throw format_error("unknown strategy '" + strategy + "'");
  Constraints c = load_constraints(constraints);
  ConditionalRule r1 = load_rule(rule1, c), r2 = load_rule(rule2, c);
  auto ds = enumerate_rule_matches(r2, r1, c.relations, *st);
  std::vector<const ConditionalRule*> classes;
  json ms = json::array();
  for (const auto& d : ds) {
    ms.push_back(io::to_json(d));
    bool seen = false;
    for (const auto* k : classes)
      if (rules_isomorphic(*k, d.composite)) {
        seen = true;
        break;
      }
    if (!seen) classes.push_back(&d.composite);
  }
  emit(out, {{"rule1", io::to_json(r1)},
             {"rule2", io::to_json(r2)},
             {"constraints", c.name},
             {"strategy", to_string(*st)},
             {"note", "composite NACs are recomputed as minimal constraint-preserving NACs"},
             {"admissible", ds.size()},
             {"composite_classes", classes.size()},
             {"matches", ms}});
  std::cout << "admissible: " << ds.size() << ", composite classes: " << classes.size() << "\n";
  return 0;
}

int cmd_macs(const std::string& rule, const std::string& constraints, const std::string& out) {
  Constraints c = load_constraints(constraints);
  Rule r = load_plain_rule(rule);
  for (const Graph* g : {&r.output(), &r.interface(), &r.input()})
    if (!satisfies(*g, c.relations.source)) throw precondition_error("rule graphs must satisfy the constraints");
  ConditionalRule cr = with_minimal_nacs(r, c.relations);
  emit(out, io::to_json(cr));
  std::cout << "nacs: " << cr.nacs.size() << "\n";
  return 0;
}

int cmd_relations(const std::string& constraints, const std::string& out) {
  Constraints c = load_constraints(constraints);
  emit(out, io::to_json(c.relations));
  std::cout << "relations: " << c.relations.relations.size() << "\n";
  return 0;
}

int cmd_census(std::size_t max_vertices, bool loopless) {
  auto counts = rigid_census(max_vertices, loopless);
  std::cout << "k,count\n";
  for (std::size_t k = 0; k < counts.size(); ++k) std::cout << k << ',' << counts[k] << "\n";
  return 0;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_bench(const std::string& suite, const std::string& strategies, const std::string& csv,
              const std::string& timeout, const std::string& only, bool in_process) {
  auto experiments = bench::suite(suite);
  if (!experiments) throw format_error("unknown suite '" + suite + "'");
  std::vector<Strategy> sts;
  for (const auto& s : split(strategies)) {
    auto st = parse_strategy(s);
    if (!st) throw format_error("unknown strategy '" + s + "'");
    sts.push_back(*st);
  }
  const auto limit = parse_duration(timeout);
  const auto wanted = split(only);
  const ForbiddenRelationSet s = decompose_forbidden_relations(rigid_constraints());

  std::ofstream file;
  if (!csv.empty()) {
    file.open(csv, std::ios::binary);
    if (!file) throw format_error("cannot write '" + csv + "'");
  }
  auto put = [&](const std::string& line) {
    std::cout << line << std::flush;
    if (file) file << line << std::flush;
  };
  put(bench::csv_header());
  for (const auto& x : *experiments) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), x.name) == wanted.end()) continue;
    for (Strategy st : sts) put(bench::csv_line(bench::run(x, st, s, limit, 5, !in_process)));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sesqui-pushout rule composition under structural constraints"};
  app.require_subcommand(1);

  std::string left, right, constraints = "rigid", strategy = "implicit", out;
  auto* ov = app.add_subcommand("overlaps", "Curate constraint-respecting overlaps of two graphs");
  ov->add_option("--left", left, "Left graph (JSON)")->required();
  ov->add_option("--right", right, "Right graph (JSON)")->required();
  ov->add_option("--constraints", constraints, "rigid, none, or a constraint file")->capture_default_str();
  ov->add_option("--strategy", strategy, "direct, dpe or implicit")->capture_default_str();
  ov->add_option("--out", out, "Write the overlaps here");

  std::string rule1, rule2;
  auto* co = app.add_subcommand("compose", "Enumerate admissible compositions of rule2 after rule1");
  co->add_option("--rule1", rule1, "First rule: builtin name or file")->required();
  co->add_option("--rule2", rule2, "Second rule: builtin name or file")->required();
  co->add_option("--constraints", constraints)->capture_default_str();
  co->add_option("--strategy", strategy)->capture_default_str();
  co->add_option("--out", out);

  std::string rule;
  auto* ma = app.add_subcommand("macs", "Attach minimal constraint-preserving NACs to a rule");
  ma->add_option("--rule", rule, "Builtin name or file")->required();
  ma->add_option("--constraints", constraints)->capture_default_str();
  ma->add_option("--out", out);

  auto* re = app.add_subcommand("relations", "Decompose constraints into forbidden relations");
  re->add_option("--constraints", constraints)->capture_default_str();
  re->add_option("--out", out);

  std::size_t max_vertices = 7;
  bool loopless = false;
  auto* ce = app.add_subcommand("census", "Count rigid graphs up to isomorphism");
  ce->add_option("--max-vertices", max_vertices)->capture_default_str();
  ce->add_flag("--loopless", loopless, "Exclude self-loops");

  std::string suite, strategies = "direct,dpe,implicit", csv, timeout = "600s", only;
  bool in_process = false;
  auto* be = app.add_subcommand("bench", "Run a benchmark suite and write CSV");
  be->add_option("--suite", suite, "gcm2020")->required();
  be->add_option("--strategies", strategies)->capture_default_str();
  be->add_option("--csv", csv, "Also write the table here");
  be->add_option("--timeout", timeout, "Per-run limit, e.g. 600s, 500ms, 10m")->capture_default_str();
  be->add_option("--experiments", only, "Comma-separated subset, e.g. P1,P2");
  be->add_flag("--in-process", in_process, "Do not fork per row (peak memory is then process-wide)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*ov) return cmd_overlaps(left, right, constraints, strategy, out);
    if (*co) return cmd_compose(rule1, rule2, constraints, strategy, out);
    if (*ma) return cmd_macs(rule, constraints, out);
    if (*re) return cmd_relations(constraints, out);
    if (*ce) return cmd_census(max_vertices, loopless);
    if (*be) return cmd_bench(suite, strategies, csv, timeout, only, in_process);
  } catch (const format_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const precondition_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const search_timeout&) {
    std::cerr << "error: search timed out\n";
    return 1;
  }
  return 2;
}
