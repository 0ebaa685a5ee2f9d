#include "fnq/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fnq/eqdsl.hpp"
#include "fnq/error.hpp"
#include "fnq/maps.hpp"
#include "fnq/ring.hpp"
#include "fnq/solver.hpp"
#include "fnq/symbolic.hpp"
#include "fnq/theorems.hpp"
#include "json.hpp"

namespace fnq {

namespace {

using nlohmann::json;

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << v;
  return s.str();
}

std::uint64_t resolve_budget(const RunConfig& c) {
  if (c.budget) return c.budget;
  if (const char* env = std::getenv("FNQ_BUDGET")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string_view(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::Usage, std::string("FNQ_BUDGET must be a positive integer, got \"") + env + "\"");
  }
  return kDefaultBudget;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Usage, "cannot read \"" + path + "\"");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RingPtr load_ring(const RunConfig& c) {
  if (c.ring.empty()) throw Error(ErrorCode::Usage, "--ring is required");
  const std::string text = c.ring.front() == '{' ? c.ring : read_file(c.ring);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidSpec, std::string("ring spec is not valid JSON: ") + e.what());
  }
  return make_ring(ring_spec_from_json(j), c.ring_budget ? c.ring_budget : kDefaultRingBudget);
}

json ring_json(const Ring& r) {
  return {{"name", r.name()},
          {"spec", r.spec() ? to_json(*r.spec()) : json(nullptr)},
          {"size", r.size()},
          {"hash", hex(r.content_hash())}};
}

std::pair<std::string, std::string> split_assignment(const std::string& s, const char* what) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
    throw Error(ErrorCode::Usage, std::string(what) + " must read name=value, got \"" + s + "\"");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

long long parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::Usage, what + " must be an integer, got \"" + s + "\"");
}

Elem ring_int(const Ring& r, long long n) { return r.from_int(n); }

std::map<std::string, Elem> ring_params(const RunConfig& c, const Ring& r) {
  std::map<std::string, Elem> out;
  for (const auto& p : c.params) {
    auto [name, value] = split_assignment(p, "--param");
    out[name] = ring_int(r, parse_int(value, "--param " + name));
  }
  if (c.eps) out["eps"] = ring_int(r, *c.eps);
  if (c.lambda) out["lam"] = ring_int(r, *c.lambda);
  if (c.mu) out["mu"] = ring_int(r, *c.mu);
  return out;
}

FunctionClass parse_class(const std::string& text, const Ring& r) {
  const auto colon = text.find(':');
  const std::string tag_name = text.substr(0, colon);
  const auto tag = class_tag_from_string(tag_name);
  if (!tag) throw Error(ErrorCode::Usage, "unknown function class \"" + tag_name + "\"");
  FunctionClass cls{*tag, 0};
  if (colon != std::string::npos) {
    if (*tag != ClassTag::HomoDerivSofy)
      throw Error(ErrorCode::Usage, "only the sofy class takes a parameter");
    cls.epsilon = ring_int(r, parse_int(text.substr(colon + 1), "class parameter"));
  } else if (*tag == ClassTag::HomoDerivSofy) {
    cls.epsilon = *r.one();
  }
  return cls;
}

std::vector<EquationAst> load_equations(const RunConfig& c) {
  std::vector<std::string> texts = c.equations;
  if (!c.equation_file.empty()) {
    std::istringstream in(read_file(c.equation_file));
    for (std::string line; std::getline(in, line);) {
      const auto start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos || line[start] == '#') continue;
      texts.push_back(line);
    }
  }
  if (texts.empty()) throw Error(ErrorCode::Usage, "--eq or --eq-file is required");
  std::vector<EquationAst> out;
  for (const auto& t : texts) out.push_back(parse_equation(t));
  return out;
}

std::vector<Elem> parse_values(const std::string& text, const Ring& r, const std::string& what) {
  std::vector<Elem> out;
  std::stringstream s(text);
  for (std::string item; std::getline(s, item, ',');) {
    const long long v = parse_int(item, what);
    if (v < 0 || static_cast<std::size_t>(v) >= r.size())
      throw Error(ErrorCode::Usage, what + ": element index " + item + " out of range");
    out.push_back(static_cast<Elem>(v));
  }
  if (out.size() != r.domain().size())
    throw Error(ErrorCode::Usage, what + " needs " + std::to_string(r.domain().size()) + " values");
  return out;
}

json config_json(const RunConfig& c, std::uint64_t budget) {
  json j;
  j["subcommand"] = c.subcommand;
  if (!c.target.empty()) j["target"] = c.target;
  j["budget"] = budget;
  if (!c.params.empty()) j["params"] = c.params;
  if (c.eps) j["eps"] = *c.eps;
  if (c.lambda) j["lambda"] = *c.lambda;
  if (c.mu) j["mu"] = *c.mu;
  if (!c.classes.empty()) j["classes"] = c.classes;
  if (c.no_pivot) j["no_pivot"] = true;
  return j;
}

struct Outcome {
  json report;
  std::string csv;
  std::string text;
  int status = kExitHolds;
};

void emit(const RunConfig& c, const Outcome& o, std::ostream& out) {
  std::string body;
  if (c.out == "json")
    body = o.report.dump(2) + "\n";
  else if (c.out == "csv")
    body = o.csv;
  else
    body = o.text;
  if (c.output.empty()) {
    out << body;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw Error(ErrorCode::Usage, "cannot write \"" + c.output + "\"");
  f << body;
}

std::string solutions_text(const SolutionSet& set) {
  std::ostringstream s;
  s << set.solutions.size() << " solution(s), " << set.enumerated_count << " candidates";
  if (set.pivot_fn) s << ", " << *set.pivot_fn << " by pivot";
  s << "\n";
  for (const auto& b : set.solutions) {
    bool first = true;
    for (const auto& [name, f] : b.functions) {
      s << (first ? "" : " ") << name << "=" << render(f);
      first = false;
    }
    s << "\n";
  }
  return s.str();
}

json plan_json(const SolveTask& task) {
  const SolvePlan p = plan(task);
  return {{"candidates", static_cast<double>(p.candidates)},
          {"pivot_fn", p.pivot_fn ? json(*p.pivot_fn) : json(nullptr)},
          {"enumerated_functions", p.enumerated_functions},
          {"within_budget", p.candidates <= static_cast<long double>(task.budget)}};
}

Outcome dry_run_outcome(json report) {
  Outcome o;
  o.text = report.dump(2) + "\n";
  o.csv = o.text;
  o.report = std::move(report);
  return o;
}

Outcome run_solve(const RunConfig& c, std::uint64_t budget) {
  auto equations = load_equations(c);
  const RingPtr ring = load_ring(c);
  SolveTask task;
  task.equations = std::move(equations);
  task.ring = ring;
  task.params = ring_params(c, *ring);
  for (const auto& a : c.classes) {
    auto [name, value] = split_assignment(a, "--class");
    task.classes[name] = parse_class(value, *ring);
  }
  task.budget = budget;
  task.use_pivot = !c.no_pivot;
  task.workers = c.workers;
  json base{{"command", "solve"}, {"config", config_json(c, budget)}, {"ring", ring_json(*ring)}};
  if (c.dry_run) {
    base["task"] = task_echo(task);
    base["plan"] = plan_json(task);
    return dry_run_outcome(std::move(base));
  }
  const SolutionSet set = solve(task);
  Outcome o;
  base["result"] = to_json(set, task);
  o.report = std::move(base);
  o.csv = to_csv(set, task);
  o.text = solutions_text(set);
  return o;
}

std::string report_csv(const TheoremReport& r) {
  std::ostringstream s;
  s << "theorem,ring,solutions_found,predicted_count,forward_ok,backward_ok,verdict\n";
  s << r.theorem << "," << r.ring->name() << "," << r.solutions_found << "," << r.predicted_count
    << "," << r.forward_ok << "," << r.backward_ok << "," << (r.holds() ? "holds" : "counterexamples")
    << "\n";
  return s.str();
}

Outcome symbolic_outcome(const std::string& command, const RunConfig& c, const SolutionFamily& fam,
                         const std::string& equation, std::uint64_t budget) {
  const EquationAst ast = parse_equation(equation);
  std::map<std::string, Rational> values;
  for (const auto& p : c.params) {
    auto [name, value] = split_assignment(p, "--param");
    try {
      values[name] = Rational(value);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Usage, "--param " + name + " must be a rational, got \"" + value + "\"");
    }
  }
  json base{{"command", command}, {"config", config_json(c, budget)}, {"family", fam.name},
            {"equation", to_string(ast)}};
  if (c.dry_run) return dry_run_outcome(std::move(base));
  const auto constraints = render_constraints(derive_constraints(fam, ast));
  json result{{"constraints", constraints}, {"annotations", fam.annotations}};
  Outcome o;
  std::ostringstream text;
  text << "family: " << fam.name << "\nequation: " << to_string(ast) << "\nconstraints:";
  if (constraints.empty()) text << " none";
  text << "\n";
  for (const auto& s : constraints) text << "  " << s << " = 0\n";
  for (const auto& a : fam.annotations) text << "  side condition: " << a << "\n";
  o.csv = "constraint\n";
  for (const auto& s : constraints) o.csv += s + "\n";
  if (!values.empty()) {
    const bool holds = check_identity(fam, ast, values);
    result["identity_holds"] = holds;
    text << "identity at given parameters: " << (holds ? "holds" : "fails") << "\n";
    if (!holds) o.status = kExitCounterexamples;
  }
  base["result"] = std::move(result);
  o.report = std::move(base);
  o.text = text.str();
  return o;
}

Outcome run_thm5_symbolic(const RunConfig& c, std::uint64_t budget) {
  const auto cs = builtin_cases().at("thm5");
  const EquationAst ast = parse_equation(cs.equation);
  json base{{"command", "verify"}, {"config", config_json(c, budget)}, {"family", cs.family.name},
            {"equation", to_string(ast)}};
  if (c.dry_run) return dry_run_outcome(std::move(base));
  const auto constraints = render_constraints(derive_constraints(cs.family, ast));
  const std::vector<std::string> expected{"g3 + b2*b3"};
  const std::map<std::string, Rational> satisfying{{"b2", 1}, {"b3", 1}, {"g1", 1}, {"g2", 0}, {"g3", -1}};
  auto violating = satisfying;
  violating["g3"] = 0;
  const bool sat = check_identity(cs.family, ast, satisfying);
  const bool vio = check_identity(cs.family, ast, violating);
  const bool holds = constraints == expected && sat && !vio;
  base["result"] = {{"constraints", constraints},
                    {"expected", expected},
                    {"annotations", cs.family.annotations},
                    {"identity_when_satisfied", sat},
                    {"identity_when_violated", vio},
                    {"verdict", holds ? "holds" : "counterexamples"}};
  Outcome o;
  o.status = holds ? kExitHolds : kExitCounterexamples;
  std::ostringstream text;
  text << "theorem: thm5-symbolic\nconstraints:";
  for (const auto& s : constraints) text << " {" << s << "}";
  text << "\nidentity when satisfied: " << sat << "\nidentity when violated: " << vio
       << "\nverdict: " << (holds ? "holds" : "counterexamples") << "\n";
  o.text = text.str();
  o.csv = "constraint\n";
  for (const auto& s : constraints) o.csv += s + "\n";
  o.report = std::move(base);
  return o;
}

Outcome run_verify(const RunConfig& c, std::uint64_t budget) {
  if (c.target == "thm5-symbolic") return run_thm5_symbolic(c, budget);
  const RingPtr ring = load_ring(c);
  const Ring& r = *ring;
  VerifyOptions opt{budget, c.workers};
  json base{{"command", "verify"}, {"config", config_json(c, budget)}, {"ring", ring_json(r)}};

  std::vector<EquationAst> eqs;
  std::map<std::string, Elem> params;
  if (c.target == "thm4") {
    if (!c.eps) throw Error(ErrorCode::Usage, "verify thm4 needs --eps");
    eqs = {parse_equation(kSofyEquation)};
    params = {{"eps", ring_int(r, *c.eps)}};
  } else if (c.target == "prop1") {
    eqs = {parse_equation(kMultiplicativeEquation), parse_equation(kLeibnizEquation)};
  } else if (c.target == "pexider") {
    eqs = {parse_equation(kPexiderEquation)};
  } else if (c.target == "alien") {
    if (!c.lambda || !c.mu) throw Error(ErrorCode::Usage, "verify alien needs --lambda and --mu");
    eqs = {parse_equation(kAlienEquation)};
    params = {{"lam", ring_int(r, *c.lambda)}, {"mu", ring_int(r, *c.mu)}};
  } else {
    throw Error(ErrorCode::Usage, "unknown verification target \"" + c.target + "\"");
  }
  if (c.dry_run) {
    SolveTask task;
    task.equations = eqs;
    task.ring = ring;
    task.params = params;
    task.budget = budget;
    base["task"] = task_echo(task);
    base["plan"] = plan_json(task);
    return dry_run_outcome(std::move(base));
  }
  TheoremReport rep;
  if (c.target == "thm4")
    rep = verify_sofy(ring, params.at("eps"), opt);
  else if (c.target == "prop1")
    rep = verify_mp(ring, opt);
  else if (c.target == "pexider")
    rep = verify_pexider(ring, opt);
  else
    rep = verify_alien(ring, params.at("lam"), params.at("mu"), opt);
  Outcome o;
  base["result"] = to_json(rep);
  o.report = std::move(base);
  o.text = render_text(rep);
  o.csv = report_csv(rep);
  o.status = rep.holds() ? kExitHolds : kExitCounterexamples;
  return o;
}

Outcome run_classify(const RunConfig& c, std::uint64_t budget) {
  const RingPtr ring = load_ring(c);
  json base{{"command", "classify"}, {"config", config_json(c, budget)}, {"ring", ring_json(*ring)}};
  if (c.dry_run) return dry_run_outcome(std::move(base));
  Outcome o;
  if (!c.map_values.empty()) {
    const FnTable f{ring, parse_values(c.map_values, *ring, "--map")};
    const Classification cl = classify_map(f);
    std::vector<std::string> tags;
    for (ClassTag t : cl.tags) tags.emplace_back(to_string(t));
    base["result"] = {{"map", f.values}, {"classes", tags}, {"sofy_epsilons", cl.sofy_epsilons}};
    o.text = render(f) + ":";
    for (const auto& t : tags) o.text += " " + t;
    o.text += "\n";
    o.csv = "class\n";
    for (const auto& t : tags) o.csv += t + "\n";
  } else {
    if (c.f_values.empty() || c.h_values.empty() || c.k_values.empty())
      throw Error(ErrorCode::Usage, "classify needs --map, or all of --f-values, --h-values and --k-values");
    const FnTable f{ring, parse_values(c.f_values, *ring, "--f-values")};
    const FnTable h{ring, parse_values(c.h_values, *ring, "--h-values")};
    const FnTable k{ring, parse_values(c.k_values, *ring, "--k-values")};
    const PexiderClassification pc = classify_pexider(f, h, k);
    base["result"] = {{"rank", pc.rank},
                      {"family", to_json(pc.tag, *ring)},
                      {"char2_hypothesis_unmet", pc.char2_hypothesis_unmet}};
    o.text = "rank " + std::to_string(pc.rank) + ": " + pc.tag.describe(*ring) + "\n";
    o.csv = "rank,family\n" + std::to_string(pc.rank) + "," + std::string(to_string(pc.tag.kind)) + "\n";
    if (pc.tag.kind == FamilyKind::Unclassifiable) o.status = kExitCounterexamples;
  }
  o.report = std::move(base);
  return o;
}

Outcome run_symbolic(const RunConfig& c, std::uint64_t budget) {
  if (!c.definitions.empty()) {
    if (c.equations.size() != 1) throw Error(ErrorCode::Usage, "symbolic --def needs exactly one --eq");
    return symbolic_outcome("symbolic", c, make_family("custom", c.definitions), c.equations.front(), budget);
  }
  const auto cases = builtin_cases();
  const std::string name = c.family.empty() ? "thm5" : c.family;
  auto it = cases.find(name);
  if (it == cases.end()) throw Error(ErrorCode::Usage, "unknown family \"" + name + "\"");
  const std::string eq = c.equations.empty() ? it->second.equation : c.equations.front();
  return symbolic_outcome("symbolic", c, it->second.family, eq, budget);
}

Outcome run_enumerate(const RunConfig& c, std::uint64_t budget) {
  const RingPtr ring = load_ring(c);
  const FunctionClass cls = parse_class(c.cls, *ring);
  json base{{"command", "enumerate"}, {"config", config_json(c, budget)}, {"ring", ring_json(*ring)},
            {"class", cls.describe()}};
  if (c.dry_run) {
    base["candidates"] = static_cast<double>(enumeration_cost(*ring, cls));
    return dry_run_outcome(std::move(base));
  }
  const auto maps = enumerate_maps(ring, cls, budget);
  Outcome o;
  json list = json::array();
  for (const auto& f : maps) list.push_back(f.values);
  base["result"] = {{"count", maps.size()}, {"maps", list}};
  o.report = std::move(base);
  std::ostringstream text;
  text << maps.size() << " map(s)\n";
  for (const auto& f : maps) text << render(f) << "\n";
  o.text = text.str();
  o.csv = csv_header(zero_map(ring), "f") + "\n";
  for (const auto& f : maps) o.csv += csv_row(f) + "\n";
  return o;
}

void report_error(const RunConfig& c, std::ostream& err, std::string_view code,
                  const std::string& message, std::optional<std::size_t> offset) {
  if (c.json_errors) {
    json j{{"error", code}, {"message", message}};
    if (offset) j["offset"] = *offset;
    err << j.dump() << "\n";
    return;
  }
  err << "error: " << code;
  if (offset) err << " at offset " << *offset;
  err << ": " << message << "\n";
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.out != "json" && c.out != "csv" && c.out != "text")
      throw Error(ErrorCode::Usage, "--out must be json, csv or text");
    if (c.workers < 1) throw Error(ErrorCode::Usage, "--workers must be at least 1");
    const std::uint64_t budget = resolve_budget(c);
    Outcome o;
    if (c.subcommand == "solve")
      o = run_solve(c, budget);
    else if (c.subcommand == "verify")
      o = run_verify(c, budget);
    else if (c.subcommand == "classify")
      o = run_classify(c, budget);
    else if (c.subcommand == "symbolic")
      o = run_symbolic(c, budget);
    else if (c.subcommand == "enumerate")
      o = run_enumerate(c, budget);
    else
      throw Error(ErrorCode::Usage, "unknown subcommand \"" + c.subcommand + "\"");
    emit(c, o, out);
    return o.status;
  } catch (const Error& e) {
    report_error(c, err, to_string(e.code()), e.what(), e.offset());
  } catch (const std::exception& e) {
    report_error(c, err, "Internal", e.what(), std::nullopt);
  }
  return kExitError;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Functional equations over small finite rings", "fnq"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, bool ring) {
    if (ring) sub->add_option("--ring", c.ring, "ring spec: inline JSON or a file path");
    sub->add_option("--out", c.out, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--output", c.output, "write the report here instead of stdout");
    sub->add_option("--workers", c.workers, "OpenMP worker threads");
    sub->add_option("--budget", c.budget, "candidate budget (default: FNQ_BUDGET or 1e8)");
    sub->add_option("--ring-budget", c.ring_budget, "largest ring to build");
    sub->add_flag("--dry-run", c.dry_run, "print the resolved task without running it");
    sub->add_flag("--json-errors", c.json_errors, "report errors as JSON on stderr");
  };

  auto* solve_cmd = app.add_subcommand("solve", "brute-force an equation or system");
  common(solve_cmd, true);
  solve_cmd->add_option("--eq", c.equations, "equation (repeat for a system)");
  solve_cmd->add_option("--eq-file", c.equation_file, "file with one equation per line");
  solve_cmd->add_option("--class", c.classes, "restrict an unknown: f=leibniz, h=sofy:2");
  solve_cmd->add_option("--param", c.params, "bind a parameter: name=int");
  solve_cmd->add_option("--eps", c.eps, "shorthand for --param eps=N");
  solve_cmd->add_option("--lambda", c.lambda, "shorthand for --param lam=N");
  solve_cmd->add_option("--mu", c.mu, "shorthand for --param mu=N");
  solve_cmd->add_flag("--no-pivot", c.no_pivot, "search every unknown, skipping the y=1 reduction");

  auto* verify_cmd = app.add_subcommand("verify", "check a theorem on one instance");
  common(verify_cmd, true);
  verify_cmd->add_option("target", c.target, "thm4, prop1, pexider, alien or thm5-symbolic")
      ->required()
      ->check(CLI::IsMember({"thm4", "prop1", "pexider", "alien", "thm5-symbolic"}));
  verify_cmd->add_option("--eps", c.eps, "central nonzero epsilon (thm4)");
  verify_cmd->add_option("--lambda", c.lambda, "lambda (alien)");
  verify_cmd->add_option("--mu", c.mu, "mu (alien)");

  auto* classify_cmd = app.add_subcommand("classify", "classify a map or a Pexider solution");
  common(classify_cmd, true);
  classify_cmd->add_option("--map", c.map_values, "comma-separated values of one map");
  classify_cmd->add_option("--f-values", c.f_values, "values of f");
  classify_cmd->add_option("--h-values", c.h_values, "values of h");
  classify_cmd->add_option("--k-values", c.k_values, "values of k");

  auto* symbolic_cmd = app.add_subcommand("symbolic", "derive parameter constraints of a family");
  common(symbolic_cmd, false);
  symbolic_cmd->add_option("--family", c.family, "thm5, prop4, sofy, zero or quadratic");
  symbolic_cmd->add_option("--def", c.definitions, "custom family member: f(x) = ...");
  symbolic_cmd->add_option("--eq", c.equations, "equation (defaults to the family's own)");
  symbolic_cmd->add_option("--param", c.params, "parameter value for an identity check: name=p/q");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "list every map of a class");
  common(enumerate_cmd, true);
  enumerate_cmd->add_option("--class", c.cls, "class name, e.g. leibniz or sofy:1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitHolds;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitHolds;
  } catch (const CLI::Error& e) {
    report_error(c, err, "Usage", e.what(), std::nullopt);
    return kExitError;
  }
  for (auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();
  return run(c, out, err);
}

}  // namespace fnq
