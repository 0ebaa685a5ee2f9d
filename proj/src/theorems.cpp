#include "fnq/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "fnq/error.hpp"

namespace fnq {

namespace {

// Reports keep at most this many listed counterexamples; totals go in details.
constexpr std::size_t kMaxListed = 20;

Binding bind(std::initializer_list<std::pair<std::string, FnTable>> fns,
             std::map<std::string, Elem> params = {}) {
  Binding b;
  for (const auto& [name, table] : fns) b.functions.emplace(name, table);
  b.params = std::move(params);
  return b;
}

SolutionSet brute_force(const RingPtr& ring, std::vector<EquationAst> eqs,
                        std::map<std::string, Elem> params, const VerifyOptions& opt) {
  SolveTask task;
  task.equations = std::move(eqs);
  task.ring = ring;
  task.params = std::move(params);
  task.budget = opt.budget;
  task.workers = opt.workers;
  return solve(task);
}

void record(std::vector<Counterexample>& list, std::size_t& total, Counterexample c) {
  ++total;
  if (list.size() < kMaxListed) list.push_back(std::move(c));
}

void require_field(const Ring& ring) {
  if (!ring.is_field()) throw Error(ErrorCode::NotAField, ring.name() + " is not a field");
  if (ring.has_subring())
    throw Error(ErrorCode::InvalidSpec, "this check needs functions on the whole field");
}

Elem scalar(const FamilyTag& tag, const std::string& name) {
  auto it = tag.scalars.find(name);
  if (it == tag.scalars.end())
    throw Error(ErrorCode::InvalidSpec,
                std::string(to_string(tag.kind)) + " needs scalar \"" + name + "\"");
  return it->second;
}

const FnTable& witness(const FamilyTag& tag, const std::string& name) {
  auto it = tag.witnesses.find(name);
  if (it == tag.witnesses.end())
    throw Error(ErrorCode::InvalidSpec,
                std::string(to_string(tag.kind)) + " needs witness \"" + name + "\"");
  return it->second;
}

// c·id + d·g
FnTable lin(const RingPtr& r, Elem c, Elem d, const FnTable& g) {
  return add(scale(c, identity_map(r)), scale(d, g));
}

}  // namespace

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::SofyShift: return "SofyShift";
    case FamilyKind::MPAnnihilated: return "MPAnnihilated";
    case FamilyKind::AllLinear: return "AllLinear";
    case FamilyKind::LinearPlusLeibniz: return "LinearPlusLeibniz";
    case FamilyKind::MultiplicativeSquare: return "MultiplicativeSquare";
    case FamilyKind::MultiplicativeSquareShifted: return "MultiplicativeSquareShifted";
    case FamilyKind::LambdaKFamilyA: return "LambdaKFamilyA";
    case FamilyKind::LambdaKFamilyB: return "LambdaKFamilyB";
    case FamilyKind::NonDegenerate: return "NonDegenerate";
    case FamilyKind::AlienA: return "AlienA";
    case FamilyKind::AlienB: return "AlienB";
    case FamilyKind::AlienZero: return "AlienZero";
    case FamilyKind::AlienScaled: return "AlienScaled";
    case FamilyKind::Unclassifiable: return "Unclassifiable";
  }
  return "Unknown";
}

std::string FamilyTag::describe(const Ring& ring) const {
  std::string out(to_string(kind));
  std::vector<std::string> parts;
  for (const auto& [name, v] : scalars) parts.push_back(name + "=" + ring.element_name(v));
  for (const auto& [name, f] : witnesses) parts.push_back(name + "=" + render(f));
  if (!parts.empty()) {
    out += "(";
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
    out += ")";
  }
  return out;
}

nlohmann::json to_json(const FamilyTag& tag, const Ring& /*ring*/) {
  nlohmann::json j;
  j["family"] = to_string(tag.kind);
  nlohmann::json s = nlohmann::json::object();
  for (const auto& [name, v] : tag.scalars) s[name] = v;
  j["scalars"] = s;
  nlohmann::json w = nlohmann::json::object();
  for (const auto& [name, f] : tag.witnesses) w[name] = f.values;
  j["witnesses"] = w;
  return j;
}

PexiderTriple instantiate(const FamilyTag& tag, const RingPtr& ring) {
  const Ring& r = *ring;
  const Elem two = r.add(*r.one(), *r.one());
  auto sq = [&](Elem a) { return r.mul(a, a); };
  const FnTable zero = zero_map(ring);
  switch (tag.kind) {
    case FamilyKind::AllLinear: {
      const Elem l1 = scalar(tag, "lambda1"), l2 = scalar(tag, "lambda2");
      return {lin(ring, r.add(sq(l1), r.mul(two, l2)), r.zero(), zero), lin(ring, l1, r.zero(), zero),
              lin(ring, l2, r.zero(), zero)};
    }
    case FamilyKind::LinearPlusLeibniz: {
      const Elem l = scalar(tag, "lambda"), k1 = scalar(tag, "k1");
      const FnTable& d = witness(tag, "delta");
      return {lin(ring, r.add(sq(l), r.mul(two, k1)), *r.one(), d), lin(ring, l, r.zero(), zero),
              lin(ring, k1, *r.one(), d)};
    }
    case FamilyKind::MultiplicativeSquare: {
      const Elem h1 = scalar(tag, "h1"), l = scalar(tag, "lambda");
      const FnTable& m = witness(tag, "m");
      return {lin(ring, r.mul(two, l), sq(h1), m), scale(h1, m), lin(ring, l, r.zero(), zero)};
    }
    case FamilyKind::MultiplicativeSquareShifted: {
      const Elem h1 = scalar(tag, "h1"), a = scalar(tag, "a"), b = scalar(tag, "b");
      const FnTable& m = witness(tag, "m");
      const FnTable h = lin(ring, r.neg(b), h1, m);
      return {lin(ring, r.sub(r.mul(two, a), sq(b)), sq(h1), m), h,
              add(scale(a, identity_map(ring)), scale(b, h))};
    }
    case FamilyKind::LambdaKFamilyA: {
      const Elem g = scalar(tag, "gamma"), l = scalar(tag, "lambda");
      const Elem fc = r.add(r.mul(sq(l), sq(g)), r.mul(two, g));
      return {lin(ring, fc, r.zero(), zero), lin(ring, r.mul(l, g), r.zero(), zero),
              lin(ring, g, r.zero(), zero)};
    }
    case FamilyKind::LambdaKFamilyB: {
      const Elem g = scalar(tag, "gamma"), l = scalar(tag, "lambda");
      const FnTable& m = witness(tag, "m");
      const auto inv = r.inverse(sq(l));
      if (!inv) throw Error(ErrorCode::InvalidSpec, "LambdaKFamilyB needs lambda invertible");
      const Elem c = r.neg(*inv);
      const FnTable k = lin(ring, c, g, m);
      return {lin(ring, c, r.mul(sq(g), sq(l)), m), scale(l, k), k};
    }
    case FamilyKind::NonDegenerate: {
      const Elem b2 = scalar(tag, "beta2"), b3 = scalar(tag, "beta3"), g1 = scalar(tag, "gamma1"),
                 g2 = scalar(tag, "gamma2"), g3 = scalar(tag, "gamma3");
      const FnTable& m = witness(tag, "m");
      const FnTable lx = product(witness(tag, "l"), identity_map(ring));
      const FnTable f = add(add(scale(g1, lx), lin(ring, r.add(sq(b2), r.mul(two, g2)), r.zero(), zero)),
                            scale(sq(b3), m));
      return {f, lin(ring, b2, b3, m), add(scale(g1, lx), lin(ring, g2, g3, m))};
    }
    default:
      throw Error(ErrorCode::InvalidSpec,
                  std::string(to_string(tag.kind)) + " is not a Pexider family");
  }
}

bool TheoremReport::holds() const { return forward_ok && backward_ok && counterexamples.empty(); }

namespace {

nlohmann::json binding_json(const Binding& b) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, f] : b.functions) j[name] = f.values;
  return j;
}

nlohmann::json counterexample_json(const Counterexample& c) {
  nlohmann::json j;
  j["binding"] = binding_json(c.binding);
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [x, y] : c.pairs) pairs.push_back({x, y});
  j["pairs"] = pairs;
  j["note"] = c.note;
  return j;
}

std::string binding_text(const Binding& b) {
  std::string out;
  for (const auto& [name, f] : b.functions) out += (out.empty() ? "" : " ") + name + "=" + render(f);
  return out;
}

}  // namespace

nlohmann::json to_json(const TheoremReport& report) {
  const Ring& r = *report.ring;
  nlohmann::json j;
  j["theorem"] = report.theorem;
  j["ring"] = r.spec() ? to_json(*r.spec()) : nlohmann::json(r.name());
  j["ring_name"] = r.name();
  std::ostringstream hash;
  hash << std::hex << r.content_hash();
  j["ring_hash"] = hash.str();
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : report.params) params[k] = v;
  j["params"] = params;
  j["solutions_found"] = report.solutions_found;
  j["predicted_count"] = report.predicted_count;
  j["forward_ok"] = report.forward_ok;
  j["backward_ok"] = report.backward_ok;
  j["verdict"] = report.holds() ? "holds" : "counterexamples";
  nlohmann::json wit = nlohmann::json::array();
  for (const auto& [b, tag] : report.witnesses)
    wit.push_back({{"solution", binding_json(b)}, {"family", to_json(tag, r)}});
  j["witnesses"] = wit;
  nlohmann::json ce = nlohmann::json::array();
  for (const auto& c : report.counterexamples) ce.push_back(counterexample_json(c));
  j["counterexamples"] = ce;
  nlohmann::json info = nlohmann::json::array();
  for (const auto& c : report.informational) info.push_back(counterexample_json(c));
  j["informational"] = info;
  j["details"] = report.details;
  return j;
}

std::string render_text(const TheoremReport& report) {
  const Ring& r = *report.ring;
  std::ostringstream out;
  out << "theorem: " << report.theorem << "\n";
  out << "ring: " << r.name() << " (hash " << std::hex << r.content_hash() << std::dec << ")\n";
  if (!report.params.empty()) {
    out << "params:";
    for (const auto& [k, v] : report.params) out << " " << k << "=" << r.element_name(v);
    out << "\n";
  }
  out << "solutions found: " << report.solutions_found << "\n";
  out << "predicted: " << report.predicted_count << "\n";
  out << "forward: " << (report.forward_ok ? "ok" : "FAILED") << "\n";
  out << "backward: " << (report.backward_ok ? "ok" : "FAILED") << "\n";
  out << "verdict: " << (report.holds() ? "holds" : "counterexamples") << "\n";
  for (const auto& [b, tag] : report.witnesses)
    out << "  " << binding_text(b) << "  ->  " << tag.describe(r) << "\n";
  if (!report.counterexamples.empty()) out << "counterexamples:\n";
  for (const auto& c : report.counterexamples)
    out << "  " << binding_text(c.binding) << "  " << c.note << " (" << c.pairs.size()
        << " failing pairs)\n";
  if (!report.informational.empty()) out << "informational:\n";
  for (const auto& c : report.informational)
    out << "  " << binding_text(c.binding) << "  " << c.note << "\n";
  if (!report.details.empty()) out << "details: " << report.details.dump() << "\n";
  return out.str();
}

FnTable multiplicative_shift(const FnTable& h, Elem epsilon) {
  const Ring& r = *h.ring;
  FnTable out{h.ring, h.values};
  const auto& dom = r.domain();
  for (std::size_t i = 0; i < dom.size(); ++i) out.values[i] = r.add(r.mul(epsilon, h.values[i]), dom[i]);
  return out;
}

TheoremReport verify_sofy(const RingPtr& ring, Elem epsilon, const VerifyOptions& opt) {
  const Ring& r = *ring;
  if (epsilon >= r.size()) throw Error(ErrorCode::InvalidSpec, "epsilon out of range");
  if (epsilon == r.zero()) throw Error(ErrorCode::EpsilonZero, "epsilon must be nonzero");
  if (!r.is_central(epsilon))
    throw Error(ErrorCode::NotCentral, r.element_name(epsilon) + " is not central in " + r.name());

  TheoremReport rep;
  rep.theorem = "thm4";
  rep.ring = ring;
  rep.params = {{"eps", epsilon}};
  const auto eq = parse_equation(kSofyEquation);
  const SolutionSet found = brute_force(ring, {eq}, rep.params, opt);
  rep.solutions_found = found.solutions.size();

  // forward: εh + id is multiplicative
  std::size_t forward_failures = 0;
  std::vector<FnTable> shifts;
  for (const auto& b : found.solutions) {
    const FnTable& h = b.functions.at("h");
    const FnTable m = multiplicative_shift(h, epsilon);
    shifts.push_back(m);
    FamilyTag tag{FamilyKind::SofyShift, {{"epsilon", epsilon}}, {{"m", m}}};
    if (!is_multiplicative(m)) {
      rep.forward_ok = false;
      record(rep.counterexamples, forward_failures,
             {b, {}, "shift " + render(m) + " is not multiplicative"});
    }
    rep.witnesses.push_back({b, std::move(tag)});
  }

  // backward: every pointwise preimage of m − id under ε· solves the equation
  const auto mults = enumerate_maps(ring, {ClassTag::Multiplicative}, opt.budget);
  const auto& dom = r.domain();
  std::set<std::vector<Elem>> predicted;
  std::size_t backward_failures = 0;
  std::size_t unreachable = 0;
  for (const auto& m : mults) {
    std::vector<std::vector<Elem>> pre(dom.size());
    long double combos = 1;
    for (std::size_t i = 0; i < dom.size(); ++i) {
      const Elem target = r.sub(m.values[i], dom[i]);
      for (std::size_t q = 0; q < r.size(); ++q)
        if (r.mul(epsilon, static_cast<Elem>(q)) == target) pre[i].push_back(static_cast<Elem>(q));
      combos *= static_cast<long double>(pre[i].size());
    }
    if (combos == 0) {
      ++unreachable;
      continue;
    }
    if (combos > static_cast<long double>(opt.budget))
      throw Error(ErrorCode::BudgetExceeded, "preimage enumeration exceeds budget");
    std::vector<std::size_t> pick(dom.size(), 0);
    FnTable h{ring, std::vector<Elem>(dom.size())};
    for (;;) {
      for (std::size_t i = 0; i < dom.size(); ++i) h.values[i] = pre[i][pick[i]];
      predicted.insert(h.values);
      if (!satisfies_sofy(h, epsilon)) {
        rep.backward_ok = false;
        const Binding b = bind({{"h", h}}, rep.params);
        record(rep.counterexamples, backward_failures,
               {b, residual(eq, b, r), "preimage of multiplicative " + render(m) + " fails"});
      }
      std::size_t i = dom.size();
      while (i > 0 && ++pick[i - 1] == pre[i - 1].size()) pick[--i] = 0;
      if (i == 0) break;
    }
  }
  rep.predicted_count = predicted.size();
  const bool unit = r.is_unit(epsilon);
  rep.details["epsilon_regular"] = r.is_regular(epsilon);
  rep.details["epsilon_unit"] = unit;
  rep.details["multiplicative_count"] = mults.size();
  rep.details["multiplicative_unreachable"] = unreachable;
  rep.details["forward_failures"] = forward_failures;
  rep.details["backward_failures"] = backward_failures;
  if (unit) {
    std::set<std::vector<Elem>> distinct;
    for (const auto& m : shifts) distinct.insert(m.values);
    const bool bijection =
        distinct.size() == shifts.size() && rep.solutions_found == mults.size();
    rep.details["bijection"] = bijection;
    if (!bijection) rep.forward_ok = false;
  }
  return rep;
}

std::optional<Elem> annihilator_witness(const FnTable& f, const Ring& ring) {
  for (std::size_t a = 0; a < ring.size(); ++a) {
    const auto alpha = static_cast<Elem>(a);
    if (alpha == ring.zero()) continue;
    bool ok = true;
    for (Elem v : f.values)
      if (ring.mul(alpha, v) != ring.zero() || ring.mul(v, alpha) != ring.zero()) {
        ok = false;
        break;
      }
    if (ok) return alpha;
  }
  return std::nullopt;
}

TheoremReport verify_mp(const RingPtr& ring, const VerifyOptions& opt) {
  const Ring& r = *ring;
  TheoremReport rep;
  rep.theorem = "prop1";
  rep.ring = ring;
  const std::vector<EquationAst> system{parse_equation(kMultiplicativeEquation),
                                        parse_equation(kLeibnizEquation)};
  const SolutionSet found = brute_force(ring, system, {}, opt);
  rep.solutions_found = found.solutions.size();
  std::size_t failures = 0;
  for (const auto& b : found.solutions) {
    const FnTable& f = b.functions.at("f");
    const auto alpha = annihilator_witness(f, r);
    if (!alpha) {
      rep.forward_ok = false;
      record(rep.counterexamples, failures, {b, {}, "no nonzero two-sided annihilator"});
      continue;
    }
    rep.witnesses.push_back({b, FamilyTag{FamilyKind::MPAnnihilated, {{"alpha", *alpha}}, {}}});
  }
  const bool zero_divisor_free = !r.has_zero_divisors();
  rep.details["zero_divisor_free"] = zero_divisor_free;
  if (zero_divisor_free) {
    const bool only_zero =
        found.solutions.size() == 1 && found.solutions.front().functions.at("f") == zero_map(ring);
    rep.details["only_zero"] = only_zero;
    if (!only_zero) {
      rep.forward_ok = false;
      for (const auto& b : found.solutions)
        if (b.functions.at("f") != zero_map(ring))
          record(rep.counterexamples, failures, {b, {}, "nonzero solution without zero divisors"});
    }
  }
  rep.predicted_count = zero_divisor_free ? 1 : rep.solutions_found;

  // Converse probe: functions annihilated by some α ≠ 0 that do not solve the system.
  std::set<std::vector<Elem>> probed;
  std::size_t converse_failures = 0;
  const std::size_t n = r.domain().size();
  for (std::size_t a = 0; a < r.size(); ++a) {
    const auto alpha = static_cast<Elem>(a);
    if (alpha == r.zero()) continue;
    std::vector<Elem> ann;
    for (std::size_t q = 0; q < r.size(); ++q) {
      const auto e = static_cast<Elem>(q);
      if (r.mul(alpha, e) == r.zero() && r.mul(e, alpha) == r.zero()) ann.push_back(e);
    }
    if (std::pow(static_cast<long double>(ann.size()), n) > static_cast<long double>(opt.budget))
      throw Error(ErrorCode::BudgetExceeded, "annihilated-function enumeration exceeds budget");
    std::vector<std::size_t> pick(n, 0);
    FnTable f{ring, std::vector<Elem>(n)};
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) f.values[i] = ann[pick[i]];
      if (probed.insert(f.values).second && !(is_multiplicative(f) && is_leibniz(f))) {
        const Binding b = bind({{"f", f}});
        Counterexample c{b, residual(system[0], b, r), "annihilated but not a solution"};
        for (const auto& p : residual(system[1], b, r)) c.pairs.push_back(p);
        record(rep.informational, converse_failures, std::move(c));
      }
      std::size_t i = n;
      while (i > 0 && ++pick[i - 1] == ann.size()) pick[--i] = 0;
      if (i == 0) break;
    }
  }
  rep.details["converse_checked"] = probed.size();
  rep.details["converse_failures"] = converse_failures;
  return rep;
}

PexiderClassification classify_pexider(const FnTable& f, const FnTable& h, const FnTable& k) {
  const RingPtr& ring = f.ring;
  const Ring& r = *ring;
  require_field(r);
  const Binding b = bind({{"f", f}, {"h", h}, {"k", k}});
  const auto eq = parse_equation(kPexiderEquation);
  if (!residual(eq, b, r).empty())
    throw Error(ErrorCode::ResidualNonzero, "(f, h, k) does not solve the Pexider equation");

  PexiderClassification out;
  out.char2_hypothesis_unmet = r.characteristic() == 2;
  const FnTable id = identity_map(ring);
  out.rank = lin_rank({id, h, k}, r);
  const Elem one = *r.one();

  auto matches = [&](const FamilyTag& tag) {
    try {
      const PexiderTriple t = instantiate(tag, ring);
      return t.f == f && t.h == h && t.k == k;
    } catch (const Error&) {
      return false;
    }
  };
  auto as_multiplicative = [&](const FnTable& g) -> std::optional<std::pair<Elem, FnTable>> {
    const Elem g1 = g.at(one);
    const auto inv = r.inverse(g1);
    if (!inv) return std::nullopt;
    FnTable m = scale(*inv, g);
    if (!is_multiplicative(m)) return std::nullopt;
    return std::pair{g1, m};
  };

  std::vector<FamilyTag> candidates;
  if (out.rank == 1) {
    candidates.push_back({FamilyKind::AllLinear, {{"lambda1", h.at(one)}, {"lambda2", k.at(one)}}, {}});
  } else if (out.rank == 2) {
    const bool id_h = lin_rank({id, h}, r) == 1;
    const bool id_k = lin_rank({id, k}, r) == 1;
    const bool h_k = lin_rank({h, k}, r) <= 1;
    if (id_h) {
      const Elem k1 = k.at(one);
      const FnTable delta = sub(k, scale(k1, id));
      if (is_leibniz(delta))
        candidates.push_back(
            {FamilyKind::LinearPlusLeibniz, {{"lambda", h.at(one)}, {"k1", k1}}, {{"delta", delta}}});
    }
    if (id_k) {
      if (auto hm = as_multiplicative(h))
        candidates.push_back({FamilyKind::MultiplicativeSquare,
                              {{"h1", hm->first}, {"lambda", k.at(one)}},
                              {{"m", hm->second}}});
    }
    if (h_k && !id_h && !id_k) {
      const std::vector<FnTable> basis{k};
      if (auto c = solve_combination(basis, h, r); c && (*c)[0] != r.zero()) {
        const Elem lambda = (*c)[0];
        const FnTable g = add(k, scale(*r.inverse(r.mul(lambda, lambda)), id));
        if (auto gm = as_multiplicative(g))
          candidates.push_back({FamilyKind::LambdaKFamilyB,
                                {{"gamma", gm->first}, {"lambda", lambda}},
                                {{"m", gm->second}}});
      }
    }
    // k = a·id + b·h with h outside span(id): H = h + b·id is h1·m.
    if (!id_h) {
      const std::vector<FnTable> basis{id, h};
      if (auto c = solve_combination(basis, k, r)) {
        const Elem a = (*c)[0], bb = (*c)[1];
        if (auto hm = as_multiplicative(add(h, scale(bb, id))))
          candidates.push_back({FamilyKind::MultiplicativeSquareShifted,
                                {{"h1", hm->first}, {"a", a}, {"b", bb}},
                                {{"m", hm->second}}});
      }
    }
  } else {
    const auto mults = enumerate_maps(ring, {ClassTag::Multiplicative});
    const auto logs = enumerate_maps(ring, {ClassTag::Logarithmic});
    for (const auto& m : mults) {
      if (lin_rank({id, m}, r) < 2) continue;
      const std::vector<FnTable> hb{id, m};
      const auto hc = solve_combination(hb, h, r);
      if (!hc) continue;
      for (const auto& l : logs) {
        const FnTable lx = product(l, id);
        const std::vector<FnTable> kb{id, m, lx};
        if (lin_rank(kb, r) < 3) continue;
        const auto kc = solve_combination(kb, k, r);
        if (!kc) continue;
        const Elem b2 = (*hc)[0], b3 = (*hc)[1], g2 = (*kc)[0], g3 = (*kc)[1], g1 = (*kc)[2];
        if (b3 == r.zero() || g1 == r.zero() || r.add(g3, r.mul(b2, b3)) != r.zero()) continue;
        candidates.push_back({FamilyKind::NonDegenerate,
                              {{"beta2", b2}, {"beta3", b3}, {"gamma1", g1}, {"gamma2", g2}, {"gamma3", g3}},
                              {{"m", m}, {"l", l}}});
      }
    }
  }
  for (auto& tag : candidates) {
    if (matches(tag)) {
      out.tag = std::move(tag);
      return out;
    }
  }
  out.tag = {FamilyKind::Unclassifiable, {}, {}};
  return out;
}

std::vector<FamilyKind> degenerate_families() {
  return {FamilyKind::AllLinear,        FamilyKind::LinearPlusLeibniz,
          FamilyKind::MultiplicativeSquare, FamilyKind::MultiplicativeSquareShifted,
          FamilyKind::LambdaKFamilyA,   FamilyKind::LambdaKFamilyB};
}

std::vector<FamilyTag> family_instances(const RingPtr& ring, FamilyKind kind, std::size_t limit,
                                        std::uint32_t seed) {
  const Ring& r = *ring;
  require_field(r);
  std::vector<Elem> all(r.size());
  std::iota(all.begin(), all.end(), Elem{0});
  std::vector<Elem> nonzero(all.begin() + 1, all.end());

  std::vector<std::string> names;
  std::vector<const std::vector<Elem>*> ranges;
  std::string fn_name;
  std::vector<FnTable> fns;
  auto scalars = [&](std::initializer_list<std::string> ns) {
    for (const auto& n : ns) {
      names.push_back(n);
      ranges.push_back(&all);
    }
  };
  switch (kind) {
    case FamilyKind::AllLinear: scalars({"lambda1", "lambda2"}); break;
    case FamilyKind::LinearPlusLeibniz:
      scalars({"lambda", "k1"});
      fn_name = "delta";
      fns = enumerate_maps(ring, {ClassTag::Leibniz});
      break;
    case FamilyKind::MultiplicativeSquare:
      scalars({"h1", "lambda"});
      fn_name = "m";
      fns = enumerate_maps(ring, {ClassTag::Multiplicative});
      break;
    case FamilyKind::MultiplicativeSquareShifted:
      scalars({"h1", "a", "b"});
      fn_name = "m";
      fns = enumerate_maps(ring, {ClassTag::Multiplicative});
      break;
    case FamilyKind::LambdaKFamilyA: scalars({"gamma", "lambda"}); break;
    case FamilyKind::LambdaKFamilyB:
      names = {"gamma", "lambda"};
      ranges = {&all, &nonzero};
      fn_name = "m";
      fns = enumerate_maps(ring, {ClassTag::Multiplicative});
      break;
    default:
      throw Error(ErrorCode::InvalidSpec,
                  std::string(to_string(kind)) + " has no enumerable instances");
  }

  std::size_t total = fn_name.empty() ? 1 : fns.size();
  for (const auto* rg : ranges) total *= rg->size();
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (total > limit) {
    std::mt19937 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(limit);
    std::sort(order.begin(), order.end());
  }
  std::vector<FamilyTag> out;
  for (std::size_t idx : order) {
    FamilyTag tag{kind, {}, {}};
    if (!fn_name.empty()) {
      tag.witnesses.emplace(fn_name, fns[idx % fns.size()]);
      idx /= fns.size();
    }
    for (std::size_t i = ranges.size(); i-- > 0;) {
      tag.scalars[names[i]] = (*ranges[i])[idx % ranges[i]->size()];
      idx /= ranges[i]->size();
    }
    out.push_back(std::move(tag));
  }
  return out;
}

TheoremReport verify_pexider(const RingPtr& ring, const VerifyOptions& opt) {
  const Ring& r = *ring;
  require_field(r);
  TheoremReport rep;
  rep.theorem = "pexider";
  rep.ring = ring;
  const auto eq = parse_equation(kPexiderEquation);
  const SolutionSet found = brute_force(ring, {eq}, {}, opt);
  rep.solutions_found = found.solutions.size();

  std::map<std::string, std::size_t> counts;
  std::map<std::size_t, std::size_t> ranks;
  std::size_t unclassified = 0;
  for (const auto& b : found.solutions) {
    const auto c = classify_pexider(b.functions.at("f"), b.functions.at("h"), b.functions.at("k"));
    ++counts[std::string(to_string(c.tag.kind))];
    ++ranks[c.rank];
    if (c.tag.kind == FamilyKind::Unclassifiable) {
      rep.forward_ok = false;
      record(rep.counterexamples, unclassified, {b, {}, "unclassifiable, rank " + std::to_string(c.rank)});
    }
    rep.witnesses.push_back({b, c.tag});
  }

  std::set<std::vector<Elem>> image;
  std::size_t failures = 0;
  for (FamilyKind kind : degenerate_families())
    for (const auto& tag : family_instances(ring, kind, std::numeric_limits<std::size_t>::max())) {
      const PexiderTriple t = instantiate(tag, ring);
      std::vector<Elem> key = t.f.values;
      key.insert(key.end(), t.h.values.begin(), t.h.values.end());
      key.insert(key.end(), t.k.values.begin(), t.k.values.end());
      if (!image.insert(key).second) continue;
      const Binding b = bind({{"f", t.f}, {"h", t.h}, {"k", t.k}});
      auto bad = residual(eq, b, r);
      if (!bad.empty()) {
        rep.backward_ok = false;
        record(rep.counterexamples, failures, {b, std::move(bad), "member of " + tag.describe(r)});
      }
    }
  rep.predicted_count = image.size();
  nlohmann::json fc = nlohmann::json::object();
  for (const auto& [name, n] : counts) fc[name] = n;
  rep.details["family_counts"] = fc;
  nlohmann::json rc = nlohmann::json::object();
  for (const auto& [rk, n] : ranks) rc[std::to_string(rk)] = n;
  rep.details["rank_counts"] = rc;
  rep.details["char2_hypothesis_unmet"] = r.characteristic() == 2;
  rep.details["backward_failures"] = failures;
  return rep;
}

TheoremReport verify_alien(const RingPtr& ring, Elem lambda, Elem mu, const VerifyOptions& opt) {
  const Ring& r = *ring;
  if (lambda >= r.size() || mu >= r.size())
    throw Error(ErrorCode::InvalidSpec, "parameter out of range");
  if (lambda == r.zero() && mu == r.zero())
    throw Error(ErrorCode::BothZero, "lambda and mu are both zero");
  require_field(r);

  TheoremReport rep;
  rep.theorem = "alien";
  rep.ring = ring;
  rep.params = {{"lam", lambda}, {"mu", mu}};
  const auto eq = parse_equation(kAlienEquation);
  const SolutionSet found = brute_force(ring, {eq}, rep.params, opt);
  rep.solutions_found = found.solutions.size();

  std::vector<std::pair<FnTable, FamilyTag>> predicted;
  if (lambda == r.zero()) {
    for (auto& m : enumerate_maps(ring, {ClassTag::Multiplicative}, opt.budget))
      predicted.push_back({m, {FamilyKind::AlienA, {}, {}}});
  } else if (mu == r.zero()) {
    for (auto& d : enumerate_maps(ring, {ClassTag::Leibniz}, opt.budget))
      predicted.push_back({d, {FamilyKind::AlienB, {}, {}}});
  } else {
    const Elem c = r.mul(r.sub(mu, lambda), *r.inverse(mu));
    predicted.push_back({zero_map(ring), {FamilyKind::AlienZero, {}, {}}});
    if (c != r.zero())
      predicted.push_back({scale(c, identity_map(ring)),
                           {FamilyKind::AlienScaled, {{"lambda", lambda}, {"mu", mu}, {"c", c}}, {}}});
    rep.details["scale"] = c;
  }
  rep.predicted_count = predicted.size();

  std::size_t failures = 0;
  for (const auto& b : found.solutions) {
    const FnTable& f = b.functions.at("f");
    auto it = std::find_if(predicted.begin(), predicted.end(),
                           [&](const auto& p) { return p.first == f; });
    if (it == predicted.end()) {
      rep.forward_ok = false;
      record(rep.counterexamples, failures, {b, {}, "solution outside the predicted set"});
    } else {
      rep.witnesses.push_back({b, it->second});
    }
  }
  for (const auto& [f, tag] : predicted) {
    const bool present = std::any_of(found.solutions.begin(), found.solutions.end(),
                                     [&](const Binding& b) { return b.functions.at("f") == f; });
    if (!present) {
      rep.backward_ok = false;
      const Binding b = bind({{"f", f}}, rep.params);
      record(rep.counterexamples, failures, {b, residual(eq, b, r), "predicted " + tag.describe(r) + " fails"});
    }
  }
  return rep;
}

}  // namespace fnq
