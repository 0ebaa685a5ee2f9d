#include "fnq/maps.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "fnq/error.hpp"

namespace fnq {

std::string_view to_string(ClassTag tag) {
  switch (tag) {
    case ClassTag::Arbitrary: return "Arbitrary";
    case ClassTag::Additive: return "Additive";
    case ClassTag::Multiplicative: return "Multiplicative";
    case ClassTag::Homomorphism: return "Homomorphism";
    case ClassTag::Leibniz: return "Leibniz";
    case ClassTag::Derivation: return "Derivation";
    case ClassTag::Logarithmic: return "Logarithmic";
    case ClassTag::HomoDerivSofy: return "HomoDerivSofy";
    case ClassTag::HomoDerivMP: return "HomoDerivMP";
  }
  return "Unknown";
}

std::optional<ClassTag> class_tag_from_string(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "arbitrary") return ClassTag::Arbitrary;
  if (lower == "additive") return ClassTag::Additive;
  if (lower == "multiplicative") return ClassTag::Multiplicative;
  if (lower == "homomorphism") return ClassTag::Homomorphism;
  if (lower == "leibniz") return ClassTag::Leibniz;
  if (lower == "derivation") return ClassTag::Derivation;
  if (lower == "logarithmic") return ClassTag::Logarithmic;
  if (lower == "homoderivsofy" || lower == "sofy") return ClassTag::HomoDerivSofy;
  if (lower == "homoderivmp" || lower == "mp") return ClassTag::HomoDerivMP;
  return std::nullopt;
}

bool FunctionClass::additive_based() const noexcept {
  switch (tag) {
    case ClassTag::Additive:
    case ClassTag::Homomorphism:
    case ClassTag::Derivation:
    case ClassTag::HomoDerivSofy:
    case ClassTag::HomoDerivMP:
      return true;
    default:
      return false;
  }
}

std::string FunctionClass::describe() const {
  std::string out(to_string(tag));
  if (tag == ClassTag::HomoDerivSofy) out += "(eps=" + std::to_string(epsilon) + ")";
  return out;
}

bool Classification::contains(ClassTag tag) const noexcept {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

FnTable identity_map(const RingPtr& ring) { return {ring, ring->domain()}; }

FnTable zero_map(const RingPtr& ring) {
  return {ring, std::vector<Elem>(ring->domain().size(), ring->zero())};
}

FnTable constant_map(const RingPtr& ring, Elem c) {
  return {ring, std::vector<Elem>(ring->domain().size(), c)};
}

FnTable scale(Elem c, const FnTable& f) {
  FnTable out = f;
  for (auto& v : out.values) v = f.ring->mul(c, v);
  return out;
}

FnTable add(const FnTable& f, const FnTable& g) {
  FnTable out = f;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = f.ring->add(f.values[i], g.values[i]);
  return out;
}

FnTable sub(const FnTable& f, const FnTable& g) {
  FnTable out = f;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = f.ring->sub(f.values[i], g.values[i]);
  return out;
}

FnTable product(const FnTable& f, const FnTable& g) {
  FnTable out = f;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = f.ring->mul(f.values[i], g.values[i]);
  return out;
}

namespace {

// Checks pred(i, j, x, y) over all ordered pairs of domain positions.
template <typename Pred>
bool all_pairs(const Ring& r, Pred pred) {
  const auto& dom = r.domain();
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = 0; j < dom.size(); ++j)
      if (!pred(dom[i], dom[j])) return false;
  return true;
}

bool multiplicative_pair(const Ring& r, const std::vector<Elem>& v, Elem x, Elem y) {
  const auto val = [&](Elem e) { return v[static_cast<std::size_t>(r.domain_pos(e))]; };
  return val(r.mul(x, y)) == r.mul(val(x), val(y));
}

bool leibniz_pair(const Ring& r, const std::vector<Elem>& v, Elem x, Elem y) {
  const auto val = [&](Elem e) { return v[static_cast<std::size_t>(r.domain_pos(e))]; };
  return val(r.mul(x, y)) == r.add(r.mul(val(x), y), r.mul(x, val(y)));
}

bool sofy_pair(const Ring& r, const std::vector<Elem>& v, Elem eps, Elem x, Elem y) {
  const auto val = [&](Elem e) { return v[static_cast<std::size_t>(r.domain_pos(e))]; };
  const Elem rhs = r.add(r.add(r.mul(val(x), y), r.mul(x, val(y))),
                         r.mul(r.mul(eps, val(x)), val(y)));
  return val(r.mul(x, y)) == rhs;
}

bool in_domain_units(const Ring& r, Elem e) {
  if (!r.is_unit(e) || r.domain_pos(e) < 0) return false;
  return r.domain_pos(*r.inverse(e)) >= 0;
}

// Closure of `gens` under `op`, starting from `identity`. Returns the
// generated set as a membership vector over the carrier.
template <typename Op>
std::vector<bool> closure(const Ring& r, const std::vector<Elem>& gens, Elem identity, Op op) {
  std::vector<bool> in(r.size(), false);
  std::deque<Elem> queue{identity};
  in[identity] = true;
  while (!queue.empty()) {
    const Elem s = queue.front();
    queue.pop_front();
    for (Elem g : gens) {
      const Elem t = op(s, g);
      if (!in[t]) {
        in[t] = true;
        queue.push_back(t);
      }
    }
  }
  return in;
}

// Extends generator images to a homomorphism of the generated (finite)
// group; returns false on an inconsistency. Writes into `values` at domain
// positions.
template <typename SrcOp, typename DstOp>
bool extend_hom(const Ring& r, const std::vector<Elem>& gens, const std::vector<Elem>& images,
                Elem src_identity, Elem dst_identity, SrcOp src_op, DstOp dst_op,
                std::vector<Elem>& values) {
  std::vector<bool> seen(r.size(), false);
  std::vector<Elem> image(r.size(), 0);
  std::deque<Elem> queue{src_identity};
  seen[src_identity] = true;
  image[src_identity] = dst_identity;
  while (!queue.empty()) {
    const Elem s = queue.front();
    queue.pop_front();
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      const Elem t = src_op(s, gens[gi]);
      const Elem v = dst_op(image[s], images[gi]);
      if (!seen[t]) {
        seen[t] = true;
        image[t] = v;
        queue.push_back(t);
      } else if (image[t] != v) {
        return false;
      }
    }
  }
  for (std::size_t e = 0; e < r.size(); ++e)
    if (seen[e]) values[static_cast<std::size_t>(r.domain_pos(static_cast<Elem>(e)))] = image[e];
  return true;
}

void require_budget(long double cost, std::uint64_t budget, const std::string& what) {
  if (cost > static_cast<long double>(budget))
    throw Error(ErrorCode::BudgetExceeded,
                what + " needs " + std::to_string(static_cast<double>(cost)) +
                    " candidates, budget is " + std::to_string(budget));
}

// Depth-first search over domain positions for classes defined by a binary
// identity reading f at x, y and x·y. Each pair is checked once the largest
// of those three positions has been assigned.
template <typename PairOk>
std::vector<FnTable> point_search(const RingPtr& ring, PairOk pair_ok,
                                  const std::vector<std::vector<Elem>>& choices,
                                  std::uint64_t budget) {
  const Ring& r = *ring;
  const auto& dom = r.domain();
  const std::size_t n = dom.size();
  std::vector<std::vector<std::pair<Elem, Elem>>> at_level(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto xy = static_cast<std::size_t>(r.domain_pos(r.mul(dom[i], dom[j])));
      at_level[std::max({i, j, xy})].push_back({dom[i], dom[j]});
    }
  std::vector<FnTable> out;
  std::vector<Elem> values(n, 0);
  std::uint64_t nodes = 0;
  // iterative DFS: choice index per level
  std::vector<std::size_t> pick(n, 0);
  std::size_t level = 0;
  while (true) {
    if (pick[level] == choices[level].size()) {
      pick[level] = 0;
      if (level == 0) break;
      --level;
      ++pick[level];
      continue;
    }
    values[level] = choices[level][pick[level]];
    if (++nodes > budget)
      throw Error(ErrorCode::BudgetExceeded,
                  "enumeration exceeded budget of " + std::to_string(budget) + " nodes");
    bool ok = true;
    for (const auto& [x, y] : at_level[level])
      if (!pair_ok(values, x, y)) {
        ok = false;
        break;
      }
    if (!ok) {
      ++pick[level];
      continue;
    }
    if (level + 1 == n) {
      out.push_back({ring, values});
      ++pick[level];
    } else {
      ++level;
    }
  }
  return out;
}

std::vector<Elem> all_elements(const Ring& r) {
  std::vector<Elem> e(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) e[i] = static_cast<Elem>(i);
  return e;
}

std::vector<Elem> unit_generators(const Ring& r, const std::vector<Elem>& units) {
  std::vector<Elem> gens;
  if (units.empty()) return gens;
  const Elem one = *r.one();
  auto mul = [&r](Elem a, Elem b) { return r.mul(a, b); };
  std::vector<bool> in = closure(r, gens, one, mul);
  for (Elem u : units) {
    if (in[u]) continue;
    gens.push_back(u);
    in = closure(r, gens, one, mul);
  }
  return gens;
}

}  // namespace

bool is_additive(const FnTable& f) {
  const Ring& r = *f.ring;
  return all_pairs(r, [&](Elem x, Elem y) { return f.at(r.add(x, y)) == r.add(f.at(x), f.at(y)); });
}

bool is_multiplicative(const FnTable& f) {
  const Ring& r = *f.ring;
  return all_pairs(r, [&](Elem x, Elem y) { return multiplicative_pair(r, f.values, x, y); });
}

bool is_leibniz(const FnTable& f) {
  const Ring& r = *f.ring;
  return all_pairs(r, [&](Elem x, Elem y) { return leibniz_pair(r, f.values, x, y); });
}

bool satisfies_sofy(const FnTable& f, Elem epsilon) {
  const Ring& r = *f.ring;
  return all_pairs(r, [&](Elem x, Elem y) { return sofy_pair(r, f.values, epsilon, x, y); });
}

bool is_logarithmic(const FnTable& f) {
  const Ring& r = *f.ring;
  const auto units = domain_units(r);
  std::vector<bool> unit(r.size(), false);
  for (Elem u : units) unit[u] = true;
  for (Elem x : r.domain())
    if (!unit[x] && f.at(x) != r.zero()) return false;
  for (Elem x : units)
    for (Elem y : units)
      if (f.at(r.mul(x, y)) != r.add(f.at(x), f.at(y))) return false;
  return true;
}

bool is_member(const FnTable& f, const FunctionClass& cls) {
  switch (cls.tag) {
    case ClassTag::Arbitrary: return true;
    case ClassTag::Additive: return is_additive(f);
    case ClassTag::Multiplicative: return is_multiplicative(f);
    case ClassTag::Homomorphism: return is_additive(f) && is_multiplicative(f);
    case ClassTag::Leibniz: return is_leibniz(f);
    case ClassTag::Derivation: return is_additive(f) && is_leibniz(f);
    case ClassTag::Logarithmic: return is_logarithmic(f);
    case ClassTag::HomoDerivSofy: return is_additive(f) && satisfies_sofy(f, cls.epsilon);
    case ClassTag::HomoDerivMP:
      return is_additive(f) && is_multiplicative(f) && is_leibniz(f);
  }
  return false;
}

std::vector<Elem> domain_units(const Ring& ring) {
  std::vector<Elem> out;
  for (Elem e : ring.domain())
    if (in_domain_units(ring, e)) out.push_back(e);
  return out;
}

std::vector<Elem> additive_generators(const Ring& ring) {
  std::vector<Elem> gens;
  auto add = [&ring](Elem a, Elem b) { return ring.add(a, b); };
  std::vector<bool> in = closure(ring, gens, ring.zero(), add);
  for (Elem e : ring.domain()) {
    if (in[e]) continue;
    gens.push_back(e);
    in = closure(ring, gens, ring.zero(), add);
  }
  return gens;
}

long double enumeration_cost(const Ring& ring, const FunctionClass& cls) {
  const long double q = static_cast<long double>(ring.size());
  if (cls.additive_based())
    return std::pow(q, static_cast<long double>(additive_generators(ring).size()));
  if (cls.tag == ClassTag::Logarithmic) {
    const auto units = domain_units(ring);
    return std::pow(q, static_cast<long double>(unit_generators(ring, units).size()));
  }
  return std::pow(q, static_cast<long double>(ring.domain().size()));
}

std::vector<FnTable> enumerate_maps(const RingPtr& ring, const FunctionClass& cls,
                                    std::uint64_t budget) {
  const Ring& r = *ring;
  const std::size_t n = r.domain().size();
  const auto q = static_cast<Elem>(r.size());
  std::vector<FnTable> out;

  if (cls.tag == ClassTag::Arbitrary) {
    require_budget(enumeration_cost(r, cls), budget, "Arbitrary enumeration");
    std::vector<Elem> values(n, 0);
    for (;;) {
      out.push_back({ring, values});
      std::size_t i = n;
      while (i > 0 && ++values[i - 1] == q) values[--i] = 0;
      if (i == 0) return out;
    }
  }

  if (cls.additive_based()) {
    require_budget(enumeration_cost(r, cls), budget, cls.describe() + " enumeration");
    const auto gens = additive_generators(r);
    std::vector<Elem> images(gens.size(), 0);
    auto add = [&r](Elem a, Elem b) { return r.add(a, b); };
    while (true) {
      std::vector<Elem> values(n, r.zero());
      if (extend_hom(r, gens, images, r.zero(), r.zero(), add, add, values)) {
        FnTable f{ring, std::move(values)};
        if (is_member(f, cls)) out.push_back(std::move(f));
      }
      std::size_t i = gens.size();
      bool done = true;
      while (i > 0) {
        --i;
        if (++images[i] < q) {
          done = false;
          break;
        }
        images[i] = 0;
      }
      if (done) break;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  if (cls.tag == ClassTag::Logarithmic) {
    require_budget(enumeration_cost(r, cls), budget, "Logarithmic enumeration");
    const auto units = domain_units(r);
    if (units.empty()) return {zero_map(ring)};
    const auto gens = unit_generators(r, units);
    std::vector<Elem> images(gens.size(), 0);
    auto mul = [&r](Elem a, Elem b) { return r.mul(a, b); };
    auto add = [&r](Elem a, Elem b) { return r.add(a, b); };
    while (true) {
      std::vector<Elem> values(n, r.zero());
      if (extend_hom(r, gens, images, *r.one(), r.zero(), mul, add, values))
        out.push_back({ring, std::move(values)});
      std::size_t i = gens.size();
      bool done = true;
      while (i > 0) {
        --i;
        if (++images[i] < q) {
          done = false;
          break;
        }
        images[i] = 0;
      }
      if (done) break;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::vector<Elem>> choices(n, all_elements(r));
  if (cls.tag == ClassTag::Multiplicative)
    return point_search(
        ring, [&r](const std::vector<Elem>& v, Elem x, Elem y) { return multiplicative_pair(r, v, x, y); },
        choices, budget);
  if (cls.tag == ClassTag::Leibniz)
    return point_search(
        ring, [&r](const std::vector<Elem>& v, Elem x, Elem y) { return leibniz_pair(r, v, x, y); },
        choices, budget);
  throw Error(ErrorCode::InvalidSpec, "unsupported class for enumeration");
}

Classification classify_map(const FnTable& f) {
  Classification c;
  const Ring& r = *f.ring;
  const bool additive = is_additive(f);
  const bool multiplicative = is_multiplicative(f);
  const bool leibniz = is_leibniz(f);
  c.tags.push_back(ClassTag::Arbitrary);
  if (additive) c.tags.push_back(ClassTag::Additive);
  if (multiplicative) c.tags.push_back(ClassTag::Multiplicative);
  if (additive && multiplicative) c.tags.push_back(ClassTag::Homomorphism);
  if (leibniz) c.tags.push_back(ClassTag::Leibniz);
  if (additive && leibniz) c.tags.push_back(ClassTag::Derivation);
  if (is_logarithmic(f)) c.tags.push_back(ClassTag::Logarithmic);
  if (additive)
    for (Elem eps : r.center())
      if (eps != r.zero() && satisfies_sofy(f, eps)) c.sofy_epsilons.push_back(eps);
  if (!c.sofy_epsilons.empty()) c.tags.push_back(ClassTag::HomoDerivSofy);
  if (additive && multiplicative && leibniz) c.tags.push_back(ClassTag::HomoDerivMP);
  return c;
}

FnTable inner_derivation(const RingPtr& ring, Elem b) {
  FnTable f{ring, {}};
  for (Elem x : ring->domain()) f.values.push_back(ring->sub(ring->mul(x, b), ring->mul(b, x)));
  return f;
}

namespace {

// Row-reduces `rows` in place over the field; returns the rank.
std::size_t row_reduce(std::vector<std::vector<Elem>>& rows, const Ring& k) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == k.zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Elem inv = *k.inverse(rows[rank][c]);
    for (auto& v : rows[rank]) v = k.mul(inv, v);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == k.zero()) continue;
      const Elem factor = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j)
        rows[i][j] = k.sub(rows[i][j], k.mul(factor, rows[rank][j]));
    }
    ++rank;
  }
  return rank;
}

void require_field(const Ring& k) {
  if (!k.is_field()) throw Error(ErrorCode::NotAField, k.name() + " is not a field");
}

}  // namespace

std::size_t lin_rank(std::span<const FnTable> maps, const Ring& scalars) {
  require_field(scalars);
  std::vector<std::vector<Elem>> rows;
  for (const auto& f : maps) {
    if (f.ring->size() != scalars.size() || f.ring->content_hash() != scalars.content_hash())
      throw Error(ErrorCode::NotAField, "map codomain differs from the scalar field");
    rows.push_back(f.values);
  }
  return row_reduce(rows, scalars);
}

std::size_t lin_rank(std::initializer_list<FnTable> maps, const Ring& scalars) {
  return lin_rank(std::span<const FnTable>(maps.begin(), maps.size()), scalars);
}

std::optional<std::vector<Elem>> solve_combination(std::span<const FnTable> basis,
                                                   const FnTable& target, const Ring& k) {
  require_field(k);
  // Augmented system: columns are basis maps, rows are domain points.
  const std::size_t m = target.values.size();
  const std::size_t nb = basis.size();
  std::vector<std::vector<Elem>> a(m, std::vector<Elem>(nb + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < nb; ++j) a[i][j] = basis[j].values[i];
    a[i][nb] = target.values[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < nb && rank < m; ++c) {
    std::size_t p = rank;
    while (p < m && a[p][c] == k.zero()) ++p;
    if (p == m) continue;
    std::swap(a[rank], a[p]);
    const Elem inv = *k.inverse(a[rank][c]);
    for (auto& v : a[rank]) v = k.mul(inv, v);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == rank || a[i][c] == k.zero()) continue;
      const Elem factor = a[i][c];
      for (std::size_t j = 0; j <= nb; ++j) a[i][j] = k.sub(a[i][j], k.mul(factor, a[rank][j]));
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t i = rank; i < m; ++i)
    if (a[i][nb] != k.zero()) return std::nullopt;
  std::vector<Elem> coeffs(nb, k.zero());
  for (std::size_t i = 0; i < rank; ++i) coeffs[pivot_col[i]] = a[i][nb];
  return coeffs;
}

nlohmann::json to_json(const FnTable& f) {
  nlohmann::json j;
  j["domain"] = f.ring->domain();
  j["codomain"] = f.ring->spec() ? to_json(*f.ring->spec()) : nlohmann::json(f.ring->name());
  if (f.ring->spec() && f.ring->spec()->subring) j["codomain"].erase("subring");
  j["values"] = f.values;
  return j;
}

std::string csv_header(const FnTable& f, const std::string& name) {
  std::string out;
  for (std::size_t i = 0; i < f.ring->domain().size(); ++i) {
    if (i) out += ",";
    out += name + std::to_string(f.ring->domain()[i]);
  }
  return out;
}

std::string csv_row(const FnTable& f) {
  std::string out;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(f.values[i]);
  }
  return out;
}

std::string render(const FnTable& f) {
  std::string out = "(";
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (i) out += ",";
    out += f.ring->element_name(f.values[i]);
  }
  return out + ")";
}

}  // namespace fnq
