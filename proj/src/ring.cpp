#include "fnq/ring.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>

#include "fnq/error.hpp"

namespace fnq {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::AxiomViolation: return "AxiomViolation";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotAField: return "NotAField";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::UnboundName: return "UnboundName";
    case ErrorCode::LiteralInNonUnitalRing: return "LiteralInNonUnitalRing";
    case ErrorCode::ArgumentOutsideDomain: return "ArgumentOutsideDomain";
    case ErrorCode::NotReducible: return "NotReducible";
    case ErrorCode::NotCentral: return "NotCentral";
    case ErrorCode::EpsilonZero: return "EpsilonZero";
    case ErrorCode::ResidualNonzero: return "ResidualNonzero";
    case ErrorCode::BothZero: return "BothZero";
    case ErrorCode::UnsupportedArgument: return "UnsupportedArgument";
    case ErrorCode::UnsupportedGenerator: return "UnsupportedGenerator";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<unsigned>;  // coefficients over F_p, constant first

// Saturates at SIZE_MAX so budget checks never see a wrapped value.
std::size_t ipow(std::size_t base, unsigned e) {
  std::size_t r = 1;
  while (e--) {
    if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base)
      return std::numeric_limits<std::size_t>::max();
    r *= base;
  }
  return r;
}

Poly digits(std::size_t index, unsigned p, unsigned k) {
  Poly c(k);
  for (unsigned i = 0; i < k; ++i) {
    c[i] = static_cast<unsigned>(index % p);
    index /= p;
  }
  return c;
}

std::size_t undigits(const Poly& c, unsigned p) {
  std::size_t index = 0;
  for (std::size_t i = c.size(); i-- > 0;) index = index * p + c[i];
  return index;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

unsigned inv_mod(unsigned a, unsigned p) {
  for (unsigned b = 1; b < p; ++b)
    if (a * b % p == 1) return b;
  return 0;
}

// Remainder of a modulo a nonzero polynomial m.
Poly poly_mod(Poly a, Poly m, unsigned p) {
  trim(a);
  trim(m);
  const unsigned lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const unsigned factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = (a[shift + i] + p - factor * m[i] % p) % p;
    trim(a);
  }
  return a;
}

bool irreducible(const Poly& modulus, unsigned p) {
  const unsigned deg = static_cast<unsigned>(modulus.size() - 1);
  for (unsigned d = 1; d <= deg / 2; ++d) {
    // every monic polynomial of degree d
    const std::size_t count = ipow(p, d);
    for (std::size_t idx = 0; idx < count; ++idx) {
      Poly div = digits(idx, p, d);
      div.push_back(1);
      if (poly_mod(modulus, div, p).empty()) return false;
    }
  }
  return true;
}

Poly default_modulus(unsigned p, unsigned k) {
  const std::size_t count = ipow(p, k);
  for (std::size_t idx = 0; idx < count; ++idx) {
    Poly m = digits(idx, p, k);
    m.push_back(1);
    if (irreducible(m, p)) return m;
  }
  throw Error(ErrorCode::ReducibleModulus, "no irreducible polynomial found");
}

std::string poly_name(const Poly& c, unsigned p) {
  (void)p;
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
      continue;
    }
    if (c[i] != 1) out += std::to_string(c[i]);
    out += "x";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

void check_budget(std::size_t size, std::size_t budget) {
  if (size > budget)
    throw Error(ErrorCode::BudgetExceeded,
                "ring size " + std::to_string(size) + " exceeds budget " +
                    std::to_string(budget));
  if (size > 65536)
    throw Error(ErrorCode::BudgetExceeded, "ring size exceeds element index range");
}

void require_prime(unsigned p) {
  if (!is_prime(p))
    throw Error(ErrorCode::NonPrimeModulus, std::to_string(p) + " is not prime");
}

struct Tables {
  std::size_t size = 0;
  std::vector<Elem> add, mul;
  std::optional<Elem> one;
  std::vector<std::string> names;
};

Tables polynomial_tables(unsigned p, unsigned k, const Poly& modulus, bool truncate) {
  Tables t;
  t.size = ipow(p, k);
  t.add.resize(t.size * t.size);
  t.mul.resize(t.size * t.size);
  std::vector<Poly> coeffs(t.size);
  for (std::size_t i = 0; i < t.size; ++i) coeffs[i] = digits(i, p, k);
  for (std::size_t i = 0; i < t.size; ++i) {
    for (std::size_t j = 0; j < t.size; ++j) {
      Poly sum(k);
      for (unsigned d = 0; d < k; ++d) sum[d] = (coeffs[i][d] + coeffs[j][d]) % p;
      t.add[i * t.size + j] = static_cast<Elem>(undigits(sum, p));

      Poly prod(2 * k, 0);
      for (unsigned a = 0; a < k; ++a)
        for (unsigned b = 0; b < k; ++b)
          prod[a + b] = (prod[a + b] + coeffs[i][a] * coeffs[j][b]) % p;
      Poly reduced;
      if (truncate) {
        reduced.assign(prod.begin(), prod.begin() + k);
      } else {
        reduced = poly_mod(prod, modulus, p);
        reduced.resize(k, 0);
      }
      t.mul[i * t.size + j] = static_cast<Elem>(undigits(reduced, p));
    }
  }
  t.one = static_cast<Elem>(k > 0 ? 1 : 0);
  for (std::size_t i = 0; i < t.size; ++i) t.names.push_back(poly_name(coeffs[i], p));
  return t;
}

Tables tables_for(const RingSpec& spec, std::size_t budget) {
  Tables t;
  switch (spec.kind) {
    case RingKind::Zn: {
      if (spec.n < 2) throw Error(ErrorCode::InvalidSpec, "Zn requires n >= 2");
      check_budget(spec.n, budget);
      t.size = spec.n;
      t.add.resize(t.size * t.size);
      t.mul.resize(t.size * t.size);
      for (std::size_t a = 0; a < t.size; ++a)
        for (std::size_t b = 0; b < t.size; ++b) {
          t.add[a * t.size + b] = static_cast<Elem>((a + b) % t.size);
          t.mul[a * t.size + b] = static_cast<Elem>((a * b) % t.size);
        }
      t.one = 1;
      for (std::size_t a = 0; a < t.size; ++a) t.names.push_back(std::to_string(a));
      return t;
    }
    case RingKind::GF: {
      require_prime(spec.p);
      if (spec.k < 1) throw Error(ErrorCode::InvalidSpec, "GF requires k >= 1");
      check_budget(ipow(spec.p, spec.k), budget);
      Poly modulus;
      if (spec.modulus.empty()) {
        modulus = default_modulus(spec.p, spec.k);
      } else {
        modulus = spec.modulus;
        for (auto& c : modulus) {
          if (c >= spec.p) throw Error(ErrorCode::InvalidSpec, "modulus coefficient out of range");
        }
        trim(modulus);
        if (modulus.size() != spec.k + 1)
          throw Error(ErrorCode::InvalidSpec, "modulus degree must equal k");
        const unsigned lead_inv = inv_mod(modulus.back(), spec.p);
        for (auto& c : modulus) c = c * lead_inv % spec.p;
        if (!irreducible(modulus, spec.p))
          throw Error(ErrorCode::ReducibleModulus, "modulus is reducible over F_" +
                                                       std::to_string(spec.p));
      }
      return polynomial_tables(spec.p, spec.k, modulus, false);
    }
    case RingKind::PolyQuot: {
      require_prime(spec.p);
      if (spec.k < 1) throw Error(ErrorCode::InvalidSpec, "PolyQuot requires k >= 1");
      check_budget(ipow(spec.p, spec.k), budget);
      return polynomial_tables(spec.p, spec.k, {}, true);
    }
    case RingKind::UT2: {
      require_prime(spec.p);
      const unsigned p = spec.p;
      check_budget(ipow(p, 3), budget);
      t.size = ipow(p, 3);
      t.add.resize(t.size * t.size);
      t.mul.resize(t.size * t.size);
      auto split = [p](std::size_t i) {
        return std::array<unsigned, 3>{static_cast<unsigned>(i / (p * p)),
                                       static_cast<unsigned>(i / p % p),
                                       static_cast<unsigned>(i % p)};
      };
      auto join = [p](unsigned a, unsigned b, unsigned c) {
        return static_cast<Elem>(a % p * p * p + b % p * p + c % p);
      };
      for (std::size_t i = 0; i < t.size; ++i) {
        const auto [a1, b1, c1] = split(i);
        for (std::size_t j = 0; j < t.size; ++j) {
          const auto [a2, b2, c2] = split(j);
          t.add[i * t.size + j] = join(a1 + a2, b1 + b2, c1 + c2);
          // [[a1,b1],[0,c1]] * [[a2,b2],[0,c2]]
          t.mul[i * t.size + j] = join(a1 * a2, a1 * b2 + b1 * c2, c1 * c2);
        }
        t.names.push_back("[[" + std::to_string(a1) + "," + std::to_string(b1) + "],[0," +
                          std::to_string(c1) + "]]");
      }
      t.one = join(1, 0, 1);
      return t;
    }
    case RingKind::Product: {
      if (!spec.left || !spec.right)
        throw Error(ErrorCode::InvalidSpec, "Product requires left and right");
      if (spec.left->subring || spec.right->subring)
        throw Error(ErrorCode::InvalidSpec, "subring is only allowed on the outermost spec");
      const Tables l = tables_for(*spec.left, budget);
      const Tables r = tables_for(*spec.right, budget);
      check_budget(l.size * r.size, budget);
      t.size = l.size * r.size;
      t.add.resize(t.size * t.size);
      t.mul.resize(t.size * t.size);
      for (std::size_t i = 0; i < t.size; ++i) {
        const std::size_t il = i / r.size, ir = i % r.size;
        for (std::size_t j = 0; j < t.size; ++j) {
          const std::size_t jl = j / r.size, jr = j % r.size;
          t.add[i * t.size + j] = static_cast<Elem>(l.add[il * l.size + jl] * r.size +
                                                    r.add[ir * r.size + jr]);
          t.mul[i * t.size + j] = static_cast<Elem>(l.mul[il * l.size + jl] * r.size +
                                                    r.mul[ir * r.size + jr]);
        }
        t.names.push_back("(" + l.names[il] + "," + r.names[ir] + ")");
      }
      if (l.one && r.one) t.one = static_cast<Elem>(*l.one * r.size + *r.one);
      return t;
    }
  }
  throw Error(ErrorCode::InvalidSpec, "unknown ring kind");
}

void verify_axioms(std::size_t n, const std::vector<Elem>& add, const std::vector<Elem>& mul,
                   Elem zero, const std::vector<Elem>& neg, const std::optional<Elem>& one) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::AxiomViolation, "ring axiom violated: " + what);
  };
  auto A = [&](std::size_t a, std::size_t b) { return add[a * n + b]; };
  auto M = [&](std::size_t a, std::size_t b) { return mul[a * n + b]; };
  for (std::size_t a = 0; a < n; ++a) {
    if (A(zero, a) != a || A(a, zero) != a) fail("additive identity");
    if (A(a, neg[a]) != zero) fail("additive inverse");
    if (one && (M(*one, a) != a || M(a, *one) != a)) fail("multiplicative identity");
    for (std::size_t b = 0; b < n; ++b) {
      if (A(a, b) != A(b, a)) fail("commutativity of +");
      for (std::size_t c = 0; c < n; ++c) {
        if (A(A(a, b), c) != A(a, A(b, c))) fail("associativity of +");
        if (M(M(a, b), c) != M(a, M(b, c))) fail("associativity of *");
        if (M(a, A(b, c)) != A(M(a, b), M(a, c))) fail("left distributivity");
        if (M(A(a, b), c) != A(M(a, c), M(b, c))) fail("right distributivity");
      }
    }
  }
}

}  // namespace

RingSpec RingSpec::zn(unsigned n) {
  RingSpec s;
  s.kind = RingKind::Zn;
  s.n = n;
  return s;
}

RingSpec RingSpec::gf(unsigned p, unsigned k, std::vector<unsigned> modulus) {
  RingSpec s;
  s.kind = RingKind::GF;
  s.p = p;
  s.k = k;
  s.modulus = std::move(modulus);
  return s;
}

RingSpec RingSpec::poly_quot(unsigned p, unsigned k) {
  RingSpec s;
  s.kind = RingKind::PolyQuot;
  s.p = p;
  s.k = k;
  return s;
}

RingSpec RingSpec::product(RingSpec left, RingSpec right) {
  RingSpec s;
  s.kind = RingKind::Product;
  s.left = std::make_shared<const RingSpec>(std::move(left));
  s.right = std::make_shared<const RingSpec>(std::move(right));
  return s;
}

RingSpec RingSpec::ut2(unsigned p) {
  RingSpec s;
  s.kind = RingKind::UT2;
  s.p = p;
  return s;
}

RingSpec RingSpec::with_subring(std::vector<Elem> elements) const {
  RingSpec s = *this;
  s.subring = std::move(elements);
  return s;
}

RingSpec ring_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Error(ErrorCode::InvalidSpec, "ring spec must be an object with a string \"kind\"");
  auto uint_field = [&](const char* key) -> unsigned {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
      throw Error(ErrorCode::InvalidSpec, std::string("missing or invalid \"") + key + "\"");
    return j[key].get<unsigned>();
  };
  const std::string kind = j["kind"].get<std::string>();
  RingSpec s;
  if (kind == "Zn") {
    s = RingSpec::zn(uint_field("n"));
  } else if (kind == "GF") {
    std::vector<unsigned> modulus;
    if (j.contains("modulus")) {
      if (!j["modulus"].is_array()) throw Error(ErrorCode::InvalidSpec, "modulus must be an array");
      for (const auto& c : j["modulus"]) {
        if (!c.is_number_integer() || c.get<long long>() < 0)
          throw Error(ErrorCode::InvalidSpec, "modulus coefficients must be non-negative integers");
        modulus.push_back(c.get<unsigned>());
      }
    }
    s = RingSpec::gf(uint_field("p"), uint_field("k"), std::move(modulus));
  } else if (kind == "PolyQuot") {
    s = RingSpec::poly_quot(uint_field("p"), uint_field("k"));
  } else if (kind == "Product") {
    if (!j.contains("left") || !j.contains("right"))
      throw Error(ErrorCode::InvalidSpec, "Product requires left and right");
    s = RingSpec::product(ring_spec_from_json(j["left"]), ring_spec_from_json(j["right"]));
  } else if (kind == "UT2") {
    s = RingSpec::ut2(uint_field("p"));
  } else {
    throw Error(ErrorCode::InvalidSpec, "unknown ring kind \"" + kind + "\"");
  }
  if (j.contains("subring")) {
    if (!j["subring"].is_array()) throw Error(ErrorCode::InvalidSpec, "subring must be an array");
    std::vector<Elem> elems;
    for (const auto& e : j["subring"]) {
      if (!e.is_number_integer() || e.get<long long>() < 0 || e.get<long long>() > 65535)
        throw Error(ErrorCode::InvalidSpec, "subring entries must be element indices");
      elems.push_back(e.get<Elem>());
    }
    s.subring = std::move(elems);
  }
  return s;
}

nlohmann::json to_json(const RingSpec& spec) {
  nlohmann::json j;
  switch (spec.kind) {
    case RingKind::Zn: j = {{"kind", "Zn"}, {"n", spec.n}}; break;
    case RingKind::GF:
      j = {{"kind", "GF"}, {"p", spec.p}, {"k", spec.k}};
      if (!spec.modulus.empty()) j["modulus"] = spec.modulus;
      break;
    case RingKind::PolyQuot: j = {{"kind", "PolyQuot"}, {"p", spec.p}, {"k", spec.k}}; break;
    case RingKind::Product:
      j = {{"kind", "Product"}, {"left", to_json(*spec.left)}, {"right", to_json(*spec.right)}};
      break;
    case RingKind::UT2: j = {{"kind", "UT2"}, {"p", spec.p}}; break;
  }
  if (spec.subring) j["subring"] = *spec.subring;
  return j;
}

std::string label(const RingSpec& spec) {
  std::string out;
  switch (spec.kind) {
    case RingKind::Zn: out = "Z" + std::to_string(spec.n); break;
    case RingKind::GF:
      out = spec.k == 1 ? "GF(" + std::to_string(spec.p) + ")"
                        : "GF(" + std::to_string(spec.p) + "^" + std::to_string(spec.k) + ")";
      break;
    case RingKind::PolyQuot:
      out = "F" + std::to_string(spec.p) + "[x]/(x^" + std::to_string(spec.k) + ")";
      break;
    case RingKind::Product: out = label(*spec.left) + "x" + label(*spec.right); break;
    case RingKind::UT2: out = "UT2(" + std::to_string(spec.p) + ")"; break;
  }
  if (spec.subring) out += "|P" + std::to_string(spec.subring->size());
  return out;
}

Ring Ring::from_tables(std::string name, std::size_t size, std::vector<Elem> add,
                       std::vector<Elem> mul, std::optional<Elem> one,
                       std::optional<std::vector<Elem>> subring) {
  if (size == 0 || add.size() != size * size || mul.size() != size * size)
    throw Error(ErrorCode::InvalidSpec, "table dimensions do not match size");
  for (auto v : add)
    if (v >= size) throw Error(ErrorCode::AxiomViolation, "addition table leaves the carrier");
  for (auto v : mul)
    if (v >= size) throw Error(ErrorCode::AxiomViolation, "multiplication table leaves the carrier");
  if (one && *one >= size) throw Error(ErrorCode::InvalidSpec, "one out of range");
  Ring r;
  r.name_ = std::move(name);
  r.size_ = size;
  r.add_ = std::move(add);
  r.mul_ = std::move(mul);
  r.one_ = one;
  for (std::size_t i = 0; i < size; ++i) r.element_names_.push_back(std::to_string(i));
  r.finish(std::move(subring));
  return r;
}

void Ring::finish(std::optional<std::vector<Elem>> subring) {
  const std::size_t n = size_;
  // additive identity
  bool found = false;
  for (std::size_t z = 0; z < n && !found; ++z) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = add_[z * n + a] == a;
    if (ok) {
      zero_ = static_cast<Elem>(z);
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::AxiomViolation, "ring axiom violated: additive identity");
  neg_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    bool ok = false;
    for (std::size_t b = 0; b < n && !ok; ++b)
      if (add_[a * n + b] == zero_) {
        neg_[a] = static_cast<Elem>(b);
        ok = true;
      }
    if (!ok) throw Error(ErrorCode::AxiomViolation, "ring axiom violated: additive inverse");
  }
  if (n <= kDefaultRingBudget) verify_axioms(n, add_, mul_, zero_, neg_, one_);

  central_flag_.assign(n, false);
  for (std::size_t c = 0; c < n; ++c) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = mul(c, x) == mul(x, c);
    if (ok) {
      central_flag_[c] = true;
      center_.push_back(static_cast<Elem>(c));
    }
  }

  regular_flag_.assign(n, false);
  for (std::size_t r = 0; r < n; ++r) {
    if (r == zero_) continue;
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      if (x != zero_ && (mul(r, x) == zero_ || mul(x, r) == zero_)) ok = false;
    if (ok) {
      regular_flag_[r] = true;
      regular_.push_back(static_cast<Elem>(r));
    }
  }

  unit_flag_.assign(n, false);
  inverse_.assign(n, 0);
  if (one_) {
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (mul(u, v) == *one_ && mul(v, u) == *one_) {
          unit_flag_[u] = true;
          inverse_[u] = static_cast<Elem>(v);
          units_.push_back(static_cast<Elem>(u));
          break;
        }
    Elem acc = *one_;
    characteristic_ = 1;
    while (acc != zero_) {
      acc = add(acc, *one_);
      ++characteristic_;
    }
  }

  domain_pos_.assign(n, -1);
  if (subring) {
    std::vector<Elem> s = *subring;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    std::vector<bool> in(n, false);
    for (Elem e : s) {
      if (e >= n) throw Error(ErrorCode::InvalidSpec, "subring element out of range");
      in[e] = true;
    }
    if (!in[zero_]) throw Error(ErrorCode::InvalidSpec, "subring must contain 0");
    for (Elem a : s) {
      if (!in[neg(a)]) throw Error(ErrorCode::InvalidSpec, "subring not closed under negation");
      for (Elem b : s) {
        if (!in[add(a, b)]) throw Error(ErrorCode::InvalidSpec, "subring not closed under +");
        if (!in[mul(a, b)]) throw Error(ErrorCode::InvalidSpec, "subring not closed under *");
      }
    }
    domain_ = std::move(s);
    has_subring_ = true;
  } else {
    domain_.resize(n);
    for (std::size_t i = 0; i < n; ++i) domain_[i] = static_cast<Elem>(i);
  }
  for (std::size_t i = 0; i < domain_.size(); ++i) domain_pos_[domain_[i]] = static_cast<int>(i);
}

Elem Ring::from_int(long long n) const {
  if (n == 0) return zero_;
  if (!one_)
    throw Error(ErrorCode::LiteralInNonUnitalRing,
                "integer literal " + std::to_string(n) + " needs a unital ring");
  const long long c = characteristic_;
  long long r = n % c;
  if (r < 0) r += c;
  Elem acc = zero_;
  for (long long i = 0; i < r; ++i) acc = add(acc, *one_);
  return acc;
}

std::optional<Elem> Ring::inverse(Elem e) const noexcept {
  if (!unit_flag_[e]) return std::nullopt;
  return inverse_[e];
}

bool Ring::is_field() const noexcept {
  return one_ && *one_ != zero_ && is_commutative() && units_.size() + 1 == size_;
}

std::string Ring::element_name(Elem e) const {
  return e < element_names_.size() ? element_names_[e] : std::to_string(e);
}

std::uint64_t Ring::content_hash() const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  mix(size_);
  for (Elem v : add_) mix(v);
  for (Elem v : mul_) mix(v);
  mix(one_ ? *one_ + 1u : 0u);
  for (Elem v : domain_) mix(v);
  return h;
}

Ring build_ring(const RingSpec& spec, std::size_t budget) {
  Tables t = tables_for(spec, budget);
  Ring r;
  r.name_ = label(spec);
  r.size_ = t.size;
  r.add_ = std::move(t.add);
  r.mul_ = std::move(t.mul);
  r.one_ = t.one;
  r.element_names_ = std::move(t.names);
  r.spec_ = spec;
  r.finish(spec.subring);
  return r;
}

RingPtr make_ring(const RingSpec& spec, std::size_t budget) {
  return std::make_shared<const Ring>(build_ring(spec, budget));
}

std::vector<Elem> center(const Ring& ring) {
  std::vector<Elem> out;
  for (std::size_t c = 0; c < ring.size(); ++c) {
    bool ok = true;
    for (std::size_t x = 0; x < ring.size() && ok; ++x)
      ok = ring.mul(static_cast<Elem>(c), static_cast<Elem>(x)) ==
           ring.mul(static_cast<Elem>(x), static_cast<Elem>(c));
    if (ok) out.push_back(static_cast<Elem>(c));
  }
  return out;
}

bool is_regular(const Ring& ring, Elem e) {
  if (e >= ring.size() || e == ring.zero()) return false;
  for (std::size_t x = 0; x < ring.size(); ++x) {
    const auto xe = static_cast<Elem>(x);
    if (xe == ring.zero()) continue;
    if (ring.mul(e, xe) == ring.zero() || ring.mul(xe, e) == ring.zero()) return false;
  }
  return true;
}

}  // namespace fnq
