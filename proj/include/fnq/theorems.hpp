#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fnq/eqdsl.hpp"
#include "fnq/maps.hpp"
#include "fnq/ring.hpp"
#include "fnq/solver.hpp"
#include "json.hpp"

namespace fnq {

// The equations the theorem checks are built on.
inline constexpr const char* kSofyEquation = "h(x*y) = h(x)*y + x*h(y) + eps*h(x)*h(y)";
inline constexpr const char* kMultiplicativeEquation = "f(x*y) = f(x)*f(y)";
inline constexpr const char* kLeibnizEquation = "f(x*y) = f(x)*y + x*f(y)";
inline constexpr const char* kPexiderEquation = "f(x*y) = h(x)*h(y) + x*k(y) + k(x)*y";
inline constexpr const char* kAlienEquation =
    "lam*(f(x*y) - f(x)*y - x*f(y)) + mu*(f(x*y) - f(x)*f(y)) = 0";

enum class FamilyKind {
  SofyShift,
  MPAnnihilated,
  AllLinear,
  LinearPlusLeibniz,
  MultiplicativeSquare,
  MultiplicativeSquareShifted,
  LambdaKFamilyA,
  LambdaKFamilyB,
  NonDegenerate,
  AlienA,
  AlienB,
  AlienZero,
  AlienScaled,
  Unclassifiable,
};

std::string_view to_string(FamilyKind kind);

// A solution family together with the parameters that pick one member.
// Scalar names per kind:
//   AllLinear                   lambda1, lambda2
//   LinearPlusLeibniz           lambda, k1          + delta
//   MultiplicativeSquare        h1, lambda          + m
//   MultiplicativeSquareShifted h1, a, b            + m     (k = a·id + b·h)
//   LambdaKFamilyA              gamma, lambda
//   LambdaKFamilyB              gamma, lambda       + m
//   NonDegenerate               beta2, beta3, gamma1, gamma2, gamma3 + m, l
//   SofyShift                   epsilon             + m
//   MPAnnihilated               alpha
//   AlienScaled                 lambda, mu, c
struct FamilyTag {
  FamilyKind kind = FamilyKind::Unclassifiable;
  std::map<std::string, Elem> scalars;
  std::map<std::string, FnTable> witnesses;

  std::string describe(const Ring& ring) const;
};

nlohmann::json to_json(const FamilyTag& tag, const Ring& ring);

struct PexiderTriple {
  FnTable f, h, k;
};

// The member of a Pexider family selected by tag's parameters.
PexiderTriple instantiate(const FamilyTag& tag, const RingPtr& ring);

struct Counterexample {
  Binding binding;
  std::vector<std::pair<Elem, Elem>> pairs;  // violating (x, y); empty for unexpected solutions
  std::string note;
};

struct TheoremReport {
  std::string theorem;
  RingPtr ring;
  std::map<std::string, Elem> params;
  std::size_t solutions_found = 0;
  std::size_t predicted_count = 0;
  bool forward_ok = true;
  bool backward_ok = true;
  // Per found solution: the binding and the family witness it was matched to.
  std::vector<std::pair<Binding, FamilyTag>> witnesses;
  std::vector<Counterexample> counterexamples;
  // Findings that do not affect the verdict (e.g. the unsupported converse).
  std::vector<Counterexample> informational;
  nlohmann::json details = nlohmann::json::object();

  // forward_ok && backward_ok && no counterexamples.
  bool holds() const;
};

nlohmann::json to_json(const TheoremReport& report);
std::string render_text(const TheoremReport& report);

struct VerifyOptions {
  std::uint64_t budget = kDefaultBudget;
  int workers = 1;
};

// ε·h(x) + x.
FnTable multiplicative_shift(const FnTable& h, Elem epsilon);

// h(xy)=h(x)y+xh(y)+εh(x)h(y) against εh = m − id with m multiplicative.
TheoremReport verify_sofy(const RingPtr& ring, Elem epsilon, const VerifyOptions& opt = {});

// Smallest nonzero α with α·f(x) = f(x)·α = 0 for every x.
std::optional<Elem> annihilator_witness(const FnTable& f, const Ring& ring);

// Functions both multiplicative and Leibniz carry a nonzero two-sided
// annihilator. Only this direction is judged; the converse is probed and
// reported in `informational`.
TheoremReport verify_mp(const RingPtr& ring, const VerifyOptions& opt = {});

struct PexiderClassification {
  FamilyTag tag;
  std::size_t rank = 0;  // dim lin(id, h, k)
  bool char2_hypothesis_unmet = false;
};

// Places a solution of the Pexider equation into one of the families.
// Throws ResidualNonzero when (f, h, k) is not a solution, NotAField when the
// ring is not a field.
PexiderClassification classify_pexider(const FnTable& f, const FnTable& h, const FnTable& k);

// Every member of a family over the field, or `limit` of them drawn by a
// seeded shuffle when there are more.
std::vector<FamilyTag> family_instances(const RingPtr& ring, FamilyKind kind,
                                        std::size_t limit, std::uint32_t seed = 1);

// Families whose members are listed by family_instances.
std::vector<FamilyKind> degenerate_families();

// Brute-forces the Pexider equation and compares it with the union of the
// degenerate families: every solution must classify (forward) and every
// family member must solve the equation (backward).
TheoremReport verify_pexider(const RingPtr& ring, const VerifyOptions& opt = {});

// λ(f(xy) − f(x)y − xf(y)) + μ(f(xy) − f(x)f(y)) = 0 against its predicted solutions.
TheoremReport verify_alien(const RingPtr& ring, Elem lambda, Elem mu,
                           const VerifyOptions& opt = {});

}  // namespace fnq
