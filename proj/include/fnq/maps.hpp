#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fnq/ring.hpp"
#include "json.hpp"

namespace fnq {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

// A total function P -> Q, where Q = *ring and P = ring->domain().
// values[i] is the image of ring->domain()[i].
struct FnTable {
  RingPtr ring;
  std::vector<Elem> values;

  Elem at(Elem x) const { return values[static_cast<std::size_t>(ring->domain_pos(x))]; }
  std::size_t size() const noexcept { return values.size(); }

  friend bool operator==(const FnTable& a, const FnTable& b) { return a.values == b.values; }
  friend auto operator<=>(const FnTable& a, const FnTable& b) { return a.values <=> b.values; }
};

enum class ClassTag {
  Arbitrary,
  Additive,
  Multiplicative,
  Homomorphism,
  Leibniz,
  Derivation,
  Logarithmic,
  HomoDerivSofy,
  HomoDerivMP,
};

std::string_view to_string(ClassTag tag);
std::optional<ClassTag> class_tag_from_string(std::string_view name);

struct FunctionClass {
  ClassTag tag = ClassTag::Arbitrary;
  Elem epsilon = 0;  // HomoDerivSofy only

  bool additive_based() const noexcept;
  std::string describe() const;
};

struct Classification {
  std::vector<ClassTag> tags;       // in ClassTag declaration order
  std::vector<Elem> sofy_epsilons;  // central nonzero witnesses for HomoDerivSofy

  bool contains(ClassTag tag) const noexcept;
};

// Table constructors and pointwise arithmetic.
FnTable identity_map(const RingPtr& ring);
FnTable zero_map(const RingPtr& ring);
FnTable constant_map(const RingPtr& ring, Elem c);
FnTable scale(Elem c, const FnTable& f);  // x -> c·f(x)
FnTable add(const FnTable& f, const FnTable& g);
FnTable sub(const FnTable& f, const FnTable& g);
FnTable product(const FnTable& f, const FnTable& g);  // x -> f(x)·g(x)

// Defining identities, evaluated for all x, y in the domain.
bool is_additive(const FnTable& f);
bool is_multiplicative(const FnTable& f);
bool is_leibniz(const FnTable& f);
bool satisfies_sofy(const FnTable& f, Elem epsilon);  // h(xy)=h(x)y+xh(y)+εh(x)h(y)
// l(xy)=l(x)+l(y) on the unit group of the domain, and l = 0 elsewhere.
bool is_logarithmic(const FnTable& f);
bool is_member(const FnTable& f, const FunctionClass& cls);

// Units of Q lying in P whose inverse also lies in P.
std::vector<Elem> domain_units(const Ring& ring);
// Greedy generating set of (P,+): add elements in index order until the
// generated subgroup is all of P.
std::vector<Elem> additive_generators(const Ring& ring);

// Every table of the class exactly once, in lexicographic order of values.
std::vector<FnTable> enumerate_maps(const RingPtr& ring, const FunctionClass& cls,
                                    std::uint64_t budget = kDefaultBudget);

// Number of candidates enumerate_maps would examine (the budget measure).
long double enumeration_cost(const Ring& ring, const FunctionClass& cls);

Classification classify_map(const FnTable& f);

// x -> x·b − b·x on the domain.
FnTable inner_derivation(const RingPtr& ring, Elem b);

// Rank over the scalar field of the matrix whose rows are the value vectors.
std::size_t lin_rank(std::span<const FnTable> maps, const Ring& scalars);
std::size_t lin_rank(std::initializer_list<FnTable> maps, const Ring& scalars);

// Some coefficient vector c with Σ c_i·basis_i = target, when one exists.
std::optional<std::vector<Elem>> solve_combination(std::span<const FnTable> basis,
                                                   const FnTable& target, const Ring& scalars);

nlohmann::json to_json(const FnTable& f);
std::string csv_header(const FnTable& f, const std::string& name);
std::string csv_row(const FnTable& f);
std::string render(const FnTable& f);  // "(v0,v1,...)" using element names

}  // namespace fnq
