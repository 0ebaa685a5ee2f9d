#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace fnq {

// Ring elements are dense carrier indices; all arithmetic is table lookup.
using Elem = std::uint16_t;

inline constexpr std::size_t kDefaultRingBudget = 256;

enum class RingKind { Zn, GF, PolyQuot, Product, UT2 };

struct RingSpec {
  RingKind kind = RingKind::Zn;
  unsigned n = 0;                 // Zn
  unsigned p = 0;                 // GF, PolyQuot, UT2
  unsigned k = 0;                 // GF, PolyQuot
  std::vector<unsigned> modulus;  // GF, constant term first; empty = default
  std::shared_ptr<const RingSpec> left, right;  // Product
  std::optional<std::vector<Elem>> subring;

  static RingSpec zn(unsigned n);
  static RingSpec gf(unsigned p, unsigned k, std::vector<unsigned> modulus = {});
  static RingSpec poly_quot(unsigned p, unsigned k);
  static RingSpec product(RingSpec left, RingSpec right);
  static RingSpec ut2(unsigned p);

  RingSpec with_subring(std::vector<Elem> elements) const;
};

RingSpec ring_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RingSpec& spec);
std::string label(const RingSpec& spec);

// A finite ring given by total tables. Immutable after construction, so a
// Ring may be shared freely between threads.
class Ring {
 public:
  // Builds a ring from raw tables and verifies the axioms exhaustively when
  // size <= kDefaultRingBudget. `one` may be absent (non-unital ring).
  static Ring from_tables(std::string name, std::size_t size,
                          std::vector<Elem> add, std::vector<Elem> mul,
                          std::optional<Elem> one,
                          std::optional<std::vector<Elem>> subring = std::nullopt);

  std::size_t size() const noexcept { return size_; }
  const std::string& name() const noexcept { return name_; }

  Elem add(Elem a, Elem b) const noexcept { return add_[a * size_ + b]; }
  Elem mul(Elem a, Elem b) const noexcept { return mul_[a * size_ + b]; }
  Elem neg(Elem a) const noexcept { return neg_[a]; }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

  Elem zero() const noexcept { return zero_; }
  const std::optional<Elem>& one() const noexcept { return one_; }
  // n·1 computed by repeated addition (reduced modulo the additive order of 1).
  Elem from_int(long long n) const;
  // Additive order of 1; 0 when the ring is non-unital.
  unsigned characteristic() const noexcept { return characteristic_; }

  const std::vector<Elem>& center() const noexcept { return center_; }
  const std::vector<Elem>& regular() const noexcept { return regular_; }
  const std::vector<Elem>& units() const noexcept { return units_; }
  bool is_central(Elem e) const noexcept { return central_flag_[e]; }
  bool is_regular(Elem e) const noexcept { return regular_flag_[e]; }
  bool is_unit(Elem e) const noexcept { return unit_flag_[e]; }
  std::optional<Elem> inverse(Elem e) const noexcept;

  bool is_commutative() const noexcept { return center_.size() == size_; }
  // Commutative, unital, and every nonzero element invertible.
  bool is_field() const noexcept;
  bool has_zero_divisors() const noexcept { return regular_.size() + 1 != size_; }

  // Domain P of functions P -> Q: the declared subring, or the whole ring.
  const std::vector<Elem>& domain() const noexcept { return domain_; }
  bool has_subring() const noexcept { return has_subring_; }
  // Position of `e` inside domain(), or -1 when e is outside P.
  int domain_pos(Elem e) const noexcept { return domain_pos_[e]; }

  const std::optional<RingSpec>& spec() const noexcept { return spec_; }
  std::string element_name(Elem e) const;
  // FNV-1a over the size and both tables.
  std::uint64_t content_hash() const noexcept;

 private:
  friend Ring build_ring(const RingSpec&, std::size_t);
  Ring() = default;
  void finish(std::optional<std::vector<Elem>> subring);

  std::string name_;
  std::size_t size_ = 0;
  std::vector<Elem> add_, mul_, neg_;
  Elem zero_ = 0;
  std::optional<Elem> one_;
  unsigned characteristic_ = 0;
  std::vector<Elem> center_, regular_, units_, inverse_;
  std::vector<bool> central_flag_, regular_flag_, unit_flag_;
  std::vector<Elem> domain_;
  std::vector<int> domain_pos_;
  bool has_subring_ = false;
  std::optional<RingSpec> spec_;
  std::vector<std::string> element_names_;
};

using RingPtr = std::shared_ptr<const Ring>;

Ring build_ring(const RingSpec& spec, std::size_t budget = kDefaultRingBudget);
RingPtr make_ring(const RingSpec& spec, std::size_t budget = kDefaultRingBudget);

// Elements commuting with every element.
std::vector<Elem> center(const Ring& ring);
// Nonzero and annihilating nothing nonzero on either side.
bool is_regular(const Ring& ring, Elem e);

bool is_prime(unsigned p);

}  // namespace fnq
