#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sap {

// An element is a dense index into the carrier of one particular Semiring.
using Elem = std::uint32_t;

// Elements commuting multiplicatively with the whole carrier, sorted ascending.
struct Center {
  std::vector<Elem> elements;

  bool contains(Elem x) const;
  std::size_t size() const noexcept { return elements.size(); }
  bool empty() const noexcept { return elements.empty(); }
  bool operator==(const Center&) const = default;
};

// A finite semiring given by its addition and multiplication tables.
//
// Tables are stored row-major with the row index as left operand. The
// constructor checks only the structure (square tables, entries in range);
// the algebraic laws are reported by check_axioms(). Derived data that the
// rest of the library consults repeatedly (identities, zero, center) is
// computed once here; the object is immutable afterwards.
class Semiring {
 public:
  using Table = std::vector<std::vector<Elem>>;

  Semiring(std::string name, std::vector<std::string> element_names,
           const Table& add, const Table& mul);

  // Flat row-major tables of size order*order; empty names get "0".."n-1".
  static Semiring from_flat(std::string name, std::size_t order,
                            std::vector<Elem> add, std::vector<Elem> mul,
                            std::vector<std::string> element_names = {});

  std::size_t order() const noexcept { return order_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& element_names() const noexcept {
    return names_;
  }

  Elem add(Elem x, Elem y) const noexcept { return add_[x * order_ + y]; }
  Elem mul(Elem x, Elem y) const noexcept { return mul_[x * order_ + y]; }

  std::span<const Elem> add_table() const noexcept { return add_; }
  std::span<const Elem> mul_table() const noexcept { return mul_; }

  bool contains(Elem x) const noexcept { return x < order_; }

  // Two-sided identity of +, if any.
  std::optional<Elem> additive_identity() const noexcept { return add_id_; }
  // Two-sided identity of *, if any.
  std::optional<Elem> multiplicative_identity() const noexcept {
    return mul_id_;
  }
  // The additive identity when it is also multiplicatively absorbing.
  std::optional<Elem> zero() const noexcept { return zero_; }

  const Center& center() const noexcept { return center_; }

  // Same carrier size and identical tables; names are metadata.
  bool same_tables(const Semiring& other) const noexcept;

 private:
  Semiring(std::string name, std::size_t order, std::vector<Elem> add,
           std::vector<Elem> mul, std::vector<std::string> names);
  void finish();

  std::string name_;
  std::size_t order_ = 0;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<std::string> names_;
  std::optional<Elem> add_id_;
  std::optional<Elem> mul_id_;
  std::optional<Elem> zero_;
  Center center_;
};

using SemiringPtr = std::shared_ptr<const Semiring>;

// One failing instance of a semiring law, with the witness triple.
struct AxiomViolation {
  enum class Law {
    AddAssociative,     // (x+y)+z = x+(y+z)
    MulAssociative,     // (xy)z = x(yz)
    LeftDistributive,   // x(y+z) = xy+xz
    RightDistributive,  // (y+z)x = yx+zx
  };
  Law law;
  Elem x, y, z;

  bool operator==(const AxiomViolation&) const = default;
};

std::string_view to_string(AxiomViolation::Law law);
std::string describe(const AxiomViolation& v);

// Every violated law instance; empty iff the tables form a semiring.
std::vector<AxiomViolation> check_axioms(const Semiring& s);

bool is_additively_idempotent(const Semiring& s);
bool is_additively_commutative(const Semiring& s);
bool is_multiplicatively_commutative(const Semiring& s);

// Multiplicative center computed directly from the table.
Center center(const Semiring& s);

// An element z with x*y = z for all x, y which is also additively neutral.
std::optional<Elem> zero_product_element(const Semiring& s);
// (R,+) is a group with identity `identity`.
bool is_additive_group(const Semiring& s, Elem identity);
// Every product is the additive identity.
bool has_zero_multiplication(const Semiring& s);
// An element inf with x*inf = inf*x = inf and R+R = {inf}.
std::optional<Elem> absorbing_sum_element(const Semiring& s);

enum class ClassTag {
  TrivialSmall,
  MatrixRingOverField,
  ZeroMultiplicationRing,
  AdditivelyIdempotent,
  AbsorbingSum,
  Unclassified,
};

struct SemiringClass {
  ClassTag tag;
  bool operator==(const SemiringClass&) const = default;
};

std::string_view to_string(ClassTag tag);

// Structural classification along the cases of Monico's theorem.
// Checked in order: additive idempotency, order <= 2, zero multiplication
// ring, absorbing sum, otherwise unclassified. MatrixRingOverField is never
// returned here; callers declare it for field constructions.
SemiringClass classify(const Semiring& s);

// T1..T8, boolean, chain_<k> (k >= 2, max/min on 0..k-1), z<p> (integers
// mod a prime p), bmat_<k> (k x k Boolean matrices, k <= 3).
Semiring builtin(std::string_view name);
std::vector<std::string> builtin_names();

// All valid semirings among the 16 x 16 order-2 table pairs, in
// lexicographic order of (add code, mul code). The code of a table is the
// 4-bit number t[0][0] t[0][1] t[1][0] t[1][1] read most significant first.
std::vector<Semiring> enumerate_order2_semirings();

}  // namespace sap
