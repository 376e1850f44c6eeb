#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sap/semiring.hpp"

namespace sap {

// An equivalence relation on the carrier. Class ids are contiguous from 0
// and appear in first-occurrence order, so equal relations compare equal.
struct Partition {
  std::vector<std::size_t> class_of;

  static Partition identity(std::size_t order);
  static Partition full(std::size_t order);
  // Renumbers arbitrary labels into first-occurrence order.
  static Partition normalized(std::span<const std::size_t> labels);

  std::size_t num_classes() const;
  bool related(Elem a, Elem b) const { return class_of[a] == class_of[b]; }
  // Every pair related here is related in `coarser`.
  bool refines(const Partition& coarser) const;

  bool operator==(const Partition&) const = default;
};

// Smallest congruence containing every seed pair.
Partition congruence_closure(const Semiring& s,
                             std::span<const std::pair<Elem, Elem>> seeds);
Partition congruence_closure(const Semiring& s, Elem a, Elem b);

// The partition is compatible with +, * on both sides.
bool is_congruence(const Semiring& s, const Partition& p);

inline constexpr std::size_t kMaxSimplicityOrder = 64;

// True iff the only congruences are equality and the total relation.
// Throws OrderTooLarge above kMaxSimplicityOrder.
bool is_congruence_simple(const Semiring& s);

}  // namespace sap
