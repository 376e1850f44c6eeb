#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sap/matrix.hpp"
#include "sap/protocol.hpp"

namespace sap {

// (k, a, b) with k * M1^a * S * M2^b + A = A.
struct WitnessTriple {
  Elem k;
  std::size_t a, b;

  auto operator<=>(const WitnessTriple&) const = default;
};

// Triples kept sorted lexicographically by (k, a, b).
struct WitnessSet {
  std::vector<WitnessTriple> triples;
  std::size_t bound = 0;

  bool contains(const WitnessTriple& t) const;
  std::size_t size() const noexcept { return triples.size(); }
  bool empty() const noexcept { return triples.empty(); }
};

struct AttackStats {
  std::uint64_t matrix_products = 0;
  std::uint64_t matrix_additions = 0;
  std::uint64_t scalings = 0;
  std::uint64_t comparisons = 0;
  // Products spent filling the witness grid, part of matrix_products.
  std::uint64_t witness_products = 0;
  std::chrono::nanoseconds wall_time{0};

  void add(const OpCounters& c);
  AttackStats& operator+=(const AttackStats& o);
};

struct WitnessResult {
  WitnessSet witnesses;
  AttackStats stats;
};

// Scans C x {0..bound}^2 against A = pub.A. The zero element, when the
// semiring has one, is left out of the center scan. The monomial grid is
// filled single-threaded; the scan over grid rows is split across `threads`
// workers. Throws NotIdempotent unless x + x = x throughout.
WitnessResult compute_witness_set(const PublicTranscript& pub,
                                  std::size_t bound, std::size_t threads = 1);
// Same scan reusing a caller-owned cache over (M1, S, M2).
WitnessResult compute_witness_set(MonomialCache& cache, const Matrix& a,
                                  std::size_t bound, std::size_t threads = 1);

// Sum of k * left^a * middle * right^b over the set, nullopt when empty.
std::optional<Matrix> witness_sum(const WitnessSet& w, MonomialCache& cache,
                                  OpCounters* counters = nullptr);

// The set's monomials over S add up to exactly A.
bool verify_witness_sum(const WitnessSet& w, const PublicTranscript& pub);
bool verify_witness_sum(const WitnessSet& w, MonomialCache& cache,
                        const Matrix& a);

// Drops triples in lexicographic order whenever the remaining sum still
// equals A.
WitnessSet greedy_reduce(const WitnessSet& w, const PublicTranscript& pub);
WitnessSet greedy_reduce(const WitnessSet& w, MonomialCache& cache,
                         const Matrix& a, OpCounters* counters = nullptr);

struct AttackOptions {
  std::size_t bound = 2;
  bool greedy = false;
  std::size_t threads = 1;
};

// When the witness sum misses A (addition that is not commutative collapses
// sums to one end), recover_key falls back to a single scaled monomial equal
// to A; k M1^a S M2^b = A gives the key k M1^a B M2^b.
struct RecoveryResult {
  std::optional<Matrix> key;  // nullopt when W is empty and no term matches
  WitnessSet witnesses;
  bool verified = false;  // the witness sum, or the exact term, reproduced A
  std::optional<WitnessTriple> exact_term;
  AttackStats stats;
};

// Recovers the shared key from public values only: builds W against A and
// evaluates sum k * M1^i * B * M2^j over it. When the bound covers the true
// degrees the result is the shared key and `verified` is true; a false flag
// means the bound is too small.
RecoveryResult recover_key(const PublicTranscript& pub,
                           const AttackOptions& options);

}  // namespace sap
