#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "sap/random.hpp"
#include "sap/semiring.hpp"

namespace sap {

// Operation tallies; each field counts whole-matrix operations.
struct OpCounters {
  std::uint64_t products = 0;
  std::uint64_t additions = 0;
  std::uint64_t scalings = 0;
  std::uint64_t comparisons = 0;

  OpCounters& operator+=(const OpCounters& o) {
    products += o.products;
    additions += o.additions;
    scalings += o.scalings;
    comparisons += o.comparisons;
    return *this;
  }
};

// Square matrix over a finite semiring, entries stored row-major.
class Matrix {
 public:
  Matrix(SemiringPtr ring, std::size_t n, Elem fill);
  Matrix(SemiringPtr ring, std::size_t n, std::vector<Elem> entries);

  // Requires a zero and a multiplicative identity in the semiring.
  static Matrix identity(SemiringPtr ring, std::size_t n);
  static Matrix random(SemiringPtr ring, std::size_t n, Rng& rng);

  std::size_t dim() const noexcept { return n_; }
  const Semiring& semiring() const noexcept { return *ring_; }
  const SemiringPtr& semiring_ptr() const noexcept { return ring_; }

  Elem operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * n_ + j];
  }
  void set(std::size_t i, std::size_t j, Elem v);

  std::span<const Elem> entries() const noexcept { return entries_; }

  // All entries equal to v.
  bool is_uniform(Elem v) const noexcept;

  // Exact entrywise equality; matrices over different semirings never match.
  bool operator==(const Matrix& other) const noexcept;

 private:
  SemiringPtr ring_;
  std::size_t n_;
  std::vector<Elem> entries_;
};

bool same_semiring(const Matrix& x, const Matrix& y) noexcept;

Matrix mat_add(const Matrix& x, const Matrix& y, OpCounters* counters = nullptr);
// Entry (i,j) folds x(i,0)y(0,j) + x(i,1)y(1,j) + ... left to right.
Matrix mat_mul(const Matrix& x, const Matrix& y, OpCounters* counters = nullptr);
// Entrywise c*x(i,j) and x(i,j)*c respectively.
Matrix scale_left(Elem c, const Matrix& x, OpCounters* counters = nullptr);
Matrix scale_right(const Matrix& x, Elem c, OpCounters* counters = nullptr);

inline Matrix operator+(const Matrix& x, const Matrix& y) { return mat_add(x, y); }
inline Matrix operator*(const Matrix& x, const Matrix& y) { return mat_mul(x, y); }

// Memoized grid of products left^a * middle * right^b.
//
// Every cell except (0,0) is obtained with exactly one product from a cached
// neighbour, preferring (a-1,b) over (a,b-1). Missing neighbours are filled
// recursively, so a cold fill of {0..m}^2 costs m*(m+2) products in any order.
// Single writer: one owner per cache.
class MonomialCache {
 public:
  MonomialCache(Matrix left, Matrix middle, Matrix right);

  const Matrix& monomial(std::size_t a, std::size_t b);
  // Fills every cell of {0..max_degree}^2, row by row.
  void fill(std::size_t max_degree);

  // Read-only lookup, nullptr when the cell was never computed.
  const Matrix* find(std::size_t a, std::size_t b) const;

  std::uint64_t product_count() const noexcept { return counters_.products; }
  const OpCounters& counters() const noexcept { return counters_; }
  std::size_t size() const noexcept { return cells_.size(); }

 private:
  Matrix left_;
  Matrix right_;
  std::map<std::pair<std::size_t, std::size_t>, Matrix> cells_;
  OpCounters counters_;
};

}  // namespace sap
