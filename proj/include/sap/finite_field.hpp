#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sap/matrix.hpp"
#include "sap/random.hpp"
#include "sap/semiring.hpp"

namespace sap {

using Residue = std::uint32_t;

// Integers modulo a prime.
class PrimeField {
 public:
  // Throws Error unless p is prime (trial division) and below 2^16.
  explicit PrimeField(Residue p);

  Residue modulus() const noexcept { return p_; }
  Residue add(Residue x, Residue y) const noexcept { return (x + y) % p_; }
  Residue sub(Residue x, Residue y) const noexcept { return (x + p_ - y) % p_; }
  Residue mul(Residue x, Residue y) const noexcept { return (x * y) % p_; }
  Residue neg(Residue x) const noexcept { return (p_ - x) % p_; }
  // Throws Error for x = 0.
  Residue inv(Residue x) const;

  bool operator==(const PrimeField&) const = default;

 private:
  Residue p_;
};

// Square matrix over a prime field, row-major.
class FieldMatrix {
 public:
  FieldMatrix(PrimeField f, std::size_t d);
  FieldMatrix(PrimeField f, std::size_t d, std::vector<Residue> entries);

  static FieldMatrix identity(PrimeField f, std::size_t d);
  static FieldMatrix random(PrimeField f, std::size_t d, Rng& rng);

  const PrimeField& field() const noexcept { return f_; }
  std::size_t dim() const noexcept { return d_; }
  Residue operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * d_ + j];
  }
  void set(std::size_t i, std::size_t j, Residue v) {
    entries_[i * d_ + j] = v % f_.modulus();
  }
  std::span<const Residue> entries() const noexcept { return entries_; }

  bool operator==(const FieldMatrix&) const = default;

 private:
  PrimeField f_;
  std::size_t d_;
  std::vector<Residue> entries_;
};

FieldMatrix ff_add(const FieldMatrix& x, const FieldMatrix& y);
FieldMatrix ff_mul(const FieldMatrix& x, const FieldMatrix& y,
                   OpCounters* counters = nullptr);
FieldMatrix ff_scale(Residue c, const FieldMatrix& x);

// Declares a semiring to be Mat_inner(F_p) under the encoding produced by
// matrix_ring_semiring: element e holds entry (r, c) of its block in base-p
// digit r*inner + c, least significant digit first.
struct MatrixRingStructure {
  PrimeField field;
  std::size_t inner;
};

inline constexpr std::size_t kMaxMatrixRingOrder = 1024;

// Mat_inner(F_p) as an explicit semiring of order p^(inner^2); the order is
// capped at kMaxMatrixRingOrder.
Semiring matrix_ring_semiring(Residue p, std::size_t inner);

// Checks the semiring tables against the encoding; throws StructureMismatch.
MatrixRingStructure declare_matrix_ring(const Semiring& s, Residue p,
                                        std::size_t inner);

std::vector<Residue> decode_block(const MatrixRingStructure& st, Elem e);
Elem encode_block(const MatrixRingStructure& st, std::span<const Residue> block);

// Outer entry (i,j) becomes the block at rows [i*inner, (i+1)*inner) and
// columns [j*inner, (j+1)*inner). A ring homomorphism Mat_m(R) -> Mat_mn(F_p).
FieldMatrix flatten(const Matrix& m, const MatrixRingStructure& st);
Matrix unflatten(const FieldMatrix& f, const MatrixRingStructure& st,
                 SemiringPtr ring);

// rows x cols coefficient matrix with right-hand side over F_p.
struct LinearSystem {
  PrimeField field;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Residue> coeffs;  // row-major rows*cols
  std::vector<Residue> rhs;

  LinearSystem(PrimeField f, std::size_t r, std::size_t c)
      : field(f), rows(r), cols(c), coeffs(r * c, 0), rhs(r, 0) {}
  Residue& at(std::size_t r, std::size_t c) { return coeffs[r * cols + c]; }
  Residue at(std::size_t r, std::size_t c) const { return coeffs[r * cols + c]; }
};

struct Solution {
  std::vector<Residue> values;
  std::size_t rank = 0;
  std::vector<std::size_t> free_columns;
};

// Row reduction over F_p; free variables take `free_value`. Throws
// Inconsistent when no solution exists.
Solution gauss_solve(const LinearSystem& sys, Residue free_value = 0);

// Unknown d_{i,j} sits in column i*k + j; equation r matches entry r of A.
// The products M1^i S M2^j come from a grid where each cell costs one product.
LinearSystem build_recovery_system(const FieldMatrix& m1, const FieldMatrix& s,
                                   const FieldMatrix& m2, const FieldMatrix& a,
                                   std::size_t k, OpCounters* counters = nullptr);

// All products left^i * middle * right^j for i, j < k, index i*k + j.
std::vector<FieldMatrix> monomial_grid(const FieldMatrix& left,
                                       const FieldMatrix& middle,
                                       const FieldMatrix& right, std::size_t k,
                                       OpCounters* counters = nullptr);

struct FieldRecovery {
  FieldMatrix key;
  Solution solution;
  std::size_t k = 0;
  OpCounters counters;
};

// k = dim: by Cayley-Hamilton higher powers are spanned by lower ones.
// Solves sum d_{i,j} M1^i S M2^j = A and returns sum d_{i,j} M1^i B M2^j.
FieldRecovery ff_recover_key(const FieldMatrix& m1, const FieldMatrix& m2,
                             const FieldMatrix& s, const FieldMatrix& a,
                             const FieldMatrix& b, Residue free_value = 0);

}  // namespace sap
