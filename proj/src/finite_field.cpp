#include "sap/finite_field.hpp"

#include "sap/error.hpp"

namespace sap {

PrimeField::PrimeField(Residue p) : p_(p) {
  bool prime = p >= 2 && p < (1u << 16);
  for (Residue d = 2; prime && d * d <= p; ++d) prime = p % d != 0;
  if (!prime) {
    throw Error("field modulus " + std::to_string(p) +
                " is not a prime below 65536");
  }
}

Residue PrimeField::inv(Residue x) const {
  if (x % p_ == 0) throw Error("zero has no inverse");
  // x^(p-2) by square and multiply.
  Residue result = 1, base = x % p_;
  for (Residue e = p_ - 2; e > 0; e >>= 1) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

FieldMatrix::FieldMatrix(PrimeField f, std::size_t d)
    : f_(f), d_(d), entries_(d * d, 0) {
  if (d_ == 0) throw DimensionMismatch("matrix dimension must be positive");
}

FieldMatrix::FieldMatrix(PrimeField f, std::size_t d,
                         std::vector<Residue> entries)
    : f_(f), d_(d), entries_(std::move(entries)) {
  if (d_ == 0) throw DimensionMismatch("matrix dimension must be positive");
  if (entries_.size() != d_ * d_) {
    throw DimensionMismatch("expected " + std::to_string(d_ * d_) +
                            " entries, got " + std::to_string(entries_.size()));
  }
  for (auto& e : entries_) e %= f_.modulus();
}

FieldMatrix FieldMatrix::identity(PrimeField f, std::size_t d) {
  FieldMatrix m(f, d);
  for (std::size_t i = 0; i < d; ++i) m.entries_[i * d + i] = 1;
  return m;
}

FieldMatrix FieldMatrix::random(PrimeField f, std::size_t d, Rng& rng) {
  std::vector<Residue> entries(d * d);
  for (auto& e : entries) {
    e = static_cast<Residue>(uniform_below(rng, f.modulus()));
  }
  return FieldMatrix(f, d, std::move(entries));
}

namespace {

void require_compatible(const FieldMatrix& x, const FieldMatrix& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("field matrix sizes differ");
  if (!(x.field() == y.field())) {
    throw SemiringMismatch("field matrices over different fields");
  }
}

}  // namespace

FieldMatrix ff_add(const FieldMatrix& x, const FieldMatrix& y) {
  require_compatible(x, y);
  std::vector<Residue> out(x.entries().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = x.field().add(x.entries()[i], y.entries()[i]);
  }
  return FieldMatrix(x.field(), x.dim(), std::move(out));
}

FieldMatrix ff_mul(const FieldMatrix& x, const FieldMatrix& y,
                   OpCounters* counters) {
  require_compatible(x, y);
  const std::size_t d = x.dim();
  const Residue p = x.field().modulus();
  std::vector<Residue> out(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < d; ++k) {
        acc += std::uint64_t{x(i, k)} * y(k, j);
      }
      out[i * d + j] = static_cast<Residue>(acc % p);
    }
  }
  if (counters) ++counters->products;
  return FieldMatrix(x.field(), d, std::move(out));
}

FieldMatrix ff_scale(Residue c, const FieldMatrix& x) {
  std::vector<Residue> out(x.entries().begin(), x.entries().end());
  for (auto& e : out) e = x.field().mul(c % x.field().modulus(), e);
  return FieldMatrix(x.field(), x.dim(), std::move(out));
}

Semiring matrix_ring_semiring(Residue p, std::size_t inner) {
  const PrimeField f(p);
  if (inner == 0) throw DimensionMismatch("inner dimension must be positive");
  std::size_t order = 1;
  for (std::size_t i = 0; i < inner * inner; ++i) {
    order *= p;
    if (order > kMaxMatrixRingOrder) {
      throw OrderTooLarge("Mat_" + std::to_string(inner) + "(F_" +
                          std::to_string(p) + ") exceeds " +
                          std::to_string(kMaxMatrixRingOrder) + " elements");
    }
  }
  const MatrixRingStructure st{f, inner};
  std::vector<FieldMatrix> blocks;
  blocks.reserve(order);
  for (Elem e = 0; e < order; ++e) {
    blocks.emplace_back(f, inner, decode_block(st, e));
  }
  std::vector<Elem> add(order * order), mul(order * order);
  for (Elem x = 0; x < order; ++x) {
    for (Elem y = 0; y < order; ++y) {
      add[x * order + y] = encode_block(st, ff_add(blocks[x], blocks[y]).entries());
      mul[x * order + y] = encode_block(st, ff_mul(blocks[x], blocks[y]).entries());
    }
  }
  const std::string name = inner == 1 ? "z" + std::to_string(p)
                                      : "mat" + std::to_string(inner) + "_f" +
                                            std::to_string(p);
  return Semiring::from_flat(name, order, std::move(add), std::move(mul));
}

std::vector<Residue> decode_block(const MatrixRingStructure& st, Elem e) {
  const Residue p = st.field.modulus();
  std::vector<Residue> block(st.inner * st.inner);
  for (auto& digit : block) {
    digit = e % p;
    e /= p;
  }
  return block;
}

Elem encode_block(const MatrixRingStructure& st,
                  std::span<const Residue> block) {
  const Residue p = st.field.modulus();
  Elem e = 0;
  for (std::size_t i = block.size(); i-- > 0;) e = e * p + block[i];
  return e;
}

MatrixRingStructure declare_matrix_ring(const Semiring& s, Residue p,
                                        std::size_t inner) {
  const PrimeField f(p);
  std::size_t expected = 1;
  for (std::size_t i = 0; i < inner * inner && expected <= s.order(); ++i) {
    expected *= p;
  }
  if (inner == 0 || expected != s.order()) {
    throw StructureMismatch("semiring '" + s.name() + "' of order " +
                            std::to_string(s.order()) + " cannot be Mat_" +
                            std::to_string(inner) + "(F_" + std::to_string(p) +
                            ")");
  }
  const Semiring reference = matrix_ring_semiring(p, inner);
  if (!reference.same_tables(s)) {
    throw StructureMismatch("tables of '" + s.name() +
                            "' do not match the block encoding of Mat_" +
                            std::to_string(inner) + "(F_" + std::to_string(p) +
                            ")");
  }
  return MatrixRingStructure{f, inner};
}

FieldMatrix flatten(const Matrix& m, const MatrixRingStructure& st) {
  if (m.semiring().order() != [&] {
        std::size_t o = 1;
        for (std::size_t i = 0; i < st.inner * st.inner; ++i) o *= st.field.modulus();
        return o;
      }()) {
    throw StructureMismatch("matrix semiring does not match declared block "
                            "structure");
  }
  const std::size_t outer = m.dim();
  const std::size_t n = st.inner;
  FieldMatrix out(st.field, outer * n);
  for (std::size_t i = 0; i < outer; ++i) {
    for (std::size_t j = 0; j < outer; ++j) {
      const auto block = decode_block(st, m(i, j));
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          out.set(i * n + r, j * n + c, block[r * n + c]);
        }
      }
    }
  }
  return out;
}

Matrix unflatten(const FieldMatrix& f, const MatrixRingStructure& st,
                 SemiringPtr ring) {
  const std::size_t n = st.inner;
  if (f.dim() % n != 0) {
    throw StructureMismatch("dimension " + std::to_string(f.dim()) +
                            " is not a multiple of the block size " +
                            std::to_string(n));
  }
  const std::size_t outer = f.dim() / n;
  std::vector<Elem> entries(outer * outer);
  std::vector<Residue> block(n * n);
  for (std::size_t i = 0; i < outer; ++i) {
    for (std::size_t j = 0; j < outer; ++j) {
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          block[r * n + c] = f(i * n + r, j * n + c);
        }
      }
      entries[i * outer + j] = encode_block(st, block);
    }
  }
  return Matrix(std::move(ring), outer, std::move(entries));
}

Solution gauss_solve(const LinearSystem& sys, Residue free_value) {
  const PrimeField& f = sys.field;
  const std::size_t rows = sys.rows, cols = sys.cols, width = cols + 1;
  std::vector<Residue> aug(rows * width);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) aug[r * width + c] = sys.at(r, c) % f.modulus();
    aug[r * width + cols] = sys.rhs[r] % f.modulus();
  }

  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && aug[pivot * width + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t k = 0; k < width; ++k) {
        std::swap(aug[pivot * width + k], aug[rank * width + k]);
      }
    }
    const Residue scale = f.inv(aug[rank * width + c]);
    for (std::size_t k = c; k < width; ++k) {
      aug[rank * width + k] = f.mul(aug[rank * width + k], scale);
    }
    // Reduced row echelon form: clear the column above and below.
    for (std::size_t r = 0; r < rows; ++r) {
      const Residue factor = aug[r * width + c];
      if (r == rank || factor == 0) continue;
      for (std::size_t k = c; k < width; ++k) {
        aug[r * width + k] =
            f.sub(aug[r * width + k], f.mul(factor, aug[rank * width + k]));
      }
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r) {
    if (aug[r * width + cols] != 0) {
      throw Inconsistent("linear system has no solution (row " +
                         std::to_string(r) + " reduces to 0 = nonzero)");
    }
  }

  Solution sol;
  sol.rank = rank;
  sol.values.assign(cols, free_value % f.modulus());
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!is_pivot[c]) sol.free_columns.push_back(c);
  }
  for (std::size_t r = 0; r < rank; ++r) {
    Residue v = aug[r * width + cols];
    for (std::size_t c : sol.free_columns) {
      v = f.sub(v, f.mul(aug[r * width + c], sol.values[c]));
    }
    sol.values[pivot_col[r]] = v;
  }
  return sol;
}

std::vector<FieldMatrix> monomial_grid(const FieldMatrix& left,
                                       const FieldMatrix& middle,
                                       const FieldMatrix& right, std::size_t k,
                                       OpCounters* counters) {
  std::vector<FieldMatrix> grid;
  grid.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i == 0 && j == 0) {
        grid.push_back(middle);
      } else if (i > 0) {
        grid.push_back(ff_mul(left, grid[(i - 1) * k + j], counters));
      } else {
        grid.push_back(ff_mul(grid[j - 1], right, counters));
      }
    }
  }
  return grid;
}

LinearSystem build_recovery_system(const FieldMatrix& m1, const FieldMatrix& s,
                                   const FieldMatrix& m2, const FieldMatrix& a,
                                   std::size_t k, OpCounters* counters) {
  const std::size_t d = a.dim();
  const auto grid = monomial_grid(m1, s, m2, k, counters);
  LinearSystem sys(a.field(), d * d, k * k);
  for (std::size_t col = 0; col < k * k; ++col) {
    const auto entries = grid[col].entries();
    for (std::size_t r = 0; r < d * d; ++r) sys.at(r, col) = entries[r];
  }
  for (std::size_t r = 0; r < d * d; ++r) sys.rhs[r] = a.entries()[r];
  return sys;
}

FieldRecovery ff_recover_key(const FieldMatrix& m1, const FieldMatrix& m2,
                             const FieldMatrix& s, const FieldMatrix& a,
                             const FieldMatrix& b, Residue free_value) {
  for (const FieldMatrix* x : {&m2, &s, &a, &b}) require_compatible(m1, *x);
  const std::size_t k = m1.dim();
  OpCounters counters;
  const LinearSystem sys = build_recovery_system(m1, s, m2, a, k, &counters);
  Solution sol = gauss_solve(sys, free_value);

  const auto grid = monomial_grid(m1, b, m2, k, &counters);
  FieldMatrix key(m1.field(), m1.dim());
  for (std::size_t col = 0; col < k * k; ++col) {
    if (sol.values[col] != 0) key = ff_add(key, ff_scale(sol.values[col], grid[col]));
  }
  return FieldRecovery{std::move(key), std::move(sol), k, counters};
}

}  // namespace sap
