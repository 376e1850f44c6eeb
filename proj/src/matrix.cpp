#include "sap/matrix.hpp"

#include <algorithm>

#include "sap/error.hpp"

namespace sap {

Matrix::Matrix(SemiringPtr ring, std::size_t n, Elem fill)
    : ring_(std::move(ring)), n_(n), entries_(n * n, fill) {
  if (!ring_) throw SemiringMismatch("matrix needs a semiring");
  if (n_ == 0) throw DimensionMismatch("matrix dimension must be positive");
  if (!ring_->contains(fill)) {
    throw MalformedTables("matrix entry out of range");
  }
}

Matrix::Matrix(SemiringPtr ring, std::size_t n, std::vector<Elem> entries)
    : ring_(std::move(ring)), n_(n), entries_(std::move(entries)) {
  if (!ring_) throw SemiringMismatch("matrix needs a semiring");
  if (n_ == 0) throw DimensionMismatch("matrix dimension must be positive");
  if (entries_.size() != n_ * n_) {
    throw DimensionMismatch("expected " + std::to_string(n_ * n_) +
                            " matrix entries, got " +
                            std::to_string(entries_.size()));
  }
  for (Elem e : entries_) {
    if (!ring_->contains(e)) {
      throw MalformedTables("matrix entry " + std::to_string(e) +
                            " out of range");
    }
  }
}

Matrix Matrix::identity(SemiringPtr ring, std::size_t n) {
  const auto zero = ring->zero();
  const auto one = ring->multiplicative_identity();
  if (!zero || !one) {
    throw NoIdentity("semiring '" + ring->name() +
                          "' has no zero and identity, so no identity matrix");
  }
  Matrix m(std::move(ring), n, *zero);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = *one;
  return m;
}

Matrix Matrix::random(SemiringPtr ring, std::size_t n, Rng& rng) {
  std::vector<Elem> entries(n * n);
  for (auto& e : entries) {
    e = static_cast<Elem>(uniform_below(rng, ring->order()));
  }
  return Matrix(std::move(ring), n, std::move(entries));
}

void Matrix::set(std::size_t i, std::size_t j, Elem v) {
  if (i >= n_ || j >= n_) throw DimensionMismatch("matrix index out of range");
  if (!ring_->contains(v)) throw MalformedTables("matrix entry out of range");
  entries_[i * n_ + j] = v;
}

bool Matrix::is_uniform(Elem v) const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [v](Elem e) { return e == v; });
}

bool Matrix::operator==(const Matrix& other) const noexcept {
  return n_ == other.n_ && same_semiring(*this, other) &&
         entries_ == other.entries_;
}

bool same_semiring(const Matrix& x, const Matrix& y) noexcept {
  return x.semiring_ptr() == y.semiring_ptr() ||
         x.semiring().same_tables(y.semiring());
}

namespace {

void require_compatible(const Matrix& x, const Matrix& y) {
  if (x.dim() != y.dim()) {
    throw DimensionMismatch("matrix dimensions " + std::to_string(x.dim()) +
                            " and " + std::to_string(y.dim()) + " differ");
  }
  if (!same_semiring(x, y)) {
    throw SemiringMismatch("matrices over different semirings ('" +
                           x.semiring().name() + "' and '" +
                           y.semiring().name() + "')");
  }
}

}  // namespace

Matrix mat_add(const Matrix& x, const Matrix& y, OpCounters* counters) {
  require_compatible(x, y);
  const Semiring& s = x.semiring();
  std::vector<Elem> out(x.entries().size());
  const auto xs = x.entries();
  const auto ys = y.entries();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s.add(xs[i], ys[i]);
  if (counters) ++counters->additions;
  return Matrix(x.semiring_ptr(), x.dim(), std::move(out));
}

Matrix mat_mul(const Matrix& x, const Matrix& y, OpCounters* counters) {
  require_compatible(x, y);
  const Semiring& s = x.semiring();
  const std::size_t n = x.dim();
  std::vector<Elem> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Elem acc = s.mul(x(i, 0), y(0, j));
      for (std::size_t k = 1; k < n; ++k) acc = s.add(acc, s.mul(x(i, k), y(k, j)));
      out[i * n + j] = acc;
    }
  }
  if (counters) ++counters->products;
  return Matrix(x.semiring_ptr(), n, std::move(out));
}

Matrix scale_left(Elem c, const Matrix& x, OpCounters* counters) {
  const Semiring& s = x.semiring();
  if (!s.contains(c)) throw MalformedTables("scalar out of range");
  std::vector<Elem> out(x.entries().begin(), x.entries().end());
  for (auto& e : out) e = s.mul(c, e);
  if (counters) ++counters->scalings;
  return Matrix(x.semiring_ptr(), x.dim(), std::move(out));
}

Matrix scale_right(const Matrix& x, Elem c, OpCounters* counters) {
  const Semiring& s = x.semiring();
  if (!s.contains(c)) throw MalformedTables("scalar out of range");
  std::vector<Elem> out(x.entries().begin(), x.entries().end());
  for (auto& e : out) e = s.mul(e, c);
  if (counters) ++counters->scalings;
  return Matrix(x.semiring_ptr(), x.dim(), std::move(out));
}

MonomialCache::MonomialCache(Matrix left, Matrix middle, Matrix right)
    : left_(std::move(left)), right_(std::move(right)) {
  require_compatible(left_, middle);
  require_compatible(middle, right_);
  cells_.emplace(std::pair<std::size_t, std::size_t>{0, 0}, std::move(middle));
}

const Matrix& MonomialCache::monomial(std::size_t a, std::size_t b) {
  if (const auto it = cells_.find({a, b}); it != cells_.end()) return it->second;
  const bool from_left = a > 0 && (cells_.contains({a - 1, b}) || b == 0 ||
                                   !cells_.contains({a, b - 1}));
  Matrix next = from_left ? mat_mul(left_, monomial(a - 1, b), &counters_)
                          : mat_mul(monomial(a, b - 1), right_, &counters_);
  return cells_.emplace(std::pair{a, b}, std::move(next)).first->second;
}

void MonomialCache::fill(std::size_t max_degree) {
  for (std::size_t a = 0; a <= max_degree; ++a) {
    for (std::size_t b = 0; b <= max_degree; ++b) monomial(a, b);
  }
}

const Matrix* MonomialCache::find(std::size_t a, std::size_t b) const {
  const auto it = cells_.find({a, b});
  return it == cells_.end() ? nullptr : &it->second;
}

}  // namespace sap
