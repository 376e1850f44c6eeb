#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sap/matrix.hpp"
#include "sap/random.hpp"
#include "sap/semiring.hpp"

namespace sap {

// Polynomial with coefficients in the center of a semiring; position in the
// coefficient list is the degree. An absent coefficient is a missing term,
// which matters for semirings without a zero element.
class CenterPolynomial {
 public:
  using Term = std::optional<Elem>;

  CenterPolynomial() = default;
  explicit CenterPolynomial(std::vector<Term> coeffs)
      : coeffs_(std::move(coeffs)) {}
  // Every listed coefficient present.
  static CenterPolynomial dense(const std::vector<Elem>& coeffs);
  // A single term c*x^degree.
  static CenterPolynomial term(Elem c, std::size_t degree);

  const std::vector<Term>& coeffs() const noexcept { return coeffs_; }
  // Highest degree with a present term; nullopt when there are none.
  std::optional<std::size_t> degree() const noexcept;
  bool has_constant_term() const noexcept {
    return !coeffs_.empty() && coeffs_[0].has_value();
  }
  // Some term of degree >= 1 whose coefficient is not the zero of `s`.
  bool has_nonzero_nonconstant_term(const Semiring& s) const noexcept;

  // Throws DegenerateCenter if a coefficient lies outside the center.
  void validate(const Semiring& s) const;

  bool operator==(const CenterPolynomial&) const = default;

 private:
  std::vector<Term> coeffs_;
};

// Space-separated coefficients in ascending degree, "-" for an absent term.
std::string to_text(const CenterPolynomial& p);
CenterPolynomial parse_polynomial(std::string_view text);

// Sum of c_i * M^i over the present terms, folded in increasing degree.
// M^0 is the identity matrix, so a constant term needs a zero and a one.
// Uses at most degree-1 matrix products.
Matrix eval_at_matrix(const CenterPolynomial& p, const Matrix& m,
                      OpCounters* counters = nullptr);

// Constant terms are generated only when the semiring has a zero and a one.
bool allows_constant_terms(const Semiring& s) noexcept;

// A private polynomial of degree <= max_degree. With a zero element every
// coefficient slot is uniform over the center; without one each slot is
// uniform over the center plus "absent". Draws are repeated until a nonzero
// nonconstant term exists.
CenterPolynomial random_private_polynomial(const Semiring& s,
                                           std::size_t max_degree, Rng& rng);
std::pair<CenterPolynomial, CenterPolynomial> random_private_pair(
    const Semiring& s, std::size_t max_degree, Rng& rng);
std::pair<CenterPolynomial, CenterPolynomial> random_private_pair(
    const Semiring& s, std::size_t max_degree, std::uint64_t seed);

}  // namespace sap
