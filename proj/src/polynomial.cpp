#include "sap/polynomial.hpp"

#include <sstream>

#include "sap/error.hpp"

namespace sap {

CenterPolynomial CenterPolynomial::dense(const std::vector<Elem>& coeffs) {
  return CenterPolynomial(std::vector<Term>(coeffs.begin(), coeffs.end()));
}

CenterPolynomial CenterPolynomial::term(Elem c, std::size_t degree) {
  std::vector<Term> coeffs(degree + 1);
  coeffs[degree] = c;
  return CenterPolynomial(std::move(coeffs));
}

std::optional<std::size_t> CenterPolynomial::degree() const noexcept {
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i]) return i;
  }
  return std::nullopt;
}

bool CenterPolynomial::has_nonzero_nonconstant_term(
    const Semiring& s) const noexcept {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] && coeffs_[i] != s.zero()) return true;
  }
  return false;
}

void CenterPolynomial::validate(const Semiring& s) const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] && !s.center().contains(*coeffs_[i])) {
      throw DegenerateCenter("coefficient " + std::to_string(*coeffs_[i]) +
                             " of degree " + std::to_string(i) +
                             " is not central in '" + s.name() + "'");
    }
  }
}

std::string to_text(const CenterPolynomial& p) {
  std::string out;
  for (const auto& c : p.coeffs()) {
    if (!out.empty()) out += ' ';
    out += c ? std::to_string(*c) : "-";
  }
  return out;
}

CenterPolynomial parse_polynomial(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<CenterPolynomial::Term> coeffs;
  std::string token;
  while (in >> token) {
    if (token == "-") {
      coeffs.emplace_back();
      continue;
    }
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      coeffs.emplace_back(static_cast<Elem>(v));
    } catch (const std::logic_error&) {
      throw ParseError("bad polynomial coefficient '" + token + "'", 0);
    }
  }
  return CenterPolynomial(std::move(coeffs));
}

Matrix eval_at_matrix(const CenterPolynomial& p, const Matrix& m,
                      OpCounters* counters) {
  p.validate(m.semiring());
  const auto& coeffs = p.coeffs();
  const auto top = p.degree();
  if (!top) throw EmptyPolynomial("polynomial has no terms");

  std::optional<Matrix> sum;
  auto accumulate = [&](Elem c, const Matrix& power) {
    Matrix term = scale_left(c, power, counters);
    sum = sum ? mat_add(*sum, term, counters) : std::move(term);
  };
  if (coeffs[0]) {
    accumulate(*coeffs[0], Matrix::identity(m.semiring_ptr(), m.dim()));
  }
  if (*top >= 1) {
    Matrix power = m;
    for (std::size_t i = 1;; ++i) {
      if (coeffs[i]) accumulate(*coeffs[i], power);
      if (i == *top) break;
      power = mat_mul(power, m, counters);
    }
  }
  return std::move(*sum);
}

bool allows_constant_terms(const Semiring& s) noexcept {
  return s.zero().has_value() && s.multiplicative_identity().has_value();
}

namespace {

void require_usable_center(const Semiring& s) {
  const auto& c = s.center().elements;
  if (c.empty()) {
    throw DegenerateCenter("semiring '" + s.name() + "' has an empty center");
  }
  bool only_zero = true;
  for (Elem e : c) only_zero = only_zero && s.zero() == e;
  if (only_zero) {
    throw DegenerateCenter("the center of '" + s.name() +
                           "' contains only the zero element");
  }
  if (c.size() == 1) {
    bool absorbing = true;
    for (Elem x = 0; x < s.order() && absorbing; ++x) {
      absorbing = s.mul(c[0], x) == c[0] && s.mul(x, c[0]) == c[0];
    }
    if (absorbing) {
      throw DegenerateCenter("the center of '" + s.name() +
                             "' is a single absorbing element");
    }
  }
}

}  // namespace

CenterPolynomial random_private_polynomial(const Semiring& s,
                                           std::size_t max_degree, Rng& rng) {
  if (max_degree < 1) throw DegenerateCenter("degree bound must be >= 1");
  require_usable_center(s);
  const auto& c = s.center().elements;
  const bool with_zero = s.zero().has_value();
  const bool constants = allows_constant_terms(s);
  // Without a zero element "absent" is drawn as one extra outcome.
  const std::size_t outcomes = c.size() + (with_zero ? 0 : 1);
  for (;;) {
    std::vector<CenterPolynomial::Term> coeffs(max_degree + 1);
    for (std::size_t i = constants ? 0 : 1; i <= max_degree; ++i) {
      const auto pick = uniform_below(rng, outcomes);
      if (pick < c.size()) coeffs[i] = c[pick];
    }
    CenterPolynomial p(std::move(coeffs));
    if (p.has_nonzero_nonconstant_term(s)) return p;
  }
}

std::pair<CenterPolynomial, CenterPolynomial> random_private_pair(
    const Semiring& s, std::size_t max_degree, Rng& rng) {
  auto p = random_private_polynomial(s, max_degree, rng);
  auto q = random_private_polynomial(s, max_degree, rng);
  return {std::move(p), std::move(q)};
}

std::pair<CenterPolynomial, CenterPolynomial> random_private_pair(
    const Semiring& s, std::size_t max_degree, std::uint64_t seed) {
  Rng rng(seed);
  return random_private_pair(s, max_degree, rng);
}

}  // namespace sap
