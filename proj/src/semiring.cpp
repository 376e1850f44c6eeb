#include "sap/semiring.hpp"

#include <algorithm>
#include <charconv>

#include "sap/error.hpp"

namespace sap {

bool Center::contains(Elem x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

namespace {

std::vector<Elem> flatten_table(const Semiring::Table& t, std::size_t order,
                                const char* which) {
  if (t.size() != order) {
    throw MalformedTables(std::string(which) + " table has " +
                          std::to_string(t.size()) + " rows, expected " +
                          std::to_string(order));
  }
  std::vector<Elem> flat;
  flat.reserve(order * order);
  for (std::size_t r = 0; r < order; ++r) {
    if (t[r].size() != order) {
      throw MalformedTables(std::string(which) + " table row " +
                            std::to_string(r) + " has " +
                            std::to_string(t[r].size()) + " entries, expected " +
                            std::to_string(order));
    }
    flat.insert(flat.end(), t[r].begin(), t[r].end());
  }
  return flat;
}

void check_range(const std::vector<Elem>& flat, std::size_t order,
                 const char* which) {
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (flat[i] >= order) {
      throw MalformedTables(std::string(which) + " table entry (" +
                            std::to_string(i / order) + "," +
                            std::to_string(i % order) + ") = " +
                            std::to_string(flat[i]) + " is out of range");
    }
  }
}

}  // namespace

Semiring::Semiring(std::string name, std::vector<std::string> element_names,
                   const Table& add, const Table& mul)
    : Semiring(std::move(name), add.size(),
               flatten_table(add, add.size(), "add"),
               flatten_table(mul, add.size(), "mul"),
               std::move(element_names)) {}

Semiring Semiring::from_flat(std::string name, std::size_t order,
                             std::vector<Elem> add, std::vector<Elem> mul,
                             std::vector<std::string> element_names) {
  return Semiring(std::move(name), order, std::move(add), std::move(mul),
                  std::move(element_names));
}

Semiring::Semiring(std::string name, std::size_t order, std::vector<Elem> add,
                   std::vector<Elem> mul, std::vector<std::string> names)
    : name_(std::move(name)),
      order_(order),
      add_(std::move(add)),
      mul_(std::move(mul)),
      names_(std::move(names)) {
  if (order_ == 0) throw MalformedTables("semiring order must be positive");
  if (add_.size() != order_ * order_ || mul_.size() != order_ * order_) {
    throw MalformedTables("operation tables must have order*order entries");
  }
  check_range(add_, order_, "add");
  check_range(mul_, order_, "mul");
  if (names_.empty()) {
    for (std::size_t i = 0; i < order_; ++i) names_.push_back(std::to_string(i));
  } else if (names_.size() != order_) {
    throw MalformedTables("expected " + std::to_string(order_) +
                          " element names, got " +
                          std::to_string(names_.size()));
  }
  finish();
}

void Semiring::finish() {
  auto two_sided_identity = [&](auto op) -> std::optional<Elem> {
    for (Elem e = 0; e < order_; ++e) {
      bool ok = true;
      for (Elem x = 0; x < order_ && ok; ++x) {
        ok = op(e, x) == x && op(x, e) == x;
      }
      if (ok) return e;
    }
    return std::nullopt;
  };
  add_id_ = two_sided_identity([&](Elem a, Elem b) { return add(a, b); });
  mul_id_ = two_sided_identity([&](Elem a, Elem b) { return mul(a, b); });
  if (add_id_) {
    const Elem z = *add_id_;
    bool absorbing = true;
    for (Elem x = 0; x < order_ && absorbing; ++x) {
      absorbing = mul(z, x) == z && mul(x, z) == z;
    }
    if (absorbing) zero_ = z;
  }
  center_ = sap::center(*this);
}

bool Semiring::same_tables(const Semiring& other) const noexcept {
  return order_ == other.order_ && add_ == other.add_ && mul_ == other.mul_;
}

std::string_view to_string(AxiomViolation::Law law) {
  switch (law) {
    case AxiomViolation::Law::AddAssociative:
      return "add-associativity";
    case AxiomViolation::Law::MulAssociative:
      return "mul-associativity";
    case AxiomViolation::Law::LeftDistributive:
      return "left-distributivity";
    case AxiomViolation::Law::RightDistributive:
      return "right-distributivity";
  }
  return "?";
}

std::string describe(const AxiomViolation& v) {
  return std::string(to_string(v.law)) + " fails at (" + std::to_string(v.x) +
         "," + std::to_string(v.y) + "," + std::to_string(v.z) + ")";
}

std::vector<AxiomViolation> check_axioms(const Semiring& s) {
  using Law = AxiomViolation::Law;
  std::vector<AxiomViolation> out;
  const auto n = static_cast<Elem>(s.order());
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      const Elem xy_sum = s.add(x, y);
      const Elem xy_prod = s.mul(x, y);
      for (Elem z = 0; z < n; ++z) {
        if (s.add(xy_sum, z) != s.add(x, s.add(y, z))) {
          out.push_back({Law::AddAssociative, x, y, z});
        }
        if (s.mul(xy_prod, z) != s.mul(x, s.mul(y, z))) {
          out.push_back({Law::MulAssociative, x, y, z});
        }
        const Elem yz_sum = s.add(y, z);
        if (s.mul(x, yz_sum) != s.add(s.mul(x, y), s.mul(x, z))) {
          out.push_back({Law::LeftDistributive, x, y, z});
        }
        if (s.mul(yz_sum, x) != s.add(s.mul(y, x), s.mul(z, x))) {
          out.push_back({Law::RightDistributive, x, y, z});
        }
      }
    }
  }
  return out;
}

bool is_additively_idempotent(const Semiring& s) {
  for (Elem x = 0; x < s.order(); ++x) {
    if (s.add(x, x) != x) return false;
  }
  return true;
}

bool is_additively_commutative(const Semiring& s) {
  for (Elem x = 0; x < s.order(); ++x) {
    for (Elem y = x + 1; y < s.order(); ++y) {
      if (s.add(x, y) != s.add(y, x)) return false;
    }
  }
  return true;
}

bool is_multiplicatively_commutative(const Semiring& s) {
  for (Elem x = 0; x < s.order(); ++x) {
    for (Elem y = x + 1; y < s.order(); ++y) {
      if (s.mul(x, y) != s.mul(y, x)) return false;
    }
  }
  return true;
}

Center center(const Semiring& s) {
  Center c;
  for (Elem x = 0; x < s.order(); ++x) {
    bool central = true;
    for (Elem y = 0; y < s.order() && central; ++y) {
      central = s.mul(x, y) == s.mul(y, x);
    }
    if (central) c.elements.push_back(x);
  }
  return c;
}

std::optional<Elem> zero_product_element(const Semiring& s) {
  const auto id = s.additive_identity();
  if (!id) return std::nullopt;
  for (Elem i = 0; i < s.mul_table().size(); ++i) {
    if (s.mul_table()[i] != *id) return std::nullopt;
  }
  return id;
}

bool is_additive_group(const Semiring& s, Elem identity) {
  for (Elem x = 0; x < s.order(); ++x) {
    bool has_inverse = false;
    for (Elem y = 0; y < s.order() && !has_inverse; ++y) {
      has_inverse = s.add(x, y) == identity && s.add(y, x) == identity;
    }
    if (!has_inverse) return false;
  }
  return true;
}

bool has_zero_multiplication(const Semiring& s) {
  return zero_product_element(s).has_value();
}

std::optional<Elem> absorbing_sum_element(const Semiring& s) {
  const Elem inf = s.add_table()[0];
  for (Elem v : s.add_table()) {
    if (v != inf) return std::nullopt;
  }
  for (Elem x = 0; x < s.order(); ++x) {
    if (s.mul(x, inf) != inf || s.mul(inf, x) != inf) return std::nullopt;
  }
  return inf;
}

std::string_view to_string(ClassTag tag) {
  switch (tag) {
    case ClassTag::TrivialSmall:
      return "TrivialSmall";
    case ClassTag::MatrixRingOverField:
      return "MatrixRingOverField";
    case ClassTag::ZeroMultiplicationRing:
      return "ZeroMultiplicationRing";
    case ClassTag::AdditivelyIdempotent:
      return "AdditivelyIdempotent";
    case ClassTag::AbsorbingSum:
      return "AbsorbingSum";
    case ClassTag::Unclassified:
      return "Unclassified";
  }
  return "?";
}

SemiringClass classify(const Semiring& s) {
  if (is_additively_idempotent(s)) return {ClassTag::AdditivelyIdempotent};
  if (s.order() <= 2) return {ClassTag::TrivialSmall};
  if (const auto z = zero_product_element(s); z && is_additive_group(s, *z)) {
    return {ClassTag::ZeroMultiplicationRing};
  }
  if (absorbing_sum_element(s)) return {ClassTag::AbsorbingSum};
  return {ClassTag::Unclassified};
}

namespace {

Semiring order2(std::string name, std::vector<Elem> add,
                std::vector<Elem> mul) {
  return Semiring::from_flat(std::move(name), 2, std::move(add),
                             std::move(mul));
}

std::optional<std::size_t> parse_suffix(std::string_view name,
                                        std::string_view prefix) {
  if (!name.starts_with(prefix)) return std::nullopt;
  const auto digits = name.substr(prefix.size());
  std::size_t value = 0;
  const auto* end = digits.data() + digits.size();
  const auto [ptr, ec] = std::from_chars(digits.data(), end, value);
  if (digits.empty() || ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

Semiring builtin(std::string_view name) {
  // Operation tables of the eight order-2 congruence-simple additively
  // commutative semirings, rows and columns in the order 0, 1.
  if (name == "T1") return order2("T1", {0, 0, 0, 0}, {0, 0, 0, 0});
  if (name == "T2") return order2("T2", {0, 0, 0, 0}, {0, 0, 0, 1});
  if (name == "T3") return order2("T3", {0, 0, 0, 1}, {0, 0, 0, 0});
  if (name == "T4") return order2("T4", {0, 0, 0, 1}, {1, 1, 1, 1});
  if (name == "T5") return order2("T5", {0, 0, 0, 1}, {0, 1, 1, 1});
  if (name == "T6") return order2("T6", {0, 0, 0, 1}, {0, 0, 0, 1});
  if (name == "T7") return order2("T7", {0, 1, 1, 0}, {0, 0, 0, 0});
  if (name == "T8") return order2("T8", {0, 1, 1, 0}, {0, 0, 0, 1});
  if (name == "boolean") return order2("boolean", {0, 1, 1, 1}, {0, 0, 0, 1});

  if (const auto k = parse_suffix(name, "chain_"); k && *k >= 2 && *k <= 4096) {
    std::vector<Elem> add(*k * *k), mul(*k * *k);
    for (Elem x = 0; x < *k; ++x) {
      for (Elem y = 0; y < *k; ++y) {
        add[x * *k + y] = std::max(x, y);
        mul[x * *k + y] = std::min(x, y);
      }
    }
    return Semiring::from_flat(std::string(name), *k, std::move(add),
                               std::move(mul));
  }
  if (const auto p = parse_suffix(name, "z"); p && is_prime(*p) && *p <= 4096) {
    std::vector<Elem> add(*p * *p), mul(*p * *p);
    for (Elem x = 0; x < *p; ++x) {
      for (Elem y = 0; y < *p; ++y) {
        add[x * *p + y] = static_cast<Elem>((x + y) % *p);
        mul[x * *p + y] = static_cast<Elem>((std::size_t{x} * y) % *p);
      }
    }
    return Semiring::from_flat(std::string(name), *p, std::move(add),
                               std::move(mul));
  }
  if (const auto k = parse_suffix(name, "bmat_"); k && *k >= 1 && *k <= 3) {
    // k x k Boolean matrices; bit r*k + c of an element is entry (r, c).
    const std::size_t order = std::size_t{1} << (*k * *k);
    std::vector<Elem> add(order * order), mul(order * order);
    for (Elem x = 0; x < order; ++x) {
      for (Elem y = 0; y < order; ++y) {
        Elem prod = 0;
        for (std::size_t r = 0; r < *k; ++r) {
          for (std::size_t c = 0; c < *k; ++c) {
            bool bit = false;
            for (std::size_t t = 0; t < *k && !bit; ++t) {
              bit = ((x >> (r * *k + t)) & 1u) && ((y >> (t * *k + c)) & 1u);
            }
            if (bit) prod |= Elem{1} << (r * *k + c);
          }
        }
        add[x * order + y] = x | y;
        mul[x * order + y] = prod;
      }
    }
    return Semiring::from_flat(std::string(name), order, std::move(add),
                               std::move(mul));
  }
  throw UnknownBuiltin(std::string(name));
}

std::vector<std::string> builtin_names() {
  return {"T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8",
          "boolean", "chain_<k>", "z<p>", "bmat_<k>"};
}

std::vector<Semiring> enumerate_order2_semirings() {
  auto decode = [](unsigned code) {
    return std::vector<Elem>{(code >> 3) & 1u, (code >> 2) & 1u,
                             (code >> 1) & 1u, code & 1u};
  };
  std::vector<Semiring> out;
  for (unsigned a = 0; a < 16; ++a) {
    for (unsigned m = 0; m < 16; ++m) {
      auto s = order2("order2_a" + std::to_string(a) + "_m" + std::to_string(m),
                      decode(a), decode(m));
      if (check_axioms(s).empty()) out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace sap
