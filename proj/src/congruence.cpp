#include "sap/congruence.hpp"

#include <numeric>

#include "sap/error.hpp"

namespace sap {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // False when already in the same class.
  bool merge(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Partition Partition::identity(std::size_t order) {
  Partition p;
  p.class_of.resize(order);
  std::iota(p.class_of.begin(), p.class_of.end(), std::size_t{0});
  return p;
}

Partition Partition::full(std::size_t order) {
  return Partition{std::vector<std::size_t>(order, 0)};
}

Partition Partition::normalized(std::span<const std::size_t> labels) {
  Partition p;
  p.class_of.reserve(labels.size());
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t label : labels) {
    std::size_t id = seen.size();
    for (const auto& [from, to] : seen) {
      if (from == label) {
        id = to;
        break;
      }
    }
    if (id == seen.size()) seen.emplace_back(label, id);
    p.class_of.push_back(id);
  }
  return p;
}

std::size_t Partition::num_classes() const {
  std::size_t n = 0;
  for (std::size_t c : class_of) n = std::max(n, c + 1);
  return n;
}

bool Partition::refines(const Partition& coarser) const {
  for (std::size_t a = 0; a < class_of.size(); ++a) {
    for (std::size_t b = a + 1; b < class_of.size(); ++b) {
      if (class_of[a] == class_of[b] &&
          coarser.class_of[a] != coarser.class_of[b]) {
        return false;
      }
    }
  }
  return true;
}

Partition congruence_closure(const Semiring& s,
                             std::span<const std::pair<Elem, Elem>> seeds) {
  const auto n = static_cast<Elem>(s.order());
  UnionFind uf(n);
  // Each queued pair was merged once; closing it under the four
  // compatibility rules for every c suffices, since transitivity carries the
  // images along chains of merged pairs.
  std::vector<std::pair<Elem, Elem>> worklist;
  auto relate = [&](Elem x, Elem y) {
    if (uf.merge(x, y)) worklist.emplace_back(x, y);
  };
  for (const auto& [a, b] : seeds) relate(a, b);
  while (!worklist.empty()) {
    const auto [x, y] = worklist.back();
    worklist.pop_back();
    for (Elem c = 0; c < n; ++c) {
      relate(s.add(x, c), s.add(y, c));
      relate(s.add(c, x), s.add(c, y));
      relate(s.mul(x, c), s.mul(y, c));
      relate(s.mul(c, x), s.mul(c, y));
    }
  }
  std::vector<std::size_t> labels(n);
  for (Elem x = 0; x < n; ++x) labels[x] = uf.find(x);
  return Partition::normalized(labels);
}

Partition congruence_closure(const Semiring& s, Elem a, Elem b) {
  const std::pair<Elem, Elem> seed{a, b};
  return congruence_closure(s, std::span(&seed, 1));
}

bool is_congruence(const Semiring& s, const Partition& p) {
  const auto n = static_cast<Elem>(s.order());
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = a + 1; b < n; ++b) {
      if (!p.related(a, b)) continue;
      for (Elem c = 0; c < n; ++c) {
        if (!p.related(s.add(a, c), s.add(b, c)) ||
            !p.related(s.add(c, a), s.add(c, b)) ||
            !p.related(s.mul(a, c), s.mul(b, c)) ||
            !p.related(s.mul(c, a), s.mul(c, b))) {
          return false;
        }
      }
    }
  }
  return true;
}

bool is_congruence_simple(const Semiring& s) {
  if (s.order() > kMaxSimplicityOrder) {
    throw OrderTooLarge("congruence-simplicity is only decided for order <= " +
                        std::to_string(kMaxSimplicityOrder));
  }
  const auto n = static_cast<Elem>(s.order());
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = a + 1; b < n; ++b) {
      if (congruence_closure(s, a, b).num_classes() != 1) return false;
    }
  }
  return true;
}

}  // namespace sap
