#include <doctest.h>

#include "oracles.hpp"
#include "sap/congruence.hpp"
#include "sap/error.hpp"

using namespace sap;

namespace {

std::vector<Semiring> corpus_up_to_6() {
  std::vector<Semiring> out;
  for (const char* n : {"T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "boolean",
                        "chain_2", "chain_3", "chain_4", "chain_5", "chain_6", "z2",
                        "z3", "z5"}) {
    out.push_back(builtin(n));
  }
  std::vector<Elem> add(9), zero(9, 0);
  for (Elem x = 0; x < 3; ++x)
    for (Elem y = 0; y < 3; ++y) add[x * 3 + y] = (x + y) % 3;
  out.push_back(Semiring::from_flat("zmr3", 3, add, zero));
  out.push_back(Semiring::from_flat("inf3", 3, zero, zero));
  for (auto& s : enumerate_order2_semirings()) out.push_back(std::move(s));
  return out;
}

}  // namespace

TEST_CASE("closure of a pair with itself is the identity partition") {
  const Semiring s = builtin("chain_5");
  for (Elem a = 0; a < 5; ++a) {
    CHECK(congruence_closure(s, a, a) == Partition::identity(5));
  }
}

TEST_CASE("closure examples") {
  CHECK(congruence_closure(builtin("boolean"), 0, 1) == Partition::full(2));
  const Partition chain = congruence_closure(builtin("chain_3"), 1, 2);
  CHECK(chain.class_of == std::vector<std::size_t>{0, 1, 1});
  CHECK(chain.num_classes() == 2);
}

TEST_CASE("closure equals the finest compatible partition found by enumeration") {
  for (const auto& s : corpus_up_to_6()) {
    CAPTURE(s.name());
    const auto t = oracle::tables_of(s);
    for (Elem a = 0; a < s.order(); ++a) {
      for (Elem b = 0; b < s.order(); ++b) {
        const Partition p = congruence_closure(s, a, b);
        CHECK(is_congruence(s, p));
        CHECK(p.related(a, b));
        CHECK(p == Partition::normalized(oracle::closure_by_partitions(t, a, b)));
      }
    }
  }
}

TEST_CASE("closure is monotone in its seeds") {
  for (const char* n : {"chain_6", "z5", "boolean", "T4"}) {
    const Semiring s = builtin(n);
    for (Elem a = 0; a < s.order(); ++a)
      for (Elem b = 0; b < s.order(); ++b)
        for (Elem c = 0; c < s.order(); ++c) {
          const std::pair<Elem, Elem> seeds[] = {{a, b}, {c, 0}};
          CHECK(congruence_closure(s, a, b).refines(congruence_closure(s, seeds)));
        }
  }
}

TEST_CASE("congruence simplicity matches the all-partitions oracle") {
  for (const auto& s : corpus_up_to_6()) {
    CAPTURE(s.name());
    CHECK(is_congruence_simple(s) == oracle::simple_by_partitions(oracle::tables_of(s)));
  }
  CHECK(is_congruence_simple(builtin("boolean")));
  CHECK_FALSE(is_congruence_simple(builtin("chain_3")));
  for (int i = 1; i <= 8; ++i) {
    CHECK(is_congruence_simple(builtin("T" + std::to_string(i))));
  }
  // A proper congruence on Z5 would be an ideal; there is none.
  CHECK(is_congruence_simple(builtin("z5")));
}

TEST_CASE("partition helpers") {
  const std::size_t labels[] = {7, 3, 7, 9};
  const Partition p = Partition::normalized(labels);
  CHECK(p.class_of == std::vector<std::size_t>{0, 1, 0, 2});
  CHECK(p.num_classes() == 3);
  CHECK(Partition::identity(4).refines(p));
  CHECK(p.refines(Partition::full(4)));
  CHECK_FALSE(Partition::full(4).refines(p));
}

TEST_CASE("simplicity is only decided for small carriers") {
  CHECK_THROWS_AS(is_congruence_simple(builtin("chain_65")), OrderTooLarge);
  CHECK_NOTHROW(is_congruence_simple(builtin("chain_64")));
}
