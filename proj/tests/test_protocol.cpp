#include <doctest.h>

#include <memory>

#include "oracles.hpp"
#include "sap/error.hpp"
#include "sap/protocol.hpp"

using namespace sap;

namespace {

SemiringPtr ring(const char* name) {
  return std::make_shared<const Semiring>(builtin(name));
}

oracle::Mat raw(const Matrix& m) { return {m.entries().begin(), m.entries().end()}; }

std::vector<std::optional<std::uint32_t>> raw(const CenterPolynomial& p) {
  return {p.coeffs().begin(), p.coeffs().end()};
}

// p(M1) S q(M2) from scratch.
oracle::Mat naive_action(const Semiring& s, std::size_t n, const CenterPolynomial& p,
                         const oracle::Mat& x, const CenterPolynomial& q,
                         const oracle::Mat& m1, const oracle::Mat& m2) {
  const auto t = oracle::tables_of(s);
  std::optional<oracle::Mat> id;
  if (allows_constant_terms(s)) {
    id = oracle::Mat(n * n, *s.additive_identity());
    for (std::size_t i = 0; i < n; ++i) (*id)[i * n + i] = *s.multiplicative_identity();
  }
  const auto pm = *oracle::eval(t, n, raw(p), m1, id);
  const auto qm = *oracle::eval(t, n, raw(q), m2, id);
  return oracle::mul(t, n, oracle::mul(t, n, pm, x), qm);
}

}  // namespace

TEST_CASE("both parties derive the same key across the corpus") {
  std::uint64_t seed = 100;
  for (const char* name : {"boolean", "T3", "T4", "T5", "T6", "chain_3", "chain_5",
                           "bmat_2", "z2", "z3", "T8"}) {
    const auto r = ring(name);
    for (std::size_t n = 1; n <= 3; ++n) {
      for (std::size_t m : {1, 3, 6}) {
        CAPTURE(name);
        CAPTURE(n);
        CAPTURE(m);
        const Exchange ex = run_exchange(r, n, m, seed++);
        CHECK(ex.agreed());
        const auto& i = ex.instance;
        CHECK(raw(ex.alice.public_value) ==
              naive_action(*r, n, ex.alice.p, raw(i.S), ex.alice.q, raw(i.M1), raw(i.M2)));
        CHECK(raw(ex.alice_key) ==
              naive_action(*r, n, ex.alice.p, raw(ex.bob.public_value), ex.alice.q,
                           raw(i.M1), raw(i.M2)));
      }
    }
  }
}

TEST_CASE("p = q = x gives M1^2 S M2^2 as the key") {
  Rng rng(11);
  for (const char* name : {"boolean", "chain_5", "bmat_2"}) {
    const auto r = ring(name);
    const auto inst = random_instance(r, 3, 2, rng);
    const auto x = CenterPolynomial::term(*r->multiplicative_identity(), 1);
    const KeyPair alice = keypair_from(inst, x, x), bob = keypair_from(inst, x, x);
    const Matrix key = shared_key(alice, bob.public_value, inst);
    const Matrix expected =
        mat_mul(mat_mul(mat_mul(mat_mul(inst.M1, inst.M1), inst.S), inst.M2), inst.M2);
    CHECK(key == expected);
  }
}

TEST_CASE("zero multiplication makes every public value the zero matrix") {
  for (const char* name : {"T7"}) {
    const auto r = ring(name);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Exchange ex = run_exchange(r, 3, 4, seed);
      CHECK(ex.alice.public_value.is_uniform(0));
      CHECK(ex.bob.public_value.is_uniform(0));
      CHECK(ex.alice_key.is_uniform(0));
    }
  }
}

TEST_CASE("an absorbing sum drives public values to the all-infinity matrix") {
  for (const char* name : {"T1", "T2"}) {
    const auto r = ring(name);
    const Elem inf = *absorbing_sum_element(*r);
    for (std::size_t n = 2; n <= 4; ++n) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Exchange ex = run_exchange(r, n, 3, seed);
        CHECK(ex.alice.public_value.is_uniform(inf));
        CHECK(ex.bob.public_value.is_uniform(inf));
      }
    }
  }
}

TEST_CASE("frozen boolean exchange for seed 7") {
  const auto b = ring("boolean");
  const Exchange ex = run_exchange(b, 2, 3, 7);
  const auto& i = ex.instance;
  CHECK(i.S == Matrix(b, 2, {1, 0, 0, 0}));
  CHECK(i.M1 == Matrix(b, 2, {1, 0, 1, 0}));
  CHECK(i.M2 == Matrix(b, 2, {1, 0, 0, 1}));
  CHECK(ex.alice.public_value == Matrix(b, 2, {1, 0, 1, 0}));
  CHECK(ex.bob.public_value == Matrix(b, 2, {1, 0, 1, 0}));
  CHECK(ex.alice_key == Matrix(b, 2, {1, 0, 1, 0}));
  CHECK(raw(ex.alice.public_value) ==
        naive_action(*b, 2, ex.alice.p, raw(i.S), ex.alice.q, raw(i.M1), raw(i.M2)));
  CHECK(raw(ex.bob_key) ==
        naive_action(*b, 2, ex.bob.p, raw(ex.alice.public_value), ex.bob.q, raw(i.M1),
                     raw(i.M2)));
}

TEST_CASE("exchanges are reproducible from the seed") {
  const auto r = ring("chain_5");
  const Exchange a = run_exchange(r, 3, 5, 99), b = run_exchange(r, 3, 5, 99);
  CHECK(a.instance.S == b.instance.S);
  CHECK(a.alice.p == b.alice.p);
  CHECK(a.bob.q == b.bob.q);
  CHECK(a.alice_key == b.alice_key);
}

TEST_CASE("degeneracy reports route each order-2 type") {
  for (const char* name : {"T1", "T2", "T7"}) {
    const auto rep = degeneracy_report(builtin(name));
    CAPTURE(name);
    CHECK(rep.degenerate);
    CHECK(rep.route == AttackRoute::Degenerate);
  }
  CHECK(degeneracy_report(builtin("T7")).zero_multiplication);
  CHECK(degeneracy_report(builtin("T7")).diagnosis.find("zero matri") != std::string::npos);
  CHECK(degeneracy_report(builtin("T1")).absorbing_sum == Elem{0});
  CHECK(degeneracy_report(builtin("T2")).absorbing_sum == Elem{0});
  // Constant products equal to the additive identity, but idempotent.
  CHECK(degeneracy_report(builtin("T4")).zero_multiplication);
  for (const char* name : {"T3", "T4", "T5", "T6", "boolean", "chain_3", "bmat_2"}) {
    CAPTURE(name);
    CHECK(degeneracy_report(builtin(name)).route == AttackRoute::Idempotent);
  }
  CHECK(degeneracy_report(builtin("T8")).route == AttackRoute::FiniteField);
  CHECK(degeneracy_report(builtin("z5")).route == AttackRoute::FiniteField);
  CHECK(degeneracy_report(builtin("boolean")).order2_type == 5);
  for (int t = 1; t <= 8; ++t) {
    CHECK(order2_type(builtin("T" + std::to_string(t))) == t);
  }
  CHECK_FALSE(order2_type(builtin("chain_3")));
}

TEST_CASE("instance validation") {
  const auto b = ring("boolean");
  const auto c = ring("chain_3");
  const Matrix s2(b, 2, Elem{0}), s3(b, 3, Elem{0});
  CHECK_THROWS_AS(ProtocolInstance(b, s2, s3, s2, 2), DimensionMismatch);
  CHECK_THROWS_AS(ProtocolInstance(b, s2, s2, Matrix(c, 2, Elem{0}), 2), SemiringMismatch);
  const ProtocolInstance ok(b, s2, s2, s2, 2);
  const KeyPair kp = keypair_from(ok, CenterPolynomial::term(1, 1), CenterPolynomial::term(1, 1));
  CHECK_THROWS_AS(shared_key(kp, s3, ok), DimensionMismatch);
}
