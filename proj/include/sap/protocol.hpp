#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "sap/matrix.hpp"
#include "sap/polynomial.hpp"
#include "sap/random.hpp"
#include "sap/semiring.hpp"

namespace sap {

// Public parameters of the two-sided matrix action key exchange. The
// generation degree bound is what honest parties use to draw their keys; an
// attacker picks its own bound independently.
struct ProtocolInstance {
  SemiringPtr semiring;
  std::size_t n;
  Matrix S, M1, M2;
  std::size_t degree_bound;

  // Throws DimensionMismatch / SemiringMismatch on inconsistent matrices.
  ProtocolInstance(SemiringPtr ring, Matrix s, Matrix m1, Matrix m2,
                   std::size_t degree_bound);
};

// Uniform S, M1, M2 entries drawn from the carrier.
ProtocolInstance random_instance(SemiringPtr ring, std::size_t n,
                                 std::size_t degree_bound, Rng& rng);

struct KeyPair {
  CenterPolynomial p, q;
  Matrix public_value;  // p(M1) * S * q(M2)
};

Matrix action(const CenterPolynomial& p, const Matrix& x,
              const CenterPolynomial& q, const Matrix& m1, const Matrix& m2);

KeyPair keypair_from(const ProtocolInstance& inst, CenterPolynomial p,
                     CenterPolynomial q);
KeyPair make_keypair(const ProtocolInstance& inst, Rng& rng);
KeyPair make_keypair(const ProtocolInstance& inst, std::uint64_t seed);

// p(M1) * theirs_public * q(M2) with this party's private pair.
Matrix shared_key(const KeyPair& mine, const Matrix& theirs_public,
                  const ProtocolInstance& inst);

// What an eavesdropper sees.
struct PublicTranscript {
  SemiringPtr semiring;
  Matrix S, M1, M2, A, B;
};

// One complete honest run.
struct Exchange {
  ProtocolInstance instance;
  KeyPair alice, bob;
  Matrix alice_key, bob_key;

  PublicTranscript public_view() const;
  bool agreed() const { return alice_key == bob_key; }
};

// Instance, Alice's and Bob's keys all drawn from one generator seeded
// with `seed`, in that order.
Exchange run_exchange(SemiringPtr ring, std::size_t n,
                      std::size_t degree_bound, std::uint64_t seed);
Exchange run_exchange(const ProtocolInstance& inst, Rng& rng);

enum class AttackRoute { Idempotent, FiniteField, Degenerate, Unsupported };

std::string_view to_string(AttackRoute route);

struct DegeneracyReport {
  bool zero_multiplication = false;
  std::optional<Elem> absorbing_sum;  // the infinity element, when present
  // 1..8 when the semiring is isomorphic to one of the order-2 tables T_i.
  std::optional<int> order2_type;
  bool degenerate = false;
  AttackRoute route = AttackRoute::Unsupported;
  std::string diagnosis;
};

// Index i such that s is isomorphic to builtin("T<i>"), for order 2.
std::optional<int> order2_type(const Semiring& s);

// Additive idempotency is tested first: T4 has products constant at its
// additive identity yet falls to the witness attack. Otherwise zero
// multiplication or an absorbing sum marks the protocol degenerate.
DegeneracyReport degeneracy_report(const Semiring& s);
inline DegeneracyReport degeneracy_report(const ProtocolInstance& inst) {
  return degeneracy_report(*inst.semiring);
}

}  // namespace sap
