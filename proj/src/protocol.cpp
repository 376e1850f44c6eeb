#include "sap/protocol.hpp"

#include "sap/error.hpp"

namespace sap {

ProtocolInstance::ProtocolInstance(SemiringPtr ring, Matrix s, Matrix m1,
                                   Matrix m2, std::size_t bound)
    : semiring(std::move(ring)),
      n(s.dim()),
      S(std::move(s)),
      M1(std::move(m1)),
      M2(std::move(m2)),
      degree_bound(bound) {
  for (const Matrix* m : {&S, &M1, &M2}) {
    if (m->dim() != n) throw DimensionMismatch("public matrices differ in size");
    if (!semiring->same_tables(m->semiring())) {
      throw SemiringMismatch("public matrix over a different semiring");
    }
  }
}

ProtocolInstance random_instance(SemiringPtr ring, std::size_t n,
                                 std::size_t degree_bound, Rng& rng) {
  Matrix s = Matrix::random(ring, n, rng);
  Matrix m1 = Matrix::random(ring, n, rng);
  Matrix m2 = Matrix::random(ring, n, rng);
  return ProtocolInstance(std::move(ring), std::move(s), std::move(m1),
                          std::move(m2), degree_bound);
}

Matrix action(const CenterPolynomial& p, const Matrix& x,
              const CenterPolynomial& q, const Matrix& m1, const Matrix& m2) {
  return mat_mul(mat_mul(eval_at_matrix(p, m1), x), eval_at_matrix(q, m2));
}

KeyPair keypair_from(const ProtocolInstance& inst, CenterPolynomial p,
                     CenterPolynomial q) {
  Matrix pub = action(p, inst.S, q, inst.M1, inst.M2);
  return KeyPair{std::move(p), std::move(q), std::move(pub)};
}

KeyPair make_keypair(const ProtocolInstance& inst, Rng& rng) {
  auto [p, q] = random_private_pair(*inst.semiring, inst.degree_bound, rng);
  return keypair_from(inst, std::move(p), std::move(q));
}

KeyPair make_keypair(const ProtocolInstance& inst, std::uint64_t seed) {
  Rng rng(seed);
  return make_keypair(inst, rng);
}

Matrix shared_key(const KeyPair& mine, const Matrix& theirs_public,
                  const ProtocolInstance& inst) {
  if (theirs_public.dim() != inst.n) {
    throw DimensionMismatch("public value has dimension " +
                            std::to_string(theirs_public.dim()) +
                            ", instance uses " + std::to_string(inst.n));
  }
  return action(mine.p, theirs_public, mine.q, inst.M1, inst.M2);
}

PublicTranscript Exchange::public_view() const {
  return PublicTranscript{instance.semiring, instance.S, instance.M1,
                          instance.M2, alice.public_value, bob.public_value};
}

Exchange run_exchange(const ProtocolInstance& inst, Rng& rng) {
  KeyPair alice = make_keypair(inst, rng);
  KeyPair bob = make_keypair(inst, rng);
  Matrix ka = shared_key(alice, bob.public_value, inst);
  Matrix kb = shared_key(bob, alice.public_value, inst);
  return Exchange{inst, std::move(alice), std::move(bob), std::move(ka),
                  std::move(kb)};
}

Exchange run_exchange(SemiringPtr ring, std::size_t n,
                      std::size_t degree_bound, std::uint64_t seed) {
  Rng rng(seed);
  ProtocolInstance inst = random_instance(std::move(ring), n, degree_bound, rng);
  return run_exchange(inst, rng);
}

std::string_view to_string(AttackRoute route) {
  switch (route) {
    case AttackRoute::Idempotent:
      return "idempotent";
    case AttackRoute::FiniteField:
      return "finite-field";
    case AttackRoute::Degenerate:
      return "degenerate";
    case AttackRoute::Unsupported:
      return "unsupported";
  }
  return "?";
}

std::optional<int> order2_type(const Semiring& s) {
  if (s.order() != 2) return std::nullopt;
  const auto swapped = [&] {
    std::vector<Elem> add(4), mul(4);
    for (Elem x = 0; x < 2; ++x) {
      for (Elem y = 0; y < 2; ++y) {
        add[(1 - x) * 2 + (1 - y)] = 1 - s.add(x, y);
        mul[(1 - x) * 2 + (1 - y)] = 1 - s.mul(x, y);
      }
    }
    return Semiring::from_flat("swapped", 2, std::move(add), std::move(mul));
  }();
  for (int i = 1; i <= 8; ++i) {
    const Semiring t = builtin("T" + std::to_string(i));
    if (t.same_tables(s) || t.same_tables(swapped)) return i;
  }
  return std::nullopt;
}

DegeneracyReport degeneracy_report(const Semiring& s) {
  DegeneracyReport r;
  r.zero_multiplication = has_zero_multiplication(s);
  r.absorbing_sum = absorbing_sum_element(s);
  r.order2_type = order2_type(s);

  if (is_additively_idempotent(s)) {
    r.route = AttackRoute::Idempotent;
    r.diagnosis = "additively idempotent: witness-set attack applies";
  } else if (r.zero_multiplication) {
    r.degenerate = true;
    r.route = AttackRoute::Degenerate;
    r.diagnosis = "zero multiplication: every product is the zero matrix";
  } else if (r.absorbing_sum) {
    r.degenerate = true;
    r.route = AttackRoute::Degenerate;
    r.diagnosis = "absorbing sum: products of size >= 2 give the all-" +
                  s.element_names()[*r.absorbing_sum] + " matrix";
  } else if (const auto id = s.additive_identity();
             id && is_additive_group(s, *id) && s.multiplicative_identity()) {
    r.route = AttackRoute::FiniteField;
    r.diagnosis = "ring with identity: linear-algebra attack applies once "
                  "declared as a matrix ring over a prime field";
  } else {
    r.diagnosis = "no attack route for this structure";
  }
  if (r.order2_type) {
    r.diagnosis += " (isomorphic to T" + std::to_string(*r.order2_type) + ")";
  }
  return r;
}

}  // namespace sap
