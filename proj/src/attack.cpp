#include "sap/attack.hpp"

#include <algorithm>
#include <thread>

#include "sap/error.hpp"

namespace sap {

bool WitnessSet::contains(const WitnessTriple& t) const {
  return std::binary_search(triples.begin(), triples.end(), t);
}

void AttackStats::add(const OpCounters& c) {
  matrix_products += c.products;
  matrix_additions += c.additions;
  scalings += c.scalings;
  comparisons += c.comparisons;
}

AttackStats& AttackStats::operator+=(const AttackStats& o) {
  matrix_products += o.matrix_products;
  matrix_additions += o.matrix_additions;
  scalings += o.scalings;
  comparisons += o.comparisons;
  witness_products += o.witness_products;
  wall_time += o.wall_time;
  return *this;
}

namespace {

using Clock = std::chrono::steady_clock;

std::vector<Elem> scan_scalars(const Semiring& s) {
  std::vector<Elem> ks;
  for (Elem k : s.center().elements) {
    if (s.zero() != k) ks.push_back(k);
  }
  return ks;
}

void scan_rows(const MonomialCache& cache, const Matrix& a,
               const std::vector<Elem>& scalars, std::size_t bound,
               std::size_t first_row, std::size_t stride,
               std::vector<WitnessTriple>& out, OpCounters& counters) {
  for (std::size_t row = first_row; row <= bound; row += stride) {
    for (std::size_t col = 0; col <= bound; ++col) {
      const Matrix& x = *cache.find(row, col);
      for (Elem k : scalars) {
        const Matrix sum = mat_add(scale_left(k, x, &counters), a, &counters);
        ++counters.comparisons;
        if (sum == a) out.push_back({k, row, col});
      }
    }
  }
}

std::optional<WitnessTriple> find_exact_term(const MonomialCache& cache, const Matrix& a,
                                             std::size_t bound, OpCounters& counters) {
  for (Elem k : scan_scalars(a.semiring())) {
    for (std::size_t row = 0; row <= bound; ++row) {
      for (std::size_t col = 0; col <= bound; ++col) {
        ++counters.comparisons;
        if (scale_left(k, *cache.find(row, col), &counters) == a) return WitnessTriple{k, row, col};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

WitnessResult compute_witness_set(MonomialCache& cache, const Matrix& a,
                                  std::size_t bound, std::size_t threads) {
  const auto start = Clock::now();
  const Semiring& s = a.semiring();
  if (!is_additively_idempotent(s)) {
    throw NotIdempotent("semiring '" + s.name() +
                        "' is not additively idempotent");
  }
  const std::uint64_t before = cache.product_count();
  cache.fill(bound);

  WitnessResult result;
  result.witnesses.bound = bound;
  result.stats.witness_products = cache.product_count() - before;
  result.stats.matrix_products = result.stats.witness_products;

  const auto scalars = scan_scalars(s);
  threads = std::clamp<std::size_t>(threads, 1, bound + 1);
  std::vector<std::vector<WitnessTriple>> found(threads);
  std::vector<OpCounters> counters(threads);
  if (threads == 1) {
    scan_rows(cache, a, scalars, bound, 0, 1, found[0], counters[0]);
  } else {
    std::vector<std::jthread> workers;
    const MonomialCache& grid = cache;
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        scan_rows(grid, a, scalars, bound, t, threads, found[t], counters[t]);
      });
    }
  }
  for (std::size_t t = 0; t < threads; ++t) {
    result.stats.add(counters[t]);
    result.witnesses.triples.insert(result.witnesses.triples.end(),
                                    found[t].begin(), found[t].end());
  }
  std::sort(result.witnesses.triples.begin(), result.witnesses.triples.end());
  result.stats.wall_time = Clock::now() - start;
  return result;
}

WitnessResult compute_witness_set(const PublicTranscript& pub,
                                  std::size_t bound, std::size_t threads) {
  MonomialCache cache(pub.M1, pub.S, pub.M2);
  return compute_witness_set(cache, pub.A, bound, threads);
}

std::optional<Matrix> witness_sum(const WitnessSet& w, MonomialCache& cache,
                                  OpCounters* counters) {
  std::optional<Matrix> sum;
  for (const auto& t : w.triples) {
    Matrix term = scale_left(t.k, cache.monomial(t.a, t.b), counters);
    sum = sum ? mat_add(*sum, term, counters) : std::move(term);
  }
  return sum;
}

bool verify_witness_sum(const WitnessSet& w, MonomialCache& cache,
                        const Matrix& a) {
  const auto sum = witness_sum(w, cache);
  return sum && *sum == a;
}

bool verify_witness_sum(const WitnessSet& w, const PublicTranscript& pub) {
  MonomialCache cache(pub.M1, pub.S, pub.M2);
  return verify_witness_sum(w, cache, pub.A);
}

WitnessSet greedy_reduce(const WitnessSet& w, MonomialCache& cache,
                         const Matrix& a, OpCounters* counters) {
  WitnessSet kept = w;
  std::sort(kept.triples.begin(), kept.triples.end());
  std::vector<Matrix> terms;
  terms.reserve(kept.size());
  for (const auto& t : kept.triples) {
    terms.push_back(scale_left(t.k, cache.monomial(t.a, t.b), counters));
  }
  std::vector<bool> alive(terms.size(), true);
  for (std::size_t drop = 0; drop < terms.size(); ++drop) {
    std::optional<Matrix> rest;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i == drop || !alive[i]) continue;
      rest = rest ? mat_add(*rest, terms[i], counters) : terms[i];
    }
    if (counters) ++counters->comparisons;
    if (rest && *rest == a) alive[drop] = false;
  }
  WitnessSet out;
  out.bound = w.bound;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (alive[i]) out.triples.push_back(kept.triples[i]);
  }
  return out;
}

WitnessSet greedy_reduce(const WitnessSet& w, const PublicTranscript& pub) {
  MonomialCache cache(pub.M1, pub.S, pub.M2);
  return greedy_reduce(w, cache, pub.A);
}

RecoveryResult recover_key(const PublicTranscript& pub,
                           const AttackOptions& options) {
  const auto start = Clock::now();
  MonomialCache over_s(pub.M1, pub.S, pub.M2);
  auto [witnesses, stats] =
      compute_witness_set(over_s, pub.A, options.bound, options.threads);

  OpCounters extra;
  const std::uint64_t grid_products = over_s.product_count();
  if (options.greedy) {
    witnesses = greedy_reduce(witnesses, over_s, pub.A, &extra);
  }
  RecoveryResult result;
  result.verified = verify_witness_sum(witnesses, over_s, pub.A);
  extra.products += over_s.product_count() - grid_products;

  MonomialCache over_b(pub.M1, pub.B, pub.M2);
  if (!result.verified) result.exact_term = find_exact_term(over_s, pub.A, options.bound, extra);
  if (result.exact_term) {
    const auto& t = *result.exact_term;
    result.key = scale_left(t.k, over_b.monomial(t.a, t.b), &extra);
    result.verified = true;
  } else {
    result.key = witness_sum(witnesses, over_b, &extra);
  }
  extra.products += over_b.product_count();

  stats.add(extra);
  result.witnesses = std::move(witnesses);
  result.stats = stats;
  result.stats.wall_time = Clock::now() - start;
  return result;
}

}  // namespace sap
