#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "sap/attack.hpp"
#include "sap/congruence.hpp"
#include "sap/error.hpp"
#include "sap/finite_field.hpp"
#include "sap/io.hpp"
#include "sap/protocol.hpp"
#include "sap/semiring.hpp"

namespace sapkit {

namespace {

using namespace sap;

struct RunConfig {
  std::string builtin;
  std::string file;
  std::string format = "human";
  std::size_t n = 2;
  std::size_t m = 3;
  std::optional<std::size_t> bound;
  std::uint64_t seed = 1;
  std::size_t count = 1;
  std::size_t threads = 1;
  bool greedy = false;
  bool stats = false;
  bool oracle = false;
  std::string transcript;
  std::string write_transcript;
  // ff-attack
  Residue p = 0;
  std::size_t inner = 0;
  std::size_t outer = 2;
  std::size_t degree = 3;
  Residue free_value = 0;
};

// Prints key=value lines, or aligned "key: value" for people.
class Emitter {
 public:
  Emitter(std::ostream& out, bool machine) : out_(out), machine_(machine) {}

  bool machine() const { return machine_; }

  void field(std::string_view key, std::string_view value) {
    if (machine_) {
      out_ << key << '=' << value << '\n';
    } else {
      out_ << key << ": " << value << '\n';
    }
  }
  void field(std::string_view key, const char* value) {
    field(key, std::string_view(value));
  }
  void field(std::string_view key, const std::string& value) {
    field(key, std::string_view(value));
  }
  void field(std::string_view key, bool value) {
    field(key, std::string_view(value ? "true" : "false"));
  }
  template <typename T>
    requires std::is_arithmetic_v<T>
  void field(std::string_view key, T value) {
    field(key, std::to_string(value));
  }

  // Matrices as "r0;r1;..." on one line in machine mode.
  void matrix(std::string_view key, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // dimension header
    if (machine_) {
      std::string rows;
      while (std::getline(in, line)) rows += (rows.empty() ? "" : ";") + line;
      field(key, rows);
    } else {
      out_ << key << ":\n";
      while (std::getline(in, line)) out_ << "  " << line << '\n';
    }
  }
  void matrix(std::string_view key, const Matrix& m) { matrix(key, to_text(m)); }
  void matrix(std::string_view key, const FieldMatrix& m) {
    std::ostringstream text;
    text << m.dim() << '\n';
    for (std::size_t i = 0; i < m.dim(); ++i) {
      for (std::size_t j = 0; j < m.dim(); ++j) text << (j ? " " : "") << m(i, j);
      text << '\n';
    }
    matrix(key, text.str());
  }

  void separator() {
    if (!machine_) out_ << '\n';
  }

 private:
  std::ostream& out_;
  bool machine_;
};

std::string join(const std::vector<Elem>& xs) {
  std::string s;
  for (Elem x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "{" + s + "}";
}

SemiringPtr load_source(const RunConfig& cfg) {
  if (!cfg.builtin.empty() && !cfg.file.empty()) {
    throw CLI::ValidationError("give exactly one of --builtin and --file");
  }
  if (!cfg.file.empty()) return std::make_shared<const Semiring>(load_semiring(cfg.file));
  if (!cfg.builtin.empty()) return std::make_shared<const Semiring>(builtin(cfg.builtin));
  throw CLI::ValidationError("a semiring source (--builtin or --file) is required");
}

int cmd_check(const RunConfig& cfg, Emitter& e) {
  const auto s = load_source(cfg);
  const auto violations = check_axioms(*s);
  e.field("semiring", s->name());
  e.field("order", s->order());
  e.field("axioms", violations.empty() ? "ok" : "violated");
  e.field("violations", violations.size());
  for (std::size_t i = 0; i < std::min<std::size_t>(violations.size(), 10); ++i) {
    e.field("violation", describe(violations[i]));
  }
  e.field("idempotent", is_additively_idempotent(*s));
  e.field("additively_commutative", is_additively_commutative(*s));
  e.field("multiplicatively_commutative", is_multiplicatively_commutative(*s));
  e.field("class", to_string(classify(*s).tag));
  e.field("center", join(center(*s).elements));
  if (s->order() <= kMaxSimplicityOrder) {
    e.field("simple", is_congruence_simple(*s));
  } else {
    e.field("simple", "skipped");
  }
  const auto report = degeneracy_report(*s);
  e.field("route", to_string(report.route));
  e.field("diagnosis", report.diagnosis);
  return violations.empty() ? kOk : kUsage;
}

void emit_degeneracy(const DegeneracyReport& r, Emitter& e) {
  e.field("degenerate", r.degenerate);
  e.field("route", to_string(r.route));
  e.field("diagnosis", r.diagnosis);
}

int cmd_demo(const RunConfig& cfg, Emitter& e) {
  const auto s = load_source(cfg);
  e.field("seed", cfg.seed);
  e.field("semiring", s->name());
  const auto report = degeneracy_report(*s);
  if (report.degenerate) {
    emit_degeneracy(report, e);
    return kDegenerate;
  }
  const Exchange ex = run_exchange(s, cfg.n, cfg.m, cfg.seed);
  e.field("n", cfg.n);
  e.field("m", cfg.m);
  e.matrix("S", ex.instance.S);
  e.matrix("M1", ex.instance.M1);
  e.matrix("M2", ex.instance.M2);
  e.matrix("A", ex.alice.public_value);
  e.matrix("B", ex.bob.public_value);
  e.matrix("key", ex.alice_key);
  e.field("agreement", ex.agreed());
  if (!cfg.write_transcript.empty()) {
    LabelledMatrices lm;
    lm.items = {{"S", ex.instance.S},         {"M1", ex.instance.M1},
                {"M2", ex.instance.M2},       {"A", ex.alice.public_value},
                {"B", ex.bob.public_value},   {"K", ex.alice_key}};
    std::ofstream(cfg.write_transcript) << to_text(lm);
  }
  return ex.agreed() ? kOk : kUsage;
}

void emit_stats(const AttackStats& st, Emitter& e) {
  e.field("stats.matrix_products", st.matrix_products);
  e.field("stats.witness_products", st.witness_products);
  e.field("stats.matrix_additions", st.matrix_additions);
  e.field("stats.scalings", st.scalings);
  e.field("stats.comparisons", st.comparisons);
  e.field("stats.wall_time_us",
          std::chrono::duration_cast<std::chrono::microseconds>(st.wall_time).count());
}

int cmd_attack(const RunConfig& cfg, Emitter& e) {
  const auto s = load_source(cfg);
  const auto report = degeneracy_report(*s);
  if (report.route != AttackRoute::Idempotent) {
    e.field("semiring", s->name());
    emit_degeneracy(report, e);
    if (report.degenerate) return kDegenerate;
    throw NotIdempotent("semiring '" + s->name() +
                        "' is not additively idempotent; use the " +
                        std::string(to_string(report.route)) + " route");
  }
  AttackOptions options;
  options.bound = cfg.bound.value_or(2 * cfg.m);
  options.greedy = cfg.greedy;
  options.threads = cfg.threads;

  if (!cfg.transcript.empty()) {
    const auto lm = parse_labelled(read_file(cfg.transcript), s);
    const auto result = recover_key(transcript_from(lm, s), options);
    e.field("seed", "none");
    e.field("semiring", s->name());
    e.field("bound", options.bound);
    e.field("witnesses", result.witnesses.size());
    e.field("verified", result.verified);
    if (result.exact_term) e.field("exact_term", true);
    if (result.key) e.matrix("recovered", *result.key);
    if (cfg.stats) emit_stats(result.stats, e);
    if (!cfg.oracle) {
      e.field("match", "unknown");
      return kOk;
    }
    const Matrix& truth = lm.get("K");
    const bool match = result.key && *result.key == truth;
    e.field("match", match);
    return match ? kOk : kMismatch;
  }

  std::size_t matches = 0;
  for (std::size_t run = 0; run < cfg.count; ++run) {
    const std::uint64_t seed = cfg.seed + run;
    const Exchange ex = run_exchange(s, cfg.n, cfg.m, seed);
    // The attacker gets the public view only.
    const RecoveryResult result = recover_key(ex.public_view(), options);
    // Oracle-only comparison against the honest parties' key.
    const bool match = result.key && *result.key == ex.alice_key;
    matches += match;
    e.field("seed", seed);
    e.field("semiring", s->name());
    e.field("n", cfg.n);
    e.field("m", cfg.m);
    e.field("bound", options.bound);
    e.field("witnesses", result.witnesses.size());
    e.field("verified", result.verified);
    if (result.exact_term) e.field("exact_term", true);
    if (!e.machine() || cfg.count == 1) {
      if (result.key) e.matrix("recovered", *result.key);
    }
    e.field("match", match);
    if (cfg.stats) emit_stats(result.stats, e);
    e.separator();
  }
  if (cfg.count > 1) {
    e.field("runs", cfg.count);
    e.field("matches", matches);
  }
  return (cfg.oracle && matches != cfg.count) ? kMismatch : kOk;
}

int cmd_ff_attack(const RunConfig& cfg, Emitter& e) {
  SemiringPtr ring;
  Residue p = cfg.p;
  std::size_t inner = cfg.inner;
  if (!cfg.builtin.empty() || !cfg.file.empty()) {
    ring = load_source(cfg);
    if (p == 0) p = static_cast<Residue>(ring->order());
    if (inner == 0) inner = 1;
    const auto report = degeneracy_report(*ring);
    if (report.route != AttackRoute::FiniteField) {
      e.field("semiring", ring->name());
      emit_degeneracy(report, e);
      if (report.degenerate) return kDegenerate;
      throw StructureMismatch("semiring '" + ring->name() +
                              "' is not a matrix ring over a field; use the " +
                              std::string(to_string(report.route)) + " route");
    }
  } else {
    if (p == 0) throw CLI::ValidationError("--p is required without a semiring source");
    if (inner == 0) inner = 1;
    ring = std::make_shared<const Semiring>(matrix_ring_semiring(p, inner));
  }
  const MatrixRingStructure st = declare_matrix_ring(*ring, p, inner);

  std::size_t matches = 0;
  for (std::size_t run = 0; run < cfg.count; ++run) {
    const std::uint64_t seed = cfg.seed + run;
    const Exchange ex = run_exchange(ring, cfg.outer, cfg.degree, seed);
    const PublicTranscript pub = ex.public_view();
    const FieldRecovery rec =
        ff_recover_key(flatten(pub.M1, st), flatten(pub.M2, st),
                       flatten(pub.S, st), flatten(pub.A, st),
                       flatten(pub.B, st), cfg.free_value);
    // Oracle-only comparison.
    const bool match = rec.key == flatten(ex.alice_key, st);
    matches += match;
    e.field("seed", seed);
    e.field("semiring", ring->name());
    e.field("p", p);
    e.field("inner", inner);
    e.field("outer", cfg.outer);
    e.field("degree", cfg.degree);
    e.field("unknowns", rec.solution.values.size());
    e.field("rank", rec.solution.rank);
    if (!e.machine() || cfg.count == 1) e.matrix("recovered", rec.key);
    e.field("match", match);
    if (cfg.stats) e.field("stats.matrix_products", rec.counters.products);
    e.separator();
  }
  if (cfg.count > 1) {
    e.field("runs", cfg.count);
    e.field("matches", matches);
  }
  return matches == cfg.count ? kOk : kMismatch;
}

int cmd_enumerate(Emitter& e) {
  const auto all = enumerate_order2_semirings();
  std::size_t counterexamples = 0;
  std::vector<bool> found(9, false);
  for (const auto& s : all) {
    const bool comm = is_additively_commutative(s);
    const bool idem = is_additively_idempotent(s);
    if (!comm && !idem) ++counterexamples;
    std::string exact = "-";
    for (int i = 1; i <= 8; ++i) {
      if (builtin("T" + std::to_string(i)).same_tables(s)) {
        exact = "T" + std::to_string(i);
        found[i] = true;
      }
    }
    const auto iso = order2_type(s);
    e.field("semiring", s.name() + " add_comm=" + (comm ? "1" : "0") +
                            " add_idem=" + (idem ? "1" : "0") + " exact=" + exact +
                            " iso=" + (iso ? "T" + std::to_string(*iso) : "-"));
  }
  e.field("total", all.size());
  e.field("noncommutative_nonidempotent", counterexamples);
  bool all_found = true;
  for (int i = 1; i <= 8; ++i) all_found = all_found && found[i];
  e.field("contains_T1_to_T8", all_found);
  return counterexamples == 0 && all_found ? kOk : kMismatch;
}

void add_source(CLI::App* sub, RunConfig& cfg) {
  auto* b = sub->add_option("--builtin", cfg.builtin,
                            "builtin semiring: T1..T8, boolean, chain_<k>, z<p>");
  auto* f = sub->add_option("--file", cfg.file, "semiring JSON file");
  b->excludes(f);
}

void add_format(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "human or kv")
      ->check(CLI::IsMember({"human", "kv"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Semiring key exchange toolkit: checks, demos and attacks"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* check = app.add_subcommand("check", "inspect a semiring");
  add_source(check, cfg);
  add_format(check, cfg);

  auto* demo = app.add_subcommand("demo", "run one key exchange");
  add_source(demo, cfg);
  add_format(demo, cfg);
  demo->add_option("--n", cfg.n, "matrix dimension")->check(CLI::PositiveNumber);
  demo->add_option("--m", cfg.m, "private degree bound")->check(CLI::PositiveNumber);
  demo->add_option("--seed", cfg.seed, "random seed");
  demo->add_option("--write-transcript", cfg.write_transcript,
                   "write S, M1, M2, A, B and K to this file");

  auto* attack = app.add_subcommand("attack", "witness-set attack on a transcript");
  add_source(attack, cfg);
  add_format(attack, cfg);
  attack->add_option("--n", cfg.n, "matrix dimension")->check(CLI::PositiveNumber);
  attack->add_option("--m", cfg.m, "private degree bound of the honest parties")
      ->check(CLI::PositiveNumber);
  attack->add_option("--bound", cfg.bound, "attacker degree bound (default 2m)");
  attack->add_option("--seed", cfg.seed, "first random seed");
  attack->add_option("--count", cfg.count, "number of consecutive seeds")
      ->check(CLI::PositiveNumber);
  attack->add_option("--threads", cfg.threads, "witness scan workers")
      ->check(CLI::PositiveNumber);
  attack->add_option("--transcript", cfg.transcript,
                     "attack a saved transcript instead of a seeded demo");
  attack->add_flag("--greedy", cfg.greedy, "greedily shrink the witness set");
  attack->add_flag("--stats", cfg.stats, "emit operation counters");
  attack->add_flag("--oracle", cfg.oracle,
                   "exit 3 when the recovered key differs from the true key");

  auto* ff = app.add_subcommand("ff-attack", "linear-algebra attack over Mat_n(F_p)");
  add_source(ff, cfg);
  add_format(ff, cfg);
  ff->add_option("--p", cfg.p, "prime field size");
  ff->add_option("--n", cfg.inner, "inner block dimension (R = Mat_n(F_p))");
  ff->add_option("--m", cfg.outer, "outer matrix dimension")->check(CLI::PositiveNumber);
  ff->add_option("--degree", cfg.degree, "private degree bound")
      ->check(CLI::PositiveNumber);
  ff->add_option("--seed", cfg.seed, "first random seed");
  ff->add_option("--count", cfg.count, "number of consecutive seeds")
      ->check(CLI::PositiveNumber);
  ff->add_option("--free-value", cfg.free_value,
                 "value given to free variables of the linear system");
  ff->add_flag("--stats", cfg.stats, "emit operation counters");

  auto* enumerate = app.add_subcommand("enumerate-order2",
                                       "exhaust all order-2 table pairs");
  add_format(enumerate, cfg);

  std::vector<std::string> argv_tail(args.size() > 1 ? args.begin() + 1 : args.end(),
                                     args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  Emitter emitter(out, cfg.format == "kv");
  try {
    if (*check) return cmd_check(cfg, emitter);
    if (*demo) return cmd_demo(cfg, emitter);
    if (*attack) return cmd_attack(cfg, emitter);
    if (*ff) return cmd_ff_attack(cfg, emitter);
    if (*enumerate) return cmd_enumerate(emitter);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const sap::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace sapkit
