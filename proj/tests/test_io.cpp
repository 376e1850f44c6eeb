#include <doctest.h>

#include <filesystem>
#include <functional>
#include <fstream>
#include <memory>

#include "sap/error.hpp"
#include "sap/io.hpp"

using namespace sap;

namespace {

const char* const kChain3 = R"({
  "name": "chain3",
  "order": 3,
  "elements": ["bot", "mid", "top"],
  "add": [[0, 1, 2], [1, 1, 2], [2, 2, 2]],
  "mul": [[0, 0, 0], [0, 1, 1], [0, 1, 2]]
})";

std::size_t line_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("semiring documents load and round trip") {
  const Semiring s = parse_semiring(kChain3);
  CHECK(s.name() == "chain3");
  CHECK(s.order() == 3);
  CHECK(s.element_names()[2] == "top");
  CHECK(s.same_tables(builtin("chain_3")));
  const Semiring again = parse_semiring(to_json(s));
  CHECK(again.same_tables(s));
  CHECK(again.name() == s.name());
  CHECK(again.element_names() == s.element_names());
  for (const auto& name : {"T5", "bmat_2", "z3"}) {
    const Semiring b = builtin(name);
    CHECK(parse_semiring(to_json(b)).same_tables(b));
  }
}

TEST_CASE("optional fields fall back") {
  const Semiring s = parse_semiring(R"({"order": 2, "add": [[0,1],[1,1]], "mul": [[0,0],[0,1]]})",
                                    "anon");
  CHECK(s.name() == "anon");
  CHECK(s.element_names() == std::vector<std::string>{"0", "1"});
}

TEST_CASE("bad semiring documents") {
  CHECK_THROWS_AS(parse_semiring("{ not json"), ParseError);
  CHECK(line_of([] { parse_semiring("{\n\"order\": 2,\n  oops\n}"); }) == 3);
  CHECK_THROWS_AS(parse_semiring(R"({"order": 2, "add": [[0,1]], "mul": [[0,0],[0,1]]})"),
                  MalformedTables);
  CHECK_THROWS_AS(parse_semiring(R"({"order": 2, "add": [[0,1],[1,5]], "mul": [[0,0],[0,1]]})"),
                  MalformedTables);
  CHECK_THROWS_AS(parse_semiring(R"({"add": [[0,1],[1,1]], "mul": [[0,0],[0,1]]})"),
                  ParseError);
  // Non-associative addition: 1+(0+1) = 1 but (1+0)+1 = 0.
  try {
    parse_semiring(R"({"order": 2, "add": [[1,0],[1,0]], "mul": [[0,0],[0,1]]})");
    FAIL("expected InvalidSemiring");
  } catch (const InvalidSemiring& e) {
    CHECK_FALSE(e.violations().empty());
  }
}

TEST_CASE("semiring files") {
  const auto dir = std::filesystem::temp_directory_path() / "sap_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "c3.sr";
  std::ofstream(path) << kChain3;
  CHECK(load_semiring(path).same_tables(builtin("chain_3")));
  CHECK_THROWS_AS(load_semiring(dir / "missing.sr"), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("matrix text") {
  const auto c = std::make_shared<const Semiring>(builtin("chain_3"));
  const Matrix m(c, 2, {0, 2, 1, 1});
  CHECK(to_text(m) == "2\n0 2\n1 1\n");
  CHECK(parse_matrix(to_text(m), c) == m);
  CHECK(parse_matrix("# comment\n\n2\n0 2\n\n1 1\n", c) == m);
  CHECK(line_of([&] { parse_matrix("2\n0 2\n1\n", c); }) == 3);
  CHECK(line_of([&] { parse_matrix("2\n0 2\n1 7\n", c); }) == 3);
  CHECK(line_of([&] { parse_matrix("2\n0 x\n1 1\n", c); }) == 2);
  CHECK_THROWS_AS(parse_matrix("0\n", c), ParseError);
  CHECK_THROWS_AS(parse_matrix("2\n0 2\n", c), ParseError);
}

TEST_CASE("labelled transcripts") {
  const auto b = std::make_shared<const Semiring>(builtin("boolean"));
  const Exchange ex = run_exchange(b, 3, 3, 5);
  LabelledMatrices lm;
  lm.items = {{"S", ex.instance.S}, {"M1", ex.instance.M1}, {"M2", ex.instance.M2},
              {"A", ex.alice.public_value}, {"B", ex.bob.public_value}};
  const auto back = parse_labelled(to_text(lm), b);
  CHECK(back.items.size() == 5);
  const PublicTranscript pub = transcript_from(back, b);
  CHECK(pub.S == ex.instance.S);
  CHECK(pub.A == ex.alice.public_value);
  CHECK(pub.B == ex.bob.public_value);
  CHECK(back.find("K") == nullptr);
  CHECK_THROWS_AS(back.get("K"), ParseError);
  lm.items.pop_back();
  CHECK_THROWS_AS(transcript_from(parse_labelled(to_text(lm), b), b), ParseError);
}
