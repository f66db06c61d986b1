#include "io.hpp"

#include "doctest.h"

using namespace hznf;
using hznf::io::ParseError;
using hznf::io::parse_field;
using hznf::io::serialize_field;

TEST_CASE("parse a minimal nonparametric field") {
  Field f = parse_field("hznf 1\nrotation 1\nE 1 1 [] 1\n");
  CHECK(f.q() == 0);
  CHECK(f.rotation() == Rat(1));
  CHECK(f.coeff(1, 1) == Rat(1));
  CHECK(f.size() == 1);
}

TEST_CASE("parse parametric terms, comments, duplicates") {
  const char* text =
      "# demo input\n"
      "hznf 1\n"
      "params 3\n"
      "rotation -2/3   # trailing comment\n"
      "\n"
      "E 0 1 [0,1,0] 3/2\n"
      "E 0 1 [0, 1, 0] 1/2\n"
      "E 2 2 [0,0,0] -1\n";
  Field f = parse_field(text);
  CHECK(f.q() == 3);
  CHECK(f.rotation() == Rat(-2, 3));
  CHECK(f.coeff(ETerm{0, 1, {0, 1, 0}}) == Rat(2));  // duplicates summed
  CHECK(f.coeff(2, 2) == Rat(-1));
  CHECK(f.size() == 2);
}

TEST_CASE("parse errors carry line numbers") {
  auto expect_error = [](const std::string& text, int line) {
    try {
      parse_field(text);
      FAIL_CHECK("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line == line);
    }
  };

  expect_error("E 1 1 [] 1\n", 1);                            // missing header
  expect_error("hznf 2\n", 1);                                // wrong version
  expect_error("hznf 1\nE 2 1 [] 1\n", 2);                    // l > k
  expect_error("hznf 1\nE 0 0 [] 1\n", 2);                    // constant radial term
  expect_error("hznf 1\nparams 2\nE 0 1 [1] 1\n", 3);         // arity mismatch
  expect_error("hznf 1\nE 0 1 [] 1/0\n", 2);                  // zero denominator
  expect_error("hznf 1\nE 0 1 [] 1.5\n", 2);                  // floats rejected
  expect_error("hznf 1\nrotation 1\nparams 2\n", 3);          // params after body
  expect_error("hznf 1\nwhat 4\n", 2);                        // unknown line
  expect_error("hznf 1\nparams 1\nE 0 1 [-1] 1\n", 3);        // negative exponent
  expect_error("hznf 1\nrotation 1\nrotation 2\n", 3);        // duplicate rotation
}

TEST_CASE("serialize emits canonical order and round-trips") {
  Field f(2);
  f.set_rotation(Rat(5, 7));
  f.add(ETerm{1, 2, {0, 0}}, Rat(-3, 4));
  f.add(ETerm{0, 1, {1, 0}}, Rat(2));
  f.add(ETerm{0, 1, {0, 1}}, Rat(9));
  f.add(ETerm{0, 0, {2, 0}}, Rat(1, 6));

  std::string text = serialize_field(f);
  Field g = parse_field(text);
  CHECK(g == f);
  CHECK(serialize_field(g) == text);  // idempotent after one pass

  // canonical order: l ascending, then k, then mu lexicographic
  CHECK(text ==
        "hznf 1\n"
        "params 2\n"
        "rotation 5/7\n"
        "E 0 0 [2,0] 1/6\n"
        "E 0 1 [0,1] 9\n"
        "E 0 1 [1,0] 2\n"
        "E 1 2 [0,0] -3/4\n");
}

TEST_CASE("zero rotation is omitted, empty field still round-trips") {
  Field f(0);
  std::string text = serialize_field(f);
  CHECK(text == "hznf 1\nparams 0\n");
  CHECK(parse_field(text) == f);
}

TEST_CASE("rational parsing is strict") {
  CHECK(rat_parse("3/4") == Rat(3, 4));
  CHECK(rat_parse("-3/4") == Rat(-3, 4));
  CHECK(rat_parse("6/4") == Rat(3, 2));  // canonicalized
  CHECK(rat_parse("12") == Rat(12));
  CHECK(rat_str(Rat(3, 2)) == "3/2");
  CHECK(rat_str(Rat(-5)) == "-5");
  CHECK_THROWS_AS(rat_parse("3/-4"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse(""), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("1/ 2"), std::invalid_argument);
}
