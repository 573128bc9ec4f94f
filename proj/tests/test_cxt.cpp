#include "doctest.h"

#include "concept_nmr/cxt.hpp"
#include "concept_nmr/error.hpp"
#include "support.hpp"

using namespace cnmr;
using namespace cnmr::fca;

TEST_CASE("animals fixture parses") {
  const auto c = read_cxt_file(testing::data_dir() / "animals.cxt");
  CHECK(c.object_count() == 4);
  CHECK(c.attribute_count() == 5);
  CHECK(c.incident(c.object_index("a3"), c.attribute_index("x4")));
  CHECK_FALSE(c.incident(c.object_index("a4"), c.attribute_index("x1")));
}

TEST_CASE("write then parse is a fixpoint on the fixture") {
  const auto text = testing::slurp(testing::data_dir() / "animals.cxt");
  const auto c = parse_cxt(text);
  CHECK(write_cxt(c) == text);
  CHECK(parse_cxt(write_cxt(c)) == c);
}

TEST_CASE("random contexts round trip") {
  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto c = testing::random_context(rng, 1 + rng() % 5, 1 + rng() % 5);
    CHECK(parse_cxt(write_cxt(c)) == c);
  }
}

TEST_CASE("malformed input reports the line") {
  const auto bad_header = "Q\n\n1\n1\n\na\nx\nX\n";
  try {
    parse_cxt(bad_header);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  const auto bad_row = "B\n\n1\n2\n\na\nx\ny\nX?\n";
  try {
    parse_cxt(bad_row);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 9);
  }
  CHECK_THROWS_AS(parse_cxt("B\n\n2\n1\n\na\nb\nx\nX\n"), ParseError);
}

TEST_CASE("windows line endings are accepted") {
  const auto c = parse_cxt("B\r\n\r\n1\r\n1\r\n\r\na\r\nx\r\nX\r\n");
  CHECK(c.incident(0, 0));
}
