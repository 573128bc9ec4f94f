#include "doctest.h"

#include "concept_nmr/error.hpp"
#include "concept_nmr/model_io.hpp"
#include "support.hpp"

using namespace cnmr;
using namespace cnmr::io;

TEST_CASE("shipped fixtures are emit fixpoints") {
  for (const char* file : {"model_m.json", "model_m_prime_derived.json", "model_m_prime_literal.json"}) {
    CAPTURE(file);
    const auto text = testing::slurp(testing::data_dir() / file);
    const auto doc = parse_model(text);
    const auto once = emit_model(doc.model, doc.metadata);
    CHECK(once == text);
    const auto again = parse_model(once);
    CHECK(emit_model(again.model, again.metadata) == once);
  }
}

TEST_CASE("random models round trip") {
  for (unsigned seed = 0; seed < 30; ++seed) {
    const auto m = testing::random_model(seed);
    const auto text = emit_model(m);
    const auto back = parse_model(text).model;
    CHECK(emit_model(back) == text);
    CHECK(back.preference() == m.preference());
    CHECK(back.labels() == m.labels());
  }
}

TEST_CASE("cxt references resolve against the base directory") {
  const std::string text = R"({
  "variables": ["p"],
  "contexts": [{"name": "K", "cxt": "animals.cxt"}],
  "valuations": [{"name": "V", "context": "K", "assign": {"p": {"extent": ["a1", "a2"]}}}],
  "states": [{"name": "s", "label": [{"context": "K", "valuation": "V", "point": "a1"}]}],
  "pref": []
})";
  const auto doc = parse_model(text, testing::data_dir());
  CHECK(doc.model.contexts()[0].context->object_count() == 4);
  CHECK(doc.model.valuations()[0].model->value("p").intent.count() == 2);
  CHECK(emit_model(doc.model).find("\"cxt\": \"animals.cxt\"") != std::string::npos);
}

TEST_CASE("invalid documents") {
  const auto base = testing::slurp(testing::data_dir() / "model_m.json");
  auto broken = [&](const std::string& from, const std::string& to) {
    auto t = base;
    const auto pos = t.find(from);
    REQUIRE(pos != std::string::npos);
    t.replace(pos, from.size(), to);
    return t;
  };
  // Unstable extent.
  CHECK_THROWS_AS(parse_model(broken("\"a2\",\n            \"a4\"", "\"a2\",\n            \"a3\"")), InputError);
  // Unknown state in pref.
  CHECK_THROWS_AS(parse_model(broken("\"s4\",\n      \"s1\"", "\"s9\",\n      \"s1\"")), InputError);
  // Intent disagreeing with the extent.
  CHECK_THROWS_AS(parse_model(broken("\"x2\"\n", "\"x3\"\n")), InputError);
  CHECK_THROWS_AS(parse_model("{"), InputError);
  CHECK_THROWS_AS(parse_model("[]"), InputError);
}
