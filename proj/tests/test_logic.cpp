#include "doctest.h"

#include "concept_nmr/error.hpp"
#include "concept_nmr/logic.hpp"
#include "support.hpp"

using namespace cnmr;
using namespace cnmr::logic;

namespace {

const PolarityModel& animals_model() {
  static const auto doc = testing::example("model_m.json");
  return doc.model.base({0, 0});
}

Formula f(const char* text) { return parse_formula(text); }

}  // namespace

TEST_CASE("interpretation on the animals model") {
  const auto& m = animals_model();
  const auto& c = m.context();
  CHECK(c.object_names(interpret(m, f("C1 & C3")).extent) == std::vector<std::string>{"a1"});
  CHECK(interpret(m, f("C1 | C2")) == fca::top_concept(c));
  CHECK(interpret(m, f("top")).extent == c.all_objects());
  CHECK(interpret(m, f("bot")) == fca::bottom_concept(c));
}

TEST_CASE("satisfaction is not pointwise for join") {
  const auto& m = animals_model();
  CHECK(satisfies(m, "a3", f("top")));
  CHECK(satisfies(m, "a3", f("C1 | C2")));
  CHECK_FALSE(satisfies(m, "a3", f("C1")));
  CHECK_FALSE(satisfies(m, "a3", f("C2")));
  CHECK(satisfies(m, "a4", f("C2 & C4")));
  for (std::size_t a = 0; a < m.context().object_count(); ++a)
    CHECK(satisfies(m, a, f("bot")) == m.context().row(a).all());
}

TEST_CASE("co-satisfaction") {
  const auto& m = animals_model();
  CHECK(co_satisfies(m, "x5", f("C1")));
  CHECK(co_satisfies(m, "x2", f("C1 & C2")));
  CHECK_FALSE(co_satisfies(m, "x2", f("C1")));
  const auto& c = m.context();
  for (std::size_t x = 0; x < c.attribute_count(); ++x)
    CHECK(co_satisfies(m, x, f("top")) == c.column(x).all());
}

TEST_CASE("strict sequents") {
  const auto& m = animals_model();
  CHECK(valid_sequent(m, parse_sequent("C1 & C3 |- C1")));
  CHECK_FALSE(valid_sequent(m, parse_sequent("C3 |- C1")));
  CHECK(valid_sequent(m, parse_sequent("bot |- C4")));
  CHECK(valid_sequent(m, parse_sequent("C1 |- C5")));
  CHECK_THROWS_AS(valid_sequent(m, parse_sequent("C1 |~ C5")), InputError);
}

TEST_CASE("unbound variables") {
  CHECK_THROWS_AS(interpret(animals_model(), f("C9")), EvaluationError);
}

TEST_CASE("valuations must be concepts") {
  const auto& m = animals_model();
  auto ctx = m.context_ptr();
  std::map<std::string, fca::Concept, std::less<>> v{
      {"p", fca::Concept{ctx->object_set({"a2", "a3"}), ctx->attribute_set({"x5"})}}};
  CHECK_THROWS_AS(PolarityModel(ctx, v), InputError);
}

TEST_CASE("interpretation agrees with the raw incidence oracle") {
  for (unsigned seed = 0; seed < 40; ++seed) {
    const auto pm = testing::random_model(seed);
    std::mt19937 rng(seed);
    for (const auto& val : pm.valuations())
      for (int k = 0; k < 20; ++k) {
        const auto g = testing::random_formula(rng, pm.variables(), 3);
        CHECK(testing::to_bits(interpret(*val.model, g).extent) == testing::oracle_extent(*val.model, g));
      }
  }
}

TEST_CASE("generated sublattice") {
  const auto& m = animals_model();
  const auto sub = generated_sublattice(m, {"C1", "C2", "C3", "C4", "C5"});
  const auto lat = fca::concept_lattice(m.context());
  std::set<IndexSet> extents;
  for (const auto& e : sub) {
    CHECK(lat.find(e.value).has_value());
    CHECK(interpret(m, e.representative) == e.value);
    extents.insert(e.value.extent);
  }
  CHECK(extents.size() == sub.size());
  // Closed under meet and join.
  for (const auto& a : sub)
    for (const auto& b : sub) {
      CHECK(extents.count(fca::meet(m.context(), a.value, b.value).extent) == 1);
      CHECK(extents.count(fca::join(m.context(), a.value, b.value).extent) == 1);
    }

  const auto empty = generated_sublattice(m, {});
  CHECK(empty.size() == 2);

  auto ctx = m.context_ptr();
  PolarityModel topped(ctx, {{"p", fca::top_concept(*ctx)}});
  CHECK(generated_sublattice(topped, {"p"}).size() == 2);
}
