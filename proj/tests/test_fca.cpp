#include "doctest.h"

#include "concept_nmr/cxt.hpp"
#include "concept_nmr/error.hpp"
#include "concept_nmr/fca.hpp"
#include "support.hpp"

using namespace cnmr;
using namespace cnmr::fca;

namespace {

FormalContext animals() { return read_cxt_file(testing::data_dir() / "animals.cxt"); }

std::vector<std::string> objs(const FormalContext& c, const IndexSet& s) { return c.object_names(s); }
std::vector<std::string> atts(const FormalContext& c, const IndexSet& s) { return c.attribute_names(s); }

using V = std::vector<std::string>;

}  // namespace

TEST_CASE("up and down on the animals context") {
  const auto c = animals();
  CHECK(atts(c, up(c, c.object_set({"a1"}))) == V{"x1", "x3", "x5"});
  CHECK(objs(c, down(c, c.attribute_set({"x2"}))) == V{"a2", "a4"});
  CHECK(up(c, c.no_objects()) == c.all_attributes());
  CHECK(down(c, c.no_attributes()) == c.all_objects());
}

TEST_CASE("up and down match a direct scan") {
  std::mt19937 rng(5);
  for (int round = 0; round < 20; ++round) {
    const auto c = testing::random_context(rng, 5, 5);
    testing::Bits b(5, false), y(5, false);
    b[0] = b[1] = true;
    for (std::size_t j = 0; j < 5; ++j) y[j] = rng() % 2;
    CHECK(up(c, testing::to_set(b)) == testing::to_set(testing::oracle_up(c, b)));
    CHECK(down(c, testing::to_set(y)) == testing::to_set(testing::oracle_down(c, y)));
  }
}

TEST_CASE("closure of object sets") {
  const auto c = animals();
  auto k = close_extent(c, c.object_set({"a1", "a2"}));
  CHECK(objs(c, k.extent) == V{"a1", "a2"});
  CHECK(atts(c, k.intent) == V{"x1", "x5"});
  k = close_extent(c, c.object_set({"a2", "a3"}));
  CHECK(objs(c, k.extent) == V{"a1", "a2", "a3"});
  CHECK(atts(c, k.intent) == V{"x5"});
  CHECK(close_extent(c, k.extent) == k);
  CHECK(is_concept(c, k));
  CHECK_FALSE(is_concept(c, Concept{c.object_set({"a2", "a3"}), c.attribute_set({"x5"})}));
}

TEST_CASE("animals lattice has eleven concepts") {
  const auto c = animals();
  const auto lat = concept_lattice(c);
  CHECK(lat.size() == 11);
  CHECK(lat.size() == testing::oracle_concepts(c).size());
  CHECK(lat[lat.top()].extent == c.all_objects());
  CHECK(lat[lat.bottom()].extent.none());
}

TEST_CASE("lattice listing is lectic in the intents") {
  const auto c = animals();
  const auto lat = concept_lattice(c);
  // Lectic order with attribute 0 most significant: compare the first
  // attribute at which two intents differ; the set lacking it comes first.
  for (std::size_t i = 0; i + 1 < lat.size(); ++i) {
    const auto& a = lat[i].intent;
    const auto& b = lat[i + 1].intent;
    std::size_t k = 0;
    while (k < a.size() && a.test(k) == b.test(k)) ++k;
    REQUIRE(k < a.size());
    CHECK_FALSE(a.test(k));
  }
}

TEST_CASE("one by one context") {
  const auto c = FormalContext::from_matrix({"g"}, {"m"}, {{true}});
  CHECK(concept_lattice(c).size() == 1);
}

TEST_CASE("random contexts agree with subset enumeration") {
  std::mt19937 rng(11);
  for (int round = 0; round < 30; ++round) {
    const auto c = testing::random_context(rng, 1 + rng() % 6, 1 + rng() % 6);
    const auto lat = concept_lattice(c);
    std::set<std::pair<testing::Bits, testing::Bits>> got;
    for (const auto& k : lat.concepts()) got.emplace(testing::to_bits(k.extent), testing::to_bits(k.intent));
    CHECK(got == testing::oracle_concepts(c));
    CHECK(got.size() == lat.size());
  }
}

TEST_CASE("meet, join and order") {
  const auto c = animals();
  const auto c1 = close_extent(c, c.object_set({"a1", "a2"}));
  const auto c2 = close_extent(c, c.object_set({"a2", "a4"}));
  const auto c3 = close_extent(c, c.object_set({"a1", "a3"}));
  const auto c5 = close_extent(c, c.object_set({"a1", "a2", "a3"}));
  CHECK(objs(c, meet(c, c1, c3).extent) == V{"a1"});
  CHECK(join(c, c1, c2) == top_concept(c));
  CHECK(c.attribute_names(join(c, c1, c2).intent).empty());
  CHECK(meet(c, c1, top_concept(c)) == c1);
  CHECK(leq(c1, c5));
  CHECK(leq(c1, c1));
  CHECK(leq(bottom_concept(c), c3));
  CHECK_FALSE(leq(c3, c1));

  const auto lat = concept_lattice(c);
  for (std::size_t i = 0; i < lat.size(); ++i)
    for (std::size_t j = 0; j < lat.size(); ++j) {
      CHECK(lat[lat.meet(i, j)] == meet(c, lat[i], lat[j]));
      CHECK(lat[lat.join(i, j)] == join(c, lat[i], lat[j]));
      CHECK(lat.leq(i, j) == leq(lat[i], lat[j]));
    }
}

TEST_CASE("covers are exactly the Hasse edges") {
  const auto lat = concept_lattice(animals());
  for (const auto& [i, j] : lat.covers()) {
    CHECK(lat.leq(i, j));
    CHECK(i != j);
    for (std::size_t k = 0; k < lat.size(); ++k)
      if (k != i && k != j) CHECK_FALSE((lat.leq(i, k) && lat.leq(k, j)));
  }
}

TEST_CASE("context construction rejects bad input") {
  CHECK_THROWS_AS(FormalContext::from_matrix({"a", "a"}, {"x"}, {{true}, {false}}), InputError);
  CHECK_THROWS_AS(FormalContext::from_matrix({"a"}, {"x", "y"}, {{true}}), InputError);
  CHECK_THROWS_AS(animals().object_index("zz"), InputError);
}
