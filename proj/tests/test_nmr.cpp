#include "doctest.h"

#include "concept_nmr/error.hpp"
#include "concept_nmr/nmr.hpp"
#include "support.hpp"

using namespace cnmr;
using namespace cnmr::nmr;
using logic::parse_formula;

namespace {

const PreferenceModel& model_m() {
  static const auto doc = testing::example("model_m.json");
  return doc.model;
}

IndexSet states(const PreferenceModel& m, std::initializer_list<const char*> names) {
  IndexSet s(m.state_count());
  for (auto n : names) s.set(m.state_index(n));
  return s;
}

bool nm(const PreferenceModel& m, const char* lhs, const char* rhs) {
  return consequence(m, parse_formula(lhs), parse_formula(rhs));
}

Preference pairs(const PreferenceModel& m, const io::Json& list) {
  Preference p(m.state_count());
  for (const auto& e : list) p.add(m.state_index(e[0].get<std::string>()), m.state_index(e[1].get<std::string>()));
  return p;
}

}  // namespace

TEST_CASE("state satisfaction and hats") {
  const auto& m = model_m();
  CHECK(state_sat(m, "s2", parse_formula("C1")));
  for (std::size_t s = 0; s < m.state_count(); ++s) CHECK(state_sat(m, s, parse_formula("top")));
  CHECK(hat(m, parse_formula("C1")) == states(m, {"s1", "s2"}));
  CHECK(hat(m, parse_formula("C2")) == states(m, {"s2", "s4"}));
  CHECK(hat(m, parse_formula("bot")).none());
  CHECK(hat(m, parse_formula("top")) == m.all_states());
  const auto u = m.universe();
  for (std::size_t i = 0; i < u->size(); ++i) CHECK(hat(m, *u, i) == hat(m, u->representative(i)));
}

TEST_CASE("a label disagreeing on a formula") {
  const auto& base = model_m();
  PreferenceModel two(base.variables(), base.contexts(), base.valuations(), {"s"}, {{{0, 0}, {0, 2}}},
                      Preference(1));
  CHECK_FALSE(state_sat(two, "s", parse_formula("C1")));
  CHECK(state_sat(two, "s", parse_formula("C5")));
}

TEST_CASE("minimal states and minimum") {
  const auto& m = model_m();
  const auto& pref = m.preference();
  CHECK(minimal_states(states(m, {"s1", "s2"}), pref) == states(m, {"s2"}));
  CHECK(minimal_states(IndexSet(4), pref).none());
  CHECK(is_minimum(states(m, {"s3"}), pref, m.state_index("s3")));
  CHECK(is_minimum(states(m, {"s1", "s2"}), pref, m.state_index("s2")));
  CHECK_FALSE(is_minimum(states(m, {"s2", "s3"}), pref, m.state_index("s2")));
  CHECK_FALSE(is_minimum(states(m, {"s2", "s3"}), pref, m.state_index("s3")));
  CHECK_THROWS_AS(is_minimum(states(m, {"s1"}), pref, m.state_index("s2")), InputError);
}

TEST_CASE("smoothness") {
  CHECK(is_smooth(IndexSet(4), Preference(4)).smooth);
  const Preference cyc(4, {{1, 3}, {3, 2}, {2, 1}});
  const auto r = is_smooth(make_set(4, {1, 2, 3}), cyc);
  CHECK_FALSE(r.smooth);
  REQUIRE(r.witness.has_value());
  CHECK(r.cycle.size() == 3);
  for (std::size_t i = 0; i < r.cycle.size(); ++i)
    CHECK(cyc.prefers(r.cycle[(i + 1) % r.cycle.size()], r.cycle[i]));
  // A finite strict order is smooth.
  const Preference chain(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(is_smooth(full_set(4), chain).smooth);
  // Without the transitive pairs, 2 only sits above the non-minimal 1.
  const Preference bare(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK_FALSE(is_smooth(full_set(4), bare).smooth);
}

TEST_CASE("classification of the animals model") {
  const auto c = classify(model_m());
  CHECK(c.cumulative);
  CHECK(c.ordered);
  CHECK(c.preferential);
  CHECK_FALSE(c.strong);
  CHECK(c.no_minimum_entry.has_value());
}

TEST_CASE("classification of the combined preference") {
  for (const char* file : {"model_m_prime_derived.json", "model_m_prime_literal.json"}) {
    const auto m = testing::example(file).model;
    const auto c = classify(m);
    CHECK_FALSE(c.cumulative);
    CHECK_FALSE(c.ordered);
    REQUIRE(c.non_smooth.has_value());
    std::set<std::string> cyc;
    for (auto s : c.non_smooth->detail.cycle) cyc.insert(m.states()[s]);
    CHECK(cyc == std::set<std::string>{"s2", "s3", "s4"});
  }
}

TEST_CASE("single-state model with empty preference") {
  auto ctx = std::make_shared<const fca::FormalContext>(fca::FormalContext::from_matrix({"o"}, {"y"}, {{true}}));
  auto vm = std::make_shared<const logic::PolarityModel>(
      ctx, std::map<std::string, fca::Concept, std::less<>>{{"p", fca::top_concept(*ctx)}});
  PreferenceModel one({"p"}, {{"K", ctx, ""}}, {{"V", 0, vm}}, {"s"}, {{{0, 0}}}, Preference(1));
  const auto c = classify(one);
  CHECK(c.cumulative);
  CHECK(c.ordered);
  CHECK(c.preferential);
  CHECK(c.strong);

  // An empty hat has no minimum, so a state refuting bot is not strong.
  const auto& base = model_m();
  PreferenceModel a2(base.variables(), base.contexts(), base.valuations(), {"s"}, {{{0, 1}}}, Preference(1));
  const auto d = classify(a2);
  CHECK(d.cumulative);
  CHECK(d.ordered);
  CHECK(d.preferential);
  CHECK_FALSE(d.strong);
  CHECK(nm(a2, "C1", "C2"));
  CHECK_FALSE(nm(a2, "C1", "C3"));
}

TEST_CASE("animals verdicts") {
  const auto& m = model_m();
  CHECK(nm(m, "C1", "C2"));
  CHECK_FALSE(nm(m, "C1 & C3", "C2"));
  CHECK_FALSE(nm(m, "top", "C2"));
  CHECK(nm(m, "bot", "C1"));
}

TEST_CASE("consequence table matches the oracle") {
  for (unsigned seed = 0; seed < 40; ++seed) {
    const auto m = testing::random_model(seed);
    const auto t = consequence_table(m);
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = 0; j < t.size(); ++j)
        CHECK(t.entails(i, j) == testing::oracle_consequence(m, t.formula(i), t.formula(j)));
    CHECK(t.strict == t.universe->order());
  }
  const auto t = consequence_table(model_m());
  const auto& u = *t.universe;
  CHECK(t.entails(u.index_of(parse_formula("C1")), u.index_of(parse_formula("C2"))));
  CHECK_FALSE(t.entails(u.index_of(parse_formula("C1 & C3")), u.index_of(parse_formula("C2"))));
}

TEST_CASE("combining agent preferences") {
  const auto doc = testing::example("model_m.json");
  const auto& m = doc.model;
  const auto a = pairs(m, doc.metadata["agents"]["A"]);
  const auto b = pairs(m, doc.metadata["agents"]["B"]);
  const auto c = combine_preferences(a, b);
  auto has = [&](const char* s, const char* t) { return c.prefers(m.state_index(s), m.state_index(t)); };
  CHECK(has("s4", "s3"));
  CHECK(has("s2", "s4"));
  CHECK(has("s3", "s2"));
  CHECK_FALSE(has("s2", "s3"));
  CHECK(has("s2", "s1"));
  CHECK(has("s3", "s1"));
  CHECK(has("s4", "s1"));
  CHECK(c == testing::example("model_m_prime_derived.json").model.preference());
  CHECK(combine_preferences(a, Preference(4)) == a);
}

TEST_CASE("preference keeps raw pairs") {
  Preference p(3);
  p.add(2, 0);
  p.add(0, 1);
  p.add(2, 0);
  CHECK(p.pairs().size() == 2);
  CHECK(p.pairs().front() == std::pair<std::size_t, std::size_t>{2, 0});
  CHECK_FALSE(p.prefers(2, 1));
}

TEST_CASE("model construction errors") {
  const auto& b = model_m();
  CHECK_THROWS_AS(PreferenceModel(b.variables(), b.contexts(), b.valuations(), {"s"}, {{}}, Preference(1)),
                  InputError);
  CHECK_THROWS_AS(PreferenceModel(b.variables(), b.contexts(), b.valuations(), {"s", "s"}, {{{0, 0}}, {{0, 1}}},
                                  Preference(2)),
                  InputError);
  CHECK_THROWS_AS(PreferenceModel(b.variables(), b.contexts(), b.valuations(), {"s"}, {{{0, 9}}}, Preference(1)),
                  InputError);
  CHECK_THROWS_AS(PreferenceModel({"C1"}, b.contexts(), b.valuations(), {"s"}, {{{0, 0}}}, Preference(1)),
                  InputError);
  CHECK_THROWS_AS(b.state_index("s9"), InputError);
}
