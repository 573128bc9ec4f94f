#pragma once

// Random models and independent brute-force oracles shared by the tests.
// Oracles work on raw incidence matrices and never call the library's
// closure, lattice, universe or consequence code.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "concept_nmr/fca.hpp"
#include "concept_nmr/formula.hpp"
#include "concept_nmr/logic.hpp"
#include "concept_nmr/model_io.hpp"
#include "concept_nmr/nmr.hpp"

namespace testing {

using cnmr::IndexSet;
using cnmr::fca::Concept;
using cnmr::fca::FormalContext;
using cnmr::logic::Formula;

inline std::filesystem::path data_dir() { return CNMR_DATA_DIR; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline cnmr::io::ModelDocument example(const std::string& name) { return cnmr::io::load_model(data_dir() / name); }

inline FormalContext random_context(std::mt19937& rng, std::size_t objects, std::size_t attributes,
                                    double density = 0.5) {
  std::bernoulli_distribution bit(density);
  std::vector<std::string> g, m;
  for (std::size_t i = 0; i < objects; ++i) g.push_back("g" + std::to_string(i));
  for (std::size_t j = 0; j < attributes; ++j) m.push_back("m" + std::to_string(j));
  std::vector<IndexSet> rows(objects, IndexSet(attributes));
  for (auto& r : rows)
    for (std::size_t j = 0; j < attributes; ++j) r.set(j, bit(rng));
  return FormalContext(g, m, rows);
}

// ---------------------------------------------------------------- FCA oracle

using Bits = std::vector<bool>;

inline Bits oracle_up(const FormalContext& ctx, const Bits& objects) {
  Bits out(ctx.attribute_count(), true);
  for (std::size_t x = 0; x < ctx.attribute_count(); ++x)
    for (std::size_t a = 0; a < ctx.object_count(); ++a)
      if (objects[a] && !ctx.incident(a, x)) out[x] = false;
  return out;
}

inline Bits oracle_down(const FormalContext& ctx, const Bits& attributes) {
  Bits out(ctx.object_count(), true);
  for (std::size_t a = 0; a < ctx.object_count(); ++a)
    for (std::size_t x = 0; x < ctx.attribute_count(); ++x)
      if (attributes[x] && !ctx.incident(a, x)) out[a] = false;
  return out;
}

inline Bits to_bits(const IndexSet& s) {
  Bits b(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) b[i] = s.test(i);
  return b;
}

inline IndexSet to_set(const Bits& b) {
  IndexSet s(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) s.set(i, b[i]);
  return s;
}

// Every extent B↑↓ for B ranging over all 2^|A| object subsets.
inline std::set<std::pair<Bits, Bits>> oracle_concepts(const FormalContext& ctx) {
  std::set<std::pair<Bits, Bits>> out;
  const std::size_t n = ctx.object_count();
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    Bits b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = (mask >> i) & 1UL;
    Bits intent = oracle_up(ctx, b);
    out.emplace(oracle_down(ctx, intent), intent);
  }
  return out;
}

// ---------------------------------------------------------------- logic oracle

// Extent of f, computed with meet = extent intersection and join = the
// extent of the intersected intents.
inline Bits oracle_extent(const cnmr::logic::PolarityModel& m, const Formula& f) {
  const auto& ctx = m.context();
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Var: return to_bits(m.value(f.name()).extent);
    case K::Top: return Bits(ctx.object_count(), true);
    case K::Bot: return oracle_down(ctx, Bits(ctx.attribute_count(), true));
    case K::And: {
      Bits l = oracle_extent(m, f.left()), r = oracle_extent(m, f.right());
      for (std::size_t i = 0; i < l.size(); ++i) l[i] = l[i] && r[i];
      return l;
    }
    case K::Or: {
      Bits l = oracle_up(ctx, oracle_extent(m, f.left())), r = oracle_up(ctx, oracle_extent(m, f.right()));
      for (std::size_t i = 0; i < l.size(); ++i) l[i] = l[i] && r[i];
      return oracle_down(ctx, l);
    }
  }
  return {};
}

inline IndexSet oracle_hat(const cnmr::nmr::PreferenceModel& m, const Formula& f) {
  IndexSet out(m.state_count());
  for (std::size_t s = 0; s < m.state_count(); ++s) {
    bool all = true;
    for (const auto& pm : m.label(s)) all = all && oracle_extent(m.base(pm), f)[pm.point];
    out.set(s, all);
  }
  return out;
}

// f |~ g by direct predecessor scans.
inline bool oracle_consequence(const cnmr::nmr::PreferenceModel& m, const Formula& f, const Formula& g) {
  const IndexSet hf = oracle_hat(m, f), hg = oracle_hat(m, g);
  for (std::size_t t = 0; t < m.state_count(); ++t) {
    if (!hf.test(t)) continue;
    bool minimal = true;
    for (std::size_t s = 0; s < m.state_count(); ++s)
      if (hf.test(s) && m.preference().prefers(s, t)) minimal = false;
    if (minimal && !hg.test(t)) return false;
  }
  return true;
}

inline Formula random_formula(std::mt19937& rng, const std::vector<std::string>& vars, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 5 : 2);
  const int k = pick(rng);
  if (k == 0 && !vars.empty()) return Formula::var(vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)]);
  if (k == 1) return Formula::top();
  if (k == 2) return vars.empty() ? Formula::bot() : Formula::var(vars.front());
  if (k == 3) return Formula::bot();
  auto l = random_formula(rng, vars, depth - 1), r = random_formula(rng, vars, depth - 1);
  return k == 4 ? Formula::conj(l, r) : Formula::disj(l, r);
}

// ---------------------------------------------------------------- random models

struct ModelShape {
  std::size_t min_states = 2;
  std::size_t max_states = 4;
  std::size_t min_vars = 2;
  std::size_t max_vars = 3;
  std::size_t min_objects = 3;
  std::size_t max_objects = 4;
  std::size_t min_attributes = 3;
  std::size_t max_attributes = 4;
  std::size_t max_valuations = 2;
  std::size_t max_label = 2;
  double pref_density = 0.3;
  // Only pairs consistent with a random ranking, then transitively closed.
  bool ordered = false;
  // One pointed model per state.
  bool singleton_labels = false;
};

inline std::size_t uniform(std::mt19937& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline cnmr::nmr::PreferenceModel random_model(unsigned seed, const ModelShape& shape = {}) {
  using namespace cnmr;
  std::mt19937 rng(seed);
  const std::size_t nvars = uniform(rng, shape.min_vars, shape.max_vars);
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < nvars; ++i) vars.push_back(std::string(1, char('p' + i)));

  std::vector<nmr::NamedContext> contexts;
  std::vector<nmr::NamedValuation> valuations;
  const std::size_t nval = uniform(rng, 1, shape.max_valuations);
  for (std::size_t v = 0; v < nval; ++v) {
    auto ctx = std::make_shared<const FormalContext>(
        random_context(rng, uniform(rng, shape.min_objects, shape.max_objects),
                     uniform(rng, shape.min_attributes, shape.max_attributes)));
    const auto concepts = oracle_concepts(*ctx);
    // Prefer concepts other than top and bottom, which generate little.
    std::vector<std::pair<Bits, Bits>> list;
    const Bits all(ctx->object_count(), true);
    const Bits least = oracle_down(*ctx, Bits(ctx->attribute_count(), true));
    for (const auto& c : concepts)
      if (c.first != all && c.first != least) list.push_back(c);
    if (list.empty()) list.assign(concepts.begin(), concepts.end());
    std::map<std::string, Concept, std::less<>> assign;
    std::shuffle(list.begin(), list.end(), rng);
    for (std::size_t k = 0; k < vars.size(); ++k) {
      const auto& name = vars[k];
      // Distinct concepts while they last.
      const auto& c = k < list.size() ? list[k] : list[uniform(rng, 0, list.size() - 1)];
      assign.emplace(name, Concept{to_set(c.first), to_set(c.second)});
    }
    contexts.push_back({"K" + std::to_string(v), ctx, ""});
    valuations.push_back({"V" + std::to_string(v), v, std::make_shared<const logic::PolarityModel>(ctx, assign)});
  }

  const std::size_t n = uniform(rng, shape.min_states, shape.max_states);
  std::vector<std::string> states;
  std::vector<std::vector<nmr::PointedModel>> labels;
  for (std::size_t s = 0; s < n; ++s) {
    states.push_back("s" + std::to_string(s + 1));
    std::vector<nmr::PointedModel> label;
    const std::size_t size = shape.singleton_labels ? 1 : uniform(rng, 1, shape.max_label);
    for (std::size_t k = 0; k < size; ++k) {
      const std::size_t v = uniform(rng, 0, nval - 1);
      label.push_back({v, uniform(rng, 0, valuations[v].model->context().object_count() - 1)});
    }
    labels.push_back(label);
  }

  std::bernoulli_distribution edge(shape.pref_density);
  nmr::Preference pref(n);
  if (shape.ordered) {
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[i] = i;
    std::shuffle(rank.begin(), rank.end(), rng);
    cnmr::BinaryRelation r(n);
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t)
        if (rank[s] < rank[t] && edge(rng)) r.set(s, t);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t)
          if (r.test(s, k) && r.test(k, t)) r.set(s, t);
    for (const auto& [s, t] : r.pairs()) pref.add(s, t);
  } else {
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t)
        if (s != t && edge(rng)) pref.add(s, t);
  }
  return nmr::PreferenceModel(vars, contexts, valuations, states, labels, pref);
}

}  // namespace testing
