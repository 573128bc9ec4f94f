#pragma once

// Preference models over states labelled by pointed polarity-based models,
// and the defeasible consequence relation they induce.

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "concept_nmr/consequence_relation.hpp"
#include "concept_nmr/fca.hpp"
#include "concept_nmr/formula.hpp"
#include "concept_nmr/index_set.hpp"
#include "concept_nmr/logic.hpp"
#include "concept_nmr/universe.hpp"

namespace cnmr::nmr {

// A polarity-based model (one of the host model's valuations) with a
// distinguished object of its context.
struct PointedModel {
  std::size_t valuation = 0;
  std::size_t point = 0;

  friend auto operator<=>(const PointedModel&, const PointedModel&) = default;
};

// Raw preference pairs (s, t) meaning s ≺ t. No closure of any kind is
// applied; pairs keep their first-insertion order.
class Preference {
 public:
  Preference() = default;
  explicit Preference(std::size_t states) : relation_(states) {}
  Preference(std::size_t states, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

  void add(std::size_t s, std::size_t t);
  bool prefers(std::size_t s, std::size_t t) const { return relation_.test(s, t); }
  std::size_t state_count() const { return relation_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
  const BinaryRelation& relation() const { return relation_; }

  // Same set of pairs, regardless of insertion order.
  friend bool operator==(const Preference& a, const Preference& b) { return a.relation_ == b.relation_; }

 private:
  BinaryRelation relation_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

struct NamedContext {
  std::string name;
  std::shared_ptr<const fca::FormalContext> context;
  // CXT path the context was loaded from; empty when given inline.
  std::string source;
};

struct NamedValuation {
  std::string name;
  std::size_t context = 0;
  std::shared_ptr<const logic::PolarityModel> model;
};

class PreferenceModel {
 public:
  // Throws InputError when a label is empty, a pointed model references an
  // unknown valuation or object, a valuation does not bind exactly the
  // declared variables, or names clash.
  PreferenceModel(std::vector<std::string> variables, std::vector<NamedContext> contexts,
                  std::vector<NamedValuation> valuations, std::vector<std::string> states,
                  std::vector<std::vector<PointedModel>> labels, Preference pref);

  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<NamedContext>& contexts() const { return contexts_; }
  const std::vector<NamedValuation>& valuations() const { return valuations_; }
  const std::vector<std::string>& states() const { return states_; }
  std::size_t state_count() const { return states_.size(); }
  std::size_t state_index(std::string_view name) const;
  const std::vector<PointedModel>& label(std::size_t s) const { return labels_[s]; }
  const std::vector<std::vector<PointedModel>>& labels() const { return labels_; }
  const Preference& preference() const { return pref_; }

  const logic::PolarityModel& base(const PointedModel& pm) const { return *valuations_[pm.valuation].model; }
  std::string describe(const PointedModel& pm) const;

  // Distinct valuations referenced by labels, ascending; these are the base
  // models of the formula universe, in this order.
  const std::vector<std::size_t>& base_valuations() const { return bases_; }
  // Position of a valuation among base_valuations().
  std::size_t base_slot(std::size_t valuation) const;

  std::shared_ptr<const logic::Universe> universe(std::optional<std::size_t> max_size = std::nullopt) const;

  PreferenceModel with_preference(Preference pref) const;
  IndexSet all_states() const { return full_set(states_.size()); }

 private:
  std::vector<std::string> variables_;
  std::vector<NamedContext> contexts_;
  std::vector<NamedValuation> valuations_;
  std::vector<std::string> states_;
  std::vector<std::vector<PointedModel>> labels_;
  Preference pref_;
  std::vector<std::size_t> bases_;
  std::vector<std::size_t> slot_;
};

// s ⊨ f: every pointed model in l(s) satisfies f.
bool state_sat(const PreferenceModel& m, std::size_t state, const logic::Formula& f);
bool state_sat(const PreferenceModel& m, std::string_view state, const logic::Formula& f);

IndexSet hat(const PreferenceModel& m, const logic::Formula& f);
// Same as hat(m, u.representative(entry)), read off the universe tables.
IndexSet hat(const PreferenceModel& m, const logic::Universe& u, std::size_t entry);

// Members of P with no ≺-predecessor inside P.
IndexSet minimal_states(const IndexSet& states, const Preference& pref);
// Throws InputError when t ∉ P.
bool is_minimum(const IndexSet& states, const Preference& pref, std::size_t t);

struct Smoothness {
  bool smooth = true;
  // First state (by index) that is neither minimal nor above a minimal state.
  std::optional<std::size_t> witness;
  // When found: states c0, c1, ..., ck-1 with c(i+1) ≺ c(i) and c0 ≺ c(k-1),
  // all inside P and none minimal, reached by descending from the witness.
  std::vector<std::size_t> cycle;
};

Smoothness is_smooth(const IndexSet& states, const Preference& pref);

struct NonSmoothHat {
  std::size_t entry;
  logic::Formula formula;
  Smoothness detail;
};

struct ModelClass {
  bool cumulative = true;
  bool ordered = true;
  bool preferential = true;
  bool strong = true;

  std::optional<NonSmoothHat> non_smooth;
  // [s] when s ≺ s, or [s, t, u] with s ≺ t, t ≺ u and not s ≺ u.
  std::vector<std::size_t> order_counterexample;
  std::optional<std::size_t> multi_label_state;
  // (s, t) with both s ≺ t and t ≺ s (s == t for a reflexive pair).
  std::optional<std::pair<std::size_t, std::size_t>> symmetric_pair;
  // Universe entry whose hat has no minimum.
  std::optional<std::size_t> no_minimum_entry;

  std::size_t universe_size = 0;
  std::string universe_note;
};

ModelClass classify(const PreferenceModel& m, const logic::Universe& u);
ModelClass classify(const PreferenceModel& m);

// f |~ g: every minimal state of hat(f) lies in hat(g).
bool consequence(const PreferenceModel& m, const logic::Formula& f, const logic::Formula& g);

// The defeasible relation over every universe entry, with the strict part
// given by the universe order (validity in every base model).
rules::ConsequenceRelation consequence_table(const PreferenceModel& m,
                                             std::shared_ptr<const logic::Universe> u);
rules::ConsequenceRelation consequence_table(const PreferenceModel& m);

// (s, t) kept iff s ≺_B t, or s ≺_A t and not t ≺_B s.
Preference combine_preferences(const Preference& a, const Preference& b);

}  // namespace cnmr::nmr
