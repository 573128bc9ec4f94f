#include "concept_nmr/nmr.hpp"

#include <algorithm>
#include <set>

#include "concept_nmr/error.hpp"

namespace cnmr::nmr {

Preference::Preference(std::size_t states, const std::vector<std::pair<std::size_t, std::size_t>>& pairs)
    : relation_(states) {
  for (const auto& [s, t] : pairs) add(s, t);
}

void Preference::add(std::size_t s, std::size_t t) {
  if (s >= state_count() || t >= state_count()) throw InputError("preference pair references an unknown state");
  if (relation_.test(s, t)) return;
  relation_.set(s, t);
  pairs_.emplace_back(s, t);
}

PreferenceModel::PreferenceModel(std::vector<std::string> variables, std::vector<NamedContext> contexts,
                                 std::vector<NamedValuation> valuations, std::vector<std::string> states,
                                 std::vector<std::vector<PointedModel>> labels, Preference pref)
    : variables_(std::move(variables)),
      contexts_(std::move(contexts)),
      valuations_(std::move(valuations)),
      states_(std::move(states)),
      labels_(std::move(labels)),
      pref_(std::move(pref)) {
  auto unique = [](const auto& items, auto name_of, const char* kind) {
    std::set<std::string_view> seen;
    for (const auto& item : items)
      if (!seen.insert(name_of(item)).second)
        throw InputError(std::string("duplicate ") + kind + " '" + std::string(name_of(item)) + "'");
  };
  unique(variables_, [](const std::string& s) -> std::string_view { return s; }, "variable");
  unique(contexts_, [](const NamedContext& c) -> std::string_view { return c.name; }, "context");
  unique(valuations_, [](const NamedValuation& v) -> std::string_view { return v.name; }, "valuation");
  unique(states_, [](const std::string& s) -> std::string_view { return s; }, "state");
  for (const auto& v : variables_)
    if (!logic::is_identifier(v)) throw InputError("invalid variable name '" + v + "'");

  for (const auto& v : valuations_) {
    if (v.context >= contexts_.size()) throw InputError("valuation '" + v.name + "' references an unknown context");
    if (!v.model || v.model->context_ptr() != contexts_[v.context].context)
      throw InputError("valuation '" + v.name + "' is not built on its declared context");
    for (const auto& var : variables_)
      if (!v.model->binds(var)) throw InputError("valuation '" + v.name + "' does not bind variable '" + var + "'");
    if (v.model->valuation().size() != variables_.size())
      throw InputError("valuation '" + v.name + "' binds undeclared variables");
  }

  if (states_.empty()) throw InputError("a preference model needs at least one state");
  if (labels_.size() != states_.size()) throw InputError("every state needs a label");
  if (pref_.state_count() != states_.size()) throw InputError("preference relation size does not match the states");
  std::set<std::size_t> used;
  for (std::size_t s = 0; s < states_.size(); ++s) {
    auto& label = labels_[s];
    if (label.empty()) throw InputError("state '" + states_[s] + "' has an empty label");
    for (const auto& pm : label) {
      if (pm.valuation >= valuations_.size())
        throw InputError("state '" + states_[s] + "' references an unknown valuation");
      if (pm.point >= base(pm).context().object_count())
        throw InputError("state '" + states_[s] + "' points at an unknown object");
      used.insert(pm.valuation);
    }
    std::sort(label.begin(), label.end());
    label.erase(std::unique(label.begin(), label.end()), label.end());
  }
  bases_.assign(used.begin(), used.end());
  slot_.assign(valuations_.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < bases_.size(); ++i) slot_[bases_[i]] = i;
}

std::size_t PreferenceModel::state_index(std::string_view name) const {
  for (std::size_t s = 0; s < states_.size(); ++s)
    if (states_[s] == name) return s;
  throw InputError("unknown state '" + std::string(name) + "'");
}

std::string PreferenceModel::describe(const PointedModel& pm) const {
  const auto& v = valuations_[pm.valuation];
  return "(" + contexts_[v.context].name + ", " + v.name + ", " + base(pm).context().objects()[pm.point] + ")";
}

std::size_t PreferenceModel::base_slot(std::size_t valuation) const {
  if (valuation >= slot_.size() || slot_[valuation] == static_cast<std::size_t>(-1))
    throw InputError("valuation is not referenced by any label");
  return slot_[valuation];
}

std::shared_ptr<const logic::Universe> PreferenceModel::universe(std::optional<std::size_t> max_size) const {
  std::vector<std::shared_ptr<const logic::PolarityModel>> models;
  for (auto v : bases_) models.push_back(valuations_[v].model);
  return std::make_shared<const logic::Universe>(std::move(models), variables_, max_size);
}

PreferenceModel PreferenceModel::with_preference(Preference pref) const {
  return PreferenceModel(variables_, contexts_, valuations_, states_, labels_, std::move(pref));
}

bool state_sat(const PreferenceModel& m, std::size_t state, const logic::Formula& f) {
  if (state >= m.state_count()) throw InputError("state index out of range");
  for (const auto& pm : m.label(state))
    if (!logic::satisfies(m.base(pm), pm.point, f)) return false;
  return true;
}

bool state_sat(const PreferenceModel& m, std::string_view state, const logic::Formula& f) {
  return state_sat(m, m.state_index(state), f);
}

IndexSet hat(const PreferenceModel& m, const logic::Formula& f) {
  // Interpret once per valuation rather than once per pointed model.
  std::vector<std::optional<fca::Concept>> cache(m.valuations().size());
  IndexSet out(m.state_count());
  for (std::size_t s = 0; s < m.state_count(); ++s) {
    bool all = true;
    for (const auto& pm : m.label(s)) {
      auto& c = cache[pm.valuation];
      if (!c) c = logic::interpret(m.base(pm), f);
      if (!c->extent.test(pm.point)) {
        all = false;
        break;
      }
    }
    out.set(s, all);
  }
  return out;
}

IndexSet hat(const PreferenceModel& m, const logic::Universe& u, std::size_t entry) {
  if (u.models().size() != m.base_valuations().size())
    throw InputError("universe was not generated from this preference model");
  IndexSet out(m.state_count());
  for (std::size_t s = 0; s < m.state_count(); ++s) {
    bool all = true;
    for (const auto& pm : m.label(s)) {
      if (!u.concept_at(entry, m.base_slot(pm.valuation)).extent.test(pm.point)) {
        all = false;
        break;
      }
    }
    out.set(s, all);
  }
  return out;
}

IndexSet minimal_states(const IndexSet& states, const Preference& pref) {
  IndexSet out(states.size());
  for (auto t : members(states)) {
    bool minimal = true;
    for (auto s : members(states)) {
      if (pref.prefers(s, t)) {
        minimal = false;
        break;
      }
    }
    out.set(t, minimal);
  }
  return out;
}

bool is_minimum(const IndexSet& states, const Preference& pref, std::size_t t) {
  if (t >= states.size() || !states.test(t)) throw InputError("is_minimum: state is not in the set");
  for (auto s : members(states))
    if (s != t && !pref.prefers(t, s)) return false;
  return true;
}

Smoothness is_smooth(const IndexSet& states, const Preference& pref) {
  const IndexSet minimal = minimal_states(states, pref);
  Smoothness result;
  for (auto t : members(states)) {
    if (minimal.test(t)) continue;
    bool above_minimal = false;
    for (auto s : members(minimal)) {
      if (pref.prefers(s, t)) {
        above_minimal = true;
        break;
      }
    }
    if (above_minimal) continue;
    result.smooth = false;
    result.witness = t;
    break;
  }
  if (result.smooth) return result;

  // Descend through non-minimal predecessors until a state repeats.
  std::vector<std::size_t> walk{*result.witness};
  for (;;) {
    const std::size_t current = walk.back();
    std::optional<std::size_t> next;
    for (auto s : members(states)) {
      if (!minimal.test(s) && pref.prefers(s, current)) {
        next = s;
        break;
      }
    }
    if (!next) break;
    auto seen = std::find(walk.begin(), walk.end(), *next);
    if (seen != walk.end()) {
      result.cycle.assign(seen, walk.end());
      break;
    }
    walk.push_back(*next);
  }
  return result;
}

ModelClass classify(const PreferenceModel& m, const logic::Universe& u) {
  ModelClass mc;
  const auto& pref = m.preference();
  const std::size_t n = m.state_count();

  mc.universe_size = u.size();
  mc.universe_note = "checked " + std::to_string(u.size()) +
                     " universe entries: formulas with equal interpretations in every base model have equal hats, "
                     "so one representative per entry covers every formula";

  for (std::size_t e = 0; e < u.size(); ++e) {
    const IndexSet h = hat(m, u, e);
    if (mc.cumulative) {
      Smoothness sm = is_smooth(h, pref);
      if (!sm.smooth) {
        mc.cumulative = false;
        mc.non_smooth = NonSmoothHat{e, u.representative(e), std::move(sm)};
      }
    }
    if (!mc.no_minimum_entry) {
      bool has_minimum = false;
      for (auto t : members(h)) {
        if (is_minimum(h, pref, t)) {
          has_minimum = true;
          break;
        }
      }
      if (!has_minimum) mc.no_minimum_entry = e;
    }
  }

  for (std::size_t s = 0; s < n && mc.order_counterexample.empty(); ++s)
    if (pref.prefers(s, s)) mc.order_counterexample = {s};
  for (std::size_t s = 0; s < n && mc.order_counterexample.empty(); ++s)
    for (std::size_t t = 0; t < n && mc.order_counterexample.empty(); ++t)
      for (std::size_t v = 0; v < n && mc.order_counterexample.empty(); ++v)
        if (pref.prefers(s, t) && pref.prefers(t, v) && !pref.prefers(s, v)) mc.order_counterexample = {s, t, v};
  mc.ordered = mc.order_counterexample.empty();

  for (std::size_t s = 0; s < n; ++s) {
    if (m.label(s).size() != 1) {
      mc.multi_label_state = s;
      break;
    }
  }
  mc.preferential = !mc.multi_label_state;

  for (std::size_t s = 0; s < n && !mc.symmetric_pair; ++s)
    for (std::size_t t = s; t < n && !mc.symmetric_pair; ++t)
      if (pref.prefers(s, t) && pref.prefers(t, s)) mc.symmetric_pair = std::make_pair(s, t);
  mc.strong = !mc.symmetric_pair && !mc.no_minimum_entry;
  return mc;
}

ModelClass classify(const PreferenceModel& m) { return classify(m, *m.universe()); }

bool consequence(const PreferenceModel& m, const logic::Formula& f, const logic::Formula& g) {
  const IndexSet minimal = minimal_states(hat(m, f), m.preference());
  return minimal.is_subset_of(hat(m, g));
}

rules::ConsequenceRelation consequence_table(const PreferenceModel& m, std::shared_ptr<const logic::Universe> u) {
  auto rel = rules::ConsequenceRelation::over(u);
  std::vector<IndexSet> hats;
  hats.reserve(u->size());
  for (std::size_t e = 0; e < u->size(); ++e) hats.push_back(hat(m, *u, e));
  for (std::size_t i = 0; i < u->size(); ++i) {
    const IndexSet minimal = minimal_states(hats[i], m.preference());
    for (std::size_t j = 0; j < u->size(); ++j) rel.defeasible.set(i, j, minimal.is_subset_of(hats[j]));
  }
  return rel;
}

rules::ConsequenceRelation consequence_table(const PreferenceModel& m) { return consequence_table(m, m.universe()); }

Preference combine_preferences(const Preference& a, const Preference& b) {
  if (a.state_count() != b.state_count()) throw InputError("combined preferences must share the state set");
  const std::size_t n = a.state_count();
  Preference out(n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      if (b.prefers(s, t) || (a.prefers(s, t) && !b.prefers(t, s))) out.add(s, t);
  return out;
}

}  // namespace cnmr::nmr
