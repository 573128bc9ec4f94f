#include "concept_nmr/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "concept_nmr/error.hpp"
#include "concept_nmr/rules.hpp"

namespace cnmr::canonical {

using logic::Formula;

std::vector<EquivClass> equiv_classes(const rules::ConsequenceRelation& r) {
  auto violations = rules::check_closure_cc(r);
  if (!violations.empty())
    throw InputError("consequence relation is not closed under CC (" + std::to_string(violations.size()) +
                     " violations), e.g. " + violations.front().to_string());
  const std::size_t n = r.size();
  std::vector<bool> assigned(n, false);
  std::vector<EquivClass> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (assigned[i]) continue;
    EquivClass c{r.formula(i), i, {}};
    for (std::size_t j = i; j < n; ++j)
      if (!assigned[j] && r.defeasible.test(i, j) && r.defeasible.test(j, i)) {
        c.members.push_back(j);
        assigned[j] = true;
      }
    out.push_back(std::move(c));
  }
  return out;
}

BinaryRelation class_order(const std::vector<EquivClass>& classes, const rules::ConsequenceRelation& r) {
  BinaryRelation leq(classes.size());
  for (std::size_t a = 0; a < classes.size(); ++a)
    for (std::size_t b = 0; b < classes.size(); ++b)
      for (auto chi : classes[a].members)
        if (r.defeasible.test(classes[b].rep_index, chi)) {
          leq.set(a, b);
          break;
        }
  return leq;
}

std::vector<nmr::PointedModel> harvest_normal(const nmr::PreferenceModel& m, const Formula& f,
                                              std::vector<std::string>* warnings) {
  const IndexSet h = nmr::hat(m, f);
  const IndexSet mins = nmr::minimal_states(h, m.preference());
  std::vector<nmr::PointedModel> out;
  for (auto s : members(mins)) out.insert(out.end(), m.label(s).begin(), m.label(s).end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty() && warnings) {
    warnings->push_back("hat of '" + f.to_string() + "' has no minimal state" +
                        (h.none() ? " (empty hat)" : " (not smooth)"));
  }
  return out;
}

namespace {

// Postfix program over lattice indices.
struct Op {
  logic::Formula::Kind kind;
  std::size_t var = 0;
};
using Program = std::vector<Op>;

void compile(const Formula& f, const std::vector<std::string>& vars, Program& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Var: {
      auto it = std::find(vars.begin(), vars.end(), f.name());
      if (it == vars.end()) throw InputError("formula '" + f.to_string() + "' uses undeclared variable '" + f.name() + "'");
      out.push_back({K::Var, static_cast<std::size_t>(it - vars.begin())});
      return;
    }
    case K::Top:
    case K::Bot:
      out.push_back({f.kind()});
      return;
    case K::And:
    case K::Or:
      compile(f.left(), vars, out);
      compile(f.right(), vars, out);
      out.push_back({f.kind()});
      return;
  }
}

struct SmallLattice {
  fca::ConceptLattice lattice;
  std::vector<std::size_t> meet;
  std::vector<std::size_t> join;

  explicit SmallLattice(const fca::FormalContext& ctx) : lattice(fca::concept_lattice(ctx)) {
    const std::size_t c = lattice.size();
    meet.resize(c * c);
    join.resize(c * c);
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        meet[i * c + j] = lattice.meet(i, j);
        join[i * c + j] = lattice.join(i, j);
      }
  }

  std::size_t eval(const Program& p, const std::vector<std::size_t>& valuation, std::vector<std::size_t>& stack) const {
    using K = Formula::Kind;
    const std::size_t c = lattice.size();
    stack.clear();
    for (const auto& op : p) {
      switch (op.kind) {
        case K::Var: stack.push_back(valuation[op.var]); break;
        case K::Top: stack.push_back(lattice.top()); break;
        case K::Bot: stack.push_back(lattice.bottom()); break;
        case K::And:
        case K::Or: {
          auto b = stack.back();
          stack.pop_back();
          auto a = stack.back();
          stack.back() = op.kind == K::And ? meet[a * c + b] : join[a * c + b];
          break;
        }
      }
    }
    return stack.back();
  }
};

std::vector<std::pair<std::size_t, std::size_t>> shapes(const SearchBounds& b) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t n = 1; n <= b.max_objects; ++n)
    for (std::size_t m = 1; m <= b.max_attributes; ++m) out.emplace_back(n, m);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::pair(x.first + x.second, x.first) < std::pair(y.first + y.second, y.first);
  });
  return out;
}

fca::FormalContext make_context(std::size_t n, std::size_t m, unsigned long long bits) {
  std::vector<std::string> objects, attributes;
  for (std::size_t i = 0; i < n; ++i) objects.push_back("o" + std::to_string(i + 1));
  for (std::size_t j = 0; j < m; ++j) attributes.push_back("y" + std::to_string(j + 1));
  std::vector<IndexSet> rows(n, IndexSet(m));
  for (std::size_t k = 0; k < n * m; ++k)
    if (bits >> k & 1ULL) rows[k / m].set(k % m);
  return fca::FormalContext(std::move(objects), std::move(attributes), std::move(rows));
}

}  // namespace

double search_estimate(std::size_t variables, const SearchBounds& bounds) {
  double total = 0;
  for (auto [n, m] : shapes(bounds))
    total += std::pow(2.0, double(n * m)) * std::pow(2.0, double(std::min(n, m) * variables));
  return total;
}

namespace {

using Accept = std::function<bool(const SmallLattice&, const std::vector<std::size_t>&, std::size_t)>;

// Shared enumeration; `accept` gets the final say on every candidate point.
std::optional<Witness> enumerate(const std::vector<std::string>& variables, const std::vector<Program>& gp,
                                 const std::vector<Program>& dp, const SearchBounds& bounds, const Accept& accept) {
  if (bounds.max_objects == 0 || bounds.max_attributes == 0) throw InputError("search bounds must be positive");
  const double estimate = search_estimate(variables.size(), bounds);
  if (estimate > bounds.ceiling)
    throw SearchLimitError("supernormal search over " + std::to_string(bounds.max_objects) + "x" +
                               std::to_string(bounds.max_attributes) + " contexts would visit about " +
                               std::to_string(static_cast<long long>(estimate)) + " candidates (ceiling " +
                               std::to_string(static_cast<long long>(bounds.ceiling)) + ")",
                           estimate);
  std::vector<std::size_t> stack;
  for (auto [n, m] : shapes(bounds)) {
    const unsigned long long patterns = 1ULL << (n * m);
    for (unsigned long long bits = 0; bits < patterns; ++bits) {
      auto ctx = std::make_shared<const fca::FormalContext>(make_context(n, m, bits));
      const SmallLattice lat(*ctx);
      const std::size_t c = lat.lattice.size();
      std::vector<std::size_t> val(variables.size(), 0);
      for (;;) {
        IndexSet points = full_set(n);
        for (std::size_t i = 0; i < gp.size() && points.any(); ++i)
          points &= lat.lattice[lat.eval(gp[i], val, stack)].extent;
        for (std::size_t i = 0; i < dp.size() && points.any(); ++i)
          points -= lat.lattice[lat.eval(dp[i], val, stack)].extent;
        for (auto point : members(points)) {
          if (accept && !accept(lat, val, point)) continue;
          std::map<std::string, fca::Concept, std::less<>> assign;
          for (std::size_t v = 0; v < variables.size(); ++v) assign.emplace(variables[v], lat.lattice[val[v]]);
          auto model = std::make_shared<const logic::PolarityModel>(ctx, std::move(assign));
          return Witness{ctx, std::move(model), point};
        }
        // Next valuation; the first variable is the most significant digit.
        std::size_t k = val.size();
        while (k > 0 && val[k - 1] + 1 == c) val[--k] = 0;
        if (k == 0) break;
        ++val[k - 1];
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Witness> search_supernormal(const std::vector<std::string>& variables, const std::vector<Formula>& gamma,
                                          const std::vector<Formula>& delta, const SearchBounds& bounds) {
  std::vector<Program> gp(gamma.size()), dp(delta.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) compile(gamma[i], variables, gp[i]);
  for (std::size_t i = 0; i < delta.size(); ++i) compile(delta[i], variables, dp[i]);
  return enumerate(variables, gp, dp, bounds, nullptr);
}

std::optional<Witness> search_supernormal(const logic::Universe& u, const IndexSet& positive,
                                          const SearchBounds& bounds) {
  const auto& variables = u.variables();
  std::vector<Program> gp, dp;
  for (std::size_t i = 0; i < u.size(); ++i) {
    Program p;
    compile(u.representative(i), variables, p);
    (positive.test(i) ? gp : dp).push_back(std::move(p));
  }
  std::vector<std::size_t> var_entry;
  for (const auto& v : variables) var_entry.push_back(u.index_of(Formula::var(v)));

  // Every formula denotes a pair (entry of u, concept of the candidate); the
  // reachable pairs are the closure of the atoms under componentwise meet and
  // join. The point must satisfy a pair exactly when its entry is positive.
  const Accept factors = [&](const SmallLattice& lat, const std::vector<std::size_t>& val, std::size_t point) {
    const std::size_t c = lat.lattice.size();
    std::vector<char> seen(u.size() * c, 0);
    std::vector<std::pair<std::size_t, std::size_t>> reached;
    auto add = [&](std::size_t e, std::size_t k) {
      if (seen[e * c + k]) return true;
      seen[e * c + k] = 1;
      reached.emplace_back(e, k);
      return lat.lattice[k].extent.test(point) == positive.test(e);
    };
    if (!add(u.top(), lat.lattice.top()) || !add(u.bottom(), lat.lattice.bottom())) return false;
    for (std::size_t v = 0; v < variables.size(); ++v)
      if (!add(var_entry[v], val[v])) return false;
    for (std::size_t i = 0; i < reached.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        const auto [a, x] = reached[i];
        const auto [b, y] = reached[j];
        if (!add(u.meet(a, b), lat.meet[x * c + y]) || !add(u.join(a, b), lat.join[x * c + y])) return false;
      }
    return true;
  };
  return enumerate(variables, gp, dp, bounds, factors);
}

namespace {

std::string fresh_name(std::string base, const std::set<std::string>& taken) {
  while (taken.count(base)) base += "'";
  return base;
}

}  // namespace

CanonicalModel build_canonical(const rules::ConsequenceRelation& r, const nmr::PreferenceModel& m,
                               const CanonicalOptions& options) {
  auto classes = equiv_classes(r);
  const std::size_t k = classes.size();
  std::vector<std::size_t> class_of(r.size());
  for (std::size_t c = 0; c < k; ++c)
    for (auto i : classes[c].members) class_of[i] = c;

  const BinaryRelation leq = class_order(classes, r);
  BinaryRelation strict(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (a != b && leq.test(a, b)) strict.set(a, b);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (strict.test(a, b) && strict.test(b, a))
        throw InputError("class order is not antisymmetric on classes of '" + classes[a].representative.to_string() +
                         "' and '" + classes[b].representative.to_string() + "'");
  if (options.close_transitively) {
    for (std::size_t via = 0; via < k; ++via)
      for (std::size_t a = 0; a < k; ++a)
        if (strict.test(a, via))
          for (std::size_t b = 0; b < k; ++b)
            if (strict.test(via, b)) strict.set(a, b);
    for (std::size_t a = 0; a < k; ++a)
      if (strict.test(a, a))
        throw InputError("transitive closure of the class order is not irreflexive at the class of '" +
                         classes[a].representative.to_string() + "'; the relation is not closed under Loop");
  }

  std::vector<nmr::NamedContext> contexts = m.contexts();
  std::vector<nmr::NamedValuation> valuations = m.valuations();
  std::set<std::string> context_names, valuation_names;
  for (const auto& c : contexts) context_names.insert(c.name);
  for (const auto& v : valuations) valuation_names.insert(v.name);
  auto adopt = [&](const Witness& w, std::size_t cls) {
    auto cname = fresh_name("K" + std::to_string(cls), context_names);
    auto vname = fresh_name("W" + std::to_string(cls), valuation_names);
    context_names.insert(cname);
    valuation_names.insert(vname);
    contexts.push_back({cname, w.context, ""});
    valuations.push_back({vname, contexts.size() - 1, w.model});
    return nmr::PointedModel{valuations.size() - 1, w.point};
  };

  CanonicalModel out{m, {}, {}, {}, options.close_transitively, options.preferential, 0};
  std::vector<std::string> states;
  std::vector<std::vector<nmr::PointedModel>> labels;
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t rep = classes[c].rep_index;
    const std::string rep_text = classes[c].representative.to_string();
    std::vector<Formula> gamma, delta;
    for (std::size_t j = 0; j < r.size(); ++j) (r.defeasible.test(rep, j) ? gamma : delta).push_back(r.formula(j));
    states.push_back("c" + std::to_string(c));
    std::vector<nmr::PointedModel> label;

    if (options.preferential) {
      // A lone harvested model satisfies exactly the consequences of rep.
      auto harvested = harvest_normal(m, classes[c].representative);
      if (harvested.size() == 1) {
        label = harvested;
        ++out.supernormal_labels;
      }
    }
    if (options.preferential && label.empty()) {
      try {
        if (auto w = search_supernormal(*r.universe, r.defeasible.row(rep), options.bounds)) {
          label.push_back(adopt(*w, c));
          ++out.supernormal_labels;
        } else {
          out.warnings.push_back("no supernormal model for '" + rep_text + "' within bounds");
        }
      } catch (const SearchLimitError& e) {
        out.warnings.push_back(std::string("supernormal search for '") + rep_text + "' refused: " + e.what());
      }
      if (label.empty()) {
        auto harvested = harvest_normal(m, classes[c].representative, &out.warnings);
        if (!harvested.empty()) label.push_back(harvested.front());
      }
    } else {
      label = harvest_normal(m, classes[c].representative, &out.warnings);
    }
    if (label.empty()) {
      // Nothing to harvest: any model of all consequences of rep is normal.
      std::optional<Witness> w;
      try {
        w = search_supernormal(m.variables(), gamma, {}, options.bounds);
      } catch (const SearchLimitError&) {
      }
      if (!w) throw InputError("no normal model found for the class of '" + rep_text + "'");
      label.push_back(adopt(*w, c));
      out.warnings.push_back("class of '" + rep_text + "' labelled by a searched normal model");
    }
    labels.push_back(std::move(label));
  }

  nmr::Preference pref(k);
  for (const auto& [a, b] : strict.pairs()) pref.add(a, b);
  out.model = nmr::PreferenceModel(m.variables(), std::move(contexts), std::move(valuations), std::move(states),
                                   std::move(labels), std::move(pref));
  out.classes = std::move(classes);
  out.class_of = std::move(class_of);
  return out;
}

nlohmann::ordered_json canonical_metadata(const CanonicalModel& c, const logic::Universe& u) {
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    nlohmann::ordered_json members = nlohmann::ordered_json::array();
    for (auto m : c.classes[i].members) members.push_back(u.representative(m).to_string());
    classes.push_back({{"state", c.model.states()[i]},
                       {"representative", c.classes[i].representative.to_string()},
                       {"members", std::move(members)}});
  }
  return {{"canonical", {{"transitive", c.transitive}, {"preferential", c.preferential}, {"classes", classes}}}};
}

Representation verify_representation(const nmr::PreferenceModel& m, const CanonicalModel& c) {
  return verify_representation(m, *m.universe(), c);
}

Representation verify_representation(const nmr::PreferenceModel& m, const logic::Universe& u, const CanonicalModel& c) {
  const std::size_t n = u.size();
  std::vector<IndexSet> hat_m, min_m, hat_c, min_c;
  for (std::size_t i = 0; i < n; ++i) {
    hat_m.push_back(nmr::hat(m, u, i));
    min_m.push_back(nmr::minimal_states(hat_m.back(), m.preference()));
    hat_c.push_back(nmr::hat(c.model, u.representative(i)));
    min_c.push_back(nmr::minimal_states(hat_c.back(), c.model.preference()));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const bool a = min_m[i].is_subset_of(hat_m[j]);
      const bool b = min_c[i].is_subset_of(hat_c[j]);
      if (a != b) return {false, std::pair{i, j}, a, b};
    }
  return {};
}

}  // namespace cnmr::canonical
