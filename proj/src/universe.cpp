#include "concept_nmr/universe.hpp"

#include <algorithm>
#include <numeric>

#include "concept_nmr/error.hpp"

namespace cnmr::logic {

namespace {

struct Candidate {
  std::size_t size;
  std::string text;
  Formula formula;
};

bool better(const Candidate& a, const Candidate& b) {
  return a.size != b.size ? a.size < b.size : a.text < b.text;
}

}  // namespace

Universe::Key Universe::key_of(const std::vector<fca::Concept>& concepts) const {
  Key key;
  key.reserve(concepts.size());
  for (const auto& c : concepts) key.push_back(c.extent);
  return key;
}

std::vector<fca::Concept> Universe::evaluate(const Formula& f) const {
  std::vector<fca::Concept> out;
  out.reserve(models_.size());
  for (const auto& m : models_) out.push_back(interpret(*m, f));
  return out;
}

Universe::Universe(std::vector<std::shared_ptr<const PolarityModel>> models, std::vector<std::string> variables,
                   std::optional<std::size_t> max_size)
    : models_(std::move(models)), variables_(std::move(variables)) {
  const std::size_t k = models_.size();
  auto combine = [&](const std::vector<fca::Concept>& a, const std::vector<fca::Concept>& b, bool is_meet) {
    std::vector<fca::Concept> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& ctx = models_[i]->context();
      out.push_back(is_meet ? fca::meet(ctx, a[i], b[i]) : fca::join(ctx, a[i], b[i]));
    }
    return out;
  };
  auto guard = [&](std::size_t n) {
    if (max_size && n > *max_size)
      throw InputError("formula universe exceeds the cap of " + std::to_string(*max_size) +
                       " entries; raise --max-universe");
  };

  // Semantic closure of the generators.
  std::vector<std::vector<fca::Concept>> elems;
  std::map<Key, std::size_t> where;
  auto add = [&](std::vector<fca::Concept> tuple) {
    auto key = key_of(tuple);
    auto [it, inserted] = where.emplace(std::move(key), elems.size());
    if (inserted) {
      elems.push_back(std::move(tuple));
      guard(elems.size());
    }
    return it->second;
  };

  std::vector<Candidate> atoms;
  atoms.push_back({1, "top", Formula::top()});
  atoms.push_back({1, "bot", Formula::bot()});
  for (const auto& v : variables_) atoms.push_back({1, v, Formula::var(v)});
  std::vector<std::size_t> atom_target;
  for (const auto& a : atoms) atom_target.push_back(add(evaluate(a.formula)));

  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      add(combine(elems[i], elems[j], true));
      add(combine(elems[i], elems[j], false));
    }
  }
  const std::size_t n = elems.size();

  // Shortest representatives, level by level in node count: a shortest
  // formula can always be rebuilt from shortest representatives of its
  // two immediate subformulas, so only representatives need combining.
  std::vector<std::optional<Candidate>> rep(n);
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    auto& slot = rep[atom_target[a]];
    if (!slot || better(atoms[a], *slot)) slot = atoms[a];
  }
  std::vector<std::size_t> tuple_meet(n * n), tuple_join(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      tuple_meet[i * n + j] = where.at(key_of(combine(elems[i], elems[j], true)));
      tuple_join[i * n + j] = where.at(key_of(combine(elems[i], elems[j], false)));
    }
  }
  std::size_t missing = std::count_if(rep.begin(), rep.end(), [](const auto& r) { return !r; });
  for (std::size_t level = 3; missing > 0; level += 2) {
    std::vector<std::optional<Candidate>> found(n);
    for (std::size_t a = 0; a < n; ++a) {
      if (!rep[a] || rep[a]->size >= level) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b || !rep[b] || rep[a]->size + rep[b]->size + 1 != level) continue;
        for (bool is_meet : {true, false}) {
          const std::size_t t = is_meet ? tuple_meet[a * n + b] : tuple_join[a * n + b];
          if (rep[t]) continue;
          Formula f = is_meet ? Formula::conj(rep[a]->formula, rep[b]->formula)
                              : Formula::disj(rep[a]->formula, rep[b]->formula);
          Candidate c{level, f.to_string(), f};
          if (!found[t] || better(c, *found[t])) found[t] = std::move(c);
        }
      }
    }
    for (std::size_t t = 0; t < n; ++t) {
      if (found[t]) {
        rep[t] = std::move(found[t]);
        --missing;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return better(*rep[a], *rep[b]); });
  std::vector<std::size_t> position(n);
  for (std::size_t p = 0; p < n; ++p) position[order[p]] = p;

  entries_.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    entries_.push_back({rep[order[p]]->formula, std::move(elems[order[p]])});
    index_.emplace(key_of(entries_.back().concepts), p);
  }
  meet_.resize(n * n);
  join_.resize(n * n);
  order_ = BinaryRelation(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      meet_[position[i] * n + position[j]] = position[tuple_meet[i * n + j]];
      join_[position[i] * n + position[j]] = position[tuple_join[i * n + j]];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) order_.set(i, j, meet(i, j) == i);
  top_ = position[atom_target[0]];
  bottom_ = position[atom_target[1]];
}

std::optional<std::size_t> Universe::find(const Formula& f) const {
  auto it = index_.find(key_of(evaluate(f)));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Universe::index_of(const Formula& f) const {
  std::set<std::string> vars;
  f.collect_variables(vars);
  for (const auto& v : vars) {
    if (std::find(variables_.begin(), variables_.end(), v) == variables_.end())
      throw InputError("formula '" + f.to_string() + "' mentions '" + v +
                       "', which is outside the formula universe; declare the variable to enlarge it");
  }
  if (auto i = find(f)) return *i;
  throw InputError("formula '" + f.to_string() + "' is outside the formula universe");
}

}  // namespace cnmr::logic
