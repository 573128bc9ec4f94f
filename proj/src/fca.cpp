#include "concept_nmr/fca.hpp"

#include <algorithm>

#include "concept_nmr/error.hpp"

namespace cnmr::fca {

namespace {

void index_names(const std::vector<std::string>& names, const char* kind,
                 std::map<std::string, std::size_t, std::less<>>& index) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!index.emplace(names[i], i).second)
      throw InputError(std::string("duplicate ") + kind + " identifier '" + names[i] + "'");
  }
}

void check_size(const IndexSet& s, std::size_t expected, const char* what) {
  if (s.size() != expected)
    throw InputError(std::string(what) + " set has " + std::to_string(s.size()) +
                     " positions, context has " + std::to_string(expected));
}

}  // namespace

FormalContext::FormalContext(std::vector<std::string> objects, std::vector<std::string> attributes,
                             std::vector<IndexSet> rows)
    : objects_(std::move(objects)), attributes_(std::move(attributes)), rows_(std::move(rows)) {
  if (rows_.size() != objects_.size())
    throw InputError("incidence has " + std::to_string(rows_.size()) + " rows for " +
                     std::to_string(objects_.size()) + " objects");
  for (const auto& r : rows_) check_size(r, attributes_.size(), "incidence row");
  index_names(objects_, "object", object_index_);
  index_names(attributes_, "attribute", attribute_index_);
  columns_.assign(attributes_.size(), IndexSet(objects_.size()));
  for (std::size_t g = 0; g < objects_.size(); ++g)
    for (auto m : members(rows_[g])) columns_[m].set(g);
}

FormalContext FormalContext::from_matrix(std::vector<std::string> objects,
                                         std::vector<std::string> attributes,
                                         const std::vector<std::vector<bool>>& incidence) {
  std::vector<IndexSet> rows;
  rows.reserve(incidence.size());
  for (const auto& line : incidence) {
    IndexSet r(line.size());
    for (std::size_t j = 0; j < line.size(); ++j) r.set(j, line[j]);
    rows.push_back(std::move(r));
  }
  return FormalContext(std::move(objects), std::move(attributes), std::move(rows));
}

std::optional<std::size_t> FormalContext::find_object(std::string_view name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FormalContext::find_attribute(std::string_view name) const {
  auto it = attribute_index_.find(name);
  if (it == attribute_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FormalContext::object_index(std::string_view name) const {
  if (auto i = find_object(name)) return *i;
  throw InputError("unknown object '" + std::string(name) + "'");
}

std::size_t FormalContext::attribute_index(std::string_view name) const {
  if (auto i = find_attribute(name)) return *i;
  throw InputError("unknown attribute '" + std::string(name) + "'");
}

IndexSet FormalContext::object_set(const std::vector<std::string>& names) const {
  IndexSet s(objects_.size());
  for (const auto& n : names) s.set(object_index(n));
  return s;
}

IndexSet FormalContext::attribute_set(const std::vector<std::string>& names) const {
  IndexSet s(attributes_.size());
  for (const auto& n : names) s.set(attribute_index(n));
  return s;
}

std::vector<std::string> FormalContext::object_names(const IndexSet& set) const {
  check_size(set, objects_.size(), "object");
  std::vector<std::string> out;
  for (auto i : members(set)) out.push_back(objects_[i]);
  return out;
}

std::vector<std::string> FormalContext::attribute_names(const IndexSet& set) const {
  check_size(set, attributes_.size(), "attribute");
  std::vector<std::string> out;
  for (auto i : members(set)) out.push_back(attributes_[i]);
  return out;
}

IndexSet up(const FormalContext& ctx, const IndexSet& objects) {
  check_size(objects, ctx.object_count(), "object");
  IndexSet result = ctx.all_attributes();
  for (auto g : members(objects)) result &= ctx.row(g);
  return result;
}

IndexSet down(const FormalContext& ctx, const IndexSet& attributes) {
  check_size(attributes, ctx.attribute_count(), "attribute");
  IndexSet result = ctx.all_objects();
  for (auto m : members(attributes)) result &= ctx.column(m);
  return result;
}

Concept close_extent(const FormalContext& ctx, const IndexSet& objects) {
  IndexSet intent = up(ctx, objects);
  IndexSet extent = down(ctx, intent);
  return {std::move(extent), std::move(intent)};
}

Concept close_intent(const FormalContext& ctx, const IndexSet& attributes) {
  IndexSet extent = down(ctx, attributes);
  IndexSet intent = up(ctx, extent);
  return {std::move(extent), std::move(intent)};
}

bool is_concept(const FormalContext& ctx, const Concept& c) {
  if (c.extent.size() != ctx.object_count() || c.intent.size() != ctx.attribute_count()) return false;
  return up(ctx, c.extent) == c.intent && down(ctx, c.intent) == c.extent;
}

Concept top_concept(const FormalContext& ctx) { return close_extent(ctx, ctx.all_objects()); }

Concept bottom_concept(const FormalContext& ctx) { return close_intent(ctx, ctx.all_attributes()); }

Concept meet(const FormalContext& ctx, const Concept& c, const Concept& d) {
  IndexSet extent = c.extent & d.extent;
  IndexSet intent = up(ctx, extent);
  return {std::move(extent), std::move(intent)};
}

Concept join(const FormalContext& ctx, const Concept& c, const Concept& d) {
  IndexSet intent = c.intent & d.intent;
  IndexSet extent = down(ctx, intent);
  return {std::move(extent), std::move(intent)};
}

ConceptLattice::ConceptLattice(std::vector<Concept> concepts) : concepts_(std::move(concepts)) {
  const std::size_t n = concepts_.size();
  if (n == 0) throw InputError("a concept lattice has at least one concept");
  order_ = BinaryRelation(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!by_extent_.emplace(concepts_[i].extent, i).second)
      throw InputError("duplicate concept in lattice");
    by_intent_.emplace(concepts_[i].intent, i);
    for (std::size_t j = 0; j < n; ++j)
      if (concepts_[i].extent.is_subset_of(concepts_[j].extent)) order_.set(i, j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (order_.row(i).all()) bottom_ = i;
    bool is_top = true;
    for (std::size_t j = 0; j < n && is_top; ++j) is_top = order_.test(j, i);
    if (is_top) top_ = i;
  }
}

std::vector<std::pair<std::size_t, std::size_t>> ConceptLattice::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !order_.test(i, j)) continue;
      bool between = false;
      for (std::size_t k = 0; k < n && !between; ++k)
        between = k != i && k != j && order_.test(i, k) && order_.test(k, j);
      if (!between) out.emplace_back(i, j);
    }
  }
  return out;
}

std::optional<std::size_t> ConceptLattice::find_extent(const IndexSet& extent) const {
  auto it = by_extent_.find(extent);
  if (it == by_extent_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> ConceptLattice::find(const Concept& c) const {
  auto i = find_extent(c.extent);
  if (i && concepts_[*i].intent == c.intent) return i;
  return std::nullopt;
}

std::size_t ConceptLattice::index_of(const Concept& c) const {
  if (auto i = find(c)) return *i;
  throw InputError("concept is not a member of the lattice");
}

std::size_t ConceptLattice::meet(std::size_t i, std::size_t j) const {
  auto it = by_extent_.find(concepts_[i].extent & concepts_[j].extent);
  if (it == by_extent_.end()) throw InputError("lattice is not closed under meet");
  return it->second;
}

std::size_t ConceptLattice::join(std::size_t i, std::size_t j) const {
  auto it = by_intent_.find(concepts_[i].intent & concepts_[j].intent);
  if (it == by_intent_.end()) throw InputError("lattice is not closed under join");
  return it->second;
}

ConceptLattice concept_lattice(const FormalContext& ctx) {
  const std::size_t m = ctx.attribute_count();
  std::vector<Concept> found;
  Concept current = close_intent(ctx, ctx.no_attributes());
  found.push_back(current);
  // NextClosure: the lectically next closed intent after `current`.
  for (;;) {
    bool advanced = false;
    for (std::size_t k = m; k-- > 0;) {
      if (current.intent.test(k)) continue;
      IndexSet candidate = current.intent;
      for (std::size_t j = k + 1; j < m; ++j) candidate.reset(j);
      candidate.set(k);
      Concept closed = close_intent(ctx, candidate);
      bool canonical = true;
      for (std::size_t j = 0; j < k && canonical; ++j)
        canonical = closed.intent.test(j) == current.intent.test(j);
      if (canonical) {
        current = std::move(closed);
        found.push_back(current);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return ConceptLattice(std::move(found));
}

}  // namespace cnmr::fca
