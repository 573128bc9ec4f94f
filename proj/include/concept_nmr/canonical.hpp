#pragma once

// Canonical models: the preference model built from the ∼-classes of a
// consequence relation, whose states realize exactly that relation.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "concept_nmr/consequence_relation.hpp"
#include "concept_nmr/formula.hpp"
#include "concept_nmr/nmr.hpp"

namespace cnmr::canonical {

// phi ∼ psi iff phi |~ psi and psi |~ phi.
struct EquivClass {
  logic::Formula representative;
  // Lowest member index.
  std::size_t rep_index = 0;
  // Universe indices, ascending.
  std::vector<std::size_t> members;
};

// Throws InputError naming a violation when r is not closed under CC.
std::vector<EquivClass> equiv_classes(const rules::ConsequenceRelation& r);

// leq.test(i, j) iff class i ≤ class j: some chi in class i has
// rep(j) |~ chi.
BinaryRelation class_order(const std::vector<EquivClass>& classes, const rules::ConsequenceRelation& r);

// Pointed models labelling the minimal states of hat(f). Appends a warning
// when hat(f) has no minimal state.
std::vector<nmr::PointedModel> harvest_normal(const nmr::PreferenceModel& m, const logic::Formula& f,
                                              std::vector<std::string>* warnings = nullptr);

struct SearchBounds {
  std::size_t max_objects = 3;
  std::size_t max_attributes = 3;
  // Largest candidate count the search agrees to visit.
  double ceiling = 5e7;
};

struct Witness {
  std::shared_ptr<const fca::FormalContext> context;
  std::shared_ptr<const logic::PolarityModel> model;
  std::size_t point = 0;
};

// Upper bound on the number of (context, valuation) candidates visited.
double search_estimate(std::size_t variables, const SearchBounds& bounds);

// A pointed model over a context within bounds that satisfies every member
// of gamma and no member of delta. Contexts are visited by ascending
// (objects + attributes, objects), then incidence bits, then valuations, then
// points; the first hit is returned. nullopt means nothing within bounds.
// Throws SearchLimitError when search_estimate exceeds the ceiling.
std::optional<Witness> search_supernormal(const std::vector<std::string>& variables,
                                          const std::vector<logic::Formula>& gamma,
                                          const std::vector<logic::Formula>& delta, const SearchBounds& bounds = {});

// A pointed model whose point satisfies a formula exactly when the
// formula's entry in u belongs to positive, for every formula over u's
// variables (not only the representatives). Same visiting order as above.
std::optional<Witness> search_supernormal(const logic::Universe& u, const IndexSet& positive,
                                          const SearchBounds& bounds = {});

struct CanonicalOptions {
  bool close_transitively = false;
  // One supernormal model per class instead of harvested normal models.
  bool preferential = false;
  SearchBounds bounds;
};

struct CanonicalModel {
  nmr::PreferenceModel model;
  std::vector<EquivClass> classes;
  // Class (= state) of every universe entry.
  std::vector<std::size_t> class_of;
  std::vector<std::string> warnings;
  bool transitive = false;
  bool preferential = false;
  // Classes labelled by a search witness that is supernormal for them.
  std::size_t supernormal_labels = 0;
};

// States c0, c1, ... follow the class order of equiv_classes. Requires r to
// be the consequence table of m. Throws InputError when the class order is
// not asymmetric or a class cannot be labelled.
CanonicalModel build_canonical(const rules::ConsequenceRelation& r, const nmr::PreferenceModel& m,
                               const CanonicalOptions& options = {});

// Class membership, for the model file's metadata block.
nlohmann::ordered_json canonical_metadata(const CanonicalModel& c, const logic::Universe& u);

struct Representation {
  bool equal = true;
  // First (lhs, rhs) universe pair on which the two tables differ.
  std::optional<std::pair<std::size_t, std::size_t>> mismatch;
  bool in_source = false;
  bool in_canonical = false;
};

// Compares |~_m and |~_c on every pair of m's universe representatives.
Representation verify_representation(const nmr::PreferenceModel& m, const CanonicalModel& c);
Representation verify_representation(const nmr::PreferenceModel& m, const logic::Universe& u,
                                     const CanonicalModel& c);

}  // namespace cnmr::canonical
