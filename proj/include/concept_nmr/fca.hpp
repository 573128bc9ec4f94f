#pragma once

// Formal contexts, derivation operators and concept lattices.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "concept_nmr/index_set.hpp"

namespace cnmr::fca {

// A polarity (A, X, I). Objects and attributes are opaque names; everything
// internal is positional, and sets are reported back in input order.
class FormalContext {
 public:
  FormalContext() = default;

  // rows[i] is the attribute set of object i. Throws InputError on duplicate
  // names or mismatched dimensions.
  FormalContext(std::vector<std::string> objects, std::vector<std::string> attributes,
                std::vector<IndexSet> rows);

  static FormalContext from_matrix(std::vector<std::string> objects,
                                   std::vector<std::string> attributes,
                                   const std::vector<std::vector<bool>>& incidence);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t attribute_count() const { return attributes_.size(); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& attributes() const { return attributes_; }

  bool incident(std::size_t object, std::size_t attribute) const {
    return rows_[object].test(attribute);
  }
  const IndexSet& row(std::size_t object) const { return rows_[object]; }
  const IndexSet& column(std::size_t attribute) const { return columns_[attribute]; }

  std::size_t object_index(std::string_view name) const;
  std::size_t attribute_index(std::string_view name) const;
  std::optional<std::size_t> find_object(std::string_view name) const;
  std::optional<std::size_t> find_attribute(std::string_view name) const;

  IndexSet object_set(const std::vector<std::string>& names) const;
  IndexSet attribute_set(const std::vector<std::string>& names) const;
  std::vector<std::string> object_names(const IndexSet& set) const;
  std::vector<std::string> attribute_names(const IndexSet& set) const;

  IndexSet no_objects() const { return IndexSet(objects_.size()); }
  IndexSet all_objects() const { return full_set(objects_.size()); }
  IndexSet no_attributes() const { return IndexSet(attributes_.size()); }
  IndexSet all_attributes() const { return full_set(attributes_.size()); }

  friend bool operator==(const FormalContext& a, const FormalContext& b) {
    return a.objects_ == b.objects_ && a.attributes_ == b.attributes_ && a.rows_ == b.rows_;
  }

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  std::vector<IndexSet> rows_;
  std::vector<IndexSet> columns_;
  std::map<std::string, std::size_t, std::less<>> object_index_;
  std::map<std::string, std::size_t, std::less<>> attribute_index_;
};

struct Concept {
  IndexSet extent;
  IndexSet intent;

  friend bool operator==(const Concept&, const Concept&) = default;
};

// B↑: attributes shared by every object of B.
IndexSet up(const FormalContext& ctx, const IndexSet& objects);
// Y↓: objects having every attribute of Y.
IndexSet down(const FormalContext& ctx, const IndexSet& attributes);

Concept close_extent(const FormalContext& ctx, const IndexSet& objects);
Concept close_intent(const FormalContext& ctx, const IndexSet& attributes);
bool is_concept(const FormalContext& ctx, const Concept& c);

// Lattice operations computed directly from the context.
Concept top_concept(const FormalContext& ctx);
Concept bottom_concept(const FormalContext& ctx);
Concept meet(const FormalContext& ctx, const Concept& c, const Concept& d);
Concept join(const FormalContext& ctx, const Concept& c, const Concept& d);

// Extent inclusion. The intents are reverse-included whenever both sides are
// concepts of the same context.
inline bool leq(const Concept& c, const Concept& d) { return c.extent.is_subset_of(d.extent); }

class ConceptLattice {
 public:
  ConceptLattice() = default;
  // Concepts must be listed in the order they should be reported.
  explicit ConceptLattice(std::vector<Concept> concepts);

  std::size_t size() const { return concepts_.size(); }
  const std::vector<Concept>& concepts() const { return concepts_; }
  const Concept& operator[](std::size_t i) const { return concepts_[i]; }
  std::size_t top() const { return top_; }
  std::size_t bottom() const { return bottom_; }

  bool leq(std::size_t i, std::size_t j) const { return order_.test(i, j); }
  const BinaryRelation& order() const { return order_; }
  // Covering pairs (i, j): i < j with nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

  std::optional<std::size_t> find(const Concept& c) const;
  std::optional<std::size_t> find_extent(const IndexSet& extent) const;
  // Throws InputError when c is not a member.
  std::size_t index_of(const Concept& c) const;

  std::size_t meet(std::size_t i, std::size_t j) const;
  std::size_t join(std::size_t i, std::size_t j) const;
  Concept meet(const Concept& c, const Concept& d) const { return concepts_[meet(index_of(c), index_of(d))]; }
  Concept join(const Concept& c, const Concept& d) const { return concepts_[join(index_of(c), index_of(d))]; }

 private:
  std::vector<Concept> concepts_;
  BinaryRelation order_;
  std::size_t top_ = 0;
  std::size_t bottom_ = 0;
  std::map<IndexSet, std::size_t> by_extent_;
  std::map<IndexSet, std::size_t> by_intent_;
};

// All concepts, enumerated with NextClosure over intents; concepts are listed
// in the lectic order of their intents (attribute 0 most significant).
ConceptLattice concept_lattice(const FormalContext& ctx);

}  // namespace cnmr::fca
