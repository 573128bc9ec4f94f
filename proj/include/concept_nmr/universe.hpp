#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "concept_nmr/index_set.hpp"
#include "concept_nmr/logic.hpp"

namespace cnmr::logic {

// The finite formula universe over a family of base models.
//
// Two formulas with the same interpretation in every base model are
// indistinguishable by anything built on top of these models, so the
// universe keeps one entry per reachable interpretation tuple: the
// subalgebra of the product of concept lattices generated by the variables,
// top and bottom. Entries are sorted by representative (node count, then
// text), so index 0 is the shortest formula.
class Universe {
 public:
  // Throws InputError when the universe would exceed max_size entries.
  Universe(std::vector<std::shared_ptr<const PolarityModel>> models, std::vector<std::string> variables,
           std::optional<std::size_t> max_size = std::nullopt);

  std::size_t size() const { return entries_.size(); }
  const std::vector<std::shared_ptr<const PolarityModel>>& models() const { return models_; }
  const std::vector<std::string>& variables() const { return variables_; }

  const Formula& representative(std::size_t i) const { return entries_[i].representative; }
  const std::vector<fca::Concept>& interpretation(std::size_t i) const { return entries_[i].concepts; }
  const fca::Concept& concept_at(std::size_t i, std::size_t model) const { return entries_[i].concepts[model]; }

  std::size_t meet(std::size_t i, std::size_t j) const { return meet_[i * size() + j]; }
  std::size_t join(std::size_t i, std::size_t j) const { return join_[i * size() + j]; }
  // [[i]] ⊆ [[j]] in every base model.
  bool leq(std::size_t i, std::size_t j) const { return order_.test(i, j); }
  const BinaryRelation& order() const { return order_; }
  std::size_t top() const { return top_; }
  std::size_t bottom() const { return bottom_; }

  std::optional<std::size_t> find(const Formula& f) const;
  // Throws InputError when f falls outside the universe (only possible for
  // unbound variables).
  std::size_t index_of(const Formula& f) const;

 private:
  struct Entry {
    Formula representative;
    std::vector<fca::Concept> concepts;
  };
  using Key = std::vector<IndexSet>;

  Key key_of(const std::vector<fca::Concept>& concepts) const;
  std::vector<fca::Concept> evaluate(const Formula& f) const;

  std::vector<std::shared_ptr<const PolarityModel>> models_;
  std::vector<std::string> variables_;
  std::vector<Entry> entries_;
  std::map<Key, std::size_t> index_;
  std::vector<std::size_t> meet_;
  std::vector<std::size_t> join_;
  BinaryRelation order_;
  std::size_t top_ = 0;
  std::size_t bottom_ = 0;
};

}  // namespace cnmr::logic
