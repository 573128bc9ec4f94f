#pragma once

#include <cstddef>
#include <memory>

#include "concept_nmr/formula.hpp"
#include "concept_nmr/index_set.hpp"
#include "concept_nmr/universe.hpp"

namespace cnmr::rules {

// A strict (⊢) and a defeasible (|~) relation materialized over the entries
// of a finite formula universe.
struct ConsequenceRelation {
  std::shared_ptr<const logic::Universe> universe;
  BinaryRelation strict;
  BinaryRelation defeasible;

  // Strict part taken from the universe order, defeasible part empty.
  static ConsequenceRelation over(std::shared_ptr<const logic::Universe> universe) {
    ConsequenceRelation r;
    r.strict = universe->order();
    r.defeasible = BinaryRelation(universe->size());
    r.universe = std::move(universe);
    return r;
  }

  std::size_t size() const { return universe->size(); }
  bool entails(std::size_t i, std::size_t j) const { return defeasible.test(i, j); }
  const logic::Formula& formula(std::size_t i) const { return universe->representative(i); }

  logic::Sequent defeasible_sequent(std::size_t i, std::size_t j) const {
    return logic::Sequent::defeasible(formula(i), formula(j));
  }
  logic::Sequent strict_sequent(std::size_t i, std::size_t j) const {
    return logic::Sequent::strict(formula(i), formula(j));
  }
};

}  // namespace cnmr::rules
