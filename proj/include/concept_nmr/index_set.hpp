#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace cnmr {

// Positional subset of objects, attributes, states or universe entries.
using IndexSet = boost::dynamic_bitset<>;

inline IndexSet full_set(std::size_t n) {
  IndexSet s(n);
  s.set();
  return s;
}

inline IndexSet make_set(std::size_t n, std::initializer_list<std::size_t> members) {
  IndexSet s(n);
  for (auto i : members) s.set(i);
  return s;
}

inline std::vector<std::size_t> members(const IndexSet& s) {
  std::vector<std::size_t> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != IndexSet::npos; i = s.find_next(i)) out.push_back(i);
  return out;
}

// Square boolean matrix; row i holds the j with (i, j) in the relation.
class BinaryRelation {
 public:
  BinaryRelation() = default;
  explicit BinaryRelation(std::size_t n) : rows_(n, IndexSet(n)) {}

  std::size_t size() const { return rows_.size(); }
  bool test(std::size_t i, std::size_t j) const { return rows_[i].test(j); }
  void set(std::size_t i, std::size_t j, bool value = true) { rows_[i].set(j, value); }
  const IndexSet& row(std::size_t i) const { return rows_[i]; }

  std::size_t count() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.count();
    return n;
  }

  // Pairs in lexicographic index order.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (auto j : members(rows_[i])) out.emplace_back(i, j);
    return out;
  }

  friend bool operator==(const BinaryRelation&, const BinaryRelation&) = default;

 private:
  std::vector<IndexSet> rows_;
};

}  // namespace cnmr
