#pragma once

// Bottom-up evaluation of the stratified rule layer, parameterized by a
// guess assignment. least_model is semi-naive; least_model_naive iterates the
// plain immediate-consequence operator and exists for differential testing.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sky/grounder.hpp"

namespace sky {

class interpretation {
 public:
  interpretation() = default;
  explicit interpretation(std::size_t universe_size)
      : size_(universe_size), words_((universe_size + 63) / 64, 0) {}

  std::size_t universe_size() const { return size_; }

  bool contains(atom_id id) const {
    return (words_[id >> 6] >> (id & 63)) & 1;
  }

  void insert(atom_id id) { words_[id >> 6] |= std::uint64_t{1} << (id & 63); }

  // true if the atom was not present
  bool insert_new(atom_id id) {
    const std::uint64_t bit = std::uint64_t{1} << (id & 63);
    if (words_[id >> 6] & bit) return false;
    words_[id >> 6] |= bit;
    return true;
  }

  std::size_t count() const;
  bool subset_of(const interpretation& other) const;
  interpretation project(const std::vector<std::uint64_t>& mask) const;
  std::vector<atom_id> to_sorted_ids() const;

  const std::vector<std::uint64_t>& words() const { return words_; }

  bool operator==(const interpretation&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// One immediate-consequence step restricted to derivation rules whose head
// predicate lies in the given stratum; monotone in `current`.
interpretation tp_step(const ground_program& g,
                       const std::vector<std::string>& stratum,
                       const interpretation& current);

interpretation least_model(const ground_program& g,
                           const std::vector<atom_id>& guesses);

interpretation least_model_naive(const ground_program& g,
                                 const std::vector<atom_id>& guesses);

// First violated constraint in deterministic rule order, or nullopt.
std::optional<std::size_t> violates_constraints(const ground_program& g,
                                                const interpretation& model);

// Canonical model line, projected to the show predicates.
std::string render_model(const ground_program& g, const interpretation& model);

// Every atom, regardless of #show; used for canonical model-set ordering.
std::string render_model_full(const ground_program& g, const interpretation& model);

}  // namespace sky
