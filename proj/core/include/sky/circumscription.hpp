#pragma once

// Circumscriptive semantics: which candidates are models, which models are
// minimal, and the exhaustive-enumeration oracle that the backtracking
// solver is verified against.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sky/fixpoint.hpp"

namespace sky {

// Accepted models, deduplicated on the full interpretation. canonical()
// orders lexicographically on the rendered text (shown first, full text as
// tie-break so the order is total even under aggressive #show projection).
class model_set {
 public:
  model_set() = default;
  explicit model_set(const ground_program& g) : g_(&g) {}

  bool insert(const interpretation& I);  // false if already present
  bool contains(const interpretation& I) const;

  std::size_t size() const { return models_.size(); }
  bool empty() const { return models_.empty(); }
  const std::vector<interpretation>& all() const { return models_; }  // insertion order
  const ground_program& ground() const { return *g_; }

  std::vector<interpretation> canonical() const;
  std::vector<std::string> render_lines() const;  // shown, sorted, one per model

 private:
  const ground_program* g_ = nullptr;
  std::vector<interpretation> models_;
  std::vector<std::vector<std::uint64_t>> seen_;  // sorted word vectors
};

// Outcome of checking one candidate: either the induced model or the index
// (into ground_program.rules) of the violated constraint.
struct eval_result {
  std::optional<interpretation> model;
  std::optional<std::size_t> violated;

  bool accepted() const { return model.has_value(); }
};

// candidate must be a subset of g.decision_atoms.
eval_result is_model(const ground_program& g, const std::vector<atom_id>& candidate);

// True iff no accepted model with the same fixed-predicate extension has a
// strictly smaller minimized projection. When fixed = EDB (the default) every
// accepted model shares the fixed extension and the group test is vacuous.
bool is_minimal(const ground_program& g, const interpretation& model,
                const model_set& accepted);

model_set minimal_filter(const ground_program& g, const model_set& accepted);

class guard_error : public std::runtime_error {
 public:
  guard_error(std::size_t atoms, std::size_t guard);
  std::size_t decision_atom_count;
  std::size_t guard;
};

struct oracle_options {
  std::size_t guard = 24;  // refuse beyond 2^24 candidates unless forced
  bool force = false;
  std::optional<std::size_t> limit;  // cap on accepted models
};

struct oracle_stats {
  std::uint64_t candidates_tried = 0;
  std::uint64_t accepted = 0;
  std::uint64_t minimal = 0;
  bool truncated = false;
};

struct oracle_result {
  model_set models;  // minimal models only
  oracle_stats stats;
};

// Tries all 2^n candidate subsets in lexicographic subset order and filters
// to the subset-minimal accepted models.
oracle_result enumerate_bruteforce(const ground_program& g,
                                   const oracle_options& opt = {});

}  // namespace sky
