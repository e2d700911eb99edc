#pragma once

// Depth-first refinement of a three-valued assignment over the decision
// atoms, with unit propagation over guess-only constraints and dominance
// pruning against already-found models. Output-equivalent to the
// brute-force oracle; enumerate mode is the unpruned baseline.

#include <cstdint>
#include <optional>
#include <vector>

#include "sky/circumscription.hpp"

namespace sky {

enum class truth : std::uint8_t { undecided, in, out };

// Total three-valued map over decision atoms (indexed like
// ground_program.decision_atoms) plus a trail for chronological undo.
class partial_assignment {
 public:
  partial_assignment() = default;
  explicit partial_assignment(std::size_t atom_count)
      : state_(atom_count, truth::undecided) {}

  struct entry {
    std::uint32_t index;
    truth value;
    std::int32_t reason;  // -1 branch decision, else rule index of the forcing constraint
  };

  truth value(std::uint32_t index) const { return state_[index]; }
  std::size_t size() const { return state_.size(); }
  std::size_t decided() const { return trail_.size(); }
  bool complete() const { return trail_.size() == state_.size(); }

  void assign(std::uint32_t index, truth v, std::int32_t reason);
  std::size_t mark() const { return trail_.size(); }
  void undo_to(std::size_t mark);

  const std::vector<entry>& trail() const { return trail_; }

 private:
  std::vector<truth> state_;
  std::vector<entry> trail_;
};

struct propagation_result {
  bool conflict = false;
  std::size_t violated = 0;  // rule index, valid when conflict
  std::size_t forced = 0;    // unit forcings performed
};

// Unit propagation to fixpoint over the guess-only constraints. Forced
// assignments land on the trail with the constraint as reason.
propagation_result propagate(const ground_program& g, partial_assignment& pa);

enum class solve_mode { backtrack, enumerate };
enum class branch_order { lexicographic, most_constrained_first };

struct solve_config {
  solve_mode mode = solve_mode::backtrack;
  branch_order branch = branch_order::lexicographic;
  std::optional<std::size_t> max_models;  // cap on accepted models
  std::optional<bool> dominance;          // unset: on exactly when allowed
};

struct solver_stats {
  std::uint64_t nodes_expanded = 0;
  std::uint64_t constraint_prunes = 0;  // conflicts + unit forcings
  std::uint64_t dominance_prunes = 0;
  std::uint64_t leaves_evaluated = 0;
  std::uint64_t models_found = 0;  // after the final minimality filter
};

struct solve_result {
  model_set models;
  solver_stats stats;
  bool truncated = false;
};

// Dominance pruning is sound only when every minimized predicate is a guess
// predicate (forced-in guess atoms then bound the minimized projection) and
// every fixed predicate is extensional (all candidates share the fixed part).
bool dominance_allowed(const ground_program& g);

// Smallest undecided atom (lexicographic) or the undecided atom in the most
// still-live propagatable constraints, ties broken lexicographically.
std::optional<std::uint32_t> select_branch_atom(const ground_program& g,
                                                const partial_assignment& pa,
                                                const solve_config& cfg);

// Full assignment -> is_model on the in-atoms.
eval_result evaluate_leaf(const ground_program& g, const partial_assignment& pa);

solve_result solve(const ground_program& g, const solve_config& cfg = {});

}  // namespace sky
