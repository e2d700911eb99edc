#pragma once

// Instantiates a validated program over its active Herbrand universe.
// Ground atoms are interned: atom ids are positions in a table sorted by the
// ground-atom order, so ascending id order is the canonical atom order.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sky/ast.hpp"

namespace sky {

struct ground_atom {
  std::string predicate;
  std::vector<std::string> args;

  bool operator==(const ground_atom&) const = default;
};

// predicate first, then args (integers before identifiers, integers by value)
bool ground_atom_less(const ground_atom& a, const ground_atom& b);

std::string render(const ground_atom& a);

using atom_id = std::uint32_t;

struct ground_literal {
  atom_id id = 0;
  bool negated = false;
};

struct ground_rule {
  std::optional<atom_id> head;
  std::vector<ground_literal> body;
  rule_kind kind = rule_kind::fact;
  int source_index = 0;  // index of the originating rule in program.rules
};

// A constraint reduced to decision literals for unit propagation; statically
// true extensional literals are dropped at grounding time.
struct prop_constraint {
  std::size_t rule_index = 0;  // into ground_program.rules
  struct dlit {
    std::uint32_t decision_index;  // into ground_program.decision_atoms
    bool negated;
  };
  std::vector<dlit> literals;
};

struct ground_program {
  std::vector<ground_atom> atoms;  // id -> atom, sorted by ground_atom_less
  std::vector<ground_rule> rules;  // source order, then substitution order
  std::vector<atom_id> decision_atoms;  // ascending
  circ_policy policy;
  stratification strata;
  std::set<std::string> show;
  std::set<std::string> edb_predicates;
  std::set<std::string> guess_predicates;

  // Evaluation indexes.
  std::vector<atom_id> fact_atoms;                       // sorted, deduplicated
  std::vector<std::vector<std::size_t>> rules_by_stratum;  // kind == rule only
  std::vector<std::size_t> constraints;                  // rule indices
  std::vector<std::size_t> guess_rules;                  // rule indices
  std::vector<std::vector<std::size_t>> positive_watch;  // atom id -> rule idx
  std::vector<int> rule_stratum;                         // -1 for non-derivation rules
  std::vector<prop_constraint> prop_constraints;

  // Word masks over atom ids, one bit per atom.
  std::vector<std::uint64_t> minimized_mask;
  std::vector<std::uint64_t> fixed_mask;
  std::vector<std::uint64_t> show_mask;
  std::vector<std::uint64_t> decision_mask;

  std::optional<atom_id> find(const ground_atom& a) const;
  std::optional<std::uint32_t> decision_index(atom_id id) const;
};

// Constants occurring in the program, integers first (by value), then
// identifiers lexicographically.
std::vector<std::string> herbrand_universe(const program& p);

ground_program ground(const program& p);

// Ground instances of guess heads whose range holds in the least model with
// all guesses out.
std::vector<ground_atom> guess_domain(const program& p);

std::string render_ground_rule(const ground_program& g, std::size_t rule_index);

}  // namespace sky
