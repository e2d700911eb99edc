#pragma once

// Abstract syntax of SKY programs plus the static checks (safety,
// stratification, policy partition) every later stage relies on.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sky {

enum class term_kind { constant, variable };

struct term {
  term_kind kind = term_kind::constant;
  std::string name;

  bool is_variable() const { return kind == term_kind::variable; }
  bool operator==(const term&) const = default;
};

term make_constant(std::string name);
term make_variable(std::string name);

// True for a canonical unsigned decimal literal.
bool is_integer_text(std::string_view s);

// Total order on constant names: integers first (by value), then
// identifiers lexicographically.
bool constant_less(const std::string& a, const std::string& b);

struct atom {
  std::string predicate;
  std::vector<term> args;

  bool is_ground() const;
  bool operator==(const atom&) const = default;
};

struct literal {
  atom a;
  bool negated = false;

  bool operator==(const literal&) const = default;
};

enum class rule_kind { fact, rule, constraint, guess };

struct rule {
  std::optional<atom> head;  // absent for constraints
  std::vector<literal> body;
  rule_kind kind = rule_kind::fact;
  int line = 0;  // statement position in the source, 0 when synthesized
  int column = 0;
};

// Equality up to source positions.
bool structural_equal(const rule& a, const rule& b);

struct circ_policy {
  std::set<std::string> minimized;
  std::set<std::string> fixed;
  std::set<std::string> varying;

  bool operator==(const circ_policy&) const = default;
};

struct stratification {
  std::vector<std::vector<std::string>> strata;  // level -> sorted predicates
  std::map<std::string, int> level;
};

struct program {
  std::vector<rule> rules;
  circ_policy policy;
  std::set<std::string> show;  // empty set means "show every predicate"

  // Derived during validation.
  stratification strata;
  std::map<std::string, int> arity;
  std::set<std::string> guess_predicates;
  std::set<std::string> edb_predicates;
};

bool structural_equal(const program& a, const program& b);

// ---------------------------------------------------------------------------
// Safety

struct safety_violation {
  std::string variable;
  std::string where;  // "head" or "negated body literal N"
};

// Range restriction: every head variable and every variable under negation
// must occur in a positive body literal of the same rule.
std::vector<safety_violation> validate_safety(const rule& r);

// ---------------------------------------------------------------------------
// Predicate dependency graph

struct dep_edge {
  std::string from;  // body predicate
  std::string to;    // head predicate
  bool negative = false;

  auto operator<=>(const dep_edge&) const = default;
};

struct dependency_graph {
  std::vector<std::string> vertices;  // sorted
  std::vector<dep_edge> edges;        // sorted, deduplicated
};

dependency_graph build_dependency_graph(const std::vector<rule>& rules);
dependency_graph build_dependency_graph(const program& p);

// ---------------------------------------------------------------------------
// Stratification

struct strat_result {
  std::optional<stratification> strata;     // present iff stratifiable
  std::vector<std::string> negative_cycle;  // one offending cycle, closed
                                            // (first element repeated last)
};

strat_result stratify(const dependency_graph& g);
strat_result stratify(const program& p);

// ---------------------------------------------------------------------------
// Validation

enum class issue_kind { arity, safety, guess_structure, stratification, policy };

struct validity_issue {
  issue_kind kind;
  std::string message;
};

class validation_error : public std::runtime_error {
 public:
  explicit validation_error(std::vector<validity_issue> issues);
  const std::vector<validity_issue>& issues() const { return issues_; }

 private:
  std::vector<validity_issue> issues_;
};

// Explicit policy/show directives collected by the parser.
struct directive_sets {
  std::vector<std::string> minimize;
  std::vector<std::string> fix;
  std::vector<std::string> show;
};

// Runs every static check over the raw statements and assembles a validated
// program (kinds, policy partition, strata, arities). Throws validation_error
// carrying all violations at once.
program finalize_program(std::vector<rule> rules, const directive_sets& directives);

std::string render(const term& t);
std::string render(const atom& a);
std::string render(const literal& l);
std::string render(const rule& r);

}  // namespace sky
