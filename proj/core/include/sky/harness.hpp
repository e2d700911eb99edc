#pragma once

// CLI-facing layer: runs program files, validates them, compares solver
// modes, and drives the regression corpus. Every entry point writes to the
// provided streams and returns the process exit code.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sky/backtrack.hpp"

namespace sky {

enum class run_mode { backtrack, enumerate, oracle };

struct run_options {
  run_mode mode = run_mode::backtrack;
  branch_order branch = branch_order::lexicographic;
  bool dominance = true;  // ignored outside backtrack mode
  std::optional<std::size_t> max_models;
  bool stats = false;
  bool force_large = false;
};

struct run_report {
  std::string path;
  run_mode mode = run_mode::backtrack;
  std::size_t model_count = 0;
  solver_stats stats;
  double wall_time_ms = 0.0;  // the only nondeterministic field
  bool truncated = false;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_parse = 10;
inline constexpr int exit_safety = 11;  // also arity and guess-structure
inline constexpr int exit_stratification = 12;
inline constexpr int exit_policy = 13;
inline constexpr int exit_guard = 14;
inline constexpr int exit_corpus = 20;
inline constexpr int exit_failure = 1;  // I/O trouble, mode mismatch

int issue_exit_code(const std::vector<validity_issue>& issues);

std::string read_text_file(const std::string& path);  // throws on failure

// Flat JSON record: the SolverStats fields plus wall_time_ms.
std::string stats_json(const solver_stats& s, double wall_time_ms);

int run_file(const std::string& path, const run_options& opt, std::ostream& out,
             std::ostream& err, run_report* report = nullptr);

// Parse + validate only.
int check_file(const std::string& path, std::ostream& out, std::ostream& err);

// Oracle vs enumerate vs backtrack on one file; per-mode stats table and an
// equivalence verdict.
int compare_file(const std::string& path, bool force_large, std::ostream& out,
                 std::ostream& err);

// Each FILE.sky beside a FILE.expected holding the oracle-generated model
// lines and a MODELS count; every case runs in all three modes.
int run_corpus(const std::string& directory, std::ostream& out, std::ostream& err);

struct corpus_case {
  std::string name;
  std::string program_text;
  std::size_t expected_count = 0;
  std::optional<std::vector<std::string>> expected_models;  // canonical, sorted
};

corpus_case load_corpus_case(const std::string& sky_path);

}  // namespace sky
