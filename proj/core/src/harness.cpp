#include "sky/harness.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "sky/parser.hpp"

namespace sky {

namespace {

const char* issue_label(issue_kind k) {
  switch (k) {
    case issue_kind::arity: return "arity error";
    case issue_kind::safety: return "safety error";
    case issue_kind::guess_structure: return "guess error";
    case issue_kind::stratification: return "stratification error";
    case issue_kind::policy: return "policy error";
  }
  return "error";
}

void print_issues(const std::string& path, const std::vector<validity_issue>& issues,
                  std::ostream& err) {
  for (const validity_issue& i : issues)
    err << path << ": " << issue_label(i.kind) << ": " << i.message << "\n";
}

void print_parse_error(const std::string& path, const parse_error& e, std::ostream& err) {
  err << path << ":" << e.line() << ":" << e.column() << ": parse error: " << e.what()
      << "\n";
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  const auto d = std::chrono::steady_clock::now() - start;
  return std::chrono::duration<double, std::milli>(d).count();
}

std::set<std::vector<std::uint64_t>> model_key(const model_set& ms) {
  std::set<std::vector<std::uint64_t>> key;
  for (const interpretation& m : ms.all()) key.insert(m.words());
  return key;
}

}  // namespace

int issue_exit_code(const std::vector<validity_issue>& issues) {
  bool strat = false, policy = false;
  for (const validity_issue& i : issues) {
    switch (i.kind) {
      case issue_kind::arity:
      case issue_kind::safety:
      case issue_kind::guess_structure:
        return exit_safety;
      case issue_kind::stratification:
        strat = true;
        break;
      case issue_kind::policy:
        policy = true;
        break;
    }
  }
  if (strat) return exit_stratification;
  if (policy) return exit_policy;
  return exit_failure;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string stats_json(const solver_stats& s, double wall_time_ms) {
  std::ostringstream out;
  out << "{\"nodes_expanded\":" << s.nodes_expanded
      << ",\"constraint_prunes\":" << s.constraint_prunes
      << ",\"dominance_prunes\":" << s.dominance_prunes
      << ",\"leaves_evaluated\":" << s.leaves_evaluated
      << ",\"models_found\":" << s.models_found << ",\"wall_time_ms\":" << std::fixed
      << std::setprecision(3) << wall_time_ms << "}";
  return out.str();
}

int run_file(const std::string& path, const run_options& opt, std::ostream& out,
             std::ostream& err, run_report* report) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_failure;
  }

  program p;
  try {
    p = parse_program(text);
  } catch (const parse_error& e) {
    print_parse_error(path, e, err);
    return exit_parse;
  } catch (const validation_error& e) {
    print_issues(path, e.issues(), err);
    return issue_exit_code(e.issues());
  }

  const ground_program g = ground(p);
  const auto start = std::chrono::steady_clock::now();

  model_set models(g);
  solver_stats stats;
  bool truncated = false;

  if (opt.mode == run_mode::oracle) {
    oracle_options oo;
    oo.force = opt.force_large;
    oo.limit = opt.max_models;
    try {
      oracle_result r = enumerate_bruteforce(g, oo);
      models = std::move(r.models);
      stats.leaves_evaluated = r.stats.candidates_tried;
      stats.models_found = r.stats.minimal;
      truncated = r.stats.truncated;
    } catch (const guard_error& e) {
      err << "error: " << e.what() << "; pass --force-large to proceed\n";
      return exit_guard;
    }
  } else {
    solve_config cfg;
    cfg.mode = opt.mode == run_mode::backtrack ? solve_mode::backtrack
                                               : solve_mode::enumerate;
    cfg.branch = opt.branch;
    cfg.max_models = opt.max_models;
    if (!opt.dominance) cfg.dominance = false;
    solve_result r = solve(g, cfg);
    models = std::move(r.models);
    stats = r.stats;
    truncated = r.truncated;
  }

  const double wall = elapsed_ms(start);

  for (const std::string& line : models.render_lines()) out << line << "\n";
  out << "MODELS: " << models.size() << "\n";
  if (truncated) err << "note: model cap reached before the search completed\n";
  if (opt.stats) out << stats_json(stats, wall) << "\n";

  if (report) {
    report->path = path;
    report->mode = opt.mode;
    report->model_count = models.size();
    report->stats = stats;
    report->wall_time_ms = wall;
    report->truncated = truncated;
  }
  return exit_ok;
}

int check_file(const std::string& path, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_failure;
  }
  try {
    const program p = parse_program(text);
    out << "OK: " << p.rules.size() << " statements, " << p.arity.size()
        << " predicates\n";
    return exit_ok;
  } catch (const parse_error& e) {
    print_parse_error(path, e, err);
    return exit_parse;
  } catch (const validation_error& e) {
    print_issues(path, e.issues(), err);
    return issue_exit_code(e.issues());
  }
}

int compare_file(const std::string& path, bool force_large, std::ostream& out,
                 std::ostream& err) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_failure;
  }
  program p;
  try {
    p = parse_program(text);
  } catch (const parse_error& e) {
    print_parse_error(path, e, err);
    return exit_parse;
  } catch (const validation_error& e) {
    print_issues(path, e.issues(), err);
    return issue_exit_code(e.issues());
  }
  const ground_program g = ground(p);

  oracle_options oo;
  oo.force = force_large;
  oracle_result oracle;
  try {
    oracle = enumerate_bruteforce(g, oo);
  } catch (const guard_error& e) {
    err << "error: " << e.what() << "; pass --force-large to proceed\n";
    return exit_guard;
  }

  solve_config ce;
  ce.mode = solve_mode::enumerate;
  const solve_result enumerated = solve(g, ce);
  solve_config cb;
  cb.mode = solve_mode::backtrack;
  const solve_result backtracked = solve(g, cb);

  const bool ok = model_key(oracle.models) == model_key(enumerated.models) &&
                  model_key(oracle.models) == model_key(backtracked.models);

  out << std::left << std::setw(11) << "mode" << std::right << std::setw(8) << "models"
      << std::setw(10) << "leaves" << std::setw(19) << "constraint_prunes"
      << std::setw(18) << "dominance_prunes" << "\n";
  auto row = [&](const char* name, std::uint64_t models, std::uint64_t leaves,
                 std::optional<std::uint64_t> cp, std::optional<std::uint64_t> dp) {
    out << std::left << std::setw(11) << name << std::right << std::setw(8) << models
        << std::setw(10) << leaves;
    if (cp)
      out << std::setw(19) << *cp;
    else
      out << std::setw(19) << "-";
    if (dp)
      out << std::setw(18) << *dp;
    else
      out << std::setw(18) << "-";
    out << "\n";
  };
  row("oracle", oracle.models.size(), oracle.stats.candidates_tried, std::nullopt,
      std::nullopt);
  row("enumerate", enumerated.models.size(), enumerated.stats.leaves_evaluated,
      enumerated.stats.constraint_prunes, enumerated.stats.dominance_prunes);
  row("backtrack", backtracked.models.size(), backtracked.stats.leaves_evaluated,
      backtracked.stats.constraint_prunes, backtracked.stats.dominance_prunes);
  out << "VERDICT: " << (ok ? "ok" : "MISMATCH") << "\n";
  return ok ? exit_ok : exit_failure;
}

corpus_case load_corpus_case(const std::string& sky_path) {
  corpus_case c;
  c.name = std::filesystem::path(sky_path).stem().string();
  c.program_text = read_text_file(sky_path);

  std::filesystem::path expected_path(sky_path);
  expected_path.replace_extension(".expected");
  const std::string expected = read_text_file(expected_path.string());

  std::vector<std::string> model_lines;
  std::optional<std::size_t> count;
  std::istringstream in(expected);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("MODELS: ", 0) == 0) {
      if (count) throw std::runtime_error("duplicate MODELS line in " + expected_path.string());
      count = std::stoul(line.substr(8));
    } else if (!line.empty() && line[0] == '{') {
      if (count) throw std::runtime_error("model line after MODELS in " + expected_path.string());
      model_lines.push_back(line);
    } else {
      throw std::runtime_error("unrecognized line in " + expected_path.string() + ": " + line);
    }
  }
  if (!count) throw std::runtime_error("missing MODELS line in " + expected_path.string());
  c.expected_count = *count;
  if (!model_lines.empty() || c.expected_count == 0) {
    if (!model_lines.empty() && model_lines.size() != c.expected_count)
      throw std::runtime_error("model line count does not match MODELS in " +
                               expected_path.string());
    c.expected_models = std::move(model_lines);
  }
  return c;
}

namespace {

struct case_outcome {
  bool pass = false;
  std::string detail;
};

case_outcome run_case(const std::string& sky_path) {
  case_outcome o;
  corpus_case c;
  try {
    c = load_corpus_case(sky_path);
  } catch (const std::exception& e) {
    o.detail = std::string("malformed case: ") + e.what();
    return o;
  }

  ground_program g;
  try {
    const program p = parse_program(c.program_text);
    g = ground(p);
  } catch (const parse_error& e) {
    o.detail = "parse error at " + std::to_string(e.line()) + ":" +
               std::to_string(e.column()) + ": " + e.what();
    return o;
  } catch (const validation_error& e) {
    o.detail = e.issues().empty() ? "invalid program" : e.issues().front().message;
    return o;
  }

  oracle_result oracle;
  try {
    oracle = enumerate_bruteforce(g);
  } catch (const guard_error& e) {
    o.detail = e.what();
    return o;
  }
  solve_config ce;
  ce.mode = solve_mode::enumerate;
  const solve_result enumerated = solve(g, ce);
  solve_config cb;
  cb.mode = solve_mode::backtrack;
  const solve_result backtracked = solve(g, cb);

  if (model_key(oracle.models) != model_key(enumerated.models) ||
      model_key(oracle.models) != model_key(backtracked.models)) {
    o.detail = "solver modes disagree (oracle " + std::to_string(oracle.models.size()) +
               ", enumerate " + std::to_string(enumerated.models.size()) +
               ", backtrack " + std::to_string(backtracked.models.size()) + " models)";
    return o;
  }

  const std::vector<std::string> actual = oracle.models.render_lines();
  if (actual.size() != c.expected_count) {
    o.detail = "expected " + std::to_string(c.expected_count) + " models, got " +
               std::to_string(actual.size());
    return o;
  }
  if (c.expected_models) {
    std::vector<std::string> expected = *c.expected_models;
    std::sort(expected.begin(), expected.end());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (expected[i] != actual[i]) {
        o.detail = "first differing model: expected " + expected[i] + ", got " + actual[i];
        return o;
      }
    }
  }
  o.pass = true;
  return o;
}

}  // namespace

int run_corpus(const std::string& directory, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) {
    err << "error: not a directory: " << directory << "\n";
    return exit_failure;
  }
  std::vector<std::string> cases;
  for (const auto& entry : fs::directory_iterator(directory))
    if (entry.is_regular_file() && entry.path().extension() == ".sky")
      cases.push_back(entry.path().string());
  std::sort(cases.begin(), cases.end());
  if (cases.empty()) {
    err << "error: no .sky cases in " << directory << "\n";
    return exit_failure;
  }

  std::size_t passed = 0;
  for (const std::string& path : cases) {
    const std::string name = fs::path(path).stem().string();
    const case_outcome o = run_case(path);
    if (o.pass) {
      ++passed;
      out << "PASS " << name << "\n";
    } else {
      out << "FAIL " << name << ": " << o.detail << "\n";
    }
  }
  out << "CORPUS: " << passed << "/" << cases.size() << " passed\n";
  return passed == cases.size() ? exit_ok : exit_corpus;
}

}  // namespace sky
