// opcalc: command line front end. Exit codes: 0 all PASS, 1 some FAIL,
// 2 usage or parse error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "opcalc/catalog.hpp"
#include "opcalc/program.hpp"
#include "opcalc/state_diagram.hpp"

namespace {

using namespace opcalc;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

// Diagnostics are prefixed with the file name, as path:line:column.
int report_parse_error(const std::string& file, const std::exception& e) {
  std::cerr << file << ":" << e.what() << "\n";
  return kUsage;
}

int run_file(const std::string& path, const RunOptions& options) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "opcalc: cannot read " << path << "\n";
    return kUsage;
  }
  Program program;
  try {
    program = parse_program(text);
  } catch (const ParseError& e) {
    return report_parse_error(path, e);
  } catch (const BindingError& e) {
    return report_parse_error(path, e);
  }
  try {
    ProgramResult r = run_program(program, options);
    std::cout << r.output;
    return r.failed ? kFail : kOk;
  } catch (const InferenceError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return kUsage;
  }
}

Space parse_space(const std::string& s) { return s == "bilateral" ? Space::Bilateral : Space::Unilateral; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact calculus for unbounded monomial operators on sequence spaces"};
  app.require_subcommand(1);

  std::string check_file;
  auto* check = app.add_subcommand("check", "run an operator program");
  check->add_option("file", check_file, "program file")->required();

  std::string json_path;
  bool catalog_conjectural = false;
  std::uint64_t seed = kDefaultCatalogSeed;
  std::size_t soundness = 0;
  auto* cat = app.add_subcommand("catalog", "run the witness catalog");
  cat->add_option("--json", json_path, "write the JSON report here");
  cat->add_flag("--conjectural", catalog_conjectural, "let engine checks use CONJECTURAL rules");
  cat->add_option("--seed", seed, "seed for randomized witnesses and rule sampling");
  cat->add_option("--soundness", soundness, "sample each non-axiom rule this many times");

  std::string infer_file;
  bool infer_conjectural = false;
  int depth = -1;
  auto* inf = app.add_subcommand("infer", "derive facts from a facts file");
  inf->add_option("file", infer_file, "facts file")->required();
  inf->add_flag("--conjectural", infer_conjectural, "enable CONJECTURAL rules");
  inf->add_option("--depth", depth, "term depth bound")->check(CLI::Range(0, 8));

  std::string matrix_expr, matrix_space = "unilateral", matrix_mode = "exact";
  std::int64_t matrix_n = 8;
  auto* mat = app.add_subcommand("matrix", "truncated matrix of an operator expression, as CSV");
  mat->add_option("expr", matrix_expr, "operator expression")->required();
  mat->add_option("--n", matrix_n, "window size")->check(CLI::Range(1, 4096));
  mat->add_option("--mode", matrix_mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  mat->add_option("--space", matrix_space, "unilateral or bilateral")->check(CLI::IsMember({"unilateral", "bilateral"}));
  mat->add_option("--format", "output format")->check(CLI::IsMember({"csv"}));

  std::string state_expr, state_space = "unilateral";
  auto* st = app.add_subcommand("state", "state-diagram class of an operator expression");
  st->add_option("expr", state_expr, "operator expression")->required();
  st->add_option("--space", state_space, "unilateral or bilateral")->check(CLI::IsMember({"unilateral", "bilateral"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*check) return run_file(check_file, {});

  if (*inf) {
    RunOptions o;
    o.conjectural = infer_conjectural;
    if (depth >= 0) o.depth = depth;
    o.implicit_derive = true;
    return run_file(infer_file, o);
  }

  if (*cat) {
    CatalogOptions o;
    o.conjectural = catalog_conjectural;
    o.seed = seed;
    o.soundness_samples = soundness;
    CatalogReport r = run_catalog(catalog(seed), o);
    std::cout << r.text();
    if (!json_path.empty()) {
      std::ofstream out(json_path, std::ios::binary);
      if (!out) {
        std::cerr << "opcalc: cannot write " << json_path << "\n";
        return kUsage;
      }
      out << r.json();
    }
    return r.failed() ? kFail : kOk;
  }

  // matrix and state take a single expression without named bindings
  const bool is_matrix = static_cast<bool>(*mat);
  const std::string& text = is_matrix ? matrix_expr : state_expr;
  Space space = parse_space(is_matrix ? matrix_space : state_space);
  try {
    ExprPtr e = parse_expr(text, space);
    if (is_matrix) {
      MatrixMode mode = matrix_mode == "float" ? MatrixMode::Float : MatrixMode::Exact;
      TruncatedMatrix m = matrix_of(*e, space, matrix_n, mode);
      std::cout << m.csv();
      if (m.symbolic_mismatch) {
        std::cerr << "mismatch with the symbolic result: " << m.symbolic_mismatch->str() << "\n";
        return kFail;
      }
      return kOk;
    }
    Environment env;
    env.space = space;
    StateClass s = state_classify(evaluate(*e, env));
    std::cout << s.str() << (s.via_closure ? " (closure)" : "") << "\n";
    return kOk;
  } catch (const ParseError& e) {
    std::cerr << "<expr>:" << e.what() << "\n";
    return kUsage;
  } catch (const BindingError& e) {
    std::cerr << "<expr>:" << e.what() << "\n";
    return kUsage;
  } catch (const ModelError& e) {
    std::cerr << "opcalc: " << e.what() << "\n";
    return kFail;
  }
}
