#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opcalc/expr.hpp"
#include "opcalc/matrix_oracle.hpp"
#include "opcalc/term.hpp"

namespace opcalc {

/// One line of a program or facts file. Grammar in docs/dsl.md.
struct Statement {
  enum class Kind { Space, Sym, Op, Props, Cmp, State, Polar, Matrix, Holds, Assume, Derive, Explain };

  Kind kind = Kind::Props;
  SourcePos pos;
  Space space = Space::Unilateral;       // Space
  std::string name;                      // Sym, Op
  std::optional<GrowthSymbol> symbol;    // Sym
  ExprPtr expr;                          // Op, Props, Cmp, State, Polar, Matrix
  ExprPtr rhs;                           // Cmp
  std::int64_t n = 0;                    // Matrix
  MatrixMode mode = MatrixMode::Exact;   // Matrix
  std::optional<Fact> fact;              // Holds, Assume, Explain
  bool conjectural = false;              // Derive
  std::optional<int> depth;              // Derive
  std::optional<std::string> expect;     // Cmp, State, Holds

  std::string str() const;
};

bool operator==(const Statement& a, const Statement& b);

struct Program {
  std::vector<Statement> statements;
  Space space() const;
  /// One statement per line, canonical spelling.
  std::string str() const;
  friend bool operator==(const Program& a, const Program& b) { return a.statements == b.statements; }
};

/// Throws ParseError for lexical and syntax errors and BindingError for names
/// used before they are bound (operators in expressions and in `holds`).
Program parse_program(std::string_view text);

struct RunOptions {
  /// OR-ed with the flags on each derive.
  bool conjectural = false;
  std::optional<int> depth;
  /// Run a derive at the end when the program has none (facts files).
  bool implicit_derive = false;
};

struct ProgramResult {
  std::string output;
  /// Some expectation failed, some derived fact was false in the model, or a
  /// statement could not be evaluated.
  bool failed = false;
};

/// Statements run in source order. Throws InferenceError for inadmissible
/// assumptions.
ProgramResult run_program(const Program& program, const RunOptions& options = {});

}  // namespace opcalc
