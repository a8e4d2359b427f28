#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opcalc/expr.hpp"
#include "opcalc/operator_model.hpp"

namespace opcalc {

/// Index window 0..N-1 on ℕ or -N..N on ℤ.
struct Window {
  Space space = Space::Unilateral;
  std::int64_t n = 0;

  std::int64_t lo() const { return space == Space::Unilateral ? 0 : -n; }
  /// One past the last index.
  std::int64_t hi() const { return space == Space::Unilateral ? n : n + 1; }
  std::size_t size() const { return static_cast<std::size_t>(hi() - lo()); }
  bool contains(std::int64_t i) const { return i >= lo() && i < hi(); }
  std::size_t offset(std::int64_t i) const { return static_cast<std::size_t>(i - lo()); }
  /// Indices whose matrix entries are unaffected by truncation for expressions
  /// moving indices by at most `margin`. ℕ has no lower edge effect.
  Window interior(std::int64_t margin) const;
};

inline constexpr std::int64_t kMaxExactN = 128;
inline constexpr std::int64_t kMaxFloatN = 4096;

/// Sparse exact matrix: nonzero entries keyed by (row, col).
class ExactMatrix {
 public:
  explicit ExactMatrix(Window w = {}) : window_(w) {}
  const Window& window() const { return window_; }
  RadicalComplex at(std::int64_t row, std::int64_t col) const;
  void set(std::int64_t row, std::int64_t col, const RadicalComplex& v);
  const std::map<std::pair<std::int64_t, std::int64_t>, RadicalComplex>& nonzeros() const { return entries_; }

 private:
  Window window_;
  std::map<std::pair<std::int64_t, std::int64_t>, RadicalComplex> entries_;
};

/// Dense row-major split-complex matrix.
class FloatMatrix {
 public:
  explicit FloatMatrix(Window w = {});
  const Window& window() const { return window_; }
  std::complex<double> at(std::int64_t row, std::int64_t col) const;
  void set(std::int64_t row, std::int64_t col, std::complex<double> v);
  std::vector<double>& re() { return re_; }
  std::vector<double>& im() { return im_; }
  const std::vector<double>& re() const { return re_; }
  const std::vector<double>& im() const { return im_; }

 private:
  Window window_;
  std::vector<double> re_, im_;
};

enum class MatrixMode { Exact, Float };

struct EntryMismatch {
  std::int64_t row = 0;
  std::int64_t col = 0;
  std::string expected;
  std::string got;
  std::string str() const;
};

struct TruncatedMatrix {
  Window window;
  MatrixMode mode = MatrixMode::Exact;
  std::string source;
  ExactMatrix exact;
  FloatMatrix dense;
  std::int64_t margin = 0;
  /// First interior entry where the direct computation and the symbolic result differ.
  std::optional<EntryMismatch> symbolic_mismatch;

  std::string csv(bool nonzero_only = false) const;
};

ExactMatrix exact_matrix(const MonomialOperator& t, Window w);
FloatMatrix float_matrix(const MonomialOperator& t, Window w);

/// Entries computed from the expression tree by acting on basis vectors:
/// products of factor matrices, conjugate transposes, column norms.
ExactMatrix direct_exact(const Expr& e, Window w);
FloatMatrix direct_float(const Expr& e, Window w);

ExactMatrix exact_product(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix exact_adjoint(const ExactMatrix& a);
FloatMatrix float_product(const FloatMatrix& a, const FloatMatrix& b);
FloatMatrix float_adjoint(const FloatMatrix& a);
/// max |a − b| over the given interior window.
double max_abs_diff(const FloatMatrix& a, const FloatMatrix& b, const Window& interior);
double max_abs(const FloatMatrix& a, const Window& interior);

/// Expression must be free of names (see inline_names).
TruncatedMatrix matrix_of(const Expr& e, Space space, std::int64_t n, MatrixMode mode);

/// Interior residuals of a float truncation.
struct Residuals {
  double normality = 0;       // ‖T*T − TT*‖
  double selfadjointness = 0;  // ‖T − T*‖
  double polar = 0;           // ‖T − W|T|‖
  double scale = 0;           // largest interior entry of T*T
};

Residuals residuals(const MonomialOperator& t, std::int64_t n);

/// The tolerance used for float checks: 1e-9 relative to max(1, scale).
bool within_tolerance(double residual, double scale);

enum class CheckedOperation { Adjoint, Compose, Closure, Polar };
std::string_view to_string(CheckedOperation op);

struct CrosscheckResult {
  bool pass = true;
  std::optional<EntryMismatch> first_mismatch;
};

/// Compares the symbolic result of an operation with matrices built
/// independently from the inputs. For Polar the result is {W, |T|}.
CrosscheckResult crosscheck(CheckedOperation op, std::span<const MonomialOperator> inputs,
                            std::span<const MonomialOperator> result, std::int64_t n, MatrixMode mode);

struct SvdPolarDeviation {
  double modulus = 0;
  double partial_isometry = 0;
};

/// Polar factors of the dense truncation from an SVD, compared on the interior
/// with the symbolic factors. Only meaningful for bounded symbols.
SvdPolarDeviation svd_polar_deviation(const MonomialOperator& t, std::int64_t n);

}  // namespace opcalc
