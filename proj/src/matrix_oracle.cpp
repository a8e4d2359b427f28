#include "opcalc/matrix_oracle.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "opcalc/kernels.hpp"

namespace opcalc {

Window Window::interior(std::int64_t margin) const {
  Window w{space, std::max<std::int64_t>(0, n - margin)};
  return w;
}

// ---- storage -------------------------------------------------------------------------

RadicalComplex ExactMatrix::at(std::int64_t row, std::int64_t col) const {
  auto it = entries_.find({row, col});
  return it == entries_.end() ? RadicalComplex() : it->second;
}

void ExactMatrix::set(std::int64_t row, std::int64_t col, const RadicalComplex& v) {
  if (!window_.contains(row) || !window_.contains(col)) throw std::out_of_range("entry outside the window");
  if (v.is_zero())
    entries_.erase({row, col});
  else
    entries_[{row, col}] = v;
}

FloatMatrix::FloatMatrix(Window w) : window_(w), re_(w.size() * w.size(), 0.0), im_(w.size() * w.size(), 0.0) {}

std::complex<double> FloatMatrix::at(std::int64_t row, std::int64_t col) const {
  std::size_t at = window_.offset(row) * window_.size() + window_.offset(col);
  return {re_[at], im_[at]};
}

void FloatMatrix::set(std::int64_t row, std::int64_t col, std::complex<double> v) {
  std::size_t at = window_.offset(row) * window_.size() + window_.offset(col);
  re_[at] = v.real();
  im_[at] = v.imag();
}

std::string EntryMismatch::str() const {
  return "entry (" + std::to_string(row) + "," + std::to_string(col) + "): expected " + expected + ", got " + got;
}

namespace {

std::string exact_text(const RadicalComplex& v) {
  std::string s = v.str();  // coeff(x,y,s)
  return s.substr(5);
}

std::string float_text(std::complex<double> v) {
  char buf[96];
  // adding 0.0 turns -0 into 0
  std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", v.real() + 0.0, v.imag() + 0.0);
  return buf;
}

}  // namespace

std::string TruncatedMatrix::csv(bool nonzero_only) const {
  std::ostringstream os;
  os << "row,col,value\n";
  for (std::int64_t r = window.lo(); r < window.hi(); ++r)
    for (std::int64_t c = window.lo(); c < window.hi(); ++c) {
      if (mode == MatrixMode::Exact) {
        RadicalComplex v = exact.at(r, c);
        if (nonzero_only && v.is_zero()) continue;
        os << r << "," << c << ",\"" << exact_text(v) << "\"\n";
      } else {
        auto v = dense.at(r, c);
        if (nonzero_only && v == std::complex<double>()) continue;
        os << r << "," << c << ",\"" << float_text(v) << "\"\n";
      }
    }
  return os.str();
}

// ---- matrices of operators -----------------------------------------------------------

ExactMatrix exact_matrix(const MonomialOperator& t, Window w) {
  ExactMatrix m(w);
  for (std::int64_t i = w.lo(); i < w.hi(); ++i) {
    std::int64_t j = i + t.shift();
    if (w.contains(j)) m.set(j, i, t.entry(j, i));
  }
  return m;
}

FloatMatrix float_matrix(const MonomialOperator& t, Window w) {
  FloatMatrix m(w);
  for (std::int64_t i = w.lo(); i < w.hi(); ++i) {
    std::int64_t j = i + t.shift();
    if (w.contains(j)) m.set(j, i, t.entry(j, i).to_complex());
  }
  return m;
}

ExactMatrix exact_adjoint(const ExactMatrix& a) {
  ExactMatrix out(a.window());
  for (const auto& [rc, v] : a.nonzeros()) out.set(rc.second, rc.first, v.conj());
  return out;
}

ExactMatrix exact_product(const ExactMatrix& a, const ExactMatrix& b) {
  std::map<std::int64_t, std::vector<std::pair<std::int64_t, RadicalComplex>>> a_cols;
  for (const auto& [rc, v] : a.nonzeros()) a_cols[rc.second].emplace_back(rc.first, v);
  std::map<std::pair<std::int64_t, std::int64_t>, RadicalComplex> acc;
  for (const auto& [rc, bv] : b.nonzeros()) {
    auto it = a_cols.find(rc.first);
    if (it == a_cols.end()) continue;
    for (const auto& [row, av] : it->second) {
      RadicalComplex term = av * bv;
      auto [slot, fresh] = acc.try_emplace({row, rc.second}, term);
      if (fresh) continue;
      auto sum = slot->second.try_add(term);
      if (!sum) throw ModelError("matrix entry leaves the radical class");
      slot->second = *sum;
    }
  }
  ExactMatrix out(a.window());
  for (const auto& [rc, v] : acc) out.set(rc.first, rc.second, v);
  return out;
}

FloatMatrix float_adjoint(const FloatMatrix& a) {
  FloatMatrix out(a.window());
  active_kernels().conj_transpose(a.window().size(), a.re().data(), a.im().data(), out.re().data(), out.im().data());
  return out;
}

FloatMatrix float_product(const FloatMatrix& a, const FloatMatrix& b) {
  FloatMatrix out(a.window());
  active_kernels().cgemm(a.window().size(), a.re().data(), a.im().data(), b.re().data(), b.im().data(),
                         out.re().data(), out.im().data());
  return out;
}

double max_abs_diff(const FloatMatrix& a, const FloatMatrix& b, const Window& interior) {
  if (interior.size() == 0) return 0.0;
  const Window& w = a.window();
  std::size_t lo = w.offset(interior.lo());
  std::size_t hi = w.offset(interior.hi() - 1) + 1;
  return active_kernels().max_abs_diff(w.size(), a.re().data(), a.im().data(), b.re().data(), b.im().data(), lo, hi);
}

double max_abs(const FloatMatrix& a, const Window& interior) { return max_abs_diff(a, FloatMatrix(a.window()), interior); }

// ---- direct evaluation ---------------------------------------------------------------------

namespace {

const GrowthSymbol& literal_symbol(const Expr& e, const GrowthSymbol& fallback) {
  if (!e.diagonal) return fallback;
  if (!e.diagonal->literal) throw ModelError("expression still contains the name '" + e.diagonal->name + "'");
  return *e.diagonal->literal;
}

}  // namespace

ExactMatrix direct_exact(const Expr& e, Window w) {
  switch (e.kind) {
    case Expr::Kind::Ref: throw ModelError("expression still contains the name '" + e.name + "'");
    case Expr::Kind::Literal: {
      GrowthSymbol one = GrowthSymbol::one(w.space);
      const GrowthSymbol& a = literal_symbol(e, one);
      ExactMatrix m(w);
      for (std::int64_t i = w.lo(); i < w.hi(); ++i) {
        std::int64_t j = i + e.shift;
        if (w.contains(j)) m.set(j, i, a.at(j));
      }
      return m;
    }
    case Expr::Kind::Adjoint: return exact_adjoint(direct_exact(*e.args[0], w));
    case Expr::Kind::Closure:
    case Expr::Kind::Restrict: return direct_exact(*e.args[0], w);
    case Expr::Kind::Compose: return exact_product(direct_exact(*e.args[0], w), direct_exact(*e.args[1], w));
    case Expr::Kind::Inverse: {
      ExactMatrix m = direct_exact(*e.args[0], w), out(w);
      for (const auto& [rc, v] : m.nonzeros()) out.set(rc.second, rc.first, v.inverse());
      return out;
    }
    case Expr::Kind::Abs:
    case Expr::Kind::Phase: {
      ExactMatrix m = direct_exact(*e.args[0], w), out(w);
      std::map<std::int64_t, Rational> norms;
      for (const auto& [rc, v] : m.nonzeros()) norms[rc.second] += v.norm_squared();
      if (e.kind == Expr::Kind::Abs) {
        for (const auto& [col, s] : norms) out.set(col, col, RadicalComplex::sqrt_of(s));
      } else {
        for (const auto& [rc, v] : m.nonzeros()) out.set(rc.first, rc.second, v * RadicalComplex::sqrt_of(norms[rc.second]).inverse());
      }
      return out;
    }
  }
  return ExactMatrix(w);
}

FloatMatrix direct_float(const Expr& e, Window w) {
  switch (e.kind) {
    case Expr::Kind::Ref: throw ModelError("expression still contains the name '" + e.name + "'");
    case Expr::Kind::Literal: {
      GrowthSymbol one = GrowthSymbol::one(w.space);
      const GrowthSymbol& a = literal_symbol(e, one);
      FloatMatrix m(w);
      for (std::int64_t i = w.lo(); i < w.hi(); ++i) {
        std::int64_t j = i + e.shift;
        if (w.contains(j)) m.set(j, i, a.at(j).to_complex());
      }
      return m;
    }
    case Expr::Kind::Adjoint: return float_adjoint(direct_float(*e.args[0], w));
    case Expr::Kind::Closure:
    case Expr::Kind::Restrict: return direct_float(*e.args[0], w);
    case Expr::Kind::Compose: return float_product(direct_float(*e.args[0], w), direct_float(*e.args[1], w));
    case Expr::Kind::Inverse: {
      FloatMatrix m = direct_float(*e.args[0], w), out(w);
      for (std::int64_t r = w.lo(); r < w.hi(); ++r)
        for (std::int64_t c = w.lo(); c < w.hi(); ++c) {
          auto v = m.at(r, c);
          if (v != std::complex<double>()) out.set(c, r, 1.0 / v);
        }
      return out;
    }
    case Expr::Kind::Abs:
    case Expr::Kind::Phase: {
      FloatMatrix m = direct_float(*e.args[0], w), out(w);
      for (std::int64_t c = w.lo(); c < w.hi(); ++c) {
        double s = 0;
        for (std::int64_t r = w.lo(); r < w.hi(); ++r) s += std::norm(m.at(r, c));
        double norm = std::sqrt(s);
        if (e.kind == Expr::Kind::Abs) {
          out.set(c, c, norm);
        } else if (norm > 0) {
          for (std::int64_t r = w.lo(); r < w.hi(); ++r) out.set(r, c, m.at(r, c) / norm);
        }
      }
      return out;
    }
  }
  return FloatMatrix(w);
}

// ---- comparisons --------------------------------------------------------------------------

namespace {

std::optional<EntryMismatch> first_exact_mismatch(const ExactMatrix& expected, const ExactMatrix& got, const Window& in) {
  for (std::int64_t r = in.lo(); r < in.hi(); ++r)
    for (std::int64_t c = in.lo(); c < in.hi(); ++c) {
      RadicalComplex x = expected.at(r, c), y = got.at(r, c);
      if (!(x == y)) return EntryMismatch{r, c, exact_text(x), exact_text(y)};
    }
  return std::nullopt;
}

std::optional<EntryMismatch> first_float_mismatch(const FloatMatrix& expected, const FloatMatrix& got, const Window& in) {
  for (std::int64_t r = in.lo(); r < in.hi(); ++r)
    for (std::int64_t c = in.lo(); c < in.hi(); ++c) {
      auto x = expected.at(r, c), y = got.at(r, c);
      double d = std::abs(x - y);
      if (!(d <= 1e-9 * std::max(1.0, std::abs(x)))) return EntryMismatch{r, c, float_text(x), float_text(y)};
    }
  return std::nullopt;
}

void check_window(Space space, std::int64_t n, MatrixMode mode, std::int64_t margin) {
  std::int64_t limit = mode == MatrixMode::Exact ? kMaxExactN : kMaxFloatN;
  if (n < 1 || n > limit)
    throw ModelError("window size " + std::to_string(n) + " outside 1.." + std::to_string(limit) +
                     (mode == MatrixMode::Exact ? " for exact mode" : " for float mode"));
  (void)space;
  if (margin >= n) throw ModelError("window " + std::to_string(n) + " too small for total shift " + std::to_string(margin));
}

}  // namespace

TruncatedMatrix matrix_of(const Expr& e, Space space, std::int64_t n, MatrixMode mode) {
  std::int64_t margin = shift_margin(e);
  check_window(space, n, mode, margin);
  TruncatedMatrix out;
  out.window = Window{space, n};
  out.mode = mode;
  out.source = e.str();
  out.margin = margin;
  Environment env;
  env.space = space;
  MonomialOperator symbolic = evaluate(e, env);
  Window in = out.window.interior(margin);
  if (mode == MatrixMode::Exact) {
    out.exact = direct_exact(e, out.window);
    out.symbolic_mismatch = first_exact_mismatch(out.exact, exact_matrix(symbolic, out.window), in);
  } else {
    out.dense = direct_float(e, out.window);
    out.symbolic_mismatch = first_float_mismatch(out.dense, float_matrix(symbolic, out.window), in);
  }
  return out;
}

bool within_tolerance(double residual, double scale) { return residual <= 1e-9 * std::max(1.0, scale); }

Residuals residuals(const MonomialOperator& t, std::int64_t n) {
  std::int64_t k = t.shift() < 0 ? -t.shift() : t.shift();
  check_window(t.space(), n, MatrixMode::Float, 2 * k);
  Window w{t.space(), n};
  FloatMatrix m = float_matrix(t, w);
  FloatMatrix ms = float_adjoint(m);
  FloatMatrix tst = float_product(ms, m), tts = float_product(m, ms);
  auto pd = polar(t);
  FloatMatrix wt = float_product(float_matrix(pd.partial_isometry, w), float_matrix(pd.modulus, w));
  Residuals r;
  r.normality = max_abs_diff(tst, tts, w.interior(2 * k));
  r.selfadjointness = max_abs_diff(m, ms, w.interior(k));
  r.polar = max_abs_diff(m, wt, w.interior(k));
  r.scale = std::max(max_abs(tst, w.interior(2 * k)), max_abs(m, w.interior(k)));
  return r;
}

std::string_view to_string(CheckedOperation op) {
  switch (op) {
    case CheckedOperation::Adjoint: return "adjoint";
    case CheckedOperation::Compose: return "compose";
    case CheckedOperation::Closure: return "closure";
    case CheckedOperation::Polar: return "polar";
  }
  return "?";
}

namespace {

std::int64_t abs_shift(const MonomialOperator& t) { return t.shift() < 0 ? -t.shift() : t.shift(); }

// Column norms (for |T|) or normalised columns (for W) of a matrix.
ExactMatrix exact_columns(const ExactMatrix& m, bool modulus) {
  ExactMatrix out(m.window());
  std::map<std::int64_t, Rational> norms;
  for (const auto& [rc, v] : m.nonzeros()) norms[rc.second] += v.norm_squared();
  if (modulus) {
    for (const auto& [c, s] : norms) out.set(c, c, RadicalComplex::sqrt_of(s));
  } else {
    for (const auto& [rc, v] : m.nonzeros()) out.set(rc.first, rc.second, v * RadicalComplex::sqrt_of(norms[rc.second]).inverse());
  }
  return out;
}

FloatMatrix float_columns(const FloatMatrix& m, bool modulus) {
  const Window& w = m.window();
  FloatMatrix out(w);
  for (std::int64_t c = w.lo(); c < w.hi(); ++c) {
    double s = 0;
    for (std::int64_t r = w.lo(); r < w.hi(); ++r) s += std::norm(m.at(r, c));
    double norm = std::sqrt(s);
    if (modulus)
      out.set(c, c, norm);
    else if (norm > 0)
      for (std::int64_t r = w.lo(); r < w.hi(); ++r) out.set(r, c, m.at(r, c) / norm);
  }
  return out;
}

}  // namespace

CrosscheckResult crosscheck(CheckedOperation op, std::span<const MonomialOperator> inputs,
                            std::span<const MonomialOperator> result, std::int64_t n, MatrixMode mode) {
  std::size_t need_in = op == CheckedOperation::Compose ? 2 : 1;
  std::size_t need_out = op == CheckedOperation::Polar ? 2 : 1;
  if (inputs.size() != need_in || result.size() != need_out)
    throw std::invalid_argument("crosscheck " + std::string(to_string(op)) + ": wrong number of operators");
  std::int64_t margin = 0;
  for (const auto& t : inputs) margin += abs_shift(t);
  check_window(inputs[0].space(), n, mode, margin);
  Window w{inputs[0].space(), n};
  Window in = w.interior(margin);
  CrosscheckResult out;
  auto record = [&](std::optional<EntryMismatch> m) {
    if (m && out.pass) {
      out.pass = false;
      out.first_mismatch = std::move(m);
    }
  };
  if (mode == MatrixMode::Exact) {
    ExactMatrix t = exact_matrix(inputs[0], w);
    switch (op) {
      case CheckedOperation::Adjoint: record(first_exact_mismatch(exact_adjoint(t), exact_matrix(result[0], w), in)); break;
      case CheckedOperation::Compose:
        record(first_exact_mismatch(exact_product(t, exact_matrix(inputs[1], w)), exact_matrix(result[0], w), in));
        break;
      case CheckedOperation::Closure: record(first_exact_mismatch(t, exact_matrix(result[0], w), in)); break;
      case CheckedOperation::Polar: {
        ExactMatrix wm = exact_matrix(result[0], w), am = exact_matrix(result[1], w);
        record(first_exact_mismatch(t, exact_product(wm, am), in));
        record(first_exact_mismatch(exact_columns(t, true), am, in));
        record(first_exact_mismatch(exact_columns(t, false), wm, in));
        break;
      }
    }
  } else {
    FloatMatrix t = float_matrix(inputs[0], w);
    switch (op) {
      case CheckedOperation::Adjoint: record(first_float_mismatch(float_adjoint(t), float_matrix(result[0], w), in)); break;
      case CheckedOperation::Compose:
        record(first_float_mismatch(float_product(t, float_matrix(inputs[1], w)), float_matrix(result[0], w), in));
        break;
      case CheckedOperation::Closure: record(first_float_mismatch(t, float_matrix(result[0], w), in)); break;
      case CheckedOperation::Polar: {
        FloatMatrix wm = float_matrix(result[0], w), am = float_matrix(result[1], w);
        record(first_float_mismatch(t, float_product(wm, am), in));
        record(first_float_mismatch(float_columns(t, true), am, in));
        record(first_float_mismatch(float_columns(t, false), wm, in));
        break;
      }
    }
  }
  return out;
}

SvdPolarDeviation svd_polar_deviation(const MonomialOperator& t, std::int64_t n) {
  std::int64_t k = abs_shift(t);
  check_window(t.space(), n, MatrixMode::Float, k);
  Window w{t.space(), n};
  const auto size = static_cast<Eigen::Index>(w.size());
  FloatMatrix m = float_matrix(t, w);
  Eigen::MatrixXcd dense(size, size);
  for (std::int64_t r = w.lo(); r < w.hi(); ++r)
    for (std::int64_t c = w.lo(); c < w.hi(); ++c)
      dense(static_cast<Eigen::Index>(w.offset(r)), static_cast<Eigen::Index>(w.offset(c))) = m.at(r, c);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXcd& u = svd.matrixU();
  const Eigen::MatrixXcd& v = svd.matrixV();
  Eigen::MatrixXcd modulus = v * svd.singularValues().cast<std::complex<double>>().asDiagonal() * v.adjoint();
  Eigen::MatrixXcd isometry = u * v.adjoint();
  auto pd = polar(t);
  FloatMatrix sym_mod = float_matrix(pd.modulus, w), sym_w = float_matrix(pd.partial_isometry, w);
  Window in = w.interior(k);
  SvdPolarDeviation out;
  for (std::int64_t r = in.lo(); r < in.hi(); ++r)
    for (std::int64_t c = in.lo(); c < in.hi(); ++c) {
      auto ri = static_cast<Eigen::Index>(w.offset(r)), ci = static_cast<Eigen::Index>(w.offset(c));
      out.modulus = std::max(out.modulus, std::abs(modulus(ri, ci) - sym_mod.at(r, c)));
      // W is only determined off the kernel of |T|.
      if (sym_mod.at(c, c) != std::complex<double>())
        out.partial_isometry = std::max(out.partial_isometry, std::abs(isometry(ri, ci) - sym_w.at(r, c)));
    }
  return out;
}

}  // namespace opcalc
