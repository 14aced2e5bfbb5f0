#include "fpuq/kernels.hpp"

#include <cmath>

#include "fpuq/errors.hpp"

namespace fpuq {
namespace {

// Attach the three per-method constants at the member confidence solved from the
// union count. DBEA is flagged invalid instead of attached once n*u >= 1.
void attach_bounds(KernelRun& run, std::int64_t gamma_n, std::int64_t union_k,
                   double q_target, CBound c_bound) {
  const double u = run.fmt.unit_roundoff();
  run.op_count_gamma = gamma_n;
  run.union_count = union_k;
  run.q_target = q_target;
  run.member_zeta = solve_member_confidence(q_target, union_k);

  if (dbea_valid(u, gamma_n)) {
    run.dbea = {true, gamma_dbea(u, gamma_n).gamma, 1.0};
  } else {
    run.dbea = {false, 0.0, 0.0};
  }
  run.mmibea = {true, gamma_mmibea(run.member_zeta, u, gamma_n).gamma,
                union_confidence(run.member_zeta, union_k)};
  run.vibea = {true, gamma_vibea(run.member_zeta, u, gamma_n, c_bound).gamma,
               union_confidence(run.member_zeta, union_k)};
}

double dot_emulated_value(std::span<const double> a, std::span<const double> b,
                          const FloatFormat& fmt) {
  double s = emulated_op(a[0], b[0], Op::mul, fmt);  // add to s0 = 0 is exact
  for (std::size_t i = 1; i < a.size(); ++i) {
    const double p = emulated_op(a[i], b[i], Op::mul, fmt);
    s = emulated_op(s, p, Op::add, fmt);
  }
  return s;
}

double dot_reference(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double abs_dot_reference(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i]) * std::abs(b[i]);
  return s;
}

}  // namespace

const BoundEntry& KernelRun::entry(BoundMethod m) const {
  switch (m) {
    case BoundMethod::dbea: return dbea;
    case BoundMethod::mmibea: return mmibea;
    case BoundMethod::vibea: return vibea;
    default: throw ConfigError("KernelRun: no entry for this method");
  }
}

std::pair<double, KernelRun> dot_emulated(std::span<const double> a,
                                          std::span<const double> b,
                                          const FloatFormat& fmt, double q_target,
                                          CBound c_bound) {
  if (a.empty()) throw EmptyInput("dot_emulated: empty input");
  if (a.size() != b.size()) throw ShapeMismatch("dot_emulated: length mismatch");
  const auto n = static_cast<std::int64_t>(a.size());

  const double y_hat = dot_emulated_value(a, b, fmt);
  const double y = dot_reference(a, b);
  const double denom = abs_dot_reference(a, b);

  KernelRun run;
  run.kernel = KernelKind::dot;
  run.fmt = fmt;
  run.measured_bwd = denom == 0.0 ? 0.0 : std::abs(y_hat - y) / denom;
  run.measured_fwd = y == 0.0 ? 0.0 : std::abs(y_hat - y) / std::abs(y);
  if (y != 0.0) run.forward_condition = denom / std::abs(y);
  attach_bounds(run, n, n, q_target, c_bound);
  return {y_hat, run};
}

double dot_model_value(std::span<const double> a, std::span<const double> b, double u,
                       CounterRng& rng) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double eta = rng.symmetric(u);
    const double prod = a[i] * b[i] * (1.0 + eta);
    if (i == 0) {
      s = prod;  // addition to zero is exact
    } else {
      const double xi = rng.symmetric(u);
      s = (s + prod) * (1.0 + xi);
    }
  }
  return s;
}

std::pair<std::vector<double>, KernelRun> matvec_emulated(const Matrix& A,
                                                          std::span<const double> x,
                                                          const FloatFormat& fmt,
                                                          double q_target, CBound c_bound) {
  if (A.rows == 0 || A.cols == 0) throw EmptyInput("matvec_emulated: empty matrix");
  if (A.cols != x.size()) throw ShapeMismatch("matvec_emulated: shape mismatch");
  const std::size_t m = A.rows;
  const std::size_t n = A.cols;

  std::vector<double> y_hat(m);
  std::vector<double> row(n);
  KernelRun run;
  run.kernel = KernelKind::matvec;
  run.fmt = fmt;
  double bwd = 0.0;
  double fwd = 0.0;
  std::int64_t excluded = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) row[j] = A.at(i, j);
    y_hat[i] = dot_emulated_value(row, x, fmt);
    const double yi = dot_reference(row, x);
    const double denom = abs_dot_reference(row, x);
    if (denom == 0.0) {
      ++excluded;
    } else {
      bwd = std::max(bwd, std::abs(y_hat[i] - yi) / denom);
    }
    if (yi != 0.0) fwd = std::max(fwd, std::abs(y_hat[i] - yi) / std::abs(yi));
  }
  run.measured_bwd = bwd;
  run.measured_fwd = fwd;
  run.excluded_rows = excluded;
  attach_bounds(run, static_cast<std::int64_t>(n),
                static_cast<std::int64_t>(m) * static_cast<std::int64_t>(n), q_target,
                c_bound);
  return {std::move(y_hat), run};
}

std::pair<Matrix, KernelRun> matmul_emulated(const Matrix& A, const Matrix& B,
                                             const FloatFormat& fmt, double q_target,
                                             CBound c_bound) {
  if (A.rows == 0 || A.cols == 0 || B.cols == 0)
    throw EmptyInput("matmul_emulated: empty matrix");
  if (A.cols != B.rows) throw ShapeMismatch("matmul_emulated: inner dimension mismatch");
  const std::size_t m = A.rows;
  const std::size_t n = A.cols;
  const std::size_t t = B.cols;

  Matrix C_hat(m, t);
  std::vector<double> row(n);
  double fwd = 0.0;
  double bwd = 0.0;
  std::int64_t excluded = 0;
  for (std::size_t j = 0; j < t; ++j) {
    std::span<const double> bj(&B.data[j * B.rows], n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < n; ++k) row[k] = A.at(i, k);
      const double yh = dot_emulated_value(row, bj, fmt);
      const double yi = dot_reference(row, bj);
      const double denom = abs_dot_reference(row, bj);
      C_hat.at(i, j) = yh;
      if (denom == 0.0) {
        ++excluded;
      } else {
        bwd = std::max(bwd, std::abs(yh - yi) / denom);
      }
      if (yi != 0.0) fwd = std::max(fwd, std::abs(yh - yi) / std::abs(yi));
    }
  }

  KernelRun run;
  run.kernel = KernelKind::matmul;
  run.fmt = fmt;
  run.measured_bwd = bwd;
  run.measured_fwd = fwd;
  run.excluded_rows = excluded;
  attach_bounds(run, static_cast<std::int64_t>(n),
                static_cast<std::int64_t>(m * n * t), q_target, c_bound);
  return {std::move(C_hat), run};
}

}  // namespace fpuq
