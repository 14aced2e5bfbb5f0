#include "fpuq/bvp.hpp"

#include <algorithm>
#include <cmath>

#include "fpuq/errors.hpp"

namespace fpuq {

void BvpParams::validate() const {
  if (!(theta1 >= 0.0)) throw DomainError("BvpParams: theta1 must be >= 0");
  if (!(theta2 > 0.0)) throw DomainError("BvpParams: theta2 must be > 0");
  if (M < 2) throw DomainError("BvpParams: M must be >= 2");
}

double bvp_solution(double x, double theta1, double theta2) {
  const double s = 50.0 * theta2 * theta2;
  if (theta1 == 0.0) return 0.5 * s * x * (1.0 - x);
  const double L = std::log1p(theta1);
  return (s / theta1) * (std::log1p(theta1 * x) / L - x);
}

double bvp_solution_d1(double x, double theta1, double theta2) {
  const double s = 50.0 * theta2 * theta2;
  if (theta1 == 0.0) return 0.5 * s * (1.0 - 2.0 * x);
  const double L = std::log1p(theta1);
  return (s / theta1) * (theta1 / ((1.0 + theta1 * x) * L) - 1.0);
}

double bvp_solution_d2(double x, double theta1, double theta2) {
  const double s = 50.0 * theta2 * theta2;
  if (theta1 == 0.0) return -s;
  const double L = std::log1p(theta1);
  const double w = 1.0 + theta1 * x;
  return -s * theta1 / (w * w * L);
}

double bvp_solution_d3(double x, double theta1, double theta2) {
  const double s = 50.0 * theta2 * theta2;
  if (theta1 == 0.0) return 0.0;
  const double L = std::log1p(theta1);
  const double w = 1.0 + theta1 * x;
  return 2.0 * s * theta1 * theta1 / (w * w * w * L);
}

double analytic_p(double theta1, double theta2) {
  if (!(theta1 > 0.0)) throw DomainError("analytic_p: theta1 must be > 0");
  const double L = std::log1p(theta1);
  return 25.0 * theta2 * theta2 * (-2.0 * theta1 + (2.0 + theta1) * L) /
         (theta1 * theta1 * L);
}

BvpAssembly assemble(const BvpParams& params) {
  params.validate();
  const std::int64_t M = params.M;
  const std::size_t n = static_cast<std::size_t>(M - 1);
  const double r = params.theta1 / static_cast<double>(M);
  const double dx = params.dx();

  BvpAssembly out;
  out.A.sub.resize(n - 1);
  out.A.diag.resize(n);
  out.A.sup.resize(n - 1);
  out.b.assign(n, -50.0 * params.theta2 * params.theta2 * dx * dx);
  for (std::size_t k = 0; k < n; ++k) {
    const double i = static_cast<double>(k + 1);
    out.A.diag[k] = -2.0 - 2.0 * r * i;
    if (k + 1 < n) out.A.sup[k] = 1.0 + r * (i + 0.5);
    if (k > 0) out.A.sub[k - 1] = 1.0 + r * (i - 0.5);
  }
  return out;
}

double DiscretizationEnclosure::max_width() const {
  double w = 0.0;
  for (std::size_t i = 0; i < eps_lo.size(); ++i) w = std::max(w, eps_hi[i] - eps_lo[i]);
  return w;
}

double DiscretizationEnclosure::p_width(double dx) const {
  double s = 0.0;
  for (std::size_t i = 0; i < eps_lo.size(); ++i) s += eps_hi[i] - eps_lo[i];
  return s * dx;
}

namespace {

struct Range {
  double lo, hi;
};

Range d3_range(double a, double b, double t1, double t2, int pts, double padding) {
  double lo = bvp_solution_d3(a, t1, t2);
  double hi = lo;
  for (int k = 1; k < pts; ++k) {
    const double x = a + (b - a) * static_cast<double>(k) / static_cast<double>(pts - 1);
    const double v = bvp_solution_d3(x, t1, t2);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double pad = padding * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

DiscretizationEnclosure discretization_enclosure(const BvpParams& params, int pts_per_cell,
                                                 double padding) {
  params.validate();
  const std::int64_t M = params.M;
  const double t1 = params.theta1;
  const double t2 = params.theta2;
  const double dx = params.dx();
  const double r = t1 / static_cast<double>(M);
  const std::size_t n = static_cast<std::size_t>(M - 1);
  const double cube = dx * dx * dx / 6.0;

  DiscretizationEnclosure out;
  out.t_sup.resize(n);
  out.t_inf.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double i = static_cast<double>(k + 1);
    const double xi = i * dx;
    const double alpha = 1.0 + r * (i - 0.5);
    const double beta = -2.0 - 2.0 * r * i;
    const double nu = 1.0 + r * (i + 0.5);

    const double ui = bvp_solution(xi, t1, t2);
    const double d1 = bvp_solution_d1(xi, t1, t2);
    const double d2 = bvp_solution_d2(xi, t1, t2);
    const double base_m = ui - dx * d1 + 0.5 * dx * dx * d2;
    const double base_p = ui + dx * d1 + 0.5 * dx * dx * d2;

    const Range rm = d3_range(xi - dx, xi, t1, t2, pts_per_cell, padding);
    const Range rp = d3_range(xi, xi + dx, t1, t2, pts_per_cell, padding);
    const double um_lo = base_m - cube * rm.hi;
    const double um_hi = base_m - cube * rm.lo;
    const double up_lo = base_p + cube * rp.lo;
    const double up_hi = base_p + cube * rp.hi;

    const double rest = beta * ui + 50.0 * t2 * t2 * dx * dx;
    // alpha, nu > 0, so interval endpoints map directly
    out.t_sup[k] = alpha * um_hi + nu * up_hi + rest;
    out.t_inf[k] = alpha * um_lo + nu * up_lo + rest;
  }

  const BvpAssembly sys = assemble(params);
  const auto x_sup = thomas_solve_reference(sys.A, out.t_sup);
  const auto x_inf = thomas_solve_reference(sys.A, out.t_inf);
  out.eps_lo.resize(n);
  out.eps_hi.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eps_lo[k] = std::min(x_sup[k], x_inf[k]);
    out.eps_hi[k] = std::max(x_sup[k], x_inf[k]);
  }
  return out;
}

RiemannResult riemann_integrate(std::span<const double> u_hat, double dx,
                                const FloatFormat& fmt, double member_zeta, CBound c_bound) {
  if (!(dx > 0.0)) throw DomainError("riemann_integrate: dx must be > 0");
  RiemannResult out;
  double norm1 = 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < u_hat.size(); ++i) {
    const double term = emulated_op(u_hat[i], dx, Op::mul, fmt);
    s = i == 0 ? term : emulated_op(s, term, Op::add, fmt);
    norm1 += std::abs(u_hat[i]);
  }
  out.p_hat = s;
  const auto count = static_cast<std::int64_t>(u_hat.size());
  out.confidence_count = count;
  if (count > 0) {
    const double u = fmt.unit_roundoff();
    out.rounding_bound =
        dx * gamma_vibea(member_zeta, u, count, c_bound).gamma * norm1;
  }
  return out;
}

BvpRunReport bvp_run(const BvpParams& params, const FloatFormat& fmt, double q_target,
                     CBound c_bound) {
  params.validate();
  fmt.validate();
  BvpRunReport rep;
  rep.params = params;
  rep.fmt = fmt;
  rep.q_target = q_target;
  const std::int64_t M = params.M;
  rep.union_count = 8 * M - 14;
  rep.member_zeta = solve_member_confidence(q_target, rep.union_count);
  const double dx = params.dx();

  const BvpAssembly sys = assemble(params);

  // inputs expressed in the compute precision
  TriDiagonal A = sys.A;
  std::vector<double> b = sys.b;
  if (!fmt.is_reference()) {
    A.sub = round_vector(A.sub, fmt);
    A.diag = round_vector(A.diag, fmt);
    A.sup = round_vector(A.sup, fmt);
    b = round_vector(b, fmt);
  }

  auto [x_hat, thomas] = thomas_solve(A, b, fmt, q_target, c_bound);
  const auto x_ref = thomas_solve_reference(A, b);
  const auto x_unrounded = thomas_solve_reference(sys.A, sys.b);

  const RiemannResult ri = riemann_integrate(x_hat, dx, fmt, rep.member_zeta, c_bound);
  rep.p_hat = ri.p_hat;
  for (std::size_t i = 0; i < x_ref.size(); ++i) rep.p_ref += x_ref[i] * dx;
  for (std::size_t i = 0; i < x_unrounded.size(); ++i) rep.p_unrounded += x_unrounded[i] * dx;
  rep.p_analytic = params.theta1 > 0.0 ? analytic_p(params.theta1, params.theta2)
                                       : 25.0 * params.theta2 * params.theta2 / 6.0;
  rep.rounding_measured = std::abs(rep.p_hat - rep.p_ref);

  // composed |p_hat - p_tilde| bound: dx * ((M-1) gamma_LS C_LS + gamma_{M-1} ||u_hat||_1)
  const double u = fmt.unit_roundoff();
  const double zeta = rep.member_zeta;
  const auto n_sum = static_cast<std::int64_t>(M - 1);
  const double norm1 = thomas.norm1_x_hat;
  const double c_abs = thomas.c_ls_abs;
  const double md = static_cast<double>(M - 1);

  rep.dbea_valid = dbea_valid(u, 2) && dbea_valid(u, n_sum);
  if (rep.dbea_valid) {
    const double gls = gamma_ls_combined(gamma_dbea(u, 1).gamma, gamma_dbea(u, 2).gamma, false);
    rep.rounding_bound_dbea =
        dx * (md * gls * c_abs + gamma_dbea(u, n_sum).gamma * norm1);
  }
  {
    const double gls =
        gamma_ls_combined(gamma_mmibea(zeta, u, 1).gamma, gamma_mmibea(zeta, u, 2).gamma, true);
    rep.rounding_bound_mmibea =
        dx * (md * gls * c_abs + gamma_mmibea(zeta, u, n_sum).gamma * norm1);
  }
  {
    const LogErrorStats stats = log_error_stats_uniform(u, c_bound);
    const double gls = gamma_ls_combined(gamma_vibea(zeta, u, 1, stats).gamma,
                                         gamma_vibea(zeta, u, 2, stats).gamma, true);
    rep.rounding_bound_vibea =
        dx * (md * gls * c_abs + gamma_vibea(zeta, u, n_sum, stats).gamma * norm1);
  }

  const DiscretizationEnclosure enc = discretization_enclosure(params);
  rep.enclosure_p_width = enc.p_width(dx);
  rep.enclosure_max_width = enc.max_width();
  rep.thomas = std::move(thomas);
  return rep;
}

std::uint64_t stream_id(StreamKind kind, std::uint64_t index) {
  return (static_cast<std::uint64_t>(kind) << 56) | index;
}

MonteCarloResult monte_carlo_q(std::int64_t M, std::int64_t n_samples, const FloatFormat& fmt,
                               std::uint64_t seed, double q_target, CBound c_bound) {
  if (n_samples < 1) throw DomainError("monte_carlo_q: n_samples must be >= 1");
  MonteCarloResult out;
  out.rows.reserve(static_cast<std::size_t>(n_samples));
  double sum = 0.0, sum_sq = 0.0, sum_ref = 0.0;
  std::int64_t kept = 0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    CounterRng rng(seed, stream_id(StreamKind::parameters, static_cast<std::uint64_t>(i)));
    BvpParams params;
    params.theta1 = rng.next_double() + 0.1;
    params.theta2 = rng.next_double() + 1.0;
    params.M = M;
    const double p_ref = analytic_p(params.theta1, params.theta2);
    try {
      const BvpRunReport rep = bvp_run(params, fmt, q_target, c_bound);
      sum += rep.p_hat;
      sum_sq += rep.p_hat * rep.p_hat;
      sum_ref += p_ref;
      ++kept;
      out.rows.push_back({params.theta1, params.theta2, rep.p_hat, p_ref});
    } catch (const ZeroPivot&) {
      ++out.skipped;
    } catch (const OverflowOrUnderflow&) {
      ++out.skipped;
    }
  }
  if (kept == 0) throw Error("monte_carlo_q: every sample failed");
  const double n = static_cast<double>(kept);
  out.q_hat = sum / n;
  out.q_ref = sum_ref / n;
  out.abs_err_vs_reference = std::abs(out.q_hat - out.q_ref);
  const double var = std::max(0.0, sum_sq / n - out.q_hat * out.q_hat);
  out.sampling_sigma = std::sqrt(var / n);
  return out;
}

double analytic_q_estimate(std::int64_t n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw DomainError("analytic_q_estimate: n_samples must be >= 1");
  double sum = 0.0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    CounterRng rng(seed, stream_id(StreamKind::parameters, static_cast<std::uint64_t>(i)));
    const double t1 = rng.next_double() + 0.1;
    const double t2 = rng.next_double() + 1.0;
    sum += analytic_p(t1, t2);
  }
  return sum / static_cast<double>(n_samples);
}

}  // namespace fpuq
