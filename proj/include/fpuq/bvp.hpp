#pragma once

#include <cstdint>
#include <vector>

#include "fpuq/tridiagonal.hpp"

namespace fpuq {

/// Two-point boundary value problem ((1 + t1 x) u')' = -50 t2^2 on [0,1], u(0)=u(1)=0,
/// discretized with M uniform intervals by second-order central differences.
struct BvpParams {
  double theta1 = 1.0;  // sampled as U[0,1] + 0.1
  double theta2 = 1.0;  // sampled as U[0,1] + 1
  std::int64_t M = 16;  // intervals; power of two keeps dx exact

  [[nodiscard]] double dx() const { return 1.0 / static_cast<double>(M); }
  void validate() const;
};

/// Closed-form solution and derivatives (theta1 = 0 falls back to the quadratic limit).
double bvp_solution(double x, double theta1, double theta2);
double bvp_solution_d1(double x, double theta1, double theta2);
double bvp_solution_d2(double x, double theta1, double theta2);
double bvp_solution_d3(double x, double theta1, double theta2);

/// p(t1, t2) = integral of u over [0,1] in closed form. Requires theta1 > 0.
double analytic_p(double theta1, double theta2);

struct BvpAssembly {
  TriDiagonal A;          // order M-1
  std::vector<double> b;  // -50 t2^2 dx^2
};

BvpAssembly assemble(const BvpParams& params);

/// Truncation intervals [t_inf, t_sup] per node from Taylor-Lagrange remainders
/// (u''' extremes per cell via dense sampling with outward padding) and the resulting
/// discretization-error interval eps_d = Ru - u_tilde in [eps_lo, eps_hi], obtained
/// from two reference-precision solves.
struct DiscretizationEnclosure {
  std::vector<double> t_sup, t_inf;
  std::vector<double> eps_lo, eps_hi;

  [[nodiscard]] double max_width() const;
  [[nodiscard]] double p_width(double dx) const;  // dx * sum of node widths
};

DiscretizationEnclosure discretization_enclosure(const BvpParams& params, int pts_per_cell = 64,
                                                 double padding = 0.01);

/// Emulated left-to-right multiply-accumulate p_hat = sum u_hat_i * dx. The attached
/// rounding term is dx * gamma_{M-1} * ||u_hat||_1 at the given member confidence
/// (summation only; the solve contribution composes to a union count of 8M-14).
struct RiemannResult {
  double p_hat = 0.0;
  double rounding_bound = 0.0;
  std::int64_t confidence_count = 0;
};

RiemannResult riemann_integrate(std::span<const double> u_hat, double dx,
                                const FloatFormat& fmt, double member_zeta,
                                CBound c_bound = CBound::paper);

/// One deterministic end-to-end run at fixed parameters: assemble, round inputs into
/// fmt, emulated Thomas solve, emulated Riemann sum, composed rounding bounds at the
/// member confidence solved from Q(zeta, 8M-14) = q_target, plus the discretization
/// enclosure and the measured rounding error against the reference pipeline on the
/// same rounded inputs.
struct BvpRunReport {
  BvpParams params;
  FloatFormat fmt;
  double q_target = 0.0;
  double member_zeta = 0.0;
  std::int64_t union_count = 0;  // 8M - 14

  double p_hat = 0.0;       // emulated pipeline
  double p_ref = 0.0;       // reference pipeline, same rounded inputs
  double p_unrounded = 0.0; // reference pipeline, unrounded assembly
  double p_analytic = 0.0;

  double rounding_measured = 0.0;  // |p_hat - p_ref|
  bool dbea_valid = false;
  double rounding_bound_dbea = 0.0;
  double rounding_bound_mmibea = 0.0;
  double rounding_bound_vibea = 0.0;

  double enclosure_p_width = 0.0;
  double enclosure_max_width = 0.0;

  ThomasRun thomas;
};

BvpRunReport bvp_run(const BvpParams& params, const FloatFormat& fmt, double q_target = 0.99,
                     CBound c_bound = CBound::paper);

/// Named substream kinds so parameter draws stay fixed while other draws vary.
enum class StreamKind : std::uint64_t { parameters = 1, model_errors = 2, data = 3 };

std::uint64_t stream_id(StreamKind kind, std::uint64_t index);

/// Monte-Carlo estimate of E[P]: samples (t1, t2), solves the BVP per sample in fmt,
/// and averages the emulated p_hat. q_ref averages the closed-form p over the same
/// draws. Per-sample pivot failures are recorded and skipped.
struct MonteCarloResult {
  double q_hat = 0.0;
  double q_ref = 0.0;
  double abs_err_vs_reference = 0.0;  // |q_hat - q_ref|
  double sampling_sigma = 0.0;        // sigma_hat / sqrt(n) of the p_hat draws
  std::int64_t skipped = 0;
  struct Row {
    double theta1, theta2, p_hat, p_ref;
  };
  std::vector<Row> rows;
};

MonteCarloResult monte_carlo_q(std::int64_t M, std::int64_t n_samples, const FloatFormat& fmt,
                               std::uint64_t seed, double q_target = 0.99,
                               CBound c_bound = CBound::paper);

/// Plain Monte-Carlo estimate of E[P] from the closed form alone.
double analytic_q_estimate(std::int64_t n_samples, std::uint64_t seed);

}  // namespace fpuq
