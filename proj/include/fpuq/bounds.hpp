#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fpuq/errors.hpp"

namespace fpuq {

enum class BoundMethod { dbea, mibea_original, mmibea, vibea };

/// Choice of the bound c on |log(1+delta)| for the uniform model. The paper prints
/// c = log(1+u); the sup over [-u, u] is actually -log(1-u). Default follows the
/// paper; `symmetric` is the safe alternative.
enum class CBound { paper, symmetric };

/// Hoeffding tail exponent convention for the original mean-informed probability.
/// The printed form is linear in lambda; the closed-form lambda-dagger algebra needs
/// the quadratic form. Both are exposed; see hoeffding_probability.
enum class HoeffdingExponent { linear, quadratic };

const char* to_string(BoundMethod m);

struct BoundSpec {
  BoundMethod method = BoundMethod::vibea;
  double confidence_zeta = 0.99;
  double unit_roundoff_u = 0.0;
  std::int64_t n_ops = 0;
  std::optional<double> lambda;  // MIBEA_original only
  void validate() const;
};

/// Statistics of log(1+delta) for delta ~ U[-u, u].
struct LogErrorStats {
  double c = 0.0;        // bound on |log(1+delta)|
  double mu = 0.0;       // E[log(1+delta)], negative for the uniform model
  double sigma_sq = 0.0; // Var[log(1+delta)]
  double kappa = 0.0;    // u^2 - 1
};

struct BoundResult {
  double gamma = 0.0;
  double holds_with_prob_at_least = 1.0;
  std::optional<double> t_value;
};

/// Deterministic constant gamma_n = n*u / (1 - n*u); requires n*u < 1.
BoundResult gamma_dbea(double u, std::int64_t n);

/// Whether the deterministic bound exists at all (n*u < 1).
bool dbea_valid(double u, std::int64_t n);

/// Original lambda-parameterized mean-informed constant,
/// exp(lambda*sqrt(n)*u + n*u^2/(1-u)) - 1, with the printed tail probability.
BoundResult gamma_mibea_original(double u, std::int64_t n, double lambda,
                                 HoeffdingExponent exponent = HoeffdingExponent::linear);

/// 1 - 2*exp(-E*(1-u)^2/2) with E = lambda (printed) or lambda^2 (round-trip form),
/// clamped below at zero.
double hoeffding_probability(double lambda, double u, HoeffdingExponent exponent);

/// Closed-form (c, mu, sigma^2) of log(1+delta) under the uniform model. Evaluated
/// through series for small u; the printed closed forms cancel catastrophically in
/// double there (that is measurable in the published critical-size table, see the
/// acceptance suite notes).
LogErrorStats log_error_stats_uniform(double u, CBound c_bound = CBound::paper);

/// Variance-informed constant: gamma = expm1(t+ + n|mu|) where t+ is the positive
/// root of the Bernstein tail quadratic at confidence zeta.
BoundResult gamma_vibea(double zeta, double u, std::int64_t n, const LogErrorStats& stats);
BoundResult gamma_vibea(double zeta, double u, std::int64_t n, CBound c_bound = CBound::paper);

/// Modified mean-informed constant: gamma = expm1(c*sqrt(-2n log((1-zeta)/2)) +
/// n*u^2/(1-u)) with c = u/(1-u).
BoundResult gamma_mmibea(double zeta, double u, std::int64_t n);

/// lambda that makes the original mean-informed bound coincide with the modified one.
double lambda_dagger(double zeta, double u);

/// Union-bound confidence Q(zeta, k) = 1 - k(1-zeta). May be negative; callers clamp
/// for display only.
double union_confidence(double zeta, std::int64_t k);

/// Inverse of union_confidence in zeta: the per-member confidence that makes k events
/// jointly hold with probability >= target.
double solve_member_confidence(double target, std::int64_t k);

struct CriticalSizes {
  std::int64_t n_c = 0;  // vibea < mmibea for all n >= n_c
  std::int64_t n_d = 0;  // vibea < dbea for all n_d <= n < 1/u
};

/// Verified-window scan (window 1000, cap 1e7) for the critical operation counts.
CriticalSizes critical_sizes(double zeta, double u, CBound c_bound = CBound::paper);

/// Fraction of trials with |prod (1+delta_i)^{rho_i} - 1| <= gamma, delta ~ U[-u,u]
/// i.i.d. and random signs, accumulated in reference precision. Deterministic per
/// seed; trials are split over `jobs` threads with per-trial substreams.
double coverage_oracle(const BoundResult& result, double u, std::int64_t n,
                       std::int64_t trials, std::uint64_t seed, unsigned jobs = 0);

/// Batched form: one pass over the trial products per u, evaluated against several
/// gammas at once. Bit-identical to repeated coverage_oracle calls with the same seed.
std::vector<double> coverage_oracle_multi(std::span<const double> gammas, double u,
                                          std::int64_t n, std::int64_t trials,
                                          std::uint64_t seed, unsigned jobs = 0);

/// Combined constant for the tridiagonal solve, 2*g1 + g2 + g1*g2 (the theorem form)
/// or g1 + g2 + g1*g2 (the form printed alongside the deterministic variant).
double gamma_ls_combined(double g1, double g2, bool doubled_first_term);

}  // namespace fpuq
