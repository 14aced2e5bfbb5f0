#include "fpuq/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "fpuq/parallel.hpp"
#include "fpuq/rng.hpp"

namespace fpuq {
namespace {

double log_half_tail(double zeta) {
  // log((1 - zeta)/2), negative for zeta in [0, 1)
  return std::log((1.0 - zeta) / 2.0);
}

void check_zeta(double zeta) {
  if (!(zeta >= 0.0 && zeta < 1.0)) throw DomainError("confidence zeta must lie in [0, 1)");
}

void check_u(double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("unit roundoff u must lie in (0, 1)");
}

// mu = -sum_{k>=1} u^{2k} / (2k(2k+1)); exact rearrangement of the closed form.
double mu_series(double u) {
  const double u2 = u * u;
  double term = u2;
  double sum = 0.0;
  for (int k = 1; k < 2000; ++k) {
    double add = term / (2.0 * k * (2.0 * k + 1.0));
    sum += add;
    term *= u2;
    if (add < sum * 1e-20) break;
  }
  return -sum;
}

// sigma^2 = -sum_{m>=1} u^{2m} (h_m - h_{m-1}) with
// h_m = sum_{k=0}^m 1/((2k+1)(2(m-k)+1)); rearrangement of 1 - (1-u^2)(atanh(u)/u)^2.
double sigma_sq_series(double u) {
  const double u2 = u * u;
  double sum = 0.0;
  double upow = 1.0;
  double h_prev = 1.0;
  for (int m = 1; m < 2000; ++m) {
    double h = 0.0;
    for (int k = 0; k <= m; ++k) h += 1.0 / ((2.0 * k + 1.0) * (2.0 * (m - k) + 1.0));
    upow *= u2;
    double add = upow * (h_prev - h);
    sum += add;
    h_prev = h;
    if (std::abs(add) < std::abs(sum) * 1e-20) break;
  }
  return sum;
}

}  // namespace

const char* to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::dbea: return "DBEA";
    case BoundMethod::mibea_original: return "MIBEA";
    case BoundMethod::mmibea: return "MMIBEA";
    case BoundMethod::vibea: return "VIBEA";
  }
  return "?";
}

void BoundSpec::validate() const {
  check_zeta(confidence_zeta);
  check_u(unit_roundoff_u);
  if (n_ops < 0) throw DomainError("n_ops must be >= 0");
  const bool needs_lambda = method == BoundMethod::mibea_original;
  if (needs_lambda != lambda.has_value())
    throw ConfigError("lambda must be present iff method is MIBEA_original");
  if (lambda && !(*lambda > 0.0)) throw DomainError("lambda must be > 0");
}

BoundResult gamma_dbea(double u, std::int64_t n) {
  check_u(u);
  if (n < 0) throw DomainError("n must be >= 0");
  const double nu = static_cast<double>(n) * u;
  if (nu >= 1.0) throw BoundInvalid("deterministic bound invalid: n*u >= 1");
  return {nu / (1.0 - nu), 1.0, std::nullopt};
}

bool dbea_valid(double u, std::int64_t n) {
  return static_cast<double>(n) * u < 1.0;
}

double hoeffding_probability(double lambda, double u, HoeffdingExponent exponent) {
  const double e = exponent == HoeffdingExponent::quadratic ? lambda * lambda : lambda;
  const double p = 1.0 - 2.0 * std::exp(-e * (1.0 - u) * (1.0 - u) / 2.0);
  return std::max(p, 0.0);
}

BoundResult gamma_mibea_original(double u, std::int64_t n, double lambda,
                                 HoeffdingExponent exponent) {
  check_u(u);
  if (n < 0) throw DomainError("n must be >= 0");
  if (!(lambda >= 0.0)) throw DomainError("lambda must be >= 0");
  const double nd = static_cast<double>(n);
  const double t = lambda * std::sqrt(nd) * u;
  const double gamma = std::expm1(t + nd * u * u / (1.0 - u));
  return {gamma, hoeffding_probability(lambda, u, exponent), t};
}

LogErrorStats log_error_stats_uniform(double u, CBound c_bound) {
  check_u(u);
  LogErrorStats s;
  s.kappa = u * u - 1.0;
  if (u < 0.25) {
    s.mu = mu_series(u);
    s.sigma_sq = sigma_sq_series(u);
  } else {
    // no damaging cancellation at this scale
    s.mu = (-2.0 * u + (-1.0 + u) * std::log(1.0 - u) + (1.0 + u) * std::log(1.0 + u)) /
           (2.0 * u);
    const double l1 = std::log(1.0 - u);
    const double l2 = std::log(1.0 + u);
    s.sigma_sq = (4.0 * u * u + s.kappa * (l1 * l1 - 2.0 * l1 * l2 + l2 * l2)) /
                 (4.0 * u * u);
  }
  s.c = c_bound == CBound::paper ? std::log1p(u) : -std::log1p(-u);
  return s;
}

BoundResult gamma_vibea(double zeta, double u, std::int64_t n, const LogErrorStats& stats) {
  check_zeta(zeta);
  check_u(u);
  if (n < 0) throw DomainError("n must be >= 0");
  const double L = log_half_tail(zeta);
  const double nd = static_cast<double>(n);
  const double c = stats.c;
  const double disc = c * c * L * L - 18.0 * nd * L * stats.sigma_sq;
  const double t = (-c * L + std::sqrt(disc)) / 3.0;
  const double gamma = std::expm1(t + nd * std::abs(stats.mu));
  return {gamma, zeta, t};
}

BoundResult gamma_vibea(double zeta, double u, std::int64_t n, CBound c_bound) {
  return gamma_vibea(zeta, u, n, log_error_stats_uniform(u, c_bound));
}

BoundResult gamma_mmibea(double zeta, double u, std::int64_t n) {
  check_zeta(zeta);
  check_u(u);
  if (n < 0) throw DomainError("n must be >= 0");
  const double L = log_half_tail(zeta);
  const double nd = static_cast<double>(n);
  const double c = u / (1.0 - u);
  const double t = c * std::sqrt(-2.0 * nd * L);
  const double gamma = std::expm1(t + nd * u * u / (1.0 - u));
  return {gamma, zeta, t};
}

double lambda_dagger(double zeta, double u) {
  check_zeta(zeta);
  check_u(u);
  return std::sqrt(-2.0 * log_half_tail(zeta)) / (1.0 - u);
}

double union_confidence(double zeta, std::int64_t k) {
  check_zeta(zeta);
  if (k < 0) throw DomainError("k must be >= 0");
  return 1.0 - static_cast<double>(k) * (1.0 - zeta);
}

double solve_member_confidence(double target, std::int64_t k) {
  if (!(target >= 0.0 && target < 1.0)) throw DomainError("target must lie in [0, 1)");
  if (k < 1) throw DomainError("k must be >= 1");
  const double zeta = 1.0 - (1.0 - target) / static_cast<double>(k);
  if (zeta >= 1.0) throw InfeasibleConfidence("member confidence would reach 1");
  return zeta;
}

CriticalSizes critical_sizes(double zeta, double u, CBound c_bound) {
  check_zeta(zeta);
  check_u(u);
  const LogErrorStats stats = log_error_stats_uniform(u, c_bound);
  constexpr std::int64_t kWindow = 1000;
  constexpr std::int64_t kCap = 10'000'000;

  auto vibea_lt_mmibea = [&](std::int64_t n) {
    return gamma_vibea(zeta, u, n, stats).gamma < gamma_mmibea(zeta, u, n).gamma;
  };
  // restricted to the DBEA validity region n*u < 1; vacuous beyond it
  auto vibea_lt_dbea = [&](std::int64_t n) {
    if (!dbea_valid(u, n)) return true;
    return gamma_vibea(zeta, u, n, stats).gamma < gamma_dbea(u, n).gamma;
  };

  auto scan = [&](auto&& holds) -> std::int64_t {
    for (std::int64_t n = 1; n <= kCap; ++n) {
      if (!holds(n)) continue;
      bool stable = true;
      for (std::int64_t k = 1; k <= kWindow; ++k) {
        if (!holds(n + k)) {
          stable = false;
          break;
        }
      }
      if (stable) return n;
    }
    throw ScanCapExceeded("critical_sizes: no stable crossing below 1e7");
  };

  return {scan(vibea_lt_mmibea), scan(vibea_lt_dbea)};
}

namespace {

constexpr std::uint64_t kMant53 = (std::uint64_t{1} << 53) - 1;

// |phi - 1| for one trial: phi = prod (1+delta_i)^{rho_i} accumulated as a quotient of
// two unrolled product chains in reference precision.
double trial_deviation(std::uint64_t seed, std::uint64_t stream, std::int64_t n, double u) {
  double num[4] = {1.0, 1.0, 1.0, 1.0};
  double den[4] = {1.0, 1.0, 1.0, 1.0};
  std::uint64_t ctr = 0;
  std::int64_t produced = 0;
  while (produced < n) {
    const auto blk = CounterRng::block(seed, stream, ctr++);
    for (int w = 0; w < 2 && produced < n; ++w, ++produced) {
      const std::uint64_t word = blk[static_cast<std::size_t>(w)];
      const double v = static_cast<double>(word & kMant53) * 0x1.0p-53;
      const double delta = std::fma(v, 2.0 * u, -u);
      const int slot = static_cast<int>(produced & 3);
      if (word >> 63) {
        den[slot] *= 1.0 + delta;
      } else {
        num[slot] *= 1.0 + delta;
      }
    }
  }
  const double phi = (num[0] * num[1]) * (num[2] * num[3]) /
                     ((den[0] * den[1]) * (den[2] * den[3]));
  return std::abs(phi - 1.0);
}

}  // namespace

std::vector<double> coverage_oracle_multi(std::span<const double> gammas, double u,
                                          std::int64_t n, std::int64_t trials,
                                          std::uint64_t seed, unsigned jobs) {
  check_u(u);
  if (trials < 1) throw DomainError("coverage_oracle: trials must be >= 1");
  if (n < 0) throw DomainError("coverage_oracle: n must be >= 0");
  std::vector<std::vector<std::int64_t>> counts;
  const unsigned used = parallel_for(
      static_cast<std::uint64_t>(trials), jobs,
      [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
        auto& mine = counts[worker];
        for (std::uint64_t t = begin; t < end; ++t) {
          const double dev = trial_deviation(seed, t, n, u);
          for (std::size_t g = 0; g < gammas.size(); ++g)
            if (dev <= gammas[g]) ++mine[g];
        }
      },
      [&](unsigned workers) {
        counts.assign(workers, std::vector<std::int64_t>(gammas.size(), 0));
      });
  std::vector<double> out(gammas.size(), 0.0);
  for (unsigned w = 0; w < used; ++w)
    for (std::size_t g = 0; g < gammas.size(); ++g)
      out[g] += static_cast<double>(counts[w][g]);
  for (auto& x : out) x /= static_cast<double>(trials);
  return out;
}

double coverage_oracle(const BoundResult& result, double u, std::int64_t n,
                       std::int64_t trials, std::uint64_t seed, unsigned jobs) {
  const double g[1] = {result.gamma};
  return coverage_oracle_multi(g, u, n, trials, seed, jobs)[0];
}

double gamma_ls_combined(double g1, double g2, bool doubled_first_term) {
  return (doubled_first_term ? 2.0 * g1 : g1) + g2 + g1 * g2;
}

}  // namespace fpuq
