#include "fpuq/experiments.hpp"

#include <cmath>

#include "fpuq/errors.hpp"

namespace fpuq {

double sample_representable(CounterRng& rng, DataDist dist, const FloatFormat& fmt) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double x = dist == DataDist::uniform ? rng.uniform(-1.0, 1.0) : rng.normal();
    try {
      return round_to_format(x, fmt);
    } catch (const OverflowOrUnderflow&) {
      // below the normalized floor (or, for exotic formats, above the cap): redraw
    }
  }
  throw Error("sample_representable: distribution incompatible with format range");
}

std::vector<double> sample_vector(CounterRng& rng, DataDist dist, const FloatFormat& fmt,
                                  std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = sample_representable(rng, dist, fmt);
  return v;
}

namespace {

DotExperimentResult run_kernel_experiment(const DotExperimentConfig& cfg, bool matvec) {
  const double u = cfg.fmt.unit_roundoff();
  const auto n = static_cast<std::int64_t>(cfg.n);
  const std::int64_t union_k = matvec ? n * n : n;
  const double zeta = solve_member_confidence(cfg.q_target, union_k);

  DotExperimentResult out;
  out.member_zeta = zeta;
  out.dbea_valid = dbea_valid(u, n);
  if (out.dbea_valid) out.dbea_gamma = gamma_dbea(u, n).gamma;
  out.mmibea_gamma = gamma_mmibea(zeta, u, n).gamma;
  out.vibea_gamma = gamma_vibea(zeta, u, n, cfg.c_bound).gamma;

  TrialPlan plan{cfg.trials, cfg.seed, cfg.q_target, cfg.jobs};
  const double bound = out.vibea_gamma;
  out.summary = run_trials(plan, [&](std::int64_t, CounterRng& rng) {
    TrialOutcome o;
    if (!matvec) {
      const auto a = sample_vector(rng, cfg.dist, cfg.fmt, cfg.n);
      const auto b = sample_vector(rng, cfg.dist, cfg.fmt, cfg.n);
      const auto [y_hat, run] = dot_emulated(a, b, cfg.fmt, cfg.q_target, cfg.c_bound);
      o.value = run.measured_bwd;
      // model run on the same data, fresh deltas from the trial stream
      double y = 0.0, denom = 0.0;
      for (std::size_t i = 0; i < cfg.n; ++i) {
        y += a[i] * b[i];
        denom += std::abs(a[i]) * std::abs(b[i]);
      }
      const double y_model = dot_model_value(a, b, u, rng);
      o.aux = denom == 0.0 ? 0.0 : std::abs(y_model - y) / denom;
    } else {
      Matrix A(cfg.n, cfg.n);
      for (auto& v : A.data) v = sample_representable(rng, cfg.dist, cfg.fmt);
      const auto x = sample_vector(rng, cfg.dist, cfg.fmt, cfg.n);
      const auto [y_hat, run] = matvec_emulated(A, x, cfg.fmt, cfg.q_target, cfg.c_bound);
      o.value = run.measured_bwd;
      // model matvec: componentwise Oettli-Prager of per-row model dots
      std::vector<double> row(cfg.n);
      double worst = 0.0;
      for (std::size_t i = 0; i < cfg.n; ++i) {
        for (std::size_t j = 0; j < cfg.n; ++j) row[j] = A.at(i, j);
        double y = 0.0, denom = 0.0;
        for (std::size_t j = 0; j < cfg.n; ++j) {
          y += row[j] * x[j];
          denom += std::abs(row[j]) * std::abs(x[j]);
        }
        const double ym = dot_model_value(row, x, u, rng);
        if (denom != 0.0) worst = std::max(worst, std::abs(ym - y) / denom);
      }
      o.aux = worst;
    }
    o.within_bound = o.value <= bound;
    return o;
  });
  if (out.summary.aux_values)
    out.edf_model_minus_true_gap = edf_max_gap(*out.summary.aux_values, out.summary.values);
  return out;
}

}  // namespace

DotExperimentResult run_dot_experiment(const DotExperimentConfig& cfg) {
  return run_kernel_experiment(cfg, false);
}

DotExperimentResult run_matvec_experiment(const DotExperimentConfig& cfg) {
  return run_kernel_experiment(cfg, true);
}

const char* to_string(ModelCheckOp op) {
  switch (op) {
    case ModelCheckOp::representation: return "representation";
    case ModelCheckOp::add: return "add";
    case ModelCheckOp::mul: return "mul";
  }
  return "?";
}

ModelCheckResult run_model_check(ModelCheckOp op, const FloatFormat& fmt, int k,
                                 std::int64_t samples, std::uint64_t seed) {
  const double u = fmt.unit_roundoff();
  const double lo = std::ldexp(1.0, k);
  const double hi = std::ldexp(1.0, k + 1);
  std::vector<double> true_err, model_err;
  true_err.reserve(static_cast<std::size_t>(samples));
  model_err.reserve(static_cast<std::size_t>(samples));
  CounterRng data_rng(seed, stream_id(StreamKind::data, 0));
  CounterRng model_rng(seed, stream_id(StreamKind::model_errors, 0));
  for (std::int64_t i = 0; i < samples; ++i) {
    double exact = 0.0, computed = 0.0;
    switch (op) {
      case ModelCheckOp::representation: {
        exact = data_rng.uniform(lo, hi);
        computed = round_to_format(exact, fmt);
        break;
      }
      case ModelCheckOp::add: {
        const double a = round_to_format(data_rng.uniform(lo, hi), fmt);
        const double b = round_to_format(data_rng.uniform(lo, hi), fmt);
        exact = a + b;
        computed = emulated_op(a, b, Op::add, fmt);
        break;
      }
      case ModelCheckOp::mul: {
        const double a = round_to_format(data_rng.uniform(lo, hi), fmt);
        const double b = round_to_format(data_rng.uniform(lo, hi), fmt);
        exact = a * b;
        computed = emulated_op(a, b, Op::mul, fmt);
        break;
      }
    }
    true_err.push_back(std::abs(realized_delta(exact, computed)));
    model_err.push_back(std::abs(model_rng.symmetric(u)));
  }
  ModelCheckResult out{Edf::build(true_err), Edf::build(model_err), 0.0};
  out.gap = edf_max_gap(out.model_edf, out.true_edf);
  return out;
}

}  // namespace fpuq
