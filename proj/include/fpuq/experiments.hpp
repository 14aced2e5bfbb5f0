#pragma once

#include <cstdint>
#include <string>

#include "fpuq/bvp.hpp"
#include "fpuq/edf.hpp"
#include "fpuq/kernels.hpp"
#include "fpuq/trials.hpp"

namespace fpuq {

enum class DataDist { uniform, normal };

/// Draws from dist until the value is representable in fmt (no subnormal range in the
/// emulator, so the sliver of mass below the normalized floor is redrawn; for fp16 and
/// U[-1,1] that is ~6e-5 of the mass). Deterministic per rng state.
double sample_representable(CounterRng& rng, DataDist dist, const FloatFormat& fmt);

std::vector<double> sample_vector(CounterRng& rng, DataDist dist, const FloatFormat& fmt,
                                  std::size_t n);

struct DotExperimentConfig {
  std::size_t n = 2048;
  FloatFormat fmt = FloatFormat::fp16();
  DataDist dist = DataDist::uniform;
  double q_target = 0.99;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  CBound c_bound = CBound::paper;
  unsigned jobs = 0;
};

/// Dot-product experiment: per trial draw (a, b), measure the emulated backward error
/// and the model-run backward error on the same data. Coverage counts trials with the
/// measured error inside the variance-informed bound at the member confidence.
struct DotExperimentResult {
  TrialSummary summary;   // values: true backward error; aux: model backward error
  double member_zeta = 0.0;
  bool dbea_valid = false;
  double dbea_gamma = 0.0;
  double mmibea_gamma = 0.0;
  double vibea_gamma = 0.0;
  double edf_model_minus_true_gap = 0.0;  // max_t F_model(t) - F_true(t)
};

DotExperimentResult run_dot_experiment(const DotExperimentConfig& cfg);

/// Matrix-vector variant (square n x n); same reporting.
DotExperimentResult run_matvec_experiment(const DotExperimentConfig& cfg);

/// Appendix-style model check: EDFs of the realized |delta| against |U[-u,u]| for
/// representation rounding or a single arithmetic op on data from U[2^k, 2^(k+1)].
enum class ModelCheckOp { representation, add, mul };

struct ModelCheckResult {
  Edf true_edf;
  Edf model_edf;
  double gap = 0.0;  // max F_model - F_true; dominance holds when <= slack
};

ModelCheckResult run_model_check(ModelCheckOp op, const FloatFormat& fmt, int k,
                                 std::int64_t samples, std::uint64_t seed);

const char* to_string(ModelCheckOp op);

}  // namespace fpuq
