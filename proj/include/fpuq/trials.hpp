#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fpuq/edf.hpp"
#include "fpuq/rng.hpp"

namespace fpuq {

struct TrialPlan {
  std::int64_t n_trials = 1;
  std::uint64_t base_seed = 0;
  double target_confidence = 0.99;
  unsigned jobs = 0;  // 0 = hardware concurrency
  void validate() const;
};

/// One trial's result: a primary value (typically a measured error), an optional
/// secondary channel (e.g. the model-run error), and whether the attached bound held.
struct TrialOutcome {
  double value = 0.0;
  std::optional<double> aux;
  bool within_bound = true;
};

/// Fixed statistical acceptance slack, 3*sqrt(p(1-p)/T). All experiment tests use
/// this one definition.
double acceptance_slack(double p, std::int64_t trials);

struct TrialSummary {
  double coverage = 0.0;   // fraction of trials with within_bound
  double max_value = 0.0;
  Edf values;
  std::optional<Edf> aux_values;
  std::vector<std::pair<std::int64_t, std::string>> failures;  // (trial index, what)
};

/// Runs experiment(trial_index, rng) for each trial with rng = substream
/// (base_seed, trial_index). Trials may run concurrently; outcomes are stored by
/// index and reduced in order, so summaries are identical for any job count.
/// Per-trial exceptions are recorded with their indices and excluded from the
/// statistics.
TrialSummary run_trials(const TrialPlan& plan,
                        const std::function<TrialOutcome(std::int64_t, CounterRng&)>& experiment);

}  // namespace fpuq
