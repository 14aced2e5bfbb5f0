#include "fpuq/trials.hpp"

#include <algorithm>
#include <cmath>

#include "fpuq/errors.hpp"
#include "fpuq/parallel.hpp"

namespace fpuq {

void TrialPlan::validate() const {
  if (n_trials < 1) throw ConfigError("TrialPlan: n_trials must be >= 1");
  if (!(target_confidence >= 0.0 && target_confidence < 1.0))
    throw ConfigError("TrialPlan: target confidence must lie in [0, 1)");
}

double acceptance_slack(double p, std::int64_t trials) {
  return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

TrialSummary run_trials(const TrialPlan& plan,
                        const std::function<TrialOutcome(std::int64_t, CounterRng&)>& experiment) {
  plan.validate();
  const auto n = static_cast<std::uint64_t>(plan.n_trials);
  std::vector<TrialOutcome> outcomes(n);
  std::vector<std::string> errors(n);
  std::vector<char> failed(n, 0);

  parallel_for(n, plan.jobs, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      CounterRng rng(plan.base_seed, t);
      try {
        outcomes[t] = experiment(static_cast<std::int64_t>(t), rng);
      } catch (const std::exception& e) {
        failed[t] = 1;
        errors[t] = e.what();
      }
    }
  });

  TrialSummary summary;
  std::vector<double> values;
  std::vector<double> aux;
  values.reserve(n);
  std::int64_t ok_count = 0;
  std::int64_t within = 0;
  for (std::uint64_t t = 0; t < n; ++t) {
    if (failed[t]) {
      summary.failures.emplace_back(static_cast<std::int64_t>(t), errors[t]);
      continue;
    }
    ++ok_count;
    const auto& o = outcomes[t];
    values.push_back(o.value);
    if (o.aux) aux.push_back(*o.aux);
    if (o.within_bound) ++within;
  }
  if (ok_count == 0) throw Error("run_trials: every trial failed");
  summary.coverage = static_cast<double>(within) / static_cast<double>(ok_count);
  summary.max_value = *std::max_element(values.begin(), values.end());
  summary.values = Edf::build(values);
  if (!aux.empty()) summary.aux_values = Edf::build(aux);
  return summary;
}

}  // namespace fpuq
