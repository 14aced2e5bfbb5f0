#include "fpuq/edf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "fpuq/errors.hpp"

namespace fpuq {

Edf Edf::build(std::span<const double> samples) {
  if (samples.empty()) throw EmptySample("edf_build: empty sample set");
  for (double x : samples)
    if (!std::isfinite(x)) throw DomainError("edf_build: non-finite sample");
  Edf e;
  e.sorted_.assign(samples.begin(), samples.end());
  std::sort(e.sorted_.begin(), e.sorted_.end());
  return e;
}

double Edf::query(double t) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

void Edf::write_csv(std::ostream& os) const {
  char buf[64];
  for (std::size_t i = 0; i < sorted_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", sorted_[i],
                  static_cast<double>(i + 1) / static_cast<double>(sorted_.size()));
    os << buf;
  }
}

double edf_max_gap(const Edf& lower, const Edf& upper) {
  double gap = -1.0;
  for (const auto* e : {&lower, &upper}) {
    for (double t : e->sorted_samples()) {
      gap = std::max(gap, lower.query(t) - upper.query(t));
    }
  }
  return gap;
}

bool edf_dominates(const Edf& lower, const Edf& upper, double slack) {
  return edf_max_gap(lower, upper) <= slack;
}

}  // namespace fpuq
