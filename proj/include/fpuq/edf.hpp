#pragma once

#include <iosfwd>
#include <span>
#include <vector>

namespace fpuq {

/// Empirical distribution function: F(t) = count(x_i <= t) / n, right-continuous.
class Edf {
 public:
  static Edf build(std::span<const double> samples);

  [[nodiscard]] double query(double t) const;
  [[nodiscard]] std::size_t size() const { return sorted_.size(); }
  [[nodiscard]] double min() const { return sorted_.front(); }
  [[nodiscard]] double max() const { return sorted_.back(); }
  [[nodiscard]] const std::vector<double>& sorted_samples() const { return sorted_; }

  /// Two-column CSV body (t, F) at the sample points.
  void write_csv(std::ostream& os) const;

 private:
  std::vector<double> sorted_;
};

/// True iff F_lower(t) <= F_upper(t) + slack at every pooled sample point.
bool edf_dominates(const Edf& lower, const Edf& upper, double slack);

/// max over pooled sample points of F_lower(t) - F_upper(t).
double edf_max_gap(const Edf& lower, const Edf& upper);

}  // namespace fpuq
