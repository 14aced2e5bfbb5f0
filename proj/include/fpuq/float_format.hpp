#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "fpuq/errors.hpp"

namespace fpuq {

/// A binary floating-point system (p, beta=2, e_min, e_max) with round-to-nearest-even
/// and an IEEE subnormal range below 2^e_min (spacing stays at 2^(e_min-p+1)). The host
/// double is the reference precision; emulated formats are restricted to p <= 32 and a
/// modest exponent range so that one rounding from an exact intermediate is always
/// reproducible (see rounding.hpp).
struct FloatFormat {
  int precision_p = 53;   // significand digits including the implicit bit
  int base_beta = 2;
  int e_min = -1021;
  int e_max = 1024;

  static constexpr int kReferencePrecision = 53;

  [[nodiscard]] bool is_reference() const { return precision_p >= kReferencePrecision; }

  [[nodiscard]] double unit_roundoff() const {
    return std::ldexp(1.0, -precision_p);
  }

  /// Largest representable magnitude, 2^e_max * (2 - 2^(1-p)).
  [[nodiscard]] double max_magnitude() const {
    return std::ldexp(2.0 - std::ldexp(1.0, 1 - precision_p), e_max);
  }

  /// Smallest normalized magnitude, 2^e_min.
  [[nodiscard]] double min_magnitude() const { return std::ldexp(1.0, e_min); }

  void validate() const {
    if (base_beta != 2) throw ConfigError("FloatFormat: base must be 2");
    if (!is_reference() && (precision_p < 2 || precision_p > 32))
      throw ConfigError("FloatFormat: emulated precision must satisfy 2 <= p <= 32");
    if (e_min >= e_max) throw ConfigError("FloatFormat: e_min must be < e_max");
    if (!is_reference() && (e_min < -200 || e_max > 200))
      throw ConfigError("FloatFormat: emulated exponent range limited to [-200, 200]");
  }

  static FloatFormat fp16() { return FloatFormat{11, 2, -14, 15}; }
  static FloatFormat fp32() { return FloatFormat{24, 2, -126, 127}; }
  static FloatFormat reference() { return FloatFormat{}; }

  /// Accepts "fp16", "fp32", "ref"/"fp64", or "p<P>e<Emin>:<Emax>" (e.g. "p8e-4:4").
  static FloatFormat from_name(const std::string& name);
  [[nodiscard]] std::string name() const;

  bool operator==(const FloatFormat&) const = default;
};

/// rho selects the computational model: fl(z) = z(1+delta)^rho.
struct RoundingMode {
  int rho = +1;  // +1 standard, -1 alternate
  void validate() const {
    if (rho != 1 && rho != -1) throw ConfigError("RoundingMode: rho must be +1 or -1");
  }
};

/// The modeled rounding-error distribution, U[-u, u].
struct ErrorModel {
  double support_halfwidth = 0.0;  // = u
  void validate() const {
    if (!(support_halfwidth > 0.0 && support_halfwidth < 1.0))
      throw ConfigError("ErrorModel: support halfwidth must lie in (0, 1)");
  }
};

}  // namespace fpuq
