#pragma once

#include <span>
#include <vector>

#include "fpuq/float_format.hpp"
#include "fpuq/rng.hpp"

namespace fpuq {

enum class Op { add, sub, mul, div };

/// Round a reference-precision value to the nearest representable number of fmt
/// (ties to even significand), including the subnormal grid below 2^e_min. A nonzero
/// value that rounds to zero, or a magnitude beyond the largest representable value,
/// raises OverflowOrUnderflow. NaN and infinities raise NonFinite. Exactly
/// representable inputs come back unchanged.
double round_to_format(double z, const FloatFormat& fmt);

/// True iff z is exactly representable in fmt (zero included).
bool is_representable(double z, const FloatFormat& fmt);

/// fl(a op b): the exact result of a op b rounded once into fmt. Operands must be
/// representable in fmt. The exact intermediate is carried as a double plus the sign
/// of its residual (error-free transformations), so the emulation is bit-exact for
/// every p <= 32 -- no double rounding through the host format can occur.
double emulated_op(double a, double b, Op op, const FloatFormat& fmt);

/// delta with computed = exact * (1 + delta). Zero reference with nonzero computed
/// raises ZeroReference; 0/0 is defined as 0.
double realized_delta(double exact, double computed);

/// Draws from the modeled error distribution U[-u, u]; deterministic per seed.
std::vector<double> sample_errors(const ErrorModel& model, std::int64_t count,
                                  std::uint64_t seed);

/// Round every entry into fmt (representation rounding of kernel inputs).
std::vector<double> round_vector(std::span<const double> v, const FloatFormat& fmt);

}  // namespace fpuq
