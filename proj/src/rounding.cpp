#include "fpuq/rounding.hpp"

#include <cmath>
#include <limits>

#include "fpuq/errors.hpp"

namespace fpuq {
namespace {

struct TwoSum {
  double hi;
  double lo;
};

TwoSum two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

TwoSum two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Round |hi| + residual onto the grid of fmt, where the exact value is hi plus a
// residual of magnitude at most ulp(hi)/2 whose sign is residual_sign. The decision
// needs only the sign: the fractional part of hi on the target grid is a multiple of
// 2^(p-53), while |residual|/quantum < 2^(p-54), so the residual can only ever break
// exact ties.
double round_core(double hi, int residual_sign, const FloatFormat& fmt) {
  if (hi == 0.0) {
    // |residual| <= ulp(0)/2 = 0, so the exact value is zero.
    return 0.0;
  }
  int sign = 1;
  if (hi < 0.0) {
    sign = -1;
    hi = -hi;
    residual_sign = -residual_sign;
  }
  const int p = fmt.precision_p;
  const int e = std::max(std::ilogb(hi), fmt.e_min);  // below e_min: subnormal grid
  const double quantum = std::ldexp(1.0, e - (p - 1));
  const double n0 = hi / quantum;  // exact: power-of-two scaling, < 2^p
  const double i0 = std::floor(n0);
  const double f = n0 - i0;  // exact, a multiple of 2^(p-53)
  double i = i0;
  const double d = f - 0.5;  // exact for the same reason
  if (d > 0.0) {
    i += 1.0;
  } else if (d == 0.0) {
    if (residual_sign > 0) {
      i += 1.0;
    } else if (residual_sign == 0) {
      // true tie: pick the even significand
      if (std::fmod(i0, 2.0) != 0.0) i += 1.0;
    }
  }
  double y = i * quantum;  // exact: i <= 2^p, quantum a power of two
  if (y == 0.0)
    throw OverflowOrUnderflow("round_to_format: nonzero value rounds to zero");
  if (y > fmt.max_magnitude())
    throw OverflowOrUnderflow("round_to_format: magnitude above the representable range");
  return sign * y;
}

}  // namespace

double round_to_format(double z, const FloatFormat& fmt) {
  if (!std::isfinite(z)) throw NonFinite("round_to_format: input is not finite");
  if (fmt.is_reference()) return z;
  return round_core(z, 0, fmt);
}

bool is_representable(double z, const FloatFormat& fmt) {
  if (!std::isfinite(z)) return false;
  if (z == 0.0 || fmt.is_reference()) return true;
  try {
    return round_to_format(z, fmt) == z;
  } catch (const OverflowOrUnderflow&) {
    return false;
  }
}

double emulated_op(double a, double b, Op op, const FloatFormat& fmt) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw NonFinite("emulated_op: non-finite operand");
  switch (op) {
    case Op::add:
    case Op::sub: {
      const double bb = (op == Op::sub) ? -b : b;
      if (fmt.is_reference()) return a + bb;
      const TwoSum s = two_sum(a, bb);
      if (s.hi == 0.0 && s.lo == 0.0) return 0.0;
      return round_core(s.hi, sign_of(s.lo), fmt);
    }
    case Op::mul: {
      if (fmt.is_reference()) return a * b;
      if (a == 0.0 || b == 0.0) return 0.0;
      const TwoSum p = two_prod(a, b);
      return round_core(p.hi, sign_of(p.lo), fmt);
    }
    case Op::div: {
      if (b == 0.0) throw DivisionByZero("emulated_op: division by zero");
      if (fmt.is_reference()) return a / b;
      if (a == 0.0) return 0.0;
      const double q = a / b;
      const double r = std::fma(-q, b, a);  // exact residual a - q*b
      return round_core(q, sign_of(r) * sign_of(b), fmt);
    }
  }
  throw Error("emulated_op: unknown op");
}

double realized_delta(double exact, double computed) {
  if (exact == 0.0) {
    if (computed == 0.0) return 0.0;
    throw ZeroReference("realized_delta: zero reference with nonzero computed value");
  }
  return computed / exact - 1.0;
}

std::vector<double> sample_errors(const ErrorModel& model, std::int64_t count,
                                  std::uint64_t seed) {
  model.validate();
  if (count < 0) throw ConfigError("sample_errors: count must be >= 0");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  CounterRng rng(seed);
  for (std::int64_t i = 0; i < count; ++i) out.push_back(rng.symmetric(model.support_halfwidth));
  return out;
}

std::vector<double> round_vector(std::span<const double> v, const FloatFormat& fmt) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = round_to_format(v[i], fmt);
  return out;
}

}  // namespace fpuq
