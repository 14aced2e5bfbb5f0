#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <quadmath.h>

#include <cmath>
#include <vector>

#include "fpuq/edf.hpp"
#include "fpuq/errors.hpp"
#include "fpuq/rng.hpp"
#include "fpuq/rounding.hpp"

using namespace fpuq;

namespace {

// Independent reference: round z to p significand bits with rint on __float128.
// Valid because the quad significand (113 bits) is wide enough that one rounding
// from it to p <= 32 bits agrees with direct rounding of the exact value.
double quad_round(double z, const FloatFormat& fmt) {
  if (z == 0.0) return 0.0;
  int e = ilogbq(static_cast<__float128>(fabsq(z)));
  if (e < fmt.e_min) e = fmt.e_min;  // subnormal grid keeps the lowest-binade spacing
  const __float128 scaled = scalbnq(static_cast<__float128>(z), fmt.precision_p - 1 - e);
  const __float128 rounded = rintq(scaled);  // nearest-even
  return static_cast<double>(scalbnq(rounded, e - fmt.precision_p + 1));
}

double run_round(double z, const FloatFormat& fmt) { return round_to_format(z, fmt); }

}  // namespace

TEST_CASE("round_to_format fixed cases") {
  const auto fp16 = FloatFormat::fp16();
  CHECK(run_round(2.0, fp16) == 2.0);
  CHECK(run_round(1.0 + 0x1.0p-12, fp16) == 1.0);               // below half-ulp of 1.0
  CHECK(run_round(1.0 + 3 * 0x1.0p-12, fp16) == 1.0 + 0x1.0p-10);  // nearest is 1+2^-10
  CHECK(run_round(0.0, fp16) == 0.0);
  CHECK(run_round(-2.0, fp16) == -2.0);
  // exact ties go to the even significand
  CHECK(run_round(1.0 + 0x1.0p-11, fp16) == 1.0);                   // 1 + u: tie, 1.0 even
  CHECK(run_round(1.0 + 3 * 0x1.0p-11, fp16) == 1.0 + 0x1.0p-9);    // tie, up to even
  CHECK(run_round(-(1.0 + 0x1.0p-11), fp16) == -1.0);
}

TEST_CASE("round_to_format matches the native float path on fp32") {
  const auto fp32 = FloatFormat::fp32();
  CounterRng rng(101);
  for (int i = 0; i < 100000; ++i) {
    const int e = static_cast<int>(rng.uniform(-100.0, 100.0));
    const double z = std::ldexp(rng.uniform(-2.0, 2.0), e);
    if (z == 0.0) continue;
    const double native = static_cast<double>(static_cast<float>(z));
    CHECK(run_round(z, fp32) == native);
  }
  // constructed near-tie cases around float midpoints
  for (int i = 0; i < 20000; ++i) {
    const float a = static_cast<float>(rng.uniform(0.5, 2.0));
    const float b = std::nextafterf(a, 4.0f);
    const double mid = (static_cast<double>(a) + b) / 2.0;
    for (double z : {mid, mid + 0x1.0p-60, mid - 0x1.0p-60, -mid}) {
      CHECK(run_round(z, fp32) == static_cast<double>(static_cast<float>(z)));
    }
  }
}

TEST_CASE("round_to_format matches the quad-precision reference on random formats") {
  CounterRng rng(202);
  for (int p : {2, 3, 5, 11, 17, 24, 29, 32}) {
    FloatFormat fmt{p, 2, -200, 200};
    for (int i = 0; i < 20000; ++i) {
      const double z = std::ldexp(rng.uniform(-2.0, 2.0), static_cast<int>(rng.uniform(-60, 60)));
      if (z == 0.0) continue;
      CHECK(run_round(z, fmt) == quad_round(z, fmt));
    }
    // exact midpoints on this format's grid
    for (int i = 0; i < 5000; ++i) {
      const double g = run_round(rng.uniform(1.0, 2.0), fmt);
      const double step = std::ldexp(1.0, std::ilogb(g) - (p - 1));
      const double mid = g + step / 2.0;
      CHECK(run_round(mid, fmt) == quad_round(mid, fmt));
      CHECK(run_round(std::nextafter(mid, 0.0), fmt) == quad_round(std::nextafter(mid, 0.0), fmt));
      CHECK(run_round(std::nextafter(mid, 9.0), fmt) == quad_round(std::nextafter(mid, 9.0), fmt));
    }
  }
}

TEST_CASE("rounding properties: error bound, idempotence, monotonicity") {
  const auto fp16 = FloatFormat::fp16();
  const double u = fp16.unit_roundoff();
  CHECK(u == 0x1.0p-11);
  CHECK(FloatFormat::fp32().unit_roundoff() == 0x1.0p-24);
  CounterRng rng(303);
  double prev_z = 0.0, prev_y = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double z = std::ldexp(rng.uniform(1.0, 2.0), static_cast<int>(rng.uniform(-14, 15)));
    const double y = run_round(z, fp16);
    CHECK(std::abs(y - z) <= u * std::abs(z));
    CHECK(run_round(y, fp16) == y);  // idempotent
    if (i > 0) {
      if (z >= prev_z) CHECK(y >= prev_y);
      if (z <= prev_z) CHECK(y <= prev_y);
    }
    prev_z = z;
    prev_y = y;
  }
}

TEST_CASE("range violations raise; subnormal range rounds") {
  const auto fp16 = FloatFormat::fp16();
  CHECK_THROWS_AS(run_round(70000.0, fp16), OverflowOrUnderflow);
  CHECK_THROWS_AS(run_round(std::nan(""), fp16), NonFinite);
  CHECK_THROWS_AS(run_round(INFINITY, fp16), NonFinite);
  // 65504 is the largest fp16 value; the next binade midpoint rounds over
  CHECK(run_round(65504.0, fp16) == 65504.0);
  CHECK_THROWS_AS(run_round(65520.0, fp16), OverflowOrUnderflow);
  // just below the smallest normal rounds back to it
  const double tiny = 0x1.0p-14;
  CHECK(run_round(tiny * (1.0 - 0x1.0p-30), fp16) == tiny);
  // subnormal grid: spacing 2^-24 below 2^-14
  CHECK(run_round(1e-6, fp16) == quad_round(1e-6, fp16));
  CHECK(run_round(0x1.8p-24, fp16) == 0x1.0p-23);  // tie on the subnormal grid, to even
  CHECK(run_round(0x1.0p-24, fp16) == 0x1.0p-24);  // smallest subnormal is exact
  CHECK(run_round(0x1.fp-25, fp16) == 0x1.0p-24);
  // total loss: a nonzero value that would round to zero raises
  CHECK_THROWS_AS(run_round(1e-8, fp16), OverflowOrUnderflow);
  CHECK_THROWS_AS(run_round(0x1.0p-26, fp16), OverflowOrUnderflow);  // exact half-tie to 0? no: even -> 0
}

TEST_CASE("emulated ops fixed cases") {
  const auto fp16 = FloatFormat::fp16();
  CHECK(emulated_op(1.0, 1.0, Op::add, fp16) == 2.0);
  CHECK(emulated_op(1.0, 0x1.0p-12, Op::add, fp16) == 1.0);  // absorbed addend
  CHECK(emulated_op(1.5, 2.0, Op::mul, fp16) == 3.0);
  CHECK(emulated_op(1.0, 3.0, Op::div, fp16) == run_round(1.0 / 3.0, fp16));
  CHECK_THROWS_AS(emulated_op(1.0, 0.0, Op::div, fp16), DivisionByZero);
  CHECK(emulated_op(1.0, 1.0, Op::sub, fp16) == 0.0);
  // reference format is a pass-through
  CHECK(emulated_op(1.0, 0x1.0p-40, Op::add, FloatFormat::reference()) == 1.0 + 0x1.0p-40);
}

TEST_CASE("emulated fp32 ops agree with native float arithmetic") {
  const auto fp32 = FloatFormat::fp32();
  CounterRng rng(404);
  for (int i = 0; i < 100000; ++i) {
    const float a = static_cast<float>(rng.uniform(1.0, 2.0));
    const float b = static_cast<float>(rng.uniform(1.0, 2.0));
    const double ad = a, bd = b;
    CHECK(emulated_op(ad, bd, Op::mul, fp32) == static_cast<double>(a * b));
    CHECK(emulated_op(ad, bd, Op::add, fp32) == static_cast<double>(a + b));
    CHECK(emulated_op(ad, bd, Op::sub, fp32) == static_cast<double>(a - b));
    CHECK(emulated_op(ad, bd, Op::div, fp32) == static_cast<double>(a / b));
    const double rel = std::abs(emulated_op(ad, bd, Op::mul, fp32) - ad * bd) / (ad * bd);
    CHECK(rel <= 0x1.0p-24);
  }
}

TEST_CASE("emulated add/sub exactness across exponent gaps (no double rounding)") {
  // p = 27..32 is where a 53-bit intermediate could double-round; compare against quad
  CounterRng rng(505);
  for (int p : {27, 30, 32}) {
    FloatFormat fmt{p, 2, -200, 200};
    for (int i = 0; i < 20000; ++i) {
      const double a = round_to_format(rng.uniform(1.0, 2.0), fmt);
      const double b =
          round_to_format(std::ldexp(rng.uniform(1.0, 2.0), static_cast<int>(rng.uniform(-40, 0))), fmt);
      const __float128 exact = static_cast<__float128>(a) + static_cast<__float128>(b);
      const int e = ilogbq(fabsq(exact));
      const __float128 rounded = rintq(scalbnq(exact, fmt.precision_p - 1 - e));
      const double want = static_cast<double>(scalbnq(rounded, e - fmt.precision_p + 1));
      CHECK(emulated_op(a, b, Op::add, fmt) == want);
    }
  }
}

TEST_CASE("realized_delta") {
  CHECK(realized_delta(4.0, 4.0) == 0.0);
  CHECK(realized_delta(1.0, 1.0 + 0x1.0p-11) == 0x1.0p-11);
  CHECK(realized_delta(0.0, 0.0) == 0.0);
  CHECK_THROWS_AS(realized_delta(0.0, 1.0), ZeroReference);

  const auto fp16 = FloatFormat::fp16();
  CounterRng rng(606);
  for (int i = 0; i < 10000; ++i) {
    const double a = round_to_format(rng.uniform(1.0, 2.0), fp16);
    const double b = round_to_format(rng.uniform(1.0, 2.0), fp16);
    const double d = realized_delta(a + b, emulated_op(a, b, Op::add, fp16));
    CHECK(std::abs(d) <= 0x1.0p-11);
  }
}

TEST_CASE("sample_errors moments and determinism") {
  ErrorModel m{0.5};
  CHECK(sample_errors(m, 0, 1).empty());
  const auto s1 = sample_errors(m, 1000, 42);
  const auto s2 = sample_errors(m, 1000, 42);
  CHECK(s1 == s2);

  const auto big = sample_errors(m, 1000000, 7);
  double mean = 0.0, var = 0.0;
  for (double x : big) {
    CHECK(x >= -0.5);
    CHECK(x <= 0.5);
    mean += x;
  }
  mean /= static_cast<double>(big.size());
  for (double x : big) var += (x - mean) * (x - mean);
  var /= static_cast<double>(big.size());
  CHECK(std::abs(var - 1.0 / 12.0) < 0.01 / 12.0);  // within 1% of u^2/3 at u = 1/2

  ErrorModel m16{0x1.0p-11};
  const auto s16 = sample_errors(m16, 1000000, 9);
  double mean16 = 0.0;
  for (double x : s16) mean16 += x;
  mean16 /= static_cast<double>(s16.size());
  const double u = 0x1.0p-11;
  CHECK(std::abs(mean16) < 3.0 * (u / std::sqrt(3.0)) / 1000.0);
}

TEST_CASE("model error EDF dominates the realized-delta EDF") {
  const auto fp16 = FloatFormat::fp16();
  const double u = fp16.unit_roundoff();
  CounterRng rng(707);
  const int n = 100000;
  std::vector<double> true_err, model_err;
  true_err.reserve(n);
  model_err.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double z = rng.uniform(1.0, 2.0);
    true_err.push_back(std::abs(realized_delta(z, round_to_format(z, fp16))));
    model_err.push_back(std::abs(rng.symmetric(u)));
  }
  const Edf t = Edf::build(true_err);
  const Edf m = Edf::build(model_err);
  CHECK(edf_dominates(m, t, 0.02));
}

TEST_CASE("format presets and parsing") {
  CHECK(FloatFormat::from_name("fp16") == FloatFormat::fp16());
  CHECK(FloatFormat::from_name("fp32") == FloatFormat::fp32());
  CHECK(FloatFormat::from_name("ref").is_reference());
  const auto custom = FloatFormat::from_name("p8e-6:6");
  CHECK(custom.precision_p == 8);
  CHECK(custom.e_min == -6);
  CHECK(custom.e_max == 6);
  CHECK(custom.name() == "p8e-6:6");
  CHECK_THROWS_AS(FloatFormat::from_name("bogus"), ConfigError);
  CHECK_THROWS_AS(FloatFormat::from_name("p40e-6:6"), ConfigError);
  RoundingMode rm{-1};
  rm.validate();  // alternate model accepted
}
