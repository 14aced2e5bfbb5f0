#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fpuq/rng.hpp"

using namespace fpuq;

TEST_CASE("philox known-answer vectors") {
  // Random123 kat values for philox4x32-10, repacked as two 64-bit words
  auto b = CounterRng::block(0, 0, 0);
  CHECK(b[0] == 0xe169c58d6627e8d5ull);
  CHECK(b[1] == 0x9b00dbd8bc57ac4cull);
  b = CounterRng::block(0x123456789abcdef0ull, 7, 3);
  CHECK(b[0] == 0x89c4e04b8c589122ull);
  CHECK(b[1] == 0x59cdecdfd65389abull);
  b = CounterRng::block(42, 0, 0);
  CHECK(b[0] == 0x77f5493b9ceaf053ull);
  CHECK(b[1] == 0x5742b3d712bf50adull);
  b = CounterRng::block(42, 1, 0);
  CHECK(b[0] == 0x2051e91302933769ull);
  CHECK(b[1] == 0xb62c409c3b68b038ull);
}

TEST_CASE("streams are deterministic and independent") {
  CounterRng a(9, 4);
  CounterRng b(9, 4);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

  CounterRng c(9, 5);
  bool all_equal = true;
  CounterRng a2(9, 4);
  for (int i = 0; i < 100; ++i) all_equal = all_equal && (a2.next_u64() == c.next_u64());
  CHECK(!all_equal);

  CHECK(CounterRng(9).substream(4).next_u64() == CounterRng(9, 4).next_u64());
}

TEST_CASE("uniform and symmetric ranges, crude moments") {
  CounterRng rng(123);
  double sum = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double x = rng.next_double();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    sum += x;
  }
  CHECK(std::abs(sum / 200000.0 - 0.5) < 0.005);

  double s2 = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double x = rng.symmetric(1.0);
    CHECK(x >= -1.0);
    CHECK(x <= 1.0);
    s2 += x * x;
  }
  CHECK(std::abs(s2 / 200000.0 - 1.0 / 3.0) < 0.01);

  int pos = 0;
  for (int i = 0; i < 100000; ++i) pos += rng.sign() > 0;
  CHECK(std::abs(pos / 100000.0 - 0.5) < 0.01);

  double nsum = 0.0, nsq = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double x = rng.normal();
    nsum += x;
    nsq += x * x;
  }
  CHECK(std::abs(nsum / 200000.0) < 0.02);
  CHECK(std::abs(nsq / 200000.0 - 1.0) < 0.02);
}
