#include "doctest.h"

#include "qda/rng.hpp"

using namespace qda;

TEST_CASE("identical seeds produce identical streams") {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.uniform() == b.uniform());
    CHECK(a.normal() == b.normal());
  }
}

TEST_CASE("derived seeds differ across streams") {
  CHECK(derive_seed(42, 0) != derive_seed(42, 1));
  CHECK(derive_seed(42, 1) != derive_seed(43, 1));
  CHECK(derive_seed(42, 7) == derive_seed(42, 7));
}

TEST_CASE("normal draws have roughly standard moments") {
  Rng rng(7);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sum2 / n - 1.0) < 0.02);
}

TEST_CASE("below stays in range") {
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) CHECK(rng.below(13) < 13);
}
