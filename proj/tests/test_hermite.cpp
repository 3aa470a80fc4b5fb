#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "wh/hermite.hpp"

using wh::schrodinger::gauss_legendre;
using wh::schrodinger::HermiteBasis;
using wh::schrodinger::hermite_values;

TEST_CASE("gauss-legendre rule") {
  for (int q : {2, 8, 16, 24, 31}) {
    std::vector<double> x, w;
    gauss_legendre(q, x, w);
    double wsum = 0;
    for (int i = 0; i < q; ++i) {
      wsum += w[i];
      CHECK(x[i] == doctest::Approx(-x[q - 1 - i]).epsilon(1e-14));
      if (i) CHECK(x[i] > x[i - 1]);
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    // Exact for polynomials up to degree 2q-1.
    const int m = q - 1;
    double got = 0;
    for (int i = 0; i < q; ++i) got += w[i] * std::pow(x[i], 2 * m);
    CHECK(got == doctest::Approx(2.0 / (2 * m + 1)).epsilon(1e-12));
  }
}

TEST_CASE("hermite base values") {
  double v[2];
  hermite_values(2, 0.0, v);
  CHECK(v[0] == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-15));
  CHECK(v[1] == 0.0);
}

TEST_CASE("hermite parity and finiteness") {
  std::vector<double> a(128), b(128);
  for (double t : {0.3, 1.7, 4.0, 9.5}) {
    hermite_values(128, t, a.data());
    hermite_values(128, -t, b.data());
    for (int k = 0; k < 128; ++k) {
      CHECK(std::isfinite(a[k]));
      CHECK(b[k] == doctest::Approx((k % 2 ? -1.0 : 1.0) * a[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("quadrature orthonormality, j,k < 16") {
  const HermiteBasis basis = HermiteBasis::make(16);
  const int n = basis.node_count();
  double err = 0;
  for (int j = 0; j < 16; ++j) {
    for (int k = 0; k < 16; ++k) {
      double s = 0;
      for (int i = 0; i < n; ++i)
        s += basis.weights[i] * basis.table(i, j) * basis.table(i, k);
      err = std::max(err, std::abs(s - (j == k ? 1.0 : 0.0)));
    }
  }
  CHECK(err <= 1e-10);

  // Oracle: the same integrals at doubled quadrature resolution move by less
  // than the tolerance, so the module rule is converged.
  const HermiteBasis fine = HermiteBasis::make(16, 48);
  double drift = 0;
  for (int j = 0; j < 16; ++j) {
    for (int k = 0; k < 16; ++k) {
      double s = 0, s2 = 0;
      for (int i = 0; i < basis.node_count(); ++i)
        s += basis.weights[i] * basis.table(i, j) * basis.table(i, k);
      for (int i = 0; i < fine.node_count(); ++i)
        s2 += fine.weights[i] * fine.table(i, j) * fine.table(i, k);
      drift = std::max(drift, std::abs(s - s2));
    }
  }
  CHECK(drift <= 1e-12);
}

TEST_CASE("tail invariant at the panel edge") {
  for (int d : {1, 8, 64}) {
    const HermiteBasis basis = HermiteBasis::make(d);
    std::vector<double> vals(d);
    for (double sign : {-1.0, 1.0}) {
      hermite_values(d, sign * basis.T, vals.data());
      for (int k = 0; k < d; ++k) CHECK(std::abs(vals[k]) < 1e-14);
    }
  }
}

TEST_CASE("eval rejects indices outside the truncation") {
  const HermiteBasis basis = HermiteBasis::make(4);
  double v[2];
  hermite_values(2, 0.5, v);
  CHECK(basis.eval(1, 0.5) == v[1]);
  CHECK_THROWS_AS(basis.eval(4, 0.0), std::out_of_range);
  CHECK_THROWS_AS(basis.eval(-1, 0.0), std::out_of_range);
}
