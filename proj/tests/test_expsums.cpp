#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sievelab/expsums.hpp"
#include "sievelab/psi0.hpp"

using namespace sievelab;

TEST_CASE("kloosterman examples") {
  CHECK(kloosterman(1, 1, 2).value == doctest::Approx(1.0));
  CHECK(kloosterman(1, 1, 3).value == doctest::Approx(-1.0));
  CHECK(kloosterman(5, 9, 1).value == doctest::Approx(1.0));
  CHECK_THROWS_AS(kloosterman(1, 1, 0), domain_error);
  CHECK_THROWS_AS(kloosterman(1, 1, 200000), resource_error);
}

TEST_CASE("kloosterman is real and symmetric") {
  for (long long q = 1; q <= 300; q += 13) {
    for (long long a = 1; a <= q; a += 7) {
      for (long long b = a; b <= q; b += 11) {
        KloostermanValue s = kloosterman(a, b, q);
        KloostermanValue t = kloosterman(b, a, q);
        CHECK(std::abs(s.imag_residual) < 1e-9);
        CHECK(s.value == doctest::Approx(t.value).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("ramanujan examples and formula vs direct sum") {
  CHECK(ramanujan(6, 0) == euler_phi(6));
  CHECK(ramanujan(12, 0) == euler_phi(12));
  CHECK(ramanujan(1, 5) == 1);
  CHECK(ramanujan(6, 4) == -1);  // 1*mu(6) + 2*mu(3)
  for (long long q = 1; q <= 300; ++q) {
    for (long long b = 0; b <= q; b += (q > 40 ? 7 : 1)) {
      CHECK((double)ramanujan(q, b) ==
            doctest::Approx(ramanujan_direct(q, b)).epsilon(1e-7));
    }
  }
}

TEST_CASE("kloosterman at a=0 degenerates to ramanujan") {
  for (long long q = 1; q <= 300; q += 7) {
    for (long long b = 0; b <= q; b += 5) {
      CHECK(kloosterman(0, b, q).value ==
            doctest::Approx((double)ramanujan(q, b)).epsilon(1e-7));
    }
  }
}

TEST_CASE("weil scan") {
  WeilReport rep = weil_check(100);
  CHECK(rep.violations == 0);
  CHECK(rep.pairs_checked == 100 * 101 * 201 / 6);  // sum q^2
  CHECK(rep.max_ratio <= 1.0 + 1e-9);

  WeilReport ser = weil_check_serial(60);
  WeilReport par = weil_check(60, 4);
  CHECK(ser.pairs_checked == par.pairs_checked);
  CHECK(ser.violations == par.violations);
  CHECK(ser.max_ratio == par.max_ratio);

  // prime q, unit a,b: |S| <= 2 sqrt(q)
  for (long long q : {101, 211, 307, 401, 499}) {
    for (long long a = 1; a <= 20; ++a) {
      for (long long b = 1; b <= 20; ++b) {
        CHECK(std::abs(kloosterman(a, b, q).value) <=
              2.0 * std::sqrt((double)q) + 1e-6);
      }
    }
  }

  // degenerate point: S(0,0;q) = phi(q) <= tau(q) q
  CHECK(kloosterman(0, 0, 12).value == doctest::Approx(4.0));
}

TEST_CASE("psi0 shape") {
  CHECK(psi0_eval(1.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(psi0_eval(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(psi0_eval(2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(psi0_eval(3.0) == 0.0);
  CHECK(psi0_eval(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(psi0_eval(0.25) == 0.0);
  for (int i = 0; i <= 10000; ++i) {
    double t = 3.0 * i / 10000;
    double v = psi0_eval(t);
    CHECK(v >= -1e-12);
    CHECK(v <= 1.0 + 1e-12);
    if (t >= 1.0 && t <= 2.0) CHECK(v >= 1.0 - 1e-12);  // >= indicator [1,2]
    if (t < 0.5 || t > 2.5) CHECK(v == 0.0);
  }
}

TEST_CASE("psi0 fourier transform") {
  std::complex<double> hat0 = psi0_fourier(0);
  CHECK(hat0.real() >= 1.0);
  CHECK(hat0.real() <= 2.0);
  CHECK(hat0.real() == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(std::abs(hat0.imag()) < 1e-12);
  // Riemann-sum cross-check of |hat(xi)| at a nonzero frequency
  for (double xi : {0.3, 1.7}) {
    std::complex<double> ref(0, 0);
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      double t = 0.4 + (2.2 * i + 1.1) / n;
      double ang = -2 * M_PI * xi * t;
      ref += psi0_eval(t) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    ref *= 2.2 / n;
    std::complex<double> hat = psi0_fourier(xi);
    CHECK(std::abs(hat - ref) < 1e-6);
  }
}

TEST_CASE("psi0 derivative sup norms stay finite") {
  auto norms = psi0_derivative_sup_norms(4);
  REQUIRE(norms.size() == 5);
  CHECK(norms[0] == doctest::Approx(1.0).epsilon(1e-6));
  for (double v : norms) CHECK(std::isfinite(v));
}

TEST_CASE("poisson summation check") {
  ResidualReport a = poisson_check(1000, 7, 3, 200);
  CHECK(a.residual <= 1e-6);
  ResidualReport b = poisson_check(500, 1, 0, 150);
  CHECK(b.residual <= 1e-6);
  // negative control: H far below q/M leaves the main mass unrecovered
  ResidualReport c = poisson_check(100, 5000, 150, 1);
  CHECK(c.residual > 1e-3);
}

TEST_CASE("coprime summation check") {
  ResidualReport a = coprime_sum_check(1000, 1);
  CHECK(a.residual <= a.envelope);
  CHECK(a.rhs == doctest::Approx(1500.0).epsilon(1e-6));
  ResidualReport b = coprime_sum_check(10000, 6);
  CHECK(b.residual <= b.envelope);
  CHECK(b.rhs == doctest::Approx(5000.0).epsilon(1e-6));
  // prime q above the support: no coprimality loss at all
  ResidualReport c = coprime_sum_check(10, 101);
  CHECK(c.residual <= c.envelope);
}
