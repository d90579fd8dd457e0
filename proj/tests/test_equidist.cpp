#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <algorithm>

#include "sievelab/equidist.hpp"
#include "sievelab/primes.hpp"
#include "sievelab/psi0.hpp"

using namespace sievelab;

TEST_CASE("pi_ap examples") {
  CHECK(pi_ap(100, 1, 0) == 25);
  CHECK(pi_ap(100, 3, 1) == 11);
  CHECK(pi_ap(100, 4, 1) == 11);
  CHECK(pi_ap(97, 1, 0) == 24);  // strict: 97 itself not counted
  CHECK_THROWS_AS(pi_ap(100, 0, 1), domain_error);
}

TEST_CASE("residues partition the primes") {
  auto primes = prime_table(1000000);
  for (long long q = 1; q <= 50; ++q) {
    long long x = 1000000;
    long long total = 0;
    for (long long a = 0; a < q; ++a) {
      if (q > 1 && gcd_ll(a, q) != 1) continue;
      total += pi_ap(primes, x, q, a);
    }
    long long dividing = 0;
    for (uint32_t p : primes)
      if (p < x && q % p == 0) ++dividing;
    CHECK(total + dividing == pi_ap(primes, x, 1, 0));
  }
}

TEST_CASE("bv_table basics") {
  DiscrepancyReport one = bv_table(10000, 1);
  REQUIRE(one.rows.size() == 1);
  CHECK(one.rows[0].q == 1);
  CHECK(one.rows[0].count == 1229);
  CHECK(one.rows[0].main_num == 1229);
  CHECK(one.rows[0].main_den == 1);
  CHECK(one.rows[0].discrepancy == 0.0);

  // absolute aggregate grows with q_max
  double prev = 0;
  for (long long qm : {1, 2, 5, 10, 20}) {
    DiscrepancyReport rep = bv_table(10000, qm);
    CHECK(rep.abs_sum >= prev - 1e-12);
    prev = rep.abs_sum;
  }

  // worker count never changes the rows
  DiscrepancyReport a = bv_table(10000, 10, 1);
  DiscrepancyReport b = bv_table(10000, 10, 4);
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].count == b.rows[i].count);
    CHECK(a.rows[i].discrepancy == b.rows[i].discrepancy);
  }
}

TEST_CASE("bv_table per-row arithmetic") {
  auto primes = prime_table(10000);
  DiscrepancyReport rep = bv_table(10000, 10);
  for (const ReportRow& r : rep.rows) {
    long long phi = euler_phi(r.q);
    CHECK(r.main_den == phi);
    CHECK(r.main_num == 1229);
    // the recorded residue attains the sup
    double best = 0;
    for (long long a = r.q == 1 ? 0 : 1; a < std::max<long long>(r.q, 1); ++a) {
      if (r.q > 1 && gcd_ll(a, r.q) != 1) continue;
      double d =
          std::abs((double)pi_ap(primes, 10000, r.q, a) - 1229.0 / phi);
      best = std::max(best, d);
    }
    CHECK(r.discrepancy == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("weighted prime discrepancy") {
  WeightSequence zero;
  zero.level = Rat(10);
  DiscrepancyReport z = weighted_prime_discrepancy(zero, 100, 1);
  CHECK(z.rows.empty());
  CHECK(z.signed_sum == 0.0);

  WeightSequence d1;
  d1.level = Rat(10);
  d1.entries[1] = Rat(1);
  CHECK(weighted_prime_discrepancy(d1, 100, 1).signed_sum == 0.0);

  WeightSequence d3;
  d3.level = Rat(10);
  d3.entries[3] = Rat(1);
  DiscrepancyReport r3 = weighted_prime_discrepancy(d3, 100, 1);
  REQUIRE(r3.rows.size() == 1);
  CHECK(r3.signed_sum == doctest::Approx(-1.5));  // 11 - 25/2

  // gcd(q, a) > 1 rows are dropped
  WeightSequence mix;
  mix.level = Rat(10);
  mix.entries[2] = Rat(1);
  mix.entries[3] = Rat(1);
  CHECK(weighted_prime_discrepancy(mix, 100, 2).rows.size() == 1);
}

TEST_CASE("delta_q trivial cases and oracle") {
  long long N = 10, M = 10;
  std::vector<Rat> zero(N, Rat(0)), ones_n(N, Rat(1)), ones_m(M, Rat(1));
  CHECK(delta_q(3, 1, N, zero, M, ones_m) == Rat(0));
  CHECK(delta_q(1, 0, N, ones_n, M, ones_m) == Rat(0));

  // direct double-loop oracle
  auto oracle = [](long long q, long long a, long long N,
                   const std::vector<Rat>& alpha, long long M,
                   const std::vector<Rat>& beta) {
    Rat total(0);
    long long phi = euler_phi(q);
    for (long long i = 0; i < N; ++i) {
      long long n = N + 1 + i;
      for (long long j = 0; j < M; ++j) {
        long long m = M + 1 + j;
        Rat ind(0);
        if ((n * m) % q == ((a % q) + q) % q) ind += Rat(1);
        if (gcd_ll(n * m, q) == 1) ind -= Rat(1, phi);
        total += alpha[i] * beta[j] * ind;
      }
    }
    return total;
  };
  CHECK(delta_q(3, 1, N, ones_n, M, ones_m) ==
        oracle(3, 1, N, ones_n, M, ones_m));
  std::vector<Rat> mu_n;
  for (long long n = N + 1; n <= 2 * N; ++n) mu_n.push_back(Rat(mobius(n)));
  for (long long q : {2, 5, 7, 12}) {
    for (long long a : {0, 1, 3}) {
      CHECK(delta_q(q, a, N, mu_n, M, ones_m) ==
            oracle(q, a, N, mu_n, M, ones_m));
    }
  }
  CHECK_THROWS_AS(delta_q(3, 1, N, zero, 5, ones_m), domain_error);
}

TEST_CASE("fundamental lemma check") {
  FundamentalCheck a = fundamental_lemma_check(3, 1, 100, 7);
  CHECK(a.total == 26);  // 1 and the 25 others coprime to 30 up to 100
  CHECK(a.rhs == Rat(26, 2));
  long long direct = 0;
  for (long long n = 1; n <= 100; ++n) {
    if (n % 3 != 1) continue;
    if (n > 1 && p_extremes(n).first < 7) continue;
    ++direct;
  }
  CHECK(a.lhs == direct);

  // z = 2: no sieving at all
  FundamentalCheck b = fundamental_lemma_check(4, 3, 1000, 2);
  CHECK(b.total == 1000);
  CHECK(b.lhs == 250);

  FundamentalCheck c = fundamental_lemma_check(1, 0, 500, 7);
  CHECK(c.deviation == 0.0);

  CHECK_THROWS_AS(fundamental_lemma_check(4, 2, 100, 7), domain_error);
}

TEST_CASE("double divisor experiment vs triple loop oracle") {
  std::vector<double> zero(4, 0.0), ones(4, 1.0);
  CHECK(double_divisor_experiment(11, 1, 4, 20, 20, zero).value == 0.0);
  CHECK(double_divisor_experiment(1, 0, 4, 20, 20, ones).value == 0.0);

  auto oracle = [](long long q, long long a, long long M, long long N1,
                   long long N2, const std::vector<double>& alpha) {
    long long lo1 = (N1 + 1) / 2, hi1 = (5 * N1) / 2;
    long long lo2 = (N2 + 1) / 2, hi2 = (5 * N2) / 2;
    double inv_phi = 1.0 / euler_phi(q);
    long long ar = ((a % q) + q) % q;
    double sum = 0;
    for (long long i = 0; i < M; ++i) {
      long long m = M + 1 + i;
      if (alpha[i] == 0) continue;
      for (long long n1 = lo1; n1 <= hi1; ++n1) {
        double w1 = psi0_eval((double)n1 / N1);
        if (w1 == 0) continue;
        for (long long n2 = lo2; n2 <= hi2; ++n2) {
          double w2 = psi0_eval((double)n2 / N2);
          if (w2 == 0) continue;
          long long prod = ((m % q) * (n1 % q)) % q;
          prod = (prod * (n2 % q)) % q;
          double ind = 0;
          if (prod == ar) ind += 1;
          if (gcd_ll(prod, q) == 1) ind -= inv_phi;
          if (ind != 0) sum += alpha[i] * w1 * w2 * ind;
        }
      }
    }
    return std::abs(sum);
  };
  KReport r = double_divisor_experiment(11, 1, 4, 20, 20, ones);
  CHECK(r.value == oracle(11, 1, 4, 20, 20, ones));  // bitwise, same path
  CHECK(r.value > 0.0);

  KReport withref =
      double_divisor_experiment(11, 1, 4, 20, 20, ones, 1e6, 0.01);
  CHECK(withref.reference ==
        doctest::Approx(1e6 / (11.0 * std::pow(1e6, 0.01))));
}

TEST_CASE("siegel-walfisz probe") {
  long long N = 10000;
  std::vector<Rat> mu_n, zero(N, Rat(0));
  for (long long n = N + 1; n <= 2 * N; ++n) mu_n.push_back(Rat(mobius(n)));

  SWProbe a = siegel_walfisz_probe(mu_n, N, 1, 3, 1, 2.0);
  Rat restricted(0), main(0);
  for (long long n = N + 1; n <= 2 * N; ++n) {
    if (n % 3 == 1) restricted += Rat(mobius(n));
    if (n % 3 != 0) main += Rat(mobius(n));
  }
  Rat expect = restricted - main / Rat(2);
  if (expect < Rat(0)) expect = -expect;
  CHECK(a.deviation == expect);
  CHECK(a.envelope > 0);

  CHECK(siegel_walfisz_probe(zero, N, 1, 3, 1, 2.0).deviation == Rat(0));
  CHECK(siegel_walfisz_probe(mu_n, N, 1, 1, 0, 2.0).deviation == Rat(0));
}

TEST_CASE("report folding is recomputable") {
  DiscrepancyReport rep = bv_table(10000, 20);
  double signed_sum = rep.signed_sum, abs_sum = rep.abs_sum;
  rep.fold();
  CHECK(rep.signed_sum == signed_sum);
  CHECK(rep.abs_sum == abs_sum);
  CHECK(std::is_sorted(rep.rows.begin(), rep.rows.end(),
                       [](auto& a, auto& b) { return a.q < b.q; }));
}
