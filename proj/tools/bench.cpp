// Serial vs OpenMP timing for the two parallel kernels.

#include <chrono>
#include <cstdio>

#include "sievelab/expsums.hpp"
#include "sievelab/primes.hpp"

using Clock = std::chrono::steady_clock;

static double seconds(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

int main() {
  {
    const uint64_t limit = 100000000;
    auto t0 = Clock::now();
    auto serial = sievelab::prime_table_serial(limit);
    auto t1 = Clock::now();
    auto parallel = sievelab::prime_table(limit);
    auto t2 = Clock::now();
    bool match = serial == parallel;
    std::printf("prime_table  limit=%llu  serial=%.3fs  parallel=%.3fs  "
                "speedup=%.2fx  match=%s\n",
                (unsigned long long)limit, seconds(t0, t1), seconds(t1, t2),
                seconds(t0, t1) / seconds(t1, t2), match ? "yes" : "NO");
  }
  {
    const long long qmax = 400;
    auto t0 = Clock::now();
    auto serial = sievelab::weil_check_serial(qmax);
    auto t1 = Clock::now();
    auto parallel = sievelab::weil_check(qmax);
    auto t2 = Clock::now();
    bool match = serial.pairs_checked == parallel.pairs_checked &&
                 serial.violations == parallel.violations &&
                 serial.max_ratio == parallel.max_ratio;
    std::printf("weil_check   qmax=%lld  serial=%.3fs  parallel=%.3fs  "
                "speedup=%.2fx  match=%s\n",
                qmax, seconds(t0, t1), seconds(t1, t2),
                seconds(t0, t1) / seconds(t1, t2), match ? "yes" : "NO");
  }
  return 0;
}
