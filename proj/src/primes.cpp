#include "sievelab/primes.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "sievelab/errors.hpp"

namespace sievelab {

namespace {
constexpr uint64_t kLimitCap = 200'000'000;  // memory budget for one run
constexpr uint64_t kSegment = 1 << 20;
}  // namespace

std::vector<uint32_t> prime_table_serial(uint64_t limit) {
  if (limit < 2) throw domain_error("prime_table: limit must be >= 2");
  if (limit > kLimitCap)
    throw resource_error(
        "prime_table: limit exceeds memory budget; raise the segment count "
        "and lower the limit");
  std::vector<bool> comp(limit + 1, false);
  std::vector<uint32_t> primes;
  for (uint64_t i = 2; i <= limit; ++i) {
    if (!comp[i]) {
      primes.push_back((uint32_t)i);
      for (uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
    }
  }
  return primes;
}

std::vector<uint32_t> prime_table(uint64_t limit, int workers) {
  if (limit < 2) throw domain_error("prime_table: limit must be >= 2");
  if (limit > kLimitCap)
    throw resource_error(
        "prime_table: limit exceeds memory budget; raise the segment count "
        "and lower the limit");
  uint64_t root = (uint64_t)std::sqrt((double)limit) + 2;
  while (root * root > limit + 1) --root;
  std::vector<uint32_t> base = prime_table_serial(std::max<uint64_t>(root, 2));

  uint64_t nseg = (limit + 1 + kSegment - 1) / kSegment;
  std::vector<std::vector<uint32_t>> per_seg(nseg);

  int nthreads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (int64_t s = 0; s < (int64_t)nseg; ++s) {
    uint64_t lo = (uint64_t)s * kSegment;
    uint64_t hi = std::min(lo + kSegment - 1, limit);
    std::vector<bool> comp(hi - lo + 1, false);
    for (uint32_t p : base) {
      uint64_t pp = (uint64_t)p * p;
      if (pp > hi) break;
      uint64_t start = pp >= lo ? pp : ((lo + p - 1) / p) * p;
      for (uint64_t j = start; j <= hi; j += p) comp[j - lo] = true;
    }
    auto& out = per_seg[s];
    for (uint64_t v = std::max<uint64_t>(lo, 2); v <= hi; ++v) {
      if (!comp[v - lo]) out.push_back((uint32_t)v);
    }
  }

  // Deterministic ordered merge.
  size_t total = 0;
  for (auto& v : per_seg) total += v.size();
  std::vector<uint32_t> primes;
  primes.reserve(total);
  for (auto& v : per_seg) primes.insert(primes.end(), v.begin(), v.end());
  return primes;
}

std::vector<uint32_t> spf_table(uint32_t limit) {
  if ((uint64_t)limit > kLimitCap)
    throw resource_error("spf_table: limit exceeds memory budget");
  std::vector<uint32_t> spf(limit + 1, 0);
  for (uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      for (uint64_t j = i; j <= limit; j += i) {
        if (spf[j] == 0) spf[j] = (uint32_t)i;
      }
    }
  }
  return spf;
}

}  // namespace sievelab
