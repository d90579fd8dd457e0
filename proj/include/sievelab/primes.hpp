#pragma once

#include <cstdint>
#include <vector>

namespace sievelab {

/// Segmented sieve of Eratosthenes, OpenMP-parallel over segments.
/// Complete, sorted, duplicate-free list of primes <= limit.
/// workers = 0 means use the current OpenMP default.
std::vector<uint32_t> prime_table(uint64_t limit, int workers = 0);

/// Serial reference implementation kept for testing and benchmarking.
std::vector<uint32_t> prime_table_serial(uint64_t limit);

/// Smallest-prime-factor table for 2..limit (spf[0] = spf[1] = 0).
std::vector<uint32_t> spf_table(uint32_t limit);

}  // namespace sievelab
