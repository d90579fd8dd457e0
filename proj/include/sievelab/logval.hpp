#pragma once

#include <cmath>
#include <map>

namespace sievelab {

/// Integer combination of {log p : p prime}, kept symbolic so identity checks
/// (Heath-Brown, von Mangoldt) are exact. log 1 is the empty combination.
class LogVal {
 public:
  LogVal() = default;

  /// log n for a positive integer n, via its factorization.
  static LogVal log_of(long long n);

  void add_term(long long prime, long long coeff) {
    if (coeff == 0) return;
    auto it = coeffs_.find(prime);
    if (it == coeffs_.end()) {
      coeffs_.emplace(prime, coeff);
    } else {
      it->second += coeff;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  LogVal& operator+=(const LogVal& o) {
    for (auto& [p, c] : o.coeffs_) add_term(p, c);
    return *this;
  }
  LogVal& scaled_add(long long k, const LogVal& o) {
    for (auto& [p, c] : o.coeffs_) add_term(p, k * c);
    return *this;
  }

  bool is_zero() const { return coeffs_.empty(); }
  bool operator==(const LogVal& o) const { return coeffs_ == o.coeffs_; }

  double to_double() const {
    double v = 0;
    for (auto& [p, c] : coeffs_) v += (double)c * std::log((double)p);
    return v;
  }

  const std::map<long long, long long>& coeffs() const { return coeffs_; }

 private:
  std::map<long long, long long> coeffs_;
};

}  // namespace sievelab
