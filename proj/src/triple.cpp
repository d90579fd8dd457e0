#include "sievelab/triple.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>

namespace sievelab {

namespace {

mpz_class zpow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

mpz_class to_mpz(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
  mpz_class hi = (unsigned long)(u >> 64);
  mpz_class r = (hi << 64) + mpz_class((unsigned long)u);
  return neg ? mpz_class(-r) : r;
}

// Sign of L - R * x^rho, exact.
int cmp_mul_xpow(const mpz_class& L, const mpz_class& R, long long x,
                 const Rat& rho) {
  long long p = rho.num();
  unsigned long q = (unsigned long)rho.den();
  mpz_class lhs = zpow(L, q);
  mpz_class rhs = zpow(R, q);
  if (p >= 0) {
    rhs *= zpow(mpz_class((unsigned long)x), (unsigned long)p);
  } else {
    lhs *= zpow(mpz_class((unsigned long)x), (unsigned long)(-p));
  }
  return cmp(lhs, rhs);
}

}  // namespace

void ExponentTuple::validate() const {
  Rat prev;
  bool first = true;
  for (const Rat& v : nu) {
    if (v <= Rat(0))
      throw domain_error("ExponentTuple: named exponents must be positive");
    if (!first && v > prev)
      throw domain_error("ExponentTuple: named exponents must be non-increasing");
    prev = v;
    first = false;
  }
  if (mass < Rat(0)) throw domain_error("ExponentTuple: negative small mass");
  if (total() > Rat(1)) throw domain_error("ExponentTuple: total exceeds 1");
}

std::string case_name(CaseTag c) {
  switch (c) {
    case CaseTag::c1: return "1";
    case CaseTag::c2: return "2";
    case CaseTag::c3: return "3";
    case CaseTag::c4: return "4";
    case CaseTag::c4b: return "4b";
  }
  return "?";
}

Rat d_exponent(const Rat& delta) { return Rat(7, 12) - Rat(50) * delta; }

ConstraintSet ConstraintSet::prop91() {
  ConstraintSet s;
  s.name = "PROP91";
  s.ineqs = {
      {"d1 <= N/x^delta", -1, {1, 0, 0}, Rat(0), Rat(0), Rat(-1), false},
      {"N^2 d2 d3^2 <= x^(1-delta)", 2, {0, 1, 2}, Rat(1), Rat(0), Rat(-1),
       false},
      {"N^2 d1 d2^4 d3^3 <= x^(2-delta)", 2, {1, 4, 3}, Rat(2), Rat(0),
       Rat(-1), false},
      {"N d1 d2^5 d3^2 <= x^(2-delta)", 1, {1, 5, 2}, Rat(2), Rat(0), Rat(-1),
       false},
  };
  return s;
}

ConstraintSet ConstraintSet::mainprop() {
  ConstraintSet s;
  s.name = "MAINPROP";
  s.ineqs = {
      {"Q1 < N/x^eps", -1, {1, 0, 0}, Rat(0), Rat(-1), Rat(0), true},
      {"N^2 Q2 Q3^2 < x^(1-8eps)", 2, {0, 1, 2}, Rat(1), Rat(-8), Rat(0),
       true},
      {"N^2 Q1 Q2^4 Q3^3 < x^(2-15eps)", 2, {1, 4, 3}, Rat(2), Rat(-15),
       Rat(0), true},
      {"N Q1 Q2^5 Q3^2 < x^(2-15eps)", 1, {1, 5, 2}, Rat(2), Rat(-15), Rat(0),
       true},
  };
  return s;
}

bool exponent_in_Dplus(const ExponentTuple& d, const Rat& d_exp) {
  if (d.total() > d_exp) return false;
  Rat prefix;
  for (size_t i = 0; i < d.nu.size(); i += 2) {
    if (prefix + Rat(3) * d.nu[i] > d_exp) return false;
    prefix += d.nu[i];
    if (i + 1 < d.nu.size()) prefix += d.nu[i + 1];
  }
  return true;
}

bool is_in_Dplus_x(const FactoredInteger& d, long long x, const Rat& rho) {
  mpz_class prefix = 1;
  const auto& p = d.flattened;
  for (size_t j = 0; 2 * j + 1 <= p.size(); ++j) {
    mpz_class t = prefix * (long)p[2 * j] * (long)p[2 * j] * (long)p[2 * j];
    if (cmp_mul_xpow(t, 1, x, rho) > 0) return false;
    if (2 * j + 2 <= p.size()) {
      prefix *= (long)p[2 * j];
      prefix *= (long)p[2 * j + 1];
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Exponent-mode greedy machinery.

namespace {

// Greedy bin choice: any bin with room, preferring the largest remaining
// capacity (exponent difference = value-space capacity ratio); ties resolve
// to the lowest index via the strict improvement test.
int place_exp(std::vector<Rat>& content, const std::vector<Rat>& cap,
              const Rat& w) {
  int best = -1;
  for (size_t i = 0; i < cap.size(); ++i) {
    if (content[i] + w <= cap[i]) {
      if (best < 0 ||
          cap[i] - content[i] > cap[best] - content[best])
        best = (int)i;
    }
  }
  if (best >= 0) content[best] += w;
  return best;
}

// Water-fill the divisible mass through the bins in the given order.
Rat fill_mass(std::vector<Rat>& content, const std::vector<Rat>& cap,
              const std::vector<int>& order, Rat mass) {
  for (int i : order) {
    if (mass <= Rat(0)) break;
    Rat room = cap[i] - content[i];
    if (room <= Rat(0)) continue;
    Rat take = std::min(room, mass);
    content[i] += take;
    mass -= take;
  }
  return mass;
}

// Cases 1-3 share one shape: d2 is a fixed product of named exponents, the
// rest goes greedily into bins with caps c1, c3 and the mass tops them up.
TripleExp two_bin_case(const ExponentTuple& d, const Rat& d2, const Rat& c1,
                       const Rat& c3, const std::vector<size_t>& skip,
                       CaseTag tag) {
  std::vector<Rat> cap = {c1, c3};
  std::vector<Rat> content = {Rat(0), Rat(0)};
  for (size_t i = 0; i < d.nu.size(); ++i) {
    if (std::find(skip.begin(), skip.end(), i) != skip.end()) continue;
    if (place_exp(content, cap, d.nu[i]) < 0)
      throw invariant_error("propose_triple: greedy stuck in case " +
                            case_name(tag));
  }
  if (fill_mass(content, cap, {0, 1}, d.mass) > Rat(0))
    throw invariant_error("propose_triple: mass overflow in case " +
                          case_name(tag));
  TripleExp out;
  out.e = {content[0], d2, content[1]};
  out.case_used = tag;
  return out;
}

}  // namespace

TripleExp propose_triple_exp(const ExponentTuple& d, const Rat& n_exp,
                             const Rat& delta) {
  d.validate();
  if (delta <= Rat(0) || delta >= Rat(1, 1000))
    throw domain_error("propose_triple: need 0 < delta < 1/1000");
  const Rat Dx = d_exponent(delta);
  if (n_exp < Rat(2) * delta || n_exp > Rat(1, 3) + delta / Rat(2))
    throw domain_error(
        "propose_triple: N outside [x^(2 delta), x^(1/3 + delta/2)]");
  if (!exponent_in_Dplus(d, Dx))
    throw domain_error("propose_triple: d not in the support set of level D");

  auto nu = [&](size_t i) { return i < d.nu.size() ? d.nu[i] : Rat(0); };
  const Rat T = Rat(2) * Dx - Rat(1) + Rat(3) * delta;

  if (nu(0) >= T) {
    return two_bin_case(d, nu(0), n_exp - delta, Dx + delta - n_exp - nu(0),
                        {0}, CaseTag::c1);
  }
  if (nu(1) + nu(2) >= T) {
    Rat d2 = nu(1) + nu(2);
    return two_bin_case(d, d2, n_exp - Rat(2) * delta,
                        Dx + Rat(2) * delta - n_exp - d2, {1, 2}, CaseTag::c2);
  }
  if (nu(0) + nu(3) >= T) {
    Rat d2 = nu(0) + nu(3);
    return two_bin_case(d, d2, n_exp - Rat(2) * delta,
                        Dx + Rat(2) * delta - n_exp - d2, {0, 3}, CaseTag::c3);
  }

  // Case 4. Caps multiply (add, in exponents) to exactly D.
  const Rat C1 = n_exp - delta;
  const Rat C2 = T;
  const Rat C3 = Rat(1) - Rat(2) * delta - Dx - n_exp;
  std::vector<Rat> cap = {C1, C2, C3};
  std::vector<Rat> content = {Rat(0), nu(0) + nu(3), Rat(0)};
  if (content[1] > C2)
    throw invariant_error("propose_triple: case-4 seed exceeds its cap");
  const Rat unit = nu(1) + nu(2);
  if (unit + content[0] <= C1) {
    content[0] += unit;
  } else if (unit <= C3) {
    content[2] = unit;
  } else {
    throw invariant_error("propose_triple: case-4 unit fits neither end bin");
  }

  CaseTag tag = CaseTag::c4;
  size_t i = 4;
  for (; i < d.nu.size(); ++i) {
    if (place_exp(content, cap, d.nu[i]) >= 0) continue;
    // Stuck: the proof forces this to happen first at an even stage >= 6,
    // with p_j <= x^(1/12 - 6 delta).
    size_t j = i + 1;
    if (j % 2 != 0 || j < 6)
      throw invariant_error("propose_triple: stuck at an odd or early stage");
    const Rat bump = Rat(1, 12) - Rat(6) * delta;
    if (d.nu[i] > bump)
      throw invariant_error("propose_triple: stuck prime above x^(1/12-6delta)");
    content[1] += d.nu[i];
    const Rat C3p = C2 + C3 - content[1];  // D3' = D2*D3/d2'
    tag = CaseTag::c4b;
    std::vector<Rat> cap2 = {C1, C3p};
    std::vector<Rat> bins2;
    if (content[2] <= C3p) {
      bins2 = {content[0], content[2]};
      for (size_t k = i + 1; k < d.nu.size(); ++k) {
        if (place_exp(bins2, cap2, d.nu[k]) < 0)
          throw invariant_error("propose_triple: greedy stuck after repair");
      }
    } else {
      // Re-form d1 and d3 from scratch out of everything not in d2'.
      std::vector<Rat> items = {nu(1), nu(2)};
      for (size_t k = 4; k < d.nu.size(); ++k)
        if (k != i) items.push_back(d.nu[k]);
      std::sort(items.begin(), items.end(),
                [](const Rat& a, const Rat& b) { return b < a; });
      bins2 = {Rat(0), Rat(0)};
      for (const Rat& w : items) {
        if (place_exp(bins2, cap2, w) < 0)
          throw invariant_error("propose_triple: repair re-split failed");
      }
    }
    if (fill_mass(bins2, cap2, {0, 1}, d.mass) > Rat(0))
      throw invariant_error("propose_triple: mass overflow after repair");
    TripleExp out;
    out.e = {bins2[0], content[1], bins2[1]};
    out.case_used = tag;
    return out;
  }
  if (fill_mass(content, cap, {0, 2, 1}, d.mass) > Rat(0))
    throw invariant_error("propose_triple: mass overflow in case 4");
  TripleExp out;
  out.e = {content[0], content[1], content[2]};
  out.case_used = tag;
  return out;
}

// ---------------------------------------------------------------------------
// Integer-mode greedy machinery. Caps have the form (A/B) * x^rho; all
// comparisons against them go through exact big-integer powering.

namespace {

struct CapX {
  long long A = 1;
  long long B = 1;
  Rat rho;
};

bool fits_cap(__int128 candidate, const CapX& cap, long long x) {
  mpz_class L = to_mpz(candidate) * (long)cap.B;
  return cmp_mul_xpow(L, mpz_class((unsigned long)cap.A), x, cap.rho) <= 0;
}

// Remaining capacity ratio of bin i strictly exceeds bin j's.
bool ratio_greater_int(const CapX& ci, long long vi, const CapX& cj,
                       long long vj, long long x) {
  mpz_class L = mpz_class((unsigned long)ci.A) * (long)cj.B * (long)vj;
  mpz_class R = mpz_class((unsigned long)cj.A) * (long)ci.B * (long)vi;
  return cmp_mul_xpow(L, R, x, cj.rho - ci.rho) > 0;
}

int place_int(std::vector<long long>& content, const std::vector<CapX>& cap,
              long long p, long long x) {
  int best = -1;
  for (size_t i = 0; i < cap.size(); ++i) {
    if (!fits_cap((__int128)content[i] * p, cap[i], x)) continue;
    if (best < 0 || ratio_greater_int(cap[i], content[i], cap[best],
                                      content[best], x))
      best = (int)i;
  }
  if (best >= 0) {
    __int128 t = (__int128)content[best] * p;
    content[best] = (long long)t;
  }
  return best;
}

TripleInt two_bin_case_int(const FactoredInteger& d, long long d2,
                           const CapX& c1, const CapX& c3,
                           const std::vector<size_t>& skip, CaseTag tag,
                           long long x) {
  std::vector<CapX> cap = {c1, c3};
  std::vector<long long> content = {1, 1};
  for (size_t i = 0; i < d.flattened.size(); ++i) {
    if (std::find(skip.begin(), skip.end(), i) != skip.end()) continue;
    if (place_int(content, cap, d.flattened[i], x) < 0)
      throw invariant_error("propose_triple: greedy stuck in case " +
                            case_name(tag));
  }
  TripleInt out;
  out.d = {content[0], d2, content[1]};
  out.case_used = tag;
  return out;
}

}  // namespace

TripleInt propose_triple_int(const FactoredInteger& d, long long N,
                             const GlobalParams& params) {
  params.validate();
  const long long x = params.x;
  const Rat& delta = params.delta;
  const Rat Dx = d_exponent(delta);
  if (N < 1 ||
      cmp_mul_xpow(mpz_class((unsigned long)N), 1, x, Rat(2) * delta) <
          0 ||
      cmp_mul_xpow(mpz_class((unsigned long)N), 1, x,
                   Rat(1, 3) + delta / Rat(2)) > 0)
    throw domain_error(
        "propose_triple: N outside [x^(2 delta), x^(1/3 + delta/2)]");
  if (!is_in_Dplus_x(d, x, Dx))
    throw domain_error("propose_triple: d not in the support set of level D");

  const auto& p = d.flattened;
  auto pr = [&](size_t i) -> long long { return i < p.size() ? p[i] : 1; };
  const Rat T = Rat(2) * Dx - Rat(1) + Rat(3) * delta;
  auto at_least_xT = [&](long long v) {
    return cmp_mul_xpow(mpz_class((unsigned long)v), 1, x, T) >= 0;
  };

  if (at_least_xT(pr(0))) {
    CapX c1{N, 1, -delta};
    CapX c3{1, (long long)((__int128)N * pr(0)), Dx + delta};
    return two_bin_case_int(d, pr(0), c1, c3, {0}, CaseTag::c1, x);
  }
  if (at_least_xT(pr(1) * pr(2))) {
    long long d2 = pr(1) * pr(2);
    CapX c1{N, 1, -Rat(2) * delta};
    CapX c3{1, (long long)((__int128)N * d2), Dx + Rat(2) * delta};
    return two_bin_case_int(d, d2, c1, c3, {1, 2}, CaseTag::c2, x);
  }
  if (at_least_xT(pr(0) * pr(3))) {
    long long d2 = pr(0) * pr(3);
    CapX c1{N, 1, -Rat(2) * delta};
    CapX c3{1, (long long)((__int128)N * d2), Dx + Rat(2) * delta};
    return two_bin_case_int(d, d2, c1, c3, {0, 3}, CaseTag::c3, x);
  }

  const CapX C1{N, 1, -delta};
  const CapX C2{1, 1, T};
  const CapX C3{1, N, Rat(1) - Rat(2) * delta - Dx};
  std::vector<CapX> cap = {C1, C2, C3};
  std::vector<long long> content = {1, pr(0) * pr(3), 1};
  if (!fits_cap(content[1], C2, x))
    throw invariant_error("propose_triple: case-4 seed exceeds its cap");
  long long unit = pr(1) * pr(2);
  if (fits_cap((__int128)unit, C1, x)) {
    content[0] = unit;
  } else if (fits_cap((__int128)unit, C3, x)) {
    content[2] = unit;
  } else {
    throw invariant_error("propose_triple: case-4 unit fits neither end bin");
  }

  CaseTag tag = CaseTag::c4;
  for (size_t i = 4; i < p.size(); ++i) {
    if (place_int(content, cap, p[i], x) >= 0) continue;
    size_t j = i + 1;
    if (j % 2 != 0 || j < 6)
      throw invariant_error("propose_triple: stuck at an odd or early stage");
    const Rat bump = Rat(1, 12) - Rat(6) * delta;
    if (cmp_mul_xpow(mpz_class((unsigned long)p[i]), 1, x, bump) > 0)
      throw invariant_error("propose_triple: stuck prime above x^(1/12-6delta)");
    content[1] *= p[i];
    tag = CaseTag::c4b;
    // D3' = D2*D3/d2'
    CapX C3p{1, (long long)((__int128)N * content[1]),
             T + C3.rho};
    std::vector<CapX> cap2 = {C1, C3p};
    std::vector<long long> bins2;
    if (fits_cap((__int128)content[2], C3p, x)) {
      bins2 = {content[0], content[2]};
      for (size_t k = i + 1; k < p.size(); ++k) {
        if (place_int(bins2, cap2, p[k], x) < 0)
          throw invariant_error("propose_triple: greedy stuck after repair");
      }
    } else {
      std::vector<long long> items = {pr(1), pr(2)};
      for (size_t k = 4; k < p.size(); ++k)
        if (k != i) items.push_back(p[k]);
      std::sort(items.begin(), items.end(), std::greater<>());
      bins2 = {1, 1};
      for (long long w : items) {
        if (place_int(bins2, cap2, w, x) < 0)
          throw invariant_error("propose_triple: repair re-split failed");
      }
    }
    TripleInt out;
    out.d = {bins2[0], content[1], bins2[1]};
    out.case_used = tag;
    return out;
  }
  TripleInt out;
  out.d = {content[0], content[1], content[2]};
  out.case_used = tag;
  return out;
}

// ---------------------------------------------------------------------------
// Constraint evaluation.

CheckRecord check_constraints_exp(const std::array<Rat, 3>& e,
                                  const Rat& n_exp, const Rat& epsilon,
                                  const Rat& delta, const ConstraintSet& set) {
  CheckRecord rec;
  rec.all_pass = true;
  for (const Inequality& q : set.ineqs) {
    Rat lhs = Rat(q.n_pow) * n_exp;
    for (int i = 0; i < 3; ++i) lhs += Rat(q.d_pow[i]) * e[i];
    Rat rhs = q.rhs_exp(epsilon, delta);
    bool pass = q.strict ? lhs < rhs : lhs <= rhs;
    Rat margin = rhs - lhs;
    rec.rows.push_back({q.label, pass, margin.to_double(), margin});
    rec.all_pass = rec.all_pass && pass;
  }
  return rec;
}

CheckRecord check_constraints_int(const std::array<long long, 3>& d,
                                  long long N, const GlobalParams& params,
                                  const ConstraintSet& set) {
  for (long long v : d)
    if (v < 1) throw domain_error("check_constraints: components must be >= 1");
  CheckRecord rec;
  rec.all_pass = true;
  for (const Inequality& q : set.ineqs) {
    mpz_class lhs = 1, rhs = 1;
    if (q.n_pow > 0)
      lhs *= zpow(mpz_class((unsigned long)N), (unsigned long)q.n_pow);
    if (q.n_pow < 0)
      rhs *= zpow(mpz_class((unsigned long)N), (unsigned long)(-q.n_pow));
    for (int i = 0; i < 3; ++i)
      lhs *= zpow(mpz_class((unsigned long)d[i]),
                  (unsigned long)q.d_pow[i]);
    Rat rho = q.rhs_exp(params.epsilon, params.delta);
    int c = cmp_mul_xpow(lhs, rhs, params.x, rho);
    bool pass = q.strict ? c < 0 : c <= 0;
    double margin = rho.to_double() -
                    (std::log(lhs.get_d()) - std::log(rhs.get_d())) /
                        std::log((double)params.x);
    rec.rows.push_back({q.label, pass, margin, std::nullopt});
    rec.all_pass = rec.all_pass && pass;
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Feasibility oracles.

namespace {

// Halfspace a*u + b*v + e*t <= c over (m1, m2, slack).
struct HalfSpace {
  Rat a, b, e, c;
  Rat eval(const Rat& u, const Rat& v, const Rat& t) const {
    return a * u + b * v + e * t - c;
  }
};

// Closed 2D feasibility by vertex enumeration (the region is bounded, so any
// nonempty region has a vertex at the intersection of two boundaries).
std::optional<std::pair<Rat, Rat>> feasible_2d(
    const std::vector<HalfSpace>& hs) {
  for (size_t i = 0; i < hs.size(); ++i) {
    for (size_t j = i + 1; j < hs.size(); ++j) {
      Rat det = hs[i].a * hs[j].b - hs[j].a * hs[i].b;
      if (det == Rat(0)) continue;
      Rat u = (hs[i].c * hs[j].b - hs[j].c * hs[i].b) / det;
      Rat v = (hs[i].a * hs[j].c - hs[j].a * hs[i].c) / det;
      bool ok = true;
      for (const HalfSpace& h : hs) {
        if (h.eval(u, v, Rat(0)) > Rat(0)) {
          ok = false;
          break;
        }
      }
      if (ok) return std::make_pair(u, v);
    }
  }
  return std::nullopt;
}

// Max-slack lift for systems with strict rows: maximize t subject to the
// closed rows and slack rows a*u + b*v + t <= c; the strict system is
// solvable iff the optimum is positive.
std::optional<std::pair<Rat, Rat>> feasible_strict(
    const std::vector<HalfSpace>& rows) {
  bool found = false;
  Rat best_t;
  std::pair<Rat, Rat> best_pt;
  size_t n = rows.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      for (size_t k = j + 1; k < n; ++k) {
        const HalfSpace &A = rows[i], &B = rows[j], &C = rows[k];
        Rat det = A.a * (B.b * C.e - C.b * B.e) -
                  A.b * (B.a * C.e - C.a * B.e) +
                  A.e * (B.a * C.b - C.a * B.b);
        if (det == Rat(0)) continue;
        Rat u = (A.c * (B.b * C.e - C.b * B.e) -
                 A.b * (B.c * C.e - C.c * B.e) +
                 A.e * (B.c * C.b - C.c * B.b)) /
                det;
        Rat v = (A.a * (B.c * C.e - C.c * B.e) -
                 A.c * (B.a * C.e - C.a * B.e) +
                 A.e * (B.a * C.c - C.a * B.c)) /
                det;
        Rat t = (A.a * (B.b * C.c - C.b * B.c) -
                 A.b * (B.a * C.c - C.a * B.c) +
                 A.c * (B.a * C.b - C.a * B.b)) /
                det;
        bool ok = true;
        for (const HalfSpace& h : rows) {
          if (h.eval(u, v, t) > Rat(0)) {
            ok = false;
            break;
          }
        }
        if (ok && (!found || t > best_t)) {
          found = true;
          best_t = t;
          best_pt = {u, v};
        }
      }
    }
  }
  if (found && best_t > Rat(0)) return best_pt;
  return std::nullopt;
}

}  // namespace

std::optional<TripleExp> oracle_feasible_exp(const ExponentTuple& d,
                                             const Rat& n_exp,
                                             const Rat& epsilon,
                                             const Rat& delta,
                                             const ConstraintSet& set) {
  d.validate();
  const size_t r = d.nu.size();
  if (r > 12)
    throw resource_error("oracle_feasible: at most 12 named exponents");
  bool any_strict = false;
  for (const Inequality& q : set.ineqs) any_strict = any_strict || q.strict;

  size_t total = 1;
  for (size_t i = 0; i < r; ++i) total *= 3;
  for (size_t code = 0; code < total; ++code) {
    std::array<Rat, 3> s{Rat(0), Rat(0), Rat(0)};
    size_t c = code;
    for (size_t i = 0; i < r; ++i) {
      s[c % 3] += d.nu[i];
      c /= 3;
    }
    // Split the divisible mass: variables (m1, m2), m3 = mass - m1 - m2.
    std::vector<HalfSpace> rows;
    rows.push_back({Rat(-1), Rat(0), Rat(0), Rat(0)});       // m1 >= 0
    rows.push_back({Rat(0), Rat(-1), Rat(0), Rat(0)});       // m2 >= 0
    rows.push_back({Rat(1), Rat(1), Rat(0), d.mass});        // m3 >= 0
    for (const Inequality& q : set.ineqs) {
      Rat base = Rat(q.n_pow) * n_exp + Rat(q.d_pow[2]) * d.mass;
      for (int i = 0; i < 3; ++i) base += Rat(q.d_pow[i]) * s[i];
      Rat a = Rat(q.d_pow[0] - q.d_pow[2]);
      Rat b = Rat(q.d_pow[1] - q.d_pow[2]);
      Rat rhs = q.rhs_exp(epsilon, delta) - base;
      rows.push_back({a, b, Rat(0), rhs});
      if (q.strict) rows.push_back({a, b, Rat(1), rhs});
    }
    std::optional<std::pair<Rat, Rat>> pt =
        any_strict ? feasible_strict(rows) : feasible_2d(rows);
    if (pt) {
      TripleExp out;
      Rat m1 = pt->first, m2 = pt->second;
      out.e = {s[0] + m1, s[1] + m2, s[2] + (d.mass - m1 - m2)};
      out.case_used = CaseTag::c4;
      return out;
    }
  }
  return std::nullopt;
}

std::optional<TripleInt> oracle_feasible_int(long long d, long long N,
                                             const GlobalParams& params,
                                             const ConstraintSet& set) {
  if (d < 1) throw domain_error("oracle_feasible: d must be positive");
  if (tau_k(d, 3) > 10000000)
    throw resource_error("oracle_feasible: tau_3(d) exceeds 10^7");
  std::vector<long long> divs;
  for (long long i = 1; i * i <= d; ++i) {
    if (d % i == 0) {
      divs.push_back(i);
      if (i != d / i) divs.push_back(d / i);
    }
  }
  std::sort(divs.begin(), divs.end());
  for (long long d1 : divs) {
    long long rest = d / d1;
    for (long long d2 : divs) {
      if (rest % d2 != 0) continue;
      std::array<long long, 3> t{d1, d2, rest / d2};
      if (check_constraints_int(t, N, params, set).all_pass) {
        TripleInt out;
        out.d = t;
        out.case_used = CaseTag::c4;
        return out;
      }
    }
  }
  return std::nullopt;
}

ExtremalReport extremal_witness(const Rat& delta_prime) {
  if (delta_prime <= Rat(0) || delta_prime > Rat(1, 100))
    throw domain_error("extremal_witness: need 0 < delta' <= 1/100");
  ExtremalReport rep;
  rep.d_exp = Rat(7, 12) + delta_prime;
  Rat big = Rat(2, 7) * rep.d_exp;
  Rat small = Rat(1, 7) * rep.d_exp;
  rep.tuple.nu = {big, big, small, small};
  rep.tuple.mass = rep.d_exp / Rat(7);
  rep.member = exponent_in_Dplus(rep.tuple, rep.d_exp);
  rep.feasible = oracle_feasible_exp(rep.tuple, Rat(1, 3), Rat(1, 100),
                                     delta_prime, ConstraintSet::prop91())
                     .has_value();
  return rep;
}

ExponentTuple random_admissible_tuple(std::mt19937_64& rng, const Rat& d_exp,
                                      int max_named) {
  constexpr long long G = 2520;  // exponent grid denominator
  auto floor_times_G = [&](const Rat& v) -> long long {
    if (v <= Rat(0)) return 0;
    return (long long)(((__int128)v.num() * G) / v.den());
  };
  ExponentTuple t;
  int r = (int)(rng() % (unsigned)(max_named + 1));
  Rat prev = d_exp;
  Rat prefix;
  for (int i = 0; i < r; ++i) {
    Rat ub = (i % 2 == 0) ? (d_exp - prefix) / Rat(3) : d_exp - prefix;
    ub = std::min(ub, prev);
    long long hi = floor_times_G(ub);
    if (hi < 1) break;
    Rat v((long long)(1 + rng() % (unsigned long)hi), G);
    t.nu.push_back(v);
    prefix += v;
    prev = v;
  }
  long long hi = floor_times_G(d_exp - prefix);
  if (hi > 0) t.mass = Rat((long long)(rng() % (unsigned long)(hi + 1)), G);
  return t;
}

}  // namespace sievelab
