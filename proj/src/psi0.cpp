#include "sievelab/psi0.hpp"

#include <cmath>
#include <cstdlib>

#include "sievelab/errors.hpp"

namespace sievelab {

namespace {

constexpr double kW = 0.25;  // mollifier half-width
constexpr double kPi = 3.14159265358979323846264338327950288;

// Unnormalized mollifier exp(-1/(1-(s/w)^2)) on (-w, w).
double bump_raw(double s) {
  double u = s / kW;
  double d = 1.0 - u * u;
  if (d <= 1e-14) return 0.0;
  return std::exp(-1.0 / d);
}

// 16-point Gauss-Legendre nodes (positive half) and weights on [-1, 1].
constexpr double kGLx[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGLw[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

template <typename F>
double gl_panels(const F& f, double a, double b, int panels) {
  double total = 0;
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * h;
    double half = 0.5 * h;
    double s = 0;
    for (int i = 0; i < 8; ++i) {
      s += kGLw[i] * (f(mid - half * kGLx[i]) + f(mid + half * kGLx[i]));
    }
    total += s * half;
  }
  return total;
}

// Cumulative integral of the normalized mollifier, tabulated once with the
// exact derivative kept for cubic Hermite interpolation.
struct MollifierTable {
  int n = 1 << 15;  // cells over [-w, w]
  double norm = 1;
  std::vector<double> cum;  // cum[i] = integral_{-w}^{s_i} m, normalized
  std::vector<double> val;  // m(s_i), normalized

  MollifierTable() {
    double total = gl_panels(bump_raw, -kW, kW, 512);
    norm = 1.0 / total;
    cum.resize(n + 1);
    val.resize(n + 1);
    double h = 2 * kW / n;
    double acc = 0;
    cum[0] = 0;
    val[0] = 0;
    for (int i = 1; i <= n; ++i) {
      double a = -kW + (i - 1) * h;
      acc += gl_panels(bump_raw, a, a + h, 1);
      cum[i] = acc * norm;
      val[i] = bump_raw(-kW + i * h) * norm;
    }
    cum[n] = 1.0;  // pin the far end exactly
  }

  // integral of m over [-w, s]
  double at(double s) const {
    if (s <= -kW) return 0;
    if (s >= kW) return 1;
    double h = 2 * kW / n;
    double u = (s + kW) / h;
    int i = (int)u;
    if (i >= n) i = n - 1;
    double t = u - i;
    double y0 = cum[i], y1 = cum[i + 1];
    double d0 = val[i] * h, d1 = val[i + 1] * h;
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * d0 +
           (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * d1;
  }

  double density(double s) const { return bump_raw(s) * norm; }
};

const MollifierTable& table() {
  static MollifierTable t;
  return t;
}

}  // namespace

double psi0_eval(double t) {
  // indicator[3/4, 9/4] * mollifier: integrate m over [t - 9/4, t - 3/4].
  const MollifierTable& tab = table();
  return tab.at(t - 0.75) - tab.at(t - 2.25);
}

std::complex<double> psi0_fourier(double xi) {
  const MollifierTable& tab = table();
  // hat(psi0) = hat(indicator) * hat(m); m is even, so hat(m) is real:
  // hat(m)(xi) = 2 * integral_0^w m(s) cos(2 pi xi s) ds.
  auto integrand = [&](double s) {
    return tab.density(s) * std::cos(2 * kPi * xi * s);
  };
  int panels = 8 + (int)std::ceil(std::abs(xi) * kW);
  double mhat = 2 * gl_panels(integrand, 0, kW, panels);
  double mhat2 = 2 * gl_panels(integrand, 0, kW, 2 * panels);
  if (std::abs(mhat - mhat2) > 1e-10) {
    double mhat4 = 2 * gl_panels(integrand, 0, kW, 4 * panels);
    if (std::abs(mhat2 - mhat4) > 1e-10)
      throw numeric_error("psi0_fourier: quadrature did not converge");
    mhat2 = mhat4;
  }
  if (xi == 0) return std::complex<double>(1.5 * mhat2, 0);
  // integral_{3/4}^{9/4} e(-xi t) dt
  std::complex<double> i2pix(0, 2 * kPi * xi);
  std::complex<double> ind =
      (std::exp(-i2pix * 0.75) - std::exp(-i2pix * 2.25)) / i2pix;
  return ind * mhat2;
}

std::vector<double> psi0_derivative_sup_norms(int j_max) {
  if (j_max < 0 || j_max > 6)
    throw domain_error("psi0_derivative_sup_norms: need 0 <= j <= 6");
  std::vector<double> sup(j_max + 1, 0.0);
  const double h = 0.004;
  for (double t = 0.4; t <= 2.6; t += 1.0 / 1024) {
    for (int j = 0; j <= j_max; ++j) {
      // central difference: sum_i (-1)^i C(j,i) f(t + (j/2 - i) h) / h^j
      double acc = 0;
      double c = 1;
      for (int i = 0; i <= j; ++i) {
        acc += c * psi0_eval(t + (j * 0.5 - i) * h);
        c *= -(double)(j - i) / (i + 1);
      }
      double v = std::abs(acc / std::pow(h, j));
      if (v > sup[j]) sup[j] = v;
    }
  }
  return sup;
}

}  // namespace sievelab
