#pragma once

#include <complex>
#include <vector>

namespace sievelab {

/// Smooth bump: indicator of [3/4, 9/4] convolved with a normalized C-infinity
/// mollifier of half-width 1/4, giving support exactly [1/2, 5/2] and value 1
/// on [1, 2].
double psi0_eval(double t);

/// Fourier transform psi0_hat(xi) = integral of psi0(t) e(-xi t) dt, computed
/// as the product of the interval transform (closed form) and the mollifier
/// transform (composite Gauss-Legendre with panel count scaled by |xi|;
/// doubled-panel agreement below 1e-10 is enforced, otherwise numeric_error).
std::complex<double> psi0_fourier(double xi);

/// Measured sup-norms of psi0^(j) for j = 0..j_max (central finite
/// differences on a fine grid); informational.
std::vector<double> psi0_derivative_sup_norms(int j_max);

}  // namespace sievelab
