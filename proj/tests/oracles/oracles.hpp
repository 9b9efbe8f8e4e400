#pragma once

// Independent reference implementations used only by the tests. None of these
// call into the library's own algorithms for the quantity they check.

#include <complex>
#include <vector>

namespace oracle_ref {

using cplx = std::complex<double>;

// <j1 m1 j2 m2 | J M> built from the angular-momentum ladder operators in the
// product basis (highest-weight state from the kernel of J+, then lowering).
double clebsch_gordan_ladder(int j1, int m1, int j2, int m2, int J, int M);

// 3j symbol from the ladder-operator Clebsch-Gordan coefficient.
double threej_ladder(int j1, int j2, int j3, int m1, int m2, int m3);

// D^j_{m'm}(alpha, beta, gamma) as a matrix element of
// exp(-i alpha Jz) exp(-i beta Jy) exp(-i gamma Jz), via matrix exponentials.
cplx wigner_D_expm(int j, int mprime, int m, double alpha, double beta, double gamma);

// Lanczos approximation (g = 7, n = 9) of log Gamma(z) for Re z > 0.
cplx lanczos_log_gamma(cplx z);

// Energy-normalized Coulomb function from the Kummer power series in 100-digit arithmetic.
double coulomb_G_series(int l, double k, double r);

// Hydrogen R_{nl} from Boost's associated Laguerre polynomials and tgamma.
double hydrogen_R_boost(int n, int l, double r);

// Adaptive Gauss-Kronrod (tolerance 1e-12) of (4 pi/3) \int r^3 G R dr with the series G.
double radial_integral_adaptive(int n, int lo, int l, double k);

// Direct two-dimensional quadrature of \int conj(Y_lm) Y_1q Y_lo,mo dOmega,
// with the harmonics built from explicit trigonometric formulas (l <= 3).
double gaunt_quadrature(int l, int m, int q, int lo, int mo);

// Y_l^m from explicit Cartesian polynomials, l <= 3.
cplx ylm_explicit(int l, int m, double theta, double phi);

} // namespace oracle_ref
