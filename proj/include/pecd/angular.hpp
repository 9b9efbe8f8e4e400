#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

namespace pecd::angular {

using cplx = std::complex<double>;

struct EulerAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

// Wigner 3j symbol (j1 j2 j3; m1 m2 m3) for integer arguments.
// Selection-rule violations give 0. Values are memoized.
double wigner_3j(int j1, int j2, int j3, int m1, int m2, int m3);

// Same symbol computed with exact rational arithmetic; slow, for cross-checks.
double wigner_3j_exact(int j1, int j2, int j3, int m1, int m2, int m3);

// Integral of conj(Y_l^m) Y_1^q Y_lo^mo over the sphere.
double gaunt_S(int l, int m, int q, int lo, int mo);

// Reduced rotation matrix element d^j_{m'm}(beta).
double wigner_small_d(int j, int mprime, int m, double beta);

// D^j_{m'm}(alpha,beta,gamma) = exp(-i m' alpha) d^j_{m'm}(beta) exp(-i m gamma).
cplx wigner_D(int j, int mprime, int m, const EulerAngles& omega);

// Associated Legendre function including the Condon-Shortley phase,
// P_1^1(x) = -sqrt(1-x^2). Negative mu uses the standard reflection.
double assoc_legendre(int L, int mu, double x);

// Legendre polynomial P_L(x).
double legendre(int L, double x);

// Complex spherical harmonic Y_l^m(theta, phi), Condon-Shortley convention.
cplx spherical_harmonic(int l, int m, double theta, double phi);

// Labels of the real-harmonic naming table (S0, PZ, PX, ..., F3b).
struct RealHarmonic {
    int l;
    int m;     // |m|
    char kind; // '0' for m = 0, 'c' for cos type, 's' for sin type
    int sign;  // +1, or -1 when the tabulated polynomial is the negative of the standard one
};

// Throws ValidationError for unknown labels.
RealHarmonic real_harmonic(const std::string& label);

// Real-harmonic coefficients to coefficients on complex Y_l^m.
std::map<std::pair<int, int>, cplx> real_to_complex_coeffs(const std::map<std::string, double>& real_coeffs);

} // namespace pecd::angular
