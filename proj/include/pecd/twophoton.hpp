#pragma once

#include "pecd/angular.hpp"

#include <Eigen/Core>

#include <array>
#include <complex>
#include <optional>
#include <string>

namespace pecd::twophoton {

using cplx = std::complex<double>;

// Real symmetric two-photon tensor, components in a0^2 Eh^-1.
struct CartesianTensor {
    double xx = 0, xy = 0, xz = 0, yy = 0, yz = 0, zz = 0;

    Eigen::Matrix3d matrix() const;
    static CartesianTensor from_matrix(const Eigen::Matrix3d& m); // uses the upper triangle
    CartesianTensor scaled(double f) const;
};

// Components T_{q1 q2}, q = -1, 0, +1.
struct SphericalTensor {
    std::array<std::array<cplx, 3>, 3> c{};

    cplx operator()(int q1, int q2) const { return c[q1 + 1][q2 + 1]; }
    cplx& operator()(int q1, int q2) { return c[q1 + 1][q2 + 1]; }
};

// Throws ValidationError unless rho is -1, 0 or +1.
int check_polarization(int rho, const char* name = "polarization");

SphericalTensor to_spherical(const CartesianTensor& t);
CartesianTensor to_cartesian(const SphericalTensor& t);

// Coupling coefficient g^(K)_{q1 q2 q3 q4}(rho1).
double g_coefficient(int K, int q1, int q2, int q3, int q4, int rho1);

// Orientation average of |sum D D T|^2; zero means the transition is forbidden.
double normalization_B(const SphericalTensor& t, int rho1);

// |sum_{q1 q2} D^1_{q1 rho1} D^1_{q2 rho1} T_{q1 q2}|^2 without normalization.
double rho_2P_unnormalized(const SphericalTensor& t, int rho1, const angular::EulerAngles& omega);

// Normalized orientation density; throws ForbiddenTransition when B vanishes.
double rho_2P(const SphericalTensor& t, int rho1, const angular::EulerAngles& omega);

// True when B is zero relative to the size of the tensor.
bool is_forbidden(const SphericalTensor& t, int rho1);

struct TensorDecomposition {
    double alpha0 = 0;
    std::array<double, 3> diag_aniso{}; // xx, yy, zz minus alpha0
    std::array<double, 3> offdiag{};    // xy, xz, yz
    bool isotropic = false;
};

TensorDecomposition decompose(const CartesianTensor& t);

// Componentwise sign(L) sqrt(L R). Throws ValidationError on a sign mismatch.
CartesianTensor effective_tensor(const CartesianTensor& left, const CartesianTensor& right);

struct Strengths {
    double deltaF = 0, deltaG = 0, deltaH = 0;
};

Strengths averaged_strengths(const CartesianTensor& left, const CartesianTensor& right);

double delta_TP(const Strengths& s, double F, double G, double H);

// Two-photon rate constant in cm^4 s for photon energies given in eV.
double rate_K(double deltaTP, double w1_eV, double w2_eV);

struct Rhombicity {
    std::array<double, 3> eigenvalues{}; // ascending
    double Tr = 0, Ta = 0;
    std::optional<double> R; // empty when the axiality vanishes
};

Rhombicity rhombicity_axiality(const CartesianTensor& t);

} // namespace pecd::twophoton
