#pragma once

#include "pecd/pad.hpp"

#include <Eigen/Core>

#include <vector>

namespace pecd::oracle {

using cplx = std::complex<double>;

// Product grid over Euler angles: trapezoid in alpha and gamma, Gauss-Legendre in cos(beta).
// Weights sum to 1, i.e. they carry the d(alpha) d(cos beta) d(gamma) / 8 pi^2 measure.
struct OrientationGrid {
    int n_alpha = 32, n_beta = 24, n_gamma = 32;
    std::vector<angular::EulerAngles> nodes;
    std::vector<double> weights;

    static OrientationGrid make(int n_alpha = 32, int n_beta = 24, int n_gamma = 32);
};

// Active rotation Rz(alpha) Ry(beta) Rz(gamma); D^1 of this matrix is wigner_D(1, ., ., omega).
Eigen::Matrix3d rotation_matrix(const angular::EulerAngles& omega);

// Molecular-frame matrix element <k| r_q |state> for emission direction k_dir (unit vector).
cplx one_photon_amplitude(const pad::ExcitedState& state, const radial::ContinuumModel& model, int q,
                          const Eigen::Vector3d& k_dir);

// Orientation-averaged Legendre coefficients by brute-force quadrature. The lab-frame
// distribution is checked for azimuthal flatness before projection; a violation throws
// NumericalError. Raw coefficients share the normalization of pad::legendre_coefficients.
pad::LegendreSpectrum oracle_legendre(const pad::ExcitedState& state, const twophoton::SphericalTensor& tensor,
                                      int rho1, int rho2, const radial::ContinuumModel& model,
                                      const OrientationGrid& grid = OrientationGrid::make());

} // namespace pecd::oracle
