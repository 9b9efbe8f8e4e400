#pragma once

#include <complex>

namespace pecd::radial {

inline constexpr double kHartreeEV = 27.211386;
inline constexpr double kEnergyFloorEV = 0.01;

enum class ContinuumKind { Coulomb, PlaneWave };

// Photoelectron energy plus the continuum basis used to describe it.
struct ContinuumModel {
    ContinuumKind kind = ContinuumKind::Coulomb;
    double energy_eV = 0.5;

    double k() const; // momentum in atomic units; throws ValidationError below the floor
    double phase(int l) const; // Coulomb phase, or 0 for plane waves
};

// Momentum k = sqrt(2E) in atomic units.
double momentum_from_eV(double energy_eV);

// Continuous branch of log Gamma(z).
std::complex<double> log_gamma(std::complex<double> z);

// Coulomb phase arg Gamma(l + 1 - i/k) (Z = 1).
double coulomb_phase(int l, double k);

// Energy-normalized regular Coulomb radial function for an attractive unit charge,
// evaluated from its integral representation.
double continuum_G(int l, double k, double r);

// Energy-normalized plane-wave radial function sqrt(2k/pi) j_l(kr).
double plane_wave_G(int l, double k, double r);

// Normalized hydrogen bound radial function R_{nl}(r).
double bound_R(int n, int l, double r);

// Radius beyond which |R_{nl}| stays below 1e-12 of its maximum.
double bound_extent(int n, int l);

// I = (4 pi / 3) \int r^3 G_{kl}(r) R_{n lo}(r) dr, cached per (n, lo, l, E, model).
double radial_integral(int n, int lo, int l, const ContinuumModel& model);

} // namespace pecd::radial
