#pragma once

#include "pecd/radial.hpp"
#include "pecd/twophoton.hpp"

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

namespace pecd::pad {

using cplx = std::complex<double>;

inline constexpr int kLmaxPad = 6;    // highest contributing Legendre order
inline constexpr int kLmaxCheck = 8;  // assembly runs this far to confirm the cutoff

// Hydrogenic basis label (n_o, l_o, m_o) of the single-center expansion.
struct BasisState {
    int n = 1, l = 0, m = 0;
    auto operator<=>(const BasisState&) const = default;
};

struct ExcitedState {
    std::map<BasisState, cplx> coeffs;

    int lmax() const;
    // Throws ValidationError on bad indices or an all-zero state.
    void validate() const;
    // Build from real-harmonic labels (S0, PZ, ...) sharing one principal quantum number.
    static ExcitedState from_real_labels(int n, const std::map<std::string, double>& labels);
};

struct LegendreSpectrum {
    std::array<double, kLmaxPad + 1> c{}; // raw coefficients
    std::array<double, 2> tail{};        // c_7, c_8 from the extended loop (should vanish)
    double energy_eV = 0;
    int rho1 = 0, rho2 = 0;

    std::array<double, kLmaxPad + 1> normalized() const; // c_L / c_0, throws if c_0 = 0
};

// Rank-K moments of the two-photon density, W^K_s = sum (-1)^{q3+q4} T T* g^K, s = q1+q2-q3-q4.
struct TensorMoments {
    std::array<std::array<cplx, 9>, 5> W{}; // [K][s + 4]
    double B = 0;                            // normalization of rho_2P

    // Throws ForbiddenTransition when the tensor cannot be excited with rho1.
    static TensorMoments compute(const twophoton::SphericalTensor& t, int rho1);
    cplx at(int K, int s) const { return W[K][s + 4]; }
};

// Everything in c_L that depends only on the basis, rho2 and the continuum.
// c_L = (1/B) sum_ij a_i a_j^* sum_K W^K_{m_i - m_j} Z^{K L}_{ij}.
class PadKernel {
public:
    PadKernel(std::vector<BasisState> basis, int rho2, const radial::ContinuumModel& model);

    const std::vector<BasisState>& basis() const { return basis_; }
    int rho2() const { return rho2_; }
    const radial::ContinuumModel& model() const { return model_; }

    // Raw c_0..c_8 (complex before the reality check).
    std::array<cplx, kLmaxCheck + 1> assemble(const std::vector<cplx>& a, const TensorMoments& w) const;

    // Full evaluation with reality, cutoff and signal checks.
    LegendreSpectrum spectrum(const std::vector<cplx>& a, const TensorMoments& w, int rho1) const;

private:
    std::vector<BasisState> basis_;
    int rho2_;
    radial::ContinuumModel model_;
    // Z[(i * N + j) * 5 * 9 + K * 9 + L]
    std::vector<cplx> Z_;
};

LegendreSpectrum legendre_coefficients(const ExcitedState& state, const twophoton::SphericalTensor& tensor, int rho1,
                                       int rho2, const radial::ContinuumModel& model);

double pad_evaluate(const LegendreSpectrum& spec, double theta);

// J = (2 c1 - c3/2 + c5/4) / c0.
double pecd_J(const LegendreSpectrum& spec);

// Which c_L may be nonzero, for wave cutoff lmax in {0,1,2,3}.
std::array<bool, kLmaxPad + 1> predicted_pattern(int lmax, bool tensor_isotropic, int rho1, int rho2);

struct EnergyGrid {
    std::vector<double> energies_eV;
    std::vector<double> weights; // sum to 1
};

// 21 Gaussian-weighted nodes spanning +-2 sigma. Throws ValidationError near threshold.
EnergyGrid gaussian_energy_grid(double center_eV, double fwhm_eV, int nodes = 21);

LegendreSpectrum energy_averaged(const ExcitedState& state, const twophoton::SphericalTensor& tensor, int rho1,
                                 int rho2, radial::ContinuumKind kind, double center_eV, double fwhm_eV,
                                 int nodes = 21);

ExcitedState parity_transform(const ExcitedState& state);

struct SymmetryRelations {
    LegendreSpectrum base;
    LegendreSpectrum both_flipped;       // (-rho1, -rho2)
    LegendreSpectrum ionization_flipped; // (rho1, -rho2)
    LegendreSpectrum twophoton_flipped;  // (-rho1, rho2)
    LegendreSpectrum parity;             // a -> (-1)^{l_o} a
};

SymmetryRelations symmetry_transforms(const ExcitedState& state, const twophoton::SphericalTensor& tensor, int rho1,
                                      int rho2, const radial::ContinuumModel& model);

namespace debug {
// Mutation hook for the verification suite: flips the sign of the q-dependent phase.
void set_phase_flip(bool on);
bool phase_flip();
} // namespace debug

} // namespace pecd::pad
