#pragma once

#include "pecd/pad.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace pecd::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    double max_deviation = 0; // in the units the check compares (mostly relative to c0)
    std::string detail;
};

// Random complex coefficients on every (n, l <= lmax, m) with |a| of order one.
pad::ExcitedState random_state(std::mt19937_64& rng, int lmax, int n = 4);

// Random real symmetric tensor; isotropic draws are a random multiple of the identity.
twophoton::CartesianTensor random_tensor(std::mt19937_64& rng, bool isotropic = false);

// Zero/nonzero mask of a spectrum at |c_L / c_0| < 1e-12; a forbidden transition is all zero.
std::array<bool, pad::kLmaxPad + 1> observed_mask(const pad::ExcitedState& state, const twophoton::CartesianTensor& t,
                                                  int rho1, int rho2, const radial::ContinuumModel& model);

// The four helicity/parity laws plus the even-only law for linear ionization.
std::vector<CheckResult> check_symmetry_laws(int draws, std::uint64_t seed, double energy_eV = 0.5);

// Isotropic tensor, rho1 = 0: linear ionization gives {c0, c2}, circular gives {c0, c1, c2}.
std::vector<CheckResult> check_isotropic_reduction(int draws, std::uint64_t seed, double energy_eV = 0.5);

// One result per cell of the contribution table (2 panels x 5 polarization pairs x 4 cutoffs).
std::vector<CheckResult> check_pattern_table(int draws, std::uint64_t seed, double energy_eV = 0.5);

// |c7|, |c8| < 1e-12 c0 for random states up to f waves.
CheckResult check_legendre_cutoff(int draws, std::uint64_t seed, double energy_eV = 0.5);

// c5 vanishes without f waves and appears once an l = 3 coefficient is added.
CheckResult check_c5_needs_f(int draws, std::uint64_t seed, double energy_eV = 0.5);

// Analytic coefficients against the orientation-quadrature oracle (1e-6 relative, 1e-9 floor).
CheckResult check_oracle_equivalence(int draws, std::uint64_t seed, double energy_eV = 0.5);

struct SuiteOptions {
    std::uint64_t seed = 20241016;
    int symmetry_draws = 50;
    int pattern_draws = 10;
    int oracle_draws = 2;
    bool include_oracle = true;
};

std::vector<CheckResult> run_suite(const SuiteOptions& opt);

} // namespace pecd::verify
