#pragma once

#include "pecd/pad.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace pecd::fit {

// Differential evolution, rand/1/bin with clamping to the box.
struct DEOptions {
    int budget = 20000;       // maximum objective evaluations
    std::uint64_t seed = 1;
    double F = 0.7;
    double CR = 0.9;
    int pop_per_dim = 15;
};

struct DEResult {
    std::vector<double> best;
    double best_value = 0;
    std::vector<double> trajectory; // best-so-far after each generation
    int evaluations = 0;
};

// Minimizes f inside [lo, hi]. If x0 is given it seeds the first population member.
DEResult differential_evolution(const std::function<double(const std::vector<double>&)>& f,
                                const std::vector<double>& lo, const std::vector<double>& hi,
                                const DEOptions& opt, const std::vector<double>* x0 = nullptr);

enum class ParameterKind { StateCoeffs, TensorPerturbation };

struct FitProblem {
    std::array<double, 6> targets{}; // normalized c_1..c_6
    std::array<double, 6> weights{1, 1, 1, 1, 1, 1};
    ParameterKind kind = ParameterKind::TensorPerturbation;
    double fraction = 0.2; // tensor elements vary within T(1 -+ f)
    int rho1 = 1, rho2 = 1;
    DEOptions de;
};

// Gamma = (1/gamma0) sum_j w_j ((c_j - c_j^exp) / c_j^exp)^2 over j = 1..6.
double gamma_objective(const pad::LegendreSpectrum& spec, const FitProblem& problem, double gamma0);

struct FitResult {
    pad::ExcitedState state;
    twophoton::CartesianTensor tensor;
    std::vector<double> parameters;
    std::vector<double> trajectory; // best-so-far Gamma per generation
    pad::LegendreSpectrum spectrum;
    double gamma = 0;
    double gamma0 = 0;
    int evaluations = 0;
};

// Tensor perturbation varies the six Cartesian elements; state fitting varies
// (magnitude, phase) of every coefficient already present in base_state.
FitResult fit(const FitProblem& problem, const pad::ExcitedState& base_state,
              const twophoton::CartesianTensor& base_tensor, const radial::ContinuumModel& model);

struct PecdBound {
    double J = 0;
    pad::ExcitedState state;
    twophoton::CartesianTensor tensor;
    std::vector<double> trajectory; // best-so-far |J| per generation
    int evaluations = 0;
};

// Maximizes |J| over all coefficients with n = n_o, l <= lmax and over the tensor,
// for circularly polarized excitation and ionization (rho1 = rho2 = +1).
PecdBound maximize_pecd(int lmax, int n_o, int budget, std::uint64_t seed = 1, double energy_eV = 0.56);

} // namespace pecd::fit
