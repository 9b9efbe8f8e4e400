#include "pecd/fit.hpp"
#include "pecd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace pecd::fit {

DEResult differential_evolution(const std::function<double(const std::vector<double>&)>& f,
                                const std::vector<double>& lo, const std::vector<double>& hi,
                                const DEOptions& opt, const std::vector<double>* x0)
{
    const std::size_t dim = lo.size();
    if (dim == 0 || hi.size() != dim) throw ValidationError("bounds must be non-empty and of equal length");
    for (std::size_t d = 0; d < dim; ++d)
        if (!(lo[d] <= hi[d])) throw ValidationError("infeasible bounds for parameter " + std::to_string(d));
    const int np = std::max(4, opt.pop_per_dim * static_cast<int>(dim));
    if (opt.budget < np)
        throw ValidationError("budget " + std::to_string(opt.budget) + " is smaller than the population " +
                              std::to_string(np));

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto clamp = [&](std::vector<double>& x) {
        for (std::size_t d = 0; d < dim; ++d) x[d] = std::clamp(x[d], lo[d], hi[d]);
    };

    std::vector<std::vector<double>> pop(np, std::vector<double>(dim));
    std::vector<double> val(np);
    DEResult res;
    for (int i = 0; i < np; ++i) {
        for (std::size_t d = 0; d < dim; ++d) pop[i][d] = lo[d] + unif(rng) * (hi[d] - lo[d]);
        if (i == 0 && x0) pop[0] = *x0;
        clamp(pop[i]);
        val[i] = f(pop[i]);
        ++res.evaluations;
    }
    auto best_index = [&] { return static_cast<int>(std::min_element(val.begin(), val.end()) - val.begin()); };
    res.trajectory.push_back(val[best_index()]);

    std::uniform_int_distribution<int> pick(0, np - 1);
    std::uniform_int_distribution<std::size_t> pick_dim(0, dim - 1);
    std::vector<double> trial(dim);
    while (res.evaluations + np <= opt.budget) {
        for (int i = 0; i < np; ++i) {
            int r1, r2, r3;
            do r1 = pick(rng); while (r1 == i);
            do r2 = pick(rng); while (r2 == i || r2 == r1);
            do r3 = pick(rng); while (r3 == i || r3 == r1 || r3 == r2);
            const std::size_t jrand = pick_dim(rng);
            for (std::size_t d = 0; d < dim; ++d) {
                const bool cross = unif(rng) < opt.CR || d == jrand;
                trial[d] = cross ? pop[r1][d] + opt.F * (pop[r2][d] - pop[r3][d]) : pop[i][d];
            }
            clamp(trial);
            const double ft = f(trial);
            ++res.evaluations;
            if (ft <= val[i]) {
                pop[i] = trial;
                val[i] = ft;
            }
        }
        res.trajectory.push_back(val[best_index()]);
    }
    const int b = best_index();
    res.best = pop[b];
    res.best_value = val[b];
    return res;
}

double gamma_objective(const pad::LegendreSpectrum& spec, const FitProblem& problem, double gamma0)
{
    if (!(gamma0 > 0.0)) throw ValidationError("gamma0 must be positive");
    const auto c = spec.normalized();
    double g = 0.0;
    for (int j = 0; j < 6; ++j) {
        const double w = problem.weights[j];
        if (w == 0.0) continue;
        if (w < 0.0) throw ValidationError("optimization weights must be non-negative");
        const double t = problem.targets[j];
        if (t == 0.0)
            throw ValidationError("target c" + std::to_string(j + 1) + " is zero but carries a nonzero weight");
        const double r = (c[j + 1] - t) / t;
        g += w * r * r;
    }
    return g / gamma0;
}

namespace {

std::array<double, 6> tensor_elements(const twophoton::CartesianTensor& t)
{
    return {t.xx, t.xy, t.xz, t.yy, t.yz, t.zz};
}

twophoton::CartesianTensor tensor_from(const double* p)
{
    return {p[0], p[1], p[2], p[3], p[4], p[5]};
}

// Coefficients from (magnitude, phase) pairs; the largest one is made real and positive.
std::vector<pad::cplx> coeffs_from(const double* p, std::size_t n)
{
    std::vector<pad::cplx> a(n);
    std::size_t big = 0;
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = std::polar(p[2 * i], p[2 * i + 1]);
        if (std::abs(a[i]) > std::abs(a[big])) big = i;
    }
    if (std::abs(a[big]) > 0.0) {
        const pad::cplx gauge = std::conj(a[big]) / std::abs(a[big]);
        for (auto& v : a) v *= gauge;
    }
    return a;
}

} // namespace

FitResult fit(const FitProblem& problem, const pad::ExcitedState& base_state,
              const twophoton::CartesianTensor& base_tensor, const radial::ContinuumModel& model)
{
    base_state.validate();
    std::vector<pad::BasisState> basis;
    std::vector<pad::cplx> a0;
    for (const auto& [idx, v] : base_state.coeffs) {
        basis.push_back(idx);
        a0.push_back(v);
    }
    const pad::PadKernel kernel(basis, problem.rho2, model);

    const auto w0 = pad::TensorMoments::compute(twophoton::to_spherical(base_tensor), problem.rho1);
    FitProblem unit = problem;
    const double gamma0 = gamma_objective(kernel.spectrum(a0, w0, problem.rho1), unit, 1.0);
    if (!(gamma0 > 0.0)) throw ValidationError("the unperturbed point already reproduces the targets (Gamma0 = 0)");

    std::vector<double> lo, hi, x0;
    if (problem.kind == ParameterKind::TensorPerturbation) {
        if (problem.fraction < 0.0) throw ValidationError("perturbation fraction must be non-negative");
        for (double t : tensor_elements(base_tensor)) {
            const double e1 = t * (1.0 - problem.fraction), e2 = t * (1.0 + problem.fraction);
            lo.push_back(std::min(e1, e2));
            hi.push_back(std::max(e1, e2));
            x0.push_back(t);
        }
    } else {
        double amax = 0.0;
        for (const auto& v : a0) amax = std::max(amax, std::abs(v));
        for (const auto& v : a0) {
            lo.insert(lo.end(), {0.0, -M_PI});
            hi.insert(hi.end(), {amax, M_PI});
            x0.insert(x0.end(), {std::abs(v), std::arg(v)});
        }
    }

    auto make = [&](const std::vector<double>& p, std::vector<pad::cplx>& a, twophoton::CartesianTensor& t) {
        if (problem.kind == ParameterKind::TensorPerturbation) {
            a = a0;
            t = tensor_from(p.data());
        } else {
            a = coeffs_from(p.data(), a0.size());
            t = base_tensor;
        }
    };

    auto objective = [&](const std::vector<double>& p) {
        std::vector<pad::cplx> a;
        twophoton::CartesianTensor t;
        make(p, a, t);
        try {
            const auto w = pad::TensorMoments::compute(twophoton::to_spherical(t), problem.rho1);
            return gamma_objective(kernel.spectrum(a, w, problem.rho1), problem, gamma0);
        } catch (const NumericalError&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    const auto de = differential_evolution(objective, lo, hi, problem.de, &x0);

    FitResult r;
    std::vector<pad::cplx> a;
    make(de.best, a, r.tensor);
    for (std::size_t i = 0; i < basis.size(); ++i) r.state.coeffs[basis[i]] = a[i];
    r.parameters = de.best;
    r.trajectory = de.trajectory;
    r.spectrum = kernel.spectrum(a, pad::TensorMoments::compute(twophoton::to_spherical(r.tensor), problem.rho1),
                                 problem.rho1);
    r.gamma = de.best_value;
    r.gamma0 = gamma0;
    r.evaluations = de.evaluations;
    return r;
}

PecdBound maximize_pecd(int lmax, int n_o, int budget, std::uint64_t seed, double energy_eV)
{
    if (lmax < 0 || lmax > 3 || n_o < lmax + 1) throw ValidationError("maximize_pecd needs 0 <= lmax <= 3 and n_o > lmax");
    std::vector<pad::BasisState> basis;
    for (int l = 0; l <= lmax; ++l)
        for (int m = -l; m <= l; ++m) basis.push_back({n_o, l, m});
    const int rho = 1;
    const pad::PadKernel kernel(basis, rho, {radial::ContinuumKind::Coulomb, energy_eV});

    // parameters: (magnitude, phase) per coefficient, then six tensor elements
    const std::size_t ns = basis.size();
    std::vector<double> lo, hi;
    for (std::size_t i = 0; i < ns; ++i) {
        lo.insert(lo.end(), {0.0, -M_PI});
        hi.insert(hi.end(), {1.0, M_PI});
    }
    for (int i = 0; i < 6; ++i) {
        lo.push_back(-1.0);
        hi.push_back(1.0);
    }

    auto decode = [&](const std::vector<double>& p, std::vector<pad::cplx>& a, twophoton::CartesianTensor& t) {
        a = coeffs_from(p.data(), ns);
        double norm = 0.0;
        for (const auto& v : a) norm += std::norm(v);
        if (norm > 0.0)
            for (auto& v : a) v /= std::sqrt(norm);
        t = tensor_from(p.data() + 2 * ns);
    };

    auto objective = [&](const std::vector<double>& p) {
        std::vector<pad::cplx> a;
        twophoton::CartesianTensor t;
        decode(p, a, t);
        try {
            const auto w = pad::TensorMoments::compute(twophoton::to_spherical(t), rho);
            return -std::abs(pad::pecd_J(kernel.spectrum(a, w, rho)));
        } catch (const NumericalError&) {
            return 0.0;
        }
    };

    DEOptions opt;
    opt.budget = budget;
    opt.seed = seed;
    const auto de = differential_evolution(objective, lo, hi, opt);

    PecdBound r;
    std::vector<pad::cplx> a;
    decode(de.best, a, r.tensor);
    for (std::size_t i = 0; i < ns; ++i) r.state.coeffs[basis[i]] = a[i];
    r.J = pad::pecd_J(kernel.spectrum(a, pad::TensorMoments::compute(twophoton::to_spherical(r.tensor), rho), rho));
    for (double v : de.trajectory) r.trajectory.push_back(-v);
    r.evaluations = de.evaluations;
    return r;
}

} // namespace pecd::fit
