#include "pecd/oracle.hpp"
#include "pecd/errors.hpp"
#include "pecd/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace pecd::oracle {

namespace {

// Partial-wave content of A_q: coefficient of Y_l^m(k) for each (l, m).
struct PartialWave {
    int l, m;
    cplx coef;
};

std::vector<PartialWave> partial_waves(const pad::ExcitedState& state, const radial::ContinuumModel& model, int q)
{
    std::vector<PartialWave> out;
    for (const auto& [idx, a] : state.coeffs) {
        if (a == cplx(0.0)) continue;
        for (int l = idx.l - 1; l <= idx.l + 1; l += 2) {
            if (l < 0) continue;
            const int m = idx.m + q;
            if (std::abs(m) > l) continue;
            const double S = angular::gaunt_S(l, m, q, idx.l, idx.m);
            if (S == 0.0) continue;
            const double I = radial::radial_integral(idx.n, idx.l, l, model);
            const cplx minus_i_l = std::pow(cplx(0.0, -1.0), l);
            out.push_back({l, m, minus_i_l * std::polar(1.0, model.phase(l)) * a * I * S});
        }
    }
    return out;
}

cplx evaluate(const std::vector<PartialWave>& pw, const Eigen::Vector3d& k)
{
    const double theta = std::acos(std::clamp(k.z(), -1.0, 1.0));
    const double phi = std::atan2(k.y(), k.x());
    cplx s = 0.0;
    for (const auto& w : pw) s += w.coef * angular::spherical_harmonic(w.l, w.m, theta, phi);
    return s;
}

} // namespace

OrientationGrid OrientationGrid::make(int n_alpha, int n_beta, int n_gamma)
{
    if (n_alpha < 1 || n_beta < 1 || n_gamma < 1) throw ValidationError("orientation grid sizes must be positive");
    OrientationGrid g;
    g.n_alpha = n_alpha;
    g.n_beta = n_beta;
    g.n_gamma = n_gamma;
    const auto gl = gauss_legendre(n_beta);
    for (int ia = 0; ia < n_alpha; ++ia)
        for (int ib = 0; ib < n_beta; ++ib)
            for (int ig = 0; ig < n_gamma; ++ig) {
                g.nodes.push_back({2.0 * M_PI * ia / n_alpha, std::acos(gl.nodes[ib]), 2.0 * M_PI * ig / n_gamma});
                g.weights.push_back(gl.weights[ib] / (2.0 * n_alpha * n_gamma));
            }
    return g;
}

Eigen::Matrix3d rotation_matrix(const angular::EulerAngles& omega)
{
    auto rz = [](double a) {
        Eigen::Matrix3d r;
        r << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
        return r;
    };
    Eigen::Matrix3d ry;
    const double cb = std::cos(omega.beta), sb = std::sin(omega.beta);
    ry << cb, 0, sb, 0, 1, 0, -sb, 0, cb;
    return rz(omega.alpha) * ry * rz(omega.gamma);
}

cplx one_photon_amplitude(const pad::ExcitedState& state, const radial::ContinuumModel& model, int q,
                          const Eigen::Vector3d& k_dir)
{
    twophoton::check_polarization(q, "q");
    return evaluate(partial_waves(state, model, q), k_dir.normalized());
}

pad::LegendreSpectrum oracle_legendre(const pad::ExcitedState& state, const twophoton::SphericalTensor& tensor,
                                      int rho1, int rho2, const radial::ContinuumModel& model,
                                      const OrientationGrid& grid)
{
    state.validate();
    twophoton::check_polarization(rho2, "rho2");
    std::array<std::vector<PartialWave>, 3> pw;
    for (int q = -1; q <= 1; ++q) pw[q + 1] = partial_waves(state, model, q);

    // lab-frame emission directions: Gauss-Legendre in cos(theta'), a few azimuths
    constexpr int n_theta = 16;
    const std::array<double, 3> azimuths = {0.0, 2.1, 4.4};
    const auto gl = gauss_legendre(n_theta);
    std::vector<Eigen::Vector3d> kdirs;
    for (int it = 0; it < n_theta; ++it)
        for (double ph : azimuths) {
            const double ct = gl.nodes[it], st = std::sqrt(1.0 - ct * ct);
            kdirs.emplace_back(st * std::cos(ph), st * std::sin(ph), ct);
        }

    std::vector<double> f(kdirs.size(), 0.0);
    for (std::size_t n = 0; n < grid.nodes.size(); ++n) {
        const auto& om = grid.nodes[n];
        const double rho = twophoton::rho_2P(tensor, rho1, om);
        if (rho == 0.0) continue;
        const Eigen::Matrix3d U = rotation_matrix(om);
        cplx d[3];
        for (int q = -1; q <= 1; ++q) d[q + 1] = angular::wigner_D(1, q, rho2, om);
        const double w = grid.weights[n] * rho;
        for (std::size_t kk = 0; kk < kdirs.size(); ++kk) {
            const Eigen::Vector3d kmol = U * kdirs[kk];
            cplx amp = 0.0;
            for (int q = -1; q <= 1; ++q)
                if (d[q + 1] != cplx(0.0)) amp += d[q + 1] * evaluate(pw[q + 1], kmol);
            f[kk] += w * std::norm(amp);
        }
    }

    double fmax = 0.0;
    for (double v : f) fmax = std::max(fmax, std::abs(v));
    for (int it = 0; it < n_theta; ++it)
        for (std::size_t p = 1; p < azimuths.size(); ++p)
            if (std::abs(f[it * azimuths.size() + p] - f[it * azimuths.size()]) > 1e-9 * fmax)
                throw NumericalError("orientation-averaged distribution is not azimuthally symmetric");

    pad::LegendreSpectrum sp;
    sp.energy_eV = model.energy_eV;
    sp.rho1 = rho1;
    sp.rho2 = rho2;
    for (int L = 0; L <= pad::kLmaxCheck; ++L) {
        double s = 0.0;
        for (int it = 0; it < n_theta; ++it) {
            double favg = 0.0;
            for (std::size_t p = 0; p < azimuths.size(); ++p) favg += f[it * azimuths.size() + p];
            favg /= azimuths.size();
            s += gl.weights[it] * favg * angular::legendre(L, gl.nodes[it]);
        }
        const double cL = 0.5 * (2 * L + 1) * s;
        if (L <= pad::kLmaxPad)
            sp.c[L] = cL;
        else
            sp.tail[L - pad::kLmaxPad - 1] = cL;
    }
    return sp;
}

} // namespace pecd::oracle
