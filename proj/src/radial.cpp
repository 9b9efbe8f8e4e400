#include "pecd/radial.hpp"
#include "pecd/errors.hpp"
#include "pecd/quadrature.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <vector>

namespace pecd::radial {

using cplx = std::complex<double>;

double momentum_from_eV(double energy_eV)
{
    if (!(energy_eV >= kEnergyFloorEV))
        throw ValidationError("photoelectron energy " + std::to_string(energy_eV) + " eV is below the " +
                              std::to_string(kEnergyFloorEV) + " eV floor");
    return std::sqrt(2.0 * energy_eV / kHartreeEV);
}

double ContinuumModel::k() const { return momentum_from_eV(energy_eV); }

double ContinuumModel::phase(int l) const
{
    return kind == ContinuumKind::Coulomb ? coulomb_phase(l, k()) : 0.0;
}

cplx log_gamma(cplx z)
{
    // Shift to large |z| with the recurrence, then apply the Stirling series.
    // Summing logarithms keeps the result on the continuous branch.
    cplx shift = 0.0;
    while (std::abs(z) < 15.0 || z.real() < 15.0) {
        shift += std::log(z);
        z += 1.0;
    }
    static const double bern[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6};
    const cplx zinv = 1.0 / z, zinv2 = zinv * zinv;
    cplx series = 0.0, zpow = zinv;
    for (int n = 1; n <= 7; ++n) {
        series += bern[n - 1] / (2.0 * n * (2.0 * n - 1)) * zpow;
        zpow *= zinv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * M_PI) + series - shift;
}

double coulomb_phase(int l, double k)
{
    if (l < 0 || !(k > 0.0)) throw ValidationError("coulomb_phase needs l >= 0 and k > 0");
    return log_gamma(cplx(l + 1.0, -1.0 / k)).imag();
}

namespace {

// Trapezoid nodes for the contour integral
//   \int sech^{2l+2}(w/2) exp(i(w/k + k r tanh(w/2))) dw,   w = v + i c,
// which follows from the integral representation of 1F1 after the substitution
// s = (1 + tanh(w/2)) / 2. On the real axis the integral cancels down to
// exp(-pi/k) of its integrand; shifting the line up towards the pole at i*pi
// removes most of that cancellation.
struct ContourRule {
    int l = 0;
    double k = 0.0;
    double c = 0.0;      // height of the integration line
    double vmax = 0.0;   // truncation of the real part
    double h0 = 0.0;     // step of the coarsest level
    double log_pref = 0.0;
    // level p holds the nodes added when the step is halved p times
    std::vector<std::vector<cplx>> base; // sech^{2l+2}(w/2) exp(i v / k)
    std::vector<std::vector<cplx>> tanh_w;
    std::mutex mutex;

    void ensure_level(std::size_t p)
    {
        while (base.size() <= p) {
            const std::size_t level = base.size();
            std::vector<cplx> b, t;
            const double step = h0 / std::ldexp(1.0, static_cast<int>(level));
            const int jmax = static_cast<int>(std::ceil(vmax / step));
            for (int j = -jmax; j <= jmax; ++j) {
                if (level > 0 && j % 2 == 0) continue;
                const double v = j * step;
                const cplx half(0.5 * v, 0.5 * c);
                const cplx sech = 1.0 / std::cosh(half);
                b.push_back(std::pow(sech, 2 * l + 2) * std::polar(1.0, v / k));
                t.push_back(std::tanh(half));
            }
            base.push_back(std::move(b));
            tanh_w.push_back(std::move(t));
        }
    }
};

std::uint64_t bits(double x)
{
    std::uint64_t u;
    std::memcpy(&u, &x, sizeof u);
    return u;
}

ContourRule& contour_rule(int l, double k)
{
    static std::mutex mutex;
    static std::map<std::pair<int, std::uint64_t>, std::unique_ptr<ContourRule>> rules;
    std::lock_guard lock(mutex);
    auto& slot = rules[{l, bits(k)}];
    if (!slot) {
        auto rule = std::make_unique<ContourRule>();
        const int n = 2 * l + 2;
        const double eps = std::min(n * k, 2.0 * M_PI / 3.0);
        rule->l = l;
        rule->k = k;
        rule->c = M_PI - eps;
        // |sech((v + ic)/2)|^n < 2^n exp(-n|v|/2); stop where that drops below 1e-20.
        rule->vmax = 2.0 * (20.0 * std::log(10.0) + n * std::log(2.0)) / n;
        rule->h0 = std::min(0.25 * eps, 0.25 * k);
        rule->log_pref = 0.5 * std::log(2.0 * k / M_PI) + M_PI / (2.0 * k) -
                         log_gamma(cplx(l + 1.0, -1.0 / k)).real() - rule->c / k;
        slot = std::move(rule);
    }
    return *slot;
}

} // namespace

double continuum_G(int l, double k, double r)
{
    if (l < 0 || !(k > 0.0) || r < 0.0) throw ValidationError("continuum_G needs l >= 0, k > 0, r >= 0");
    if (r == 0.0 && l > 0) return 0.0;

    ContourRule& rule = contour_rule(l, k);
    const double pref = std::exp(rule.log_pref + l * std::log(k * r + (r == 0.0 ? 1.0 : 0.0))) *
                        std::ldexp(1.0, -l - 2);
    const cplx ikr(0.0, k * r);

    cplx sum = 0.0;
    double abs_sum = 0.0;
    cplx previous = 0.0;
    constexpr std::size_t kMaxLevel = 14;
    for (std::size_t p = 0; p <= kMaxLevel; ++p) {
        const std::vector<cplx>* b;
        const std::vector<cplx>* t;
        {
            std::lock_guard lock(rule.mutex);
            rule.ensure_level(p);
            b = &rule.base[p];
            t = &rule.tanh_w[p];
        }
        for (std::size_t j = 0; j < b->size(); ++j) {
            const cplx f = (*b)[j] * std::exp(ikr * (*t)[j]);
            sum += f;
            abs_sum += std::abs(f);
        }
        const double step = rule.h0 / std::ldexp(1.0, static_cast<int>(p));
        const cplx estimate = sum * step;
        if (p >= 2 && std::abs(estimate - previous) <= 1e-14 * abs_sum * step) {
            const cplx value = pref * estimate;
            const double scale = pref * abs_sum * step;
            if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
                throw NumericalError("continuum_G overflow at l=" + std::to_string(l) + " k=" +
                                     std::to_string(k) + " r=" + std::to_string(r));
            if (std::abs(value.imag()) > 1e-10 * std::max(std::abs(value.real()), 1e-3 * scale))
                throw NumericalError("continuum_G has a non-negligible imaginary part at l=" +
                                     std::to_string(l) + " r=" + std::to_string(r));
            return value.real();
        }
        previous = estimate;
    }
    throw NumericalError("continuum_G did not converge at l=" + std::to_string(l) + " k=" + std::to_string(k) +
                         " r=" + std::to_string(r));
}

double plane_wave_G(int l, double k, double r)
{
    if (l < 0 || !(k > 0.0) || r < 0.0) throw ValidationError("plane_wave_G needs l >= 0, k > 0, r >= 0");
    return std::sqrt(2.0 * k / M_PI) * std::sph_bessel(static_cast<unsigned>(l), k * r);
}

double bound_R(int n, int l, double r)
{
    if (n < 1 || l < 0 || l >= n || r < 0.0)
        throw ValidationError("bound_R needs n >= 1, 0 <= l < n, r >= 0");
    const double rho = 2.0 * r / n;
    const int kdeg = n - l - 1;
    const double alpha = 2.0 * l + 1.0;
    // generalized Laguerre L_kdeg^{(2l+1)}(rho) by upward recurrence
    double lag_prev = 1.0, lag = 1.0;
    if (kdeg >= 1) lag = 1.0 + alpha - rho;
    for (int j = 1; j < kdeg; ++j) {
        const double next = ((2.0 * j + 1.0 + alpha - rho) * lag - (j + alpha) * lag_prev) / (j + 1.0);
        lag_prev = lag;
        lag = next;
    }
    const double log_norm = 1.5 * std::log(2.0 / n) +
                            0.5 * (std::lgamma(kdeg + 1.0) - std::log(2.0 * n) - std::lgamma(n + l + 1.0));
    return std::exp(log_norm - 0.5 * rho) * std::pow(rho, l) * lag;
}

double bound_extent(int n, int l)
{
    double peak = 0.0;
    for (double r = 0.0; r < 40.0 * n; r += 0.05) peak = std::max(peak, std::abs(bound_R(n, l, r)));
    // beyond the outermost Laguerre node |R| decays monotonically
    double r = 40.0 * n * n;
    while (r > 0.0 && std::abs(bound_R(n, l, r)) < 1e-12 * peak) r -= 0.5;
    return r + 0.5;
}

namespace {

double radial_quadrature(int n, int lo, int l, const ContinuumModel& model, double rmax, int panels)
{
    constexpr int kNodes = 20;
    const double k = model.k();
    const double width = rmax / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const QuadratureRule rule = gauss_legendre(kNodes, p * width, (p + 1) * width);
        double part = 0.0;
        for (int i = 0; i < kNodes; ++i) {
            const double r = rule.nodes[i];
            const double g =
                model.kind == ContinuumKind::Coulomb ? continuum_G(l, k, r) : plane_wave_G(l, k, r);
            part += rule.weights[i] * r * r * r * g * bound_R(n, lo, r);
        }
        total += part;
    }
    return 4.0 * M_PI / 3.0 * total;
}

} // namespace

double radial_integral(int n, int lo, int l, const ContinuumModel& model)
{
    if (n < 1 || lo < 0 || lo >= n || l < 0)
        throw ValidationError("radial_integral: invalid bound index (n=" + std::to_string(n) + ", l=" +
                              std::to_string(lo) + ")");
    const double k = model.k();

    using Key = std::tuple<int, int, int, std::uint64_t, int>;
    static std::shared_mutex mutex;
    static std::map<Key, double> cache;
    const Key key{n, lo, l, bits(model.energy_eV), static_cast<int>(model.kind)};
    {
        std::shared_lock lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const double rmax = bound_extent(n, lo);
    // resolve both the bound-state structure and the continuum wavelength
    int panels = static_cast<int>(std::ceil(rmax / std::min(4.0, M_PI / k)));
    double coarse = radial_quadrature(n, lo, l, model, rmax, panels);
    double value = 0.0;
    bool converged = false;
    for (int refinement = 0; refinement < 6; ++refinement) {
        panels *= 2;
        value = radial_quadrature(n, lo, l, model, rmax, panels);
        if (std::abs(value - coarse) <= 1e-10 * std::abs(value) + 1e-15) {
            converged = true;
            break;
        }
        coarse = value;
    }
    if (!converged)
        throw NumericalError("radial integral did not converge for n=" + std::to_string(n) +
                             " lo=" + std::to_string(lo) + " l=" + std::to_string(l));

    std::unique_lock lock(mutex);
    cache.emplace(key, value);
    return value;
}

} // namespace pecd::radial
