#include "pecd/pad.hpp"
#include "pecd/angular.hpp"
#include "pecd/errors.hpp"

#include <atomic>
#include <cmath>

namespace pecd::pad {

using angular::wigner_3j;

namespace {

std::atomic<bool> g_phase_flip{false};

// Compensated summation for complex terms.
struct KahanSum {
    cplx sum{0.0, 0.0};
    cplx comp{0.0, 0.0};

    void add(cplx x)
    {
        const cplx y = x - comp;
        const cplx t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

inline int parity_sign(int n) { return (n % 2 == 0) ? 1 : -1; }

// (-i)^n for integer n (possibly negative).
cplx minus_i_pow(int n)
{
    switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
    }
}

// One dipole channel: basis state i, partial wave l, photon component q.
struct Channel {
    int l, m, q;
    cplx amp; // (-i)^l e^{i delta_l} I S, the part that does not couple to the primed side
};

} // namespace

int ExcitedState::lmax() const
{
    int lm = -1;
    for (const auto& [idx, a] : coeffs)
        if (a != cplx(0.0)) lm = std::max(lm, idx.l);
    return lm;
}

void ExcitedState::validate() const
{
    bool nonzero = false;
    for (const auto& [idx, a] : coeffs) {
        if (idx.n < 1 || idx.l < 0 || idx.l > idx.n - 1 || std::abs(idx.m) > idx.l)
            throw ValidationError("invalid basis index (n=" + std::to_string(idx.n) + ", l=" + std::to_string(idx.l) +
                                  ", m=" + std::to_string(idx.m) + ")");
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw ValidationError("non-finite excited-state coefficient");
        nonzero = nonzero || a != cplx(0.0);
    }
    if (!nonzero) throw ValidationError("excited state has no nonzero coefficient");
}

ExcitedState ExcitedState::from_real_labels(int n, const std::map<std::string, double>& labels)
{
    ExcitedState st;
    for (const auto& [lm, a] : angular::real_to_complex_coeffs(labels)) st.coeffs[{n, lm.first, lm.second}] += a;
    st.validate();
    return st;
}

std::array<double, kLmaxPad + 1> LegendreSpectrum::normalized() const
{
    if (c[0] == 0.0 || !std::isfinite(c[0])) throw NumericalError("c0 vanishes; spectrum cannot be normalized");
    std::array<double, kLmaxPad + 1> out{};
    for (int L = 0; L <= kLmaxPad; ++L) out[L] = c[L] / c[0];
    return out;
}

TensorMoments TensorMoments::compute(const twophoton::SphericalTensor& t, int rho1)
{
    twophoton::check_polarization(rho1, "rho1");
    if (twophoton::is_forbidden(t, rho1))
        throw ForbiddenTransition("two-photon transition is forbidden for rho1 = " + std::to_string(rho1));
    TensorMoments m;
    m.B = twophoton::normalization_B(t, rho1);
    for (int K = 0; K <= 4; ++K)
        for (int q1 = -1; q1 <= 1; ++q1)
            for (int q2 = -1; q2 <= 1; ++q2)
                for (int q3 = -1; q3 <= 1; ++q3)
                    for (int q4 = -1; q4 <= 1; ++q4) {
                        const double g = twophoton::g_coefficient(K, q1, q2, q3, q4, rho1);
                        if (g == 0.0) continue;
                        const int s = q1 + q2 - q3 - q4;
                        m.W[K][s + 4] += double(parity_sign(q3 + q4)) * g * t(q1, q2) * std::conj(t(q3, q4));
                    }
    return m;
}

PadKernel::PadKernel(std::vector<BasisState> basis, int rho2, const radial::ContinuumModel& model)
    : basis_(std::move(basis)), rho2_(twophoton::check_polarization(rho2, "rho2")), model_(model)
{
    model_.k(); // energy floor check
    const std::size_t N = basis_.size();
    const bool flip = debug::phase_flip();

    std::vector<std::vector<Channel>> channels(N);
    for (std::size_t i = 0; i < N; ++i) {
        const auto& b = basis_[i];
        for (int l = b.l - 1; l <= b.l + 1; l += 2) {
            if (l < 0) continue;
            const double I = radial::radial_integral(b.n, b.l, l, model_);
            const cplx ph = minus_i_pow(l) * std::polar(1.0, model_.phase(l));
            for (int q = -1; q <= 1; ++q) {
                const int m = b.m + q;
                if (std::abs(m) > l) continue;
                const double S = angular::gaunt_S(l, m, q, b.l, b.m);
                if (S == 0.0) continue;
                channels[i].push_back({l, m, q, ph * I * S});
            }
        }
    }

    Z_.assign(N * N * 5 * (kLmaxCheck + 1), cplx(0.0));
    const double pref = 1.0 / (4.0 * M_PI);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            const int s = basis_[i].m - basis_[j].m;
            std::array<KahanSum, 5 * (kLmaxCheck + 1)> acc{};
            for (const auto& c1 : channels[i])
                for (const auto& c2 : channels[j]) {
                    // (-i)^{l - l'} e^{i(d - d')} = ph(l) * conj(ph(l'))
                    const cplx pair = c1.amp * std::conj(c2.amp);
                    const int phase_exp = flip ? (c2.m + c2.q + rho2_) : (c2.m + c1.q + rho2_);
                    const double sgn = parity_sign(phase_exp) * std::sqrt((2.0 * c1.l + 1) * (2.0 * c2.l + 1));
                    const int dm = c2.m - c1.m;
                    const int dq = c1.q - c2.q;
                    for (int L = std::abs(c1.l - c2.l); L <= std::min(c1.l + c2.l, kLmaxCheck); ++L) {
                        const double w0 = wigner_3j(c1.l, c2.l, L, 0, 0, 0);
                        if (w0 == 0.0) continue;
                        const double wm = wigner_3j(c1.l, c2.l, L, c1.m, -c2.m, dm);
                        if (wm == 0.0) continue;
                        for (int nu = 0; nu <= 2; ++nu) {
                            const double wq = wigner_3j(1, 1, nu, c1.q, -c2.q, -dq) * wigner_3j(1, 1, nu, rho2_, -rho2_, 0);
                            if (wq == 0.0) continue;
                            for (int K = std::abs(s); K <= 4; ++K) {
                                const double wk = wigner_3j(K, nu, L, s, dq, dm) * wigner_3j(K, nu, L, 0, 0, 0);
                                if (wk == 0.0) continue;
                                const double f = pref * sgn * (2 * nu + 1) * (2 * L + 1) * w0 * wm * wq * wk;
                                acc[K * (kLmaxCheck + 1) + L].add(f * pair);
                            }
                        }
                    }
                }
            cplx* z = &Z_[(i * N + j) * 5 * (kLmaxCheck + 1)];
            for (std::size_t k = 0; k < acc.size(); ++k) z[k] = acc[k].sum;
        }
}

std::array<cplx, kLmaxCheck + 1> PadKernel::assemble(const std::vector<cplx>& a, const TensorMoments& w) const
{
    const std::size_t N = basis_.size();
    if (a.size() != N) throw ValidationError("coefficient vector does not match the kernel basis");
    std::array<KahanSum, kLmaxCheck + 1> acc{};
    for (std::size_t i = 0; i < N; ++i) {
        if (a[i] == cplx(0.0)) continue;
        for (std::size_t j = 0; j < N; ++j) {
            if (a[j] == cplx(0.0)) continue;
            const cplx aa = a[i] * std::conj(a[j]);
            const int s = basis_[i].m - basis_[j].m;
            const cplx* z = &Z_[(i * N + j) * 5 * (kLmaxCheck + 1)];
            for (int K = std::abs(s); K <= 4; ++K) {
                const cplx wk = w.at(K, s);
                if (wk == cplx(0.0)) continue;
                for (int L = 0; L <= kLmaxCheck; ++L) acc[L].add(aa * wk * z[K * (kLmaxCheck + 1) + L]);
            }
        }
    }
    std::array<cplx, kLmaxCheck + 1> out{};
    for (int L = 0; L <= kLmaxCheck; ++L) out[L] = acc[L].sum / w.B;
    return out;
}

LegendreSpectrum PadKernel::spectrum(const std::vector<cplx>& a, const TensorMoments& w, int rho1) const
{
    const auto raw = assemble(a, w);
    double scale = 0.0;
    for (const auto& v : raw) scale = std::max(scale, std::abs(v));
    if (!(raw[0].real() > 1e-13 * scale) || !std::isfinite(raw[0].real()))
        throw NumericalError("c0 vanishes: no ionization signal for this state and polarization");
    const double c0 = raw[0].real();
    for (int L = 0; L <= kLmaxCheck; ++L)
        if (std::abs(raw[L].imag()) > 1e-10 * c0)
            throw NumericalError("Legendre coefficient c" + std::to_string(L) + " has an imaginary part");
    for (int L = kLmaxPad + 1; L <= kLmaxCheck; ++L)
        if (std::abs(raw[L]) > 1e-10 * c0)
            throw NumericalError("nonzero Legendre coefficient beyond L = 6");

    LegendreSpectrum sp;
    for (int L = 0; L <= kLmaxPad; ++L) sp.c[L] = raw[L].real();
    sp.tail = {raw[7].real(), raw[8].real()};
    sp.energy_eV = model_.energy_eV;
    sp.rho1 = rho1;
    sp.rho2 = rho2_;
    return sp;
}

namespace {

std::pair<std::vector<BasisState>, std::vector<cplx>> split_state(const ExcitedState& state)
{
    std::vector<BasisState> basis;
    std::vector<cplx> a;
    for (const auto& [idx, v] : state.coeffs) {
        if (v == cplx(0.0)) continue;
        basis.push_back(idx);
        a.push_back(v);
    }
    return {basis, a};
}

} // namespace

LegendreSpectrum legendre_coefficients(const ExcitedState& state, const twophoton::SphericalTensor& tensor, int rho1,
                                       int rho2, const radial::ContinuumModel& model)
{
    state.validate();
    const auto w = TensorMoments::compute(tensor, rho1);
    auto [basis, a] = split_state(state);
    const PadKernel kernel(std::move(basis), rho2, model);
    return kernel.spectrum(a, w, rho1);
}

double pad_evaluate(const LegendreSpectrum& spec, double theta)
{
    const double x = std::cos(theta);
    double s = 0.0;
    for (int L = 0; L <= kLmaxPad; ++L) s += spec.c[L] * angular::legendre(L, x);
    return s;
}

double pecd_J(const LegendreSpectrum& spec)
{
    if (spec.c[0] == 0.0) throw NumericalError("PECD functional undefined for c0 = 0");
    return (2.0 * spec.c[1] - 0.5 * spec.c[3] + 0.25 * spec.c[5]) / spec.c[0];
}

std::array<bool, kLmaxPad + 1> predicted_pattern(int lmax, bool tensor_isotropic, int rho1, int rho2)
{
    if (lmax < 0 || lmax > 3) throw ValidationError("wave cutoff must be 0..3 (s, p, d, f)");
    twophoton::check_polarization(rho1, "rho1");
    twophoton::check_polarization(rho2, "rho2");

    auto mask = [](std::initializer_list<int> on) {
        std::array<bool, kLmaxPad + 1> m{};
        for (int L : on) m[L] = true;
        return m;
    };

    if (tensor_isotropic) {
        if (rho1 != 0) return mask({}); // two-photon step forbidden
        if (rho2 == 0) return mask({0, 2});
        return lmax >= 2 ? mask({0, 1, 2}) : mask({0, 2});
    }

    const bool odd_allowed = rho2 != 0;
    switch (lmax) {
    case 0: return mask({0, 2});
    case 1: return mask({0, 2, 4});
    case 2: return odd_allowed ? mask({0, 1, 2, 3, 4, 6}) : mask({0, 2, 4, 6});
    default: return odd_allowed ? mask({0, 1, 2, 3, 4, 5, 6}) : mask({0, 2, 4, 6});
    }
}

EnergyGrid gaussian_energy_grid(double center_eV, double fwhm_eV, int nodes)
{
    if (!(fwhm_eV > 0.0)) throw ValidationError("FWHM must be positive");
    if (nodes < 1) throw ValidationError("energy grid needs at least one node");
    if (!(center_eV > fwhm_eV / 2.0)) throw ValidationError("energy center must exceed FWHM/2");
    const double sigma = fwhm_eV / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    EnergyGrid g;
    double wsum = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double x = nodes == 1 ? 0.0 : -2.0 + 4.0 * i / (nodes - 1);
        const double E = center_eV + x * sigma;
        if (E < radial::kEnergyFloorEV)
            throw ValidationError("energy node " + std::to_string(E) + " eV lies below the threshold floor");
        const double w = std::exp(-0.5 * x * x);
        g.energies_eV.push_back(E);
        g.weights.push_back(w);
        wsum += w;
    }
    for (auto& w : g.weights) w /= wsum;
    return g;
}

LegendreSpectrum energy_averaged(const ExcitedState& state, const twophoton::SphericalTensor& tensor, int rho1,
                                 int rho2, radial::ContinuumKind kind, double center_eV, double fwhm_eV, int nodes)
{
    const auto grid = gaussian_energy_grid(center_eV, fwhm_eV, nodes);
    state.validate();
    const auto w = TensorMoments::compute(tensor, rho1);
    auto [basis, a] = split_state(state);

    LegendreSpectrum avg;
    avg.energy_eV = center_eV;
    avg.rho1 = rho1;
    avg.rho2 = rho2;
    for (std::size_t e = 0; e < grid.energies_eV.size(); ++e) {
        const PadKernel kernel(basis, rho2, {kind, grid.energies_eV[e]});
        const auto sp = kernel.spectrum(a, w, rho1);
        for (int L = 0; L <= kLmaxPad; ++L) avg.c[L] += grid.weights[e] * sp.c[L];
        for (int t = 0; t < 2; ++t) avg.tail[t] += grid.weights[e] * sp.tail[t];
    }
    return avg;
}

ExcitedState parity_transform(const ExcitedState& state)
{
    ExcitedState out = state;
    for (auto& [idx, a] : out.coeffs)
        if (idx.l % 2 != 0) a = -a;
    return out;
}

SymmetryRelations symmetry_transforms(const ExcitedState& state, const twophoton::SphericalTensor& tensor, int rho1,
                                      int rho2, const radial::ContinuumModel& model)
{
    state.validate();
    auto [basis, a] = split_state(state);
    const PadKernel k_same(basis, rho2, model);
    const PadKernel k_flip(basis, -rho2, model);
    const auto w = TensorMoments::compute(tensor, rho1);
    const auto w_flip = TensorMoments::compute(tensor, -rho1);

    std::vector<cplx> a_par = a;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].l % 2 != 0) a_par[i] = -a_par[i];

    SymmetryRelations r;
    r.base = k_same.spectrum(a, w, rho1);
    r.both_flipped = k_flip.spectrum(a, w_flip, -rho1);
    r.ionization_flipped = k_flip.spectrum(a, w, rho1);
    r.twophoton_flipped = k_same.spectrum(a, w_flip, -rho1);
    r.parity = k_same.spectrum(a_par, w, rho1);
    return r;
}

namespace debug {
void set_phase_flip(bool on) { g_phase_flip = on; }
bool phase_flip() { return g_phase_flip; }
} // namespace debug

} // namespace pecd::pad
