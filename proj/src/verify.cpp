#include "pecd/verify.hpp"
#include "pecd/errors.hpp"
#include "pecd/oracle.hpp"

#include <cmath>
#include <sstream>

namespace pecd::verify {

namespace {

using Mask = std::array<bool, pad::kLmaxPad + 1>;

std::string mask_string(const Mask& m)
{
    std::string s;
    for (int L = 0; L <= pad::kLmaxPad; ++L)
        if (m[L]) s += (s.empty() ? "c" : ",c") + std::to_string(L);
    return "{" + s + "}";
}

int random_sign(std::mt19937_64& rng) { return std::bernoulli_distribution(0.5)(rng) ? 1 : -1; }

// Largest |c'_L - sign_L c_L| / c0 for a transformed spectrum c'.
double law_deviation(const pad::LegendreSpectrum& base, const pad::LegendreSpectrum& other, bool odd_flip)
{
    double dev = 0.0;
    for (int L = 0; L <= pad::kLmaxPad; ++L) {
        const double expect = (odd_flip && L % 2 == 1) ? -base.c[L] : base.c[L];
        dev = std::max(dev, std::abs(other.c[L] - expect) / std::abs(base.c[0]));
    }
    return dev;
}

} // namespace

pad::ExcitedState random_state(std::mt19937_64& rng, int lmax, int n)
{
    std::normal_distribution<double> g(0.0, 1.0);
    pad::ExcitedState st;
    for (int l = 0; l <= lmax; ++l)
        for (int m = -l; m <= l; ++m) st.coeffs[{n, l, m}] = {g(rng), g(rng)};
    return st;
}

twophoton::CartesianTensor random_tensor(std::mt19937_64& rng, bool isotropic)
{
    std::normal_distribution<double> g(0.0, 1.0);
    if (isotropic) {
        const double a = 0.5 + std::abs(g(rng));
        return {a, 0, 0, a, 0, a};
    }
    return {g(rng), g(rng), g(rng), g(rng), g(rng), g(rng)};
}

Mask observed_mask(const pad::ExcitedState& state, const twophoton::CartesianTensor& t, int rho1, int rho2,
                   const radial::ContinuumModel& model)
{
    Mask m{};
    try {
        const auto sp = pad::legendre_coefficients(state, twophoton::to_spherical(t), rho1, rho2, model);
        for (int L = 0; L <= pad::kLmaxPad; ++L) m[L] = std::abs(sp.c[L] / sp.c[0]) >= 1e-12;
    } catch (const ForbiddenTransition&) {
        // nothing is excited, so nothing contributes
    }
    return m;
}

std::vector<CheckResult> check_symmetry_laws(int draws, std::uint64_t seed, double energy_eV)
{
    std::mt19937_64 rng(seed);
    const radial::ContinuumModel model{radial::ContinuumKind::Coulomb, energy_eV};
    double d_both = 0, d_ion = 0, d_tp = 0, d_par = 0, d_even = 0;
    std::uniform_int_distribution<int> lpick(0, 3);
    for (int i = 0; i < draws; ++i) {
        const auto st = random_state(rng, lpick(rng));
        const auto T = twophoton::to_spherical(random_tensor(rng));
        const int r1 = random_sign(rng), r2 = random_sign(rng);
        const auto rel = pad::symmetry_transforms(st, T, r1, r2, model);
        d_both = std::max(d_both, law_deviation(rel.base, rel.both_flipped, true));
        d_ion = std::max(d_ion, law_deviation(rel.base, rel.ionization_flipped, true));
        d_tp = std::max(d_tp, law_deviation(rel.base, rel.twophoton_flipped, false));
        d_par = std::max(d_par, law_deviation(rel.base, rel.parity, true));

        const int r1_lin = std::uniform_int_distribution<int>(-1, 1)(rng);
        const auto lin = pad::legendre_coefficients(st, T, r1_lin, 0, model);
        for (int L = 1; L <= pad::kLmaxPad; L += 2) d_even = std::max(d_even, std::abs(lin.c[L] / lin.c[0]));
    }
    const double tol = 1e-10;
    auto make = [&](const char* name, double d) {
        std::ostringstream os;
        os << draws << " draws";
        return CheckResult{name, d <= tol, d, os.str()};
    };
    return {make("c_L(-r1,-r2) = (-1)^L c_L(r1,r2)", d_both), make("c_L(r1,-r2) = (-1)^L c_L(r1,r2)", d_ion),
            make("c_L(-r1,r2) = c_L(r1,r2)", d_tp), make("parity a -> (-1)^lo a flips odd c_L", d_par),
            make("linear ionization gives even c_L only", d_even)};
}

std::vector<CheckResult> check_isotropic_reduction(int draws, std::uint64_t seed, double energy_eV)
{
    std::mt19937_64 rng(seed);
    const radial::ContinuumModel model{radial::ContinuumKind::Coulomb, energy_eV};
    std::vector<CheckResult> out;
    for (int circular = 0; circular <= 1; ++circular) {
        const Mask expect = pad::predicted_pattern(3, true, 0, circular);
        int bad = 0;
        std::string seen;
        for (int i = 0; i < draws; ++i) {
            const auto st = random_state(rng, 3);
            const auto T = random_tensor(rng, true);
            const int r2 = circular ? random_sign(rng) : 0;
            const Mask m = observed_mask(st, T, 0, r2, model);
            if (m != expect) {
                ++bad;
                seen = mask_string(m);
            }
        }
        std::string detail = "expected " + mask_string(expect);
        if (bad) detail += ", " + std::to_string(bad) + "/" + std::to_string(draws) + " draws gave " + seen;
        out.push_back({circular ? "isotropic tensor, circular ionization" : "isotropic tensor, linear ionization",
                       bad == 0, double(bad), detail});
    }
    return out;
}

std::vector<CheckResult> check_pattern_table(int draws, std::uint64_t seed, double energy_eV)
{
    std::mt19937_64 rng(seed);
    const radial::ContinuumModel model{radial::ContinuumKind::Coulomb, energy_eV};
    struct Column {
        const char* name;
        int r1, r2; // magnitudes; +-1 columns use random signs, the last pairs opposite signs
        bool opposite;
    };
    const Column cols[] = {{"0/+-1", 0, 1, false}, {"+-1/0", 1, 0, false}, {"0/0", 0, 0, false},
                           {"+-1/+-1", 1, 1, false}, {"+-1/-+1", 1, 1, true}};
    const char* waves = "spdf";
    std::vector<CheckResult> out;
    for (int iso = 1; iso >= 0; --iso)
        for (const auto& col : cols)
            for (int cut = 0; cut <= 3; ++cut) {
                int bad = 0;
                std::string seen;
                Mask expect{};
                for (int i = 0; i < draws; ++i) {
                    const auto st = random_state(rng, cut);
                    const auto T = random_tensor(rng, iso);
                    const int s = random_sign(rng);
                    const int r1 = col.r1 * s;
                    const int r2 = col.r2 * (col.opposite ? -s : s);
                    expect = pad::predicted_pattern(cut, iso, r1, r2);
                    const Mask m = observed_mask(st, T, r1, r2, model);
                    if (m != expect) {
                        ++bad;
                        seen = mask_string(m);
                    }
                }
                std::string name = std::string(iso ? "isotropic " : "anisotropic ") + col.name + " " + waves[cut];
                std::string detail = "expected " + mask_string(expect);
                if (bad) detail += ", " + std::to_string(bad) + "/" + std::to_string(draws) + " draws gave " + seen;
                out.push_back({name, bad == 0, double(bad), detail});
            }
    return out;
}

CheckResult check_legendre_cutoff(int draws, std::uint64_t seed, double energy_eV)
{
    std::mt19937_64 rng(seed);
    const radial::ContinuumModel model{radial::ContinuumKind::Coulomb, energy_eV};
    double dev = 0.0;
    for (int i = 0; i < draws; ++i) {
        const auto st = random_state(rng, 3);
        const auto T = twophoton::to_spherical(random_tensor(rng));
        const int r1 = std::uniform_int_distribution<int>(-1, 1)(rng);
        const int r2 = std::uniform_int_distribution<int>(-1, 1)(rng);
        const auto sp = pad::legendre_coefficients(st, T, r1, r2, model);
        for (double t : sp.tail) dev = std::max(dev, std::abs(t / sp.c[0]));
    }
    return {"c7 = c8 = 0 (L <= 6 cutoff)", dev < 1e-12, dev, std::to_string(draws) + " draws"};
}

CheckResult check_c5_needs_f(int draws, std::uint64_t seed, double energy_eV)
{
    std::mt19937_64 rng(seed);
    const radial::ContinuumModel model{radial::ContinuumKind::Coulomb, energy_eV};
    double without_f = 0.0, with_f = 1e300;
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < draws; ++i) {
        auto st = random_state(rng, 2);
        const auto T = twophoton::to_spherical(random_tensor(rng));
        const int r1 = random_sign(rng), r2 = random_sign(rng);
        const auto a = pad::legendre_coefficients(st, T, r1, r2, model);
        without_f = std::max(without_f, std::abs(a.c[5] / a.c[0]));
        const int m = std::uniform_int_distribution<int>(-3, 3)(rng);
        st.coeffs[{4, 3, m}] = {g(rng), g(rng)};
        const auto b = pad::legendre_coefficients(st, T, r1, r2, model);
        with_f = std::min(with_f, std::abs(b.c[5] / b.c[0]));
    }
    std::ostringstream os;
    os << "max |c5/c0| without f = " << without_f << ", min with f = " << with_f;
    return {"c5 requires f waves", without_f < 1e-12 && with_f >= 1e-12, without_f, os.str()};
}

CheckResult check_oracle_equivalence(int draws, std::uint64_t seed, double energy_eV)
{
    std::mt19937_64 rng(seed);
    const radial::ContinuumModel model{radial::ContinuumKind::Coulomb, energy_eV};
    const auto grid = oracle::OrientationGrid::make();
    double worst = 0.0; // deviation in units of the allowed tolerance
    double worst_abs = 0.0;
    for (int i = 0; i < draws; ++i) {
        const auto st = random_state(rng, 3);
        const auto T = twophoton::to_spherical(random_tensor(rng));
        const int r1 = random_sign(rng);
        for (int r2 : {r1, -r1}) {
            const auto a = pad::legendre_coefficients(st, T, r1, r2, model).normalized();
            const auto o = oracle::oracle_legendre(st, T, r1, r2, model, grid).normalized();
            for (int L = 0; L <= pad::kLmaxPad; ++L) {
                const double diff = std::abs(a[L] - o[L]);
                const double tol = std::max(1e-6 * std::abs(o[L]), 1e-9);
                worst = std::max(worst, diff / tol);
                worst_abs = std::max(worst_abs, diff);
            }
        }
    }
    std::ostringstream os;
    os << draws << " draws x 2 polarization pairs, worst |delta(c_L/c0)| = " << worst_abs;
    return {"analytic c_L match the orientation-quadrature oracle", worst <= 1.0, worst_abs, os.str()};
}

std::vector<CheckResult> run_suite(const SuiteOptions& opt)
{
    std::vector<CheckResult> all;
    auto append = [&](std::vector<CheckResult> v) { all.insert(all.end(), v.begin(), v.end()); };
    append(check_symmetry_laws(opt.symmetry_draws, opt.seed));
    append(check_isotropic_reduction(opt.pattern_draws, opt.seed + 1));
    append(check_pattern_table(opt.pattern_draws, opt.seed + 2));
    all.push_back(check_legendre_cutoff(opt.symmetry_draws, opt.seed + 3));
    all.push_back(check_c5_needs_f(opt.pattern_draws, opt.seed + 4));
    if (opt.include_oracle) all.push_back(check_oracle_equivalence(opt.oracle_draws, opt.seed + 5));
    return all;
}

} // namespace pecd::verify
