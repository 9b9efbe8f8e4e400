#include "pecd/angular.hpp"
#include "pecd/errors.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace pecd::angular {

namespace {

constexpr int kMaxFact = 400;

const std::array<long double, kMaxFact + 1>& log_fact_table()
{
    static const auto table = [] {
        std::array<long double, kMaxFact + 1> t{};
        t[0] = 0.0L;
        for (int n = 1; n <= kMaxFact; ++n)
            t[n] = t[n - 1] + std::log(static_cast<long double>(n));
        return t;
    }();
    return table;
}

long double log_fact(int n)
{
    if (n < 0 || n > kMaxFact)
        throw NumericalError("log-factorial argument out of range: " + std::to_string(n));
    return log_fact_table()[n];
}

bool triangle(int a, int b, int c)
{
    return c >= std::abs(a - b) && c <= a + b;
}

bool selection_ok(int j1, int j2, int j3, int m1, int m2, int m3)
{
    if (j1 < 0 || j2 < 0 || j3 < 0) return false;
    if (m1 + m2 + m3 != 0) return false;
    if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return false;
    if (!triangle(j1, j2, j3)) return false;
    // (j1 j2 j3; 0 0 0) vanishes for odd j1+j2+j3
    if (m1 == 0 && m2 == 0 && m3 == 0 && (j1 + j2 + j3) % 2 != 0) return false;
    return true;
}

double racah_3j(int j1, int j2, int j3, int m1, int m2, int m3)
{
    const long double log_pref =
        0.5L * (log_fact(j1 + j2 - j3) + log_fact(j1 - j2 + j3) + log_fact(-j1 + j2 + j3) -
                log_fact(j1 + j2 + j3 + 1) + log_fact(j1 + m1) + log_fact(j1 - m1) + log_fact(j2 + m2) +
                log_fact(j2 - m2) + log_fact(j3 + m3) + log_fact(j3 - m3));

    const int kmin = std::max({0, j2 - j3 - m1, j1 - j3 + m2});
    const int kmax = std::min({j1 + j2 - j3, j1 - m1, j2 + m2});
    long double sum = 0.0L;
    for (int k = kmin; k <= kmax; ++k) {
        const long double log_den = log_fact(k) + log_fact(j1 + j2 - j3 - k) + log_fact(j1 - m1 - k) +
                                    log_fact(j2 + m2 - k) + log_fact(j3 - j2 + m1 + k) +
                                    log_fact(j3 - j1 - m2 + k);
        const long double term = std::exp(log_pref - log_den);
        sum += (k % 2 == 0) ? term : -term;
    }
    const int phase = j1 - j2 - m3;
    return static_cast<double>((std::abs(phase) % 2 == 0) ? sum : -sum);
}

struct ThreeJCache {
    std::shared_mutex mutex;
    std::unordered_map<std::uint64_t, double> values;
};

ThreeJCache& cache()
{
    static ThreeJCache c;
    return c;
}

std::uint64_t pack_key(int j1, int j2, int j3, int m1, int m2, int m3)
{
    auto b = [](int v) { return static_cast<std::uint64_t>(v + 128) & 0xffu; };
    return b(j1) | b(j2) << 8 | b(j3) << 16 | b(m1) << 24 | b(m2) << 32 | b(m3) << 40;
}

} // namespace

double wigner_3j(int j1, int j2, int j3, int m1, int m2, int m3)
{
    if (!selection_ok(j1, j2, j3, m1, m2, m3)) return 0.0;
    if (j1 > 100 || j2 > 100 || j3 > 100) return racah_3j(j1, j2, j3, m1, m2, m3);

    const std::uint64_t key = pack_key(j1, j2, j3, m1, m2, m3);
    auto& c = cache();
    {
        std::shared_lock lock(c.mutex);
        auto it = c.values.find(key);
        if (it != c.values.end()) return it->second;
    }
    const double v = racah_3j(j1, j2, j3, m1, m2, m3);
    std::unique_lock lock(c.mutex);
    c.values.emplace(key, v);
    return v;
}

double wigner_3j_exact(int j1, int j2, int j3, int m1, int m2, int m3)
{
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::cpp_rational;
    using big_float = boost::multiprecision::cpp_bin_float_50;

    if (!selection_ok(j1, j2, j3, m1, m2, m3)) return 0.0;

    auto fact = [](int n) {
        cpp_int r = 1;
        for (int i = 2; i <= n; ++i) r *= i;
        return r;
    };

    const cpp_rational square_part =
        cpp_rational(fact(j1 + j2 - j3) * fact(j1 - j2 + j3) * fact(-j1 + j2 + j3) * fact(j1 + m1) *
                         fact(j1 - m1) * fact(j2 + m2) * fact(j2 - m2) * fact(j3 + m3) * fact(j3 - m3),
                     fact(j1 + j2 + j3 + 1));

    const int kmin = std::max({0, j2 - j3 - m1, j1 - j3 + m2});
    const int kmax = std::min({j1 + j2 - j3, j1 - m1, j2 + m2});
    cpp_rational sum = 0;
    for (int k = kmin; k <= kmax; ++k) {
        cpp_rational term(cpp_int(1), fact(k) * fact(j1 + j2 - j3 - k) * fact(j1 - m1 - k) * fact(j2 + m2 - k) *
                                          fact(j3 - j2 + m1 + k) * fact(j3 - j1 - m2 + k));
        sum += (k % 2 == 0) ? term : cpp_rational(-term);
    }
    big_float value = sqrt(big_float(square_part)) * big_float(sum);
    if (std::abs(j1 - j2 - m3) % 2 != 0) value = -value;
    return static_cast<double>(value);
}

double gaunt_S(int l, int m, int q, int lo, int mo)
{
    if (l < 0 || lo < 0 || std::abs(q) > 1 || std::abs(m) > l || std::abs(mo) > lo) return 0.0;
    if (m != mo + q) return 0.0;
    if ((l + 1 + lo) % 2 != 0) return 0.0;
    if (!triangle(l, 1, lo)) return 0.0;
    const double b = std::sqrt(3.0 * (2 * l + 1) * (2 * lo + 1) / (4.0 * M_PI));
    const double sign = (std::abs(m) % 2 == 0) ? 1.0 : -1.0;
    return sign * b * wigner_3j(l, 1, lo, 0, 0, 0) * wigner_3j(l, 1, lo, -m, q, mo);
}

double wigner_small_d(int j, int mp, int m, double beta)
{
    if (std::abs(mp) > j || std::abs(m) > j) return 0.0;
    const long double c = std::cos(0.5L * beta);
    const long double s = std::sin(0.5L * beta);
    const long double log_root =
        0.5L * (log_fact(j + mp) + log_fact(j - mp) + log_fact(j + m) + log_fact(j - m));
    const int kmin = std::max(0, m - mp);
    const int kmax = std::min(j + m, j - mp);
    long double sum = 0.0L;
    for (int k = kmin; k <= kmax; ++k) {
        const long double coef =
            std::exp(log_root - log_fact(j + m - k) - log_fact(k) - log_fact(j - k - mp) - log_fact(k - m + mp));
        const int pc = 2 * j - 2 * k + m - mp;
        const int ps = 2 * k - m + mp;
        long double term = coef * std::pow(c, pc) * std::pow(s, ps);
        if ((k - m + mp) % 2 != 0) term = -term;
        sum += term;
    }
    return static_cast<double>(sum);
}

cplx wigner_D(int j, int mp, int m, const EulerAngles& w)
{
    const double d = wigner_small_d(j, mp, m, w.beta);
    return std::polar(d, -(mp * w.alpha + m * w.gamma));
}

double assoc_legendre(int L, int mu, double x)
{
    if (L < 0 || std::abs(mu) > L) return 0.0;
    if (mu < 0) {
        const int m = -mu;
        const double ratio = std::exp(static_cast<double>(log_fact(L - m) - log_fact(L + m)));
        return ((m % 2 == 0) ? 1.0 : -1.0) * ratio * assoc_legendre(L, m, x);
    }
    const int m = mu;
    double pmm = 1.0;
    const double somx2 = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
        pmm *= -fact * somx2;
        fact += 2.0;
    }
    if (L == m) return pmm;
    double pmmp1 = x * (2 * m + 1) * pmm;
    if (L == m + 1) return pmmp1;
    double pll = 0.0;
    for (int ll = m + 2; ll <= L; ++ll) {
        pll = (x * (2 * ll - 1) * pmmp1 - (ll + m - 1) * pmm) / (ll - m);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return pll;
}

double legendre(int L, double x)
{
    if (L == 0) return 1.0;
    double p0 = 1.0, p1 = x;
    for (int l = 2; l <= L; ++l) {
        const double p2 = ((2 * l - 1) * x * p1 - (l - 1) * p0) / l;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

cplx spherical_harmonic(int l, int m, double theta, double phi)
{
    if (std::abs(m) > l) return 0.0;
    const int am = std::abs(m);
    const double norm = std::sqrt((2 * l + 1) / (4.0 * M_PI) *
                                  std::exp(static_cast<double>(log_fact(l - am) - log_fact(l + am))));
    const cplx y = norm * assoc_legendre(l, am, std::cos(theta)) * std::polar(1.0, am * phi);
    if (m >= 0) return y;
    return ((am % 2 == 0) ? 1.0 : -1.0) * std::conj(y);
}

RealHarmonic real_harmonic(const std::string& label)
{
    // F3b is tabulated as y^3 - 3x^2 y, the negative of the usual sin(3 phi) harmonic.
    static const std::map<std::string, RealHarmonic> table = {
        {"S0", {0, 0, '0', 1}},  {"PZ", {1, 0, '0', 1}},  {"PX", {1, 1, 'c', 1}},  {"PY", {1, 1, 's', 1}},
        {"D0", {2, 0, '0', 1}},  {"D1a", {2, 1, 'c', 1}}, {"D1b", {2, 1, 's', 1}}, {"D2a", {2, 2, 's', 1}},
        {"D2b", {2, 2, 'c', 1}}, {"F0", {3, 0, '0', 1}},  {"F1a", {3, 1, 'c', 1}}, {"F1b", {3, 1, 's', 1}},
        {"F2a", {3, 2, 's', 1}}, {"F2b", {3, 2, 'c', 1}}, {"F3a", {3, 3, 'c', 1}}, {"F3b", {3, 3, 's', -1}},
    };
    auto it = table.find(label);
    if (it == table.end()) throw ValidationError("unknown real-harmonic label '" + label + "'");
    return it->second;
}

std::map<std::pair<int, int>, cplx> real_to_complex_coeffs(const std::map<std::string, double>& real_coeffs)
{
    const double r2 = 1.0 / std::sqrt(2.0);
    const cplx I(0.0, 1.0);
    std::map<std::pair<int, int>, cplx> out;
    for (const auto& [label, value] : real_coeffs) {
        const RealHarmonic h = real_harmonic(label);
        const double v = h.sign * value;
        const double parity = (h.m % 2 == 0) ? 1.0 : -1.0;
        switch (h.kind) {
        case '0':
            out[{h.l, 0}] += v;
            break;
        case 'c':
            out[{h.l, -h.m}] += v * r2;
            out[{h.l, h.m}] += parity * v * r2;
            break;
        default:
            out[{h.l, -h.m}] += I * v * r2;
            out[{h.l, h.m}] += -I * parity * v * r2;
            break;
        }
    }
    return out;
}

} // namespace pecd::angular
