#include "oracles/oracles.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/laguerre.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <stdexcept>

namespace oracle_ref {

namespace {

// Basis |j1 m1>|j2 m2> indexed as (m1 + j1) * (2 j2 + 1) + (m2 + j2).
struct ProductSpace {
    int j1, j2;
    int dim() const { return (2 * j1 + 1) * (2 * j2 + 1); }
    int index(int m1, int m2) const { return (m1 + j1) * (2 * j2 + 1) + (m2 + j2); }
};

double ladder_coef(int j, int m, int dir) // <j m+dir | J_dir | j m>
{
    return std::sqrt(static_cast<double>(j * (j + 1) - m * (m + dir)));
}

Eigen::MatrixXd total_ladder(const ProductSpace& s, int dir)
{
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(s.dim(), s.dim());
    for (int m1 = -s.j1; m1 <= s.j1; ++m1)
        for (int m2 = -s.j2; m2 <= s.j2; ++m2) {
            const int from = s.index(m1, m2);
            if (std::abs(m1 + dir) <= s.j1) J(s.index(m1 + dir, m2), from) += ladder_coef(s.j1, m1, dir);
            if (std::abs(m2 + dir) <= s.j2) J(s.index(m1, m2 + dir), from) += ladder_coef(s.j2, m2, dir);
        }
    return J;
}

} // namespace

double clebsch_gordan_ladder(int j1, int m1, int j2, int m2, int J, int M)
{
    if (m1 + m2 != M || J < std::abs(j1 - j2) || J > j1 + j2 || std::abs(M) > J) return 0.0;
    if (std::abs(m1) > j1 || std::abs(m2) > j2) return 0.0;
    const ProductSpace s{j1, j2};
    const Eigen::MatrixXd Jp = total_ladder(s, +1);
    const Eigen::MatrixXd Jm = total_ladder(s, -1);

    // Subspace with total projection J; the highest-weight vector spans ker(J+) there.
    std::vector<int> cols;
    for (int a = -j1; a <= j1; ++a)
        if (std::abs(J - a) <= j2) cols.push_back(s.index(a, J - a));
    Eigen::MatrixXd sub(s.dim(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) sub.col(c) = Eigen::VectorXd::Unit(s.dim(), cols[c]);
    const Eigen::MatrixXd image = Jp * sub;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(image, Eigen::ComputeFullV);
    const Eigen::VectorXd coeffs = svd.matrixV().col(cols.size() - 1);
    Eigen::VectorXd top = sub * coeffs;
    top.normalize();
    // Condon-Shortley: <j1 j1, j2 J-j1 | J J> > 0
    if (top(s.index(j1, J - j1)) < 0) top = -top;

    Eigen::VectorXd state = top;
    for (int mm = J; mm > M; --mm) {
        state = Jm * state;
        state.normalize();
    }
    return state(s.index(m1, m2));
}

double threej_ladder(int j1, int j2, int j3, int m1, int m2, int m3)
{
    if (m1 + m2 + m3 != 0) return 0.0;
    const double cg = clebsch_gordan_ladder(j1, m1, j2, m2, j3, -m3);
    const int phase = j1 - j2 - m3;
    return ((std::abs(phase) % 2 == 0) ? 1.0 : -1.0) * cg / std::sqrt(2.0 * j3 + 1.0);
}

cplx wigner_D_expm(int j, int mprime, int m, double alpha, double beta, double gamma)
{
    const int dim = 2 * j + 1;
    using CM = Eigen::MatrixXcd;
    CM Jz = CM::Zero(dim, dim), Jp = CM::Zero(dim, dim);
    auto idx = [j](int mm) { return mm + j; };
    for (int mm = -j; mm <= j; ++mm) {
        Jz(idx(mm), idx(mm)) = static_cast<double>(mm);
        if (mm < j) Jp(idx(mm + 1), idx(mm)) = ladder_coef(j, mm, +1);
    }
    const CM Jm = Jp.adjoint();
    const CM Jy = (Jp - Jm) / cplx(0.0, 2.0);
    const cplx I(0.0, 1.0);
    const CM Ra = (CM(-I * alpha * Jz)).exp();
    const CM Rb = (CM(-I * beta * Jy)).exp();
    const CM Rg = (CM(-I * gamma * Jz)).exp();
    const CM R = Ra * Rb * Rg;
    return R(idx(mprime), idx(m));
}

cplx lanczos_log_gamma(cplx z)
{
    static const double g = 7.0;
    static const double coef[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                   771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                   -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    z -= 1.0;
    cplx x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (z + static_cast<double>(i));
    const cplx t = z + g + 0.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double coulomb_G_series(int l, double k, double r)
{
    using mp = boost::multiprecision::cpp_bin_float_100;
    using mpc = boost::multiprecision::cpp_complex_100;
    const mp eta = mp(1) / mp(k);
    const mp pi = boost::math::constants::pi<mp>();

    // |Gamma(l+1+i eta)|^2 exp(pi eta) = 2 pi eta / (1 - exp(-2 pi eta)) * prod (j^2 + eta^2)
    mp gsq = 2 * pi * eta / (1 - exp(-2 * pi * eta));
    for (int j = 1; j <= l; ++j) gsq *= mp(j * j) + eta * eta;
    mp fact = 1;
    for (int j = 2; j <= 2 * l + 1; ++j) fact *= j;
    const mp C = sqrt(2 * mp(k) / pi) * sqrt(gsq) / fact;

    const mpc a(mp(l + 1), eta);
    const mp b = 2 * l + 2;
    const mpc z(mp(0), 2 * mp(k) * mp(r));
    mpc term = 1, sum = 1;
    for (int n = 0; n < 5000; ++n) {
        term *= (a + mp(n)) / (b + mp(n)) * z / mp(n + 1);
        sum += term;
        if (n > abs(z) && abs(term) < mp("1e-45") * abs(sum)) break;
    }
    const mpc phase = exp(mpc(mp(0), -mp(k) * mp(r)));
    const mpc val = C * pow(2 * mp(k) * mp(r), l) * phase * sum;
    return static_cast<double>(val.real());
}

double hydrogen_R_boost(int n, int l, double r)
{
    const double rho = 2.0 * r / n;
    const double norm = std::sqrt(std::pow(2.0 / n, 3) * boost::math::tgamma(n - l) /
                                  (2.0 * n * boost::math::tgamma(n + l + 1)));
    return norm * std::exp(-rho / 2) * std::pow(rho, l) *
           boost::math::laguerre(static_cast<unsigned>(n - l - 1), static_cast<unsigned>(2 * l + 1), rho);
}

double radial_integral_adaptive(int n, int lo, int l, double k)
{
    auto f = [&](double r) { return r * r * r * coulomb_G_series(l, k, r) * hydrogen_R_boost(n, lo, r); };
    double err = 0.0;
    // split at a few radii so each adaptive run sees a gentle integrand
    const double edges[] = {0.0, 5.0, 15.0, 35.0, 70.0, 120.0, 200.0};
    double total = 0.0;
    for (int i = 0; i + 1 < 7; ++i)
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, edges[i], edges[i + 1], 15,
                                                                                1e-12, &err);
    return 4.0 * M_PI / 3.0 * total;
}

cplx ylm_explicit(int l, int m, double theta, double phi)
{
    if (m < 0) return ((-m) % 2 == 0 ? 1.0 : -1.0) * std::conj(ylm_explicit(l, -m, theta, phi));
    const double c = std::cos(theta), s = std::sin(theta);
    const double pi = M_PI;
    double v = 0.0;
    switch (l * 10 + m) {
    case 0: v = 0.5 / std::sqrt(pi); break;
    case 10: v = std::sqrt(3 / (4 * pi)) * c; break;
    case 11: v = -std::sqrt(3 / (8 * pi)) * s; break;
    case 20: v = std::sqrt(5 / (16 * pi)) * (3 * c * c - 1); break;
    case 21: v = -std::sqrt(15 / (8 * pi)) * s * c; break;
    case 22: v = std::sqrt(15 / (32 * pi)) * s * s; break;
    case 30: v = std::sqrt(7 / (16 * pi)) * (5 * c * c * c - 3 * c); break;
    case 31: v = -std::sqrt(21 / (64 * pi)) * s * (5 * c * c - 1); break;
    case 32: v = std::sqrt(105 / (32 * pi)) * s * s * c; break;
    case 33: v = -std::sqrt(35 / (64 * pi)) * s * s * s; break;
    case 40: v = 3 / (16 * std::sqrt(pi)) * (35 * c * c * c * c - 30 * c * c + 3); break;
    case 41: v = -3 / 8.0 * std::sqrt(5 / pi) * s * (7 * c * c * c - 3 * c); break;
    case 42: v = 3 / 8.0 * std::sqrt(5 / (2 * pi)) * s * s * (7 * c * c - 1); break;
    case 43: v = -3 / 8.0 * std::sqrt(35 / pi) * s * s * s * c; break;
    case 44: v = 3 / 16.0 * std::sqrt(35 / (2 * pi)) * s * s * s * s; break;
    default: throw std::invalid_argument("ylm_explicit supports l <= 4");
    }
    return std::polar(v, m * phi);
}

double gaunt_quadrature(int l, int m, int q, int lo, int mo)
{
    // Gauss-Legendre in cos(theta) and a uniform phi grid; exact for these degrees.
    constexpr int nt = 20, np = 16;
    double total = 0.0;
    // 20-point Gauss-Legendre nodes/weights from Golub-Welsch
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(nt, nt);
    for (int i = 1; i < nt; ++i) jac(i, i - 1) = jac(i - 1, i) = i / std::sqrt(4.0 * i * i - 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    cplx acc = 0.0;
    for (int i = 0; i < nt; ++i) {
        const double x = es.eigenvalues()(i);
        const double w = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
        const double theta = std::acos(x);
        for (int j = 0; j < np; ++j) {
            const double phi = 2.0 * M_PI * j / np;
            acc += w * (2.0 * M_PI / np) * std::conj(ylm_explicit(l, m, theta, phi)) *
                   ylm_explicit(1, q, theta, phi) * ylm_explicit(lo, mo, theta, phi);
        }
    }
    total = acc.real();
    return total;
}

} // namespace oracle_ref
