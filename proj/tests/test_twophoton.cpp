#include "doctest.h"

#include "pecd/errors.hpp"
#include "pecd/molecule.hpp"
#include "pecd/quadrature.hpp"
#include "pecd/twophoton.hpp"

#include <cmath>
#include <random>

using namespace pecd;
using namespace pecd::twophoton;

namespace {

const molecule::Molecule& fenchone()
{
    static const auto m = molecule::load_molecule(molecule::data_dir() + "/fenchone.json");
    return m;
}

const molecule::Molecule& camphor()
{
    static const auto m = molecule::load_molecule(molecule::data_dir() + "/camphor.json");
    return m;
}

CartesianTensor random_tensor(std::mt19937_64& rng)
{
    std::normal_distribution<double> n;
    return {n(rng), n(rng), n(rng), n(rng), n(rng), n(rng)};
}

// Spherical unit vectors written out by hand, independent of the library's table.
std::array<Eigen::Vector3cd, 3> unit_vectors()
{
    const double s = 1.0 / std::sqrt(2.0);
    const cplx i(0, 1);
    return {Eigen::Vector3cd(s, -i * s, 0), Eigen::Vector3cd(0, 0, 1), Eigen::Vector3cd(-s, -i * s, 0)};
}

// Orientation average of f over a product grid (trapezoid x Gauss-Legendre x trapezoid).
template <class F>
double orientation_average(F&& f, int na = 16, int nb = 16, int ng = 16)
{
    const auto& gl = gauss_legendre(nb);
    double acc = 0.0;
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b)
            for (int g = 0; g < ng; ++g) {
                const angular::EulerAngles w{2 * M_PI * a / na, std::acos(gl.nodes[b]), 2 * M_PI * g / ng};
                acc += gl.weights[b] / (2.0 * na * ng) * f(w);
            }
    return acc;
}

} // namespace

TEST_CASE("Polarization indices are validated")
{
    CHECK(check_polarization(-1) == -1);
    CHECK_THROWS_AS(check_polarization(2, "rho1"), ValidationError);
    CHECK_THROWS_AS(normalization_B(SphericalTensor{}, 3), ValidationError);
}

TEST_CASE("Identity tensor in the spherical basis")
{
    const auto t = to_spherical({1, 0, 0, 1, 0, 1});
    CHECK(std::abs(t(0, 0) - cplx(1)) < 1e-15);
    CHECK(std::abs(t(-1, 1) - cplx(-1)) < 1e-15);
    CHECK(std::abs(t(1, -1) - cplx(-1)) < 1e-15);
    CHECK(std::abs(t(1, 1)) < 1e-15);
    CHECK(std::abs(t(-1, -1)) < 1e-15);
    CHECK(std::abs(t(0, 1)) < 1e-15);
    CHECK(std::abs(t(0, -1)) < 1e-15);
}

TEST_CASE("Spherical components follow e_q1^T T e_q2")
{
    const auto e = unit_vectors();
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto c = random_tensor(rng);
        const auto t = to_spherical(c);
        const Eigen::Matrix3cd M = c.matrix().cast<cplx>();
        for (int q1 = -1; q1 <= 1; ++q1)
            for (int q2 = -1; q2 <= 1; ++q2) {
                const cplx ref = e[q1 + 1].transpose() * M * e[q2 + 1];
                CHECK(std::abs(t(q1, q2) - ref) < 1e-13);
            }
        const auto back = to_cartesian(t);
        CHECK((back.matrix() - c.matrix()).norm() < 1e-14 * c.matrix().norm());
    }
    // fenchone B effective tensor: T_00 = zz and T_{+1,+1} = (xx - yy)/2 + i xy by the linear map
    const CartesianTensor b{1.58, 17.10, 7.50, -1.67, -0.24, -2.48};
    const auto tb = to_spherical(b);
    CHECK(std::abs(tb(0, 0) - cplx(-2.48)) < 1e-14);
    CHECK(std::abs(tb(1, 1) - cplx((1.58 + 1.67) / 2, 17.10)) < 1e-13);
    CHECK(std::abs(tb(-1, 1) - cplx(-(1.58 - 1.67) / 2)) < 1e-14);
}

TEST_CASE("Coupling coefficients reproduce the product of four rotation matrices")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const angular::EulerAngles w{2 * M_PI * u(rng), M_PI * u(rng), 2 * M_PI * u(rng)};
        double worst = 0.0;
        for (int r = -1; r <= 1; ++r)
            for (int a = -1; a <= 1; ++a)
                for (int b = -1; b <= 1; ++b)
                    for (int c = -1; c <= 1; ++c)
                        for (int d = -1; d <= 1; ++d) {
                            using angular::wigner_D;
                            const cplx lhs = wigner_D(1, a, r, w) * wigner_D(1, b, r, w) *
                                             std::conj(wigner_D(1, c, r, w) * wigner_D(1, d, r, w));
                            const int s = a + b - c - d;
                            const double sign = (std::abs(c + d) % 2) ? -1.0 : 1.0;
                            cplx rhs = 0.0;
                            for (int K = std::abs(s); K <= 4; ++K)
                                rhs += sign * g_coefficient(K, a, b, c, d, r) * wigner_D(K, s, 0, w);
                            worst = std::max(worst, std::abs(lhs - rhs));
                        }
        CHECK(worst < 1e-13);
    }
}

TEST_CASE("Coupling coefficients: odd ranks flip sign with the helicity")
{
    for (int K = 0; K <= 4; ++K)
        for (int i = 0; i < 81; ++i) {
            const int a = i / 27 - 1, b = i / 9 % 3 - 1, c = i / 3 % 3 - 1, d = i % 3 - 1;
            const double sign = (K % 2) ? -1.0 : 1.0;
            CHECK(g_coefficient(K, a, b, c, d, -1) == doctest::Approx(sign * g_coefficient(K, a, b, c, d, 1)));
        }
}

TEST_CASE("Normalization B equals the orientation average of the density")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 4; ++trial) {
        const auto t = to_spherical(random_tensor(rng));
        for (int r = -1; r <= 1; ++r) {
            const double quad = orientation_average([&](const angular::EulerAngles& w) {
                return rho_2P_unnormalized(t, r, w);
            });
            CHECK(normalization_B(t, r) == doctest::Approx(quad).epsilon(1e-12));
            const double one = orientation_average([&](const angular::EulerAngles& w) { return rho_2P(t, r, w); });
            CHECK(one == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    const auto fb = to_spherical(fenchone().state("B").tensor());
    const double quad =
        orientation_average([&](const angular::EulerAngles& w) { return rho_2P_unnormalized(fb, 1, w); });
    CHECK(normalization_B(fb, 1) > 0.0);
    CHECK(std::abs(normalization_B(fb, 1) - quad) < 1e-9 * quad);
}

TEST_CASE("Isotropic tensors")
{
    const auto iso = to_spherical({2.5, 0, 0, 2.5, 0, 2.5});
    CHECK(is_forbidden(iso, 1));
    CHECK(is_forbidden(iso, -1));
    CHECK_FALSE(is_forbidden(iso, 0));
    CHECK(normalization_B(iso, 1) == doctest::Approx(0.0));
    CHECK_THROWS_AS(rho_2P(iso, 1, {0.1, 0.2, 0.3}), ForbiddenTransition);
    CHECK(rho_2P(iso, 0, {0.1, 0.2, 0.3}) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rho_2P(iso, 0, {2.0, 1.7, 0.4}) == doctest::Approx(1.0).epsilon(1e-13));
    const double quad = orientation_average([&](const angular::EulerAngles& w) {
        return rho_2P_unnormalized(to_spherical({1, 0, 0, 1, 0, 1}), 0, w);
    });
    CHECK(normalization_B(to_spherical({1, 0, 0, 1, 0, 1}), 0) == doctest::Approx(quad).epsilon(1e-13));
    CHECK(is_forbidden(SphericalTensor{}, 0));
}

TEST_CASE("Tensor decomposition")
{
    const auto unit = decompose({1, 0, 0, 1, 0, 1});
    CHECK(unit.alpha0 == doctest::Approx(1.0));
    CHECK(unit.isotropic);
    const auto d = decompose({2, 0, 0, 1, 0, 1});
    CHECK(d.alpha0 == doctest::Approx(4.0 / 3.0));
    CHECK(d.diag_aniso[0] == doctest::Approx(2.0 / 3.0));
    CHECK(d.diag_aniso[1] == doctest::Approx(-1.0 / 3.0));
    CHECK(d.diag_aniso[2] == doctest::Approx(-1.0 / 3.0));
    CHECK_FALSE(d.isotropic);
    const auto b = decompose(fenchone().state("B").tensor());
    CHECK_FALSE(b.isotropic);
    CHECK(std::abs(b.offdiag[0]) > 1.0);
}

TEST_CASE("Effective tensor is the signed geometric mean")
{
    const auto& b = fenchone().state("B");
    CHECK(effective_tensor(*b.left, *b.right).xy == doctest::Approx(17.10).epsilon(0.01 / 17.10));
    const auto& c1 = fenchone().state("C1");
    CHECK(std::abs(effective_tensor(*c1.left, *c1.right).xx - (-0.21)) < 0.01);
    const CartesianTensor zero{};
    CHECK(effective_tensor(zero, zero).matrix().norm() == 0.0);

    CartesianTensor l{1, 2, 3, 4, 5, 6}, r{1, 2, -3, 4, 5, 6};
    try {
        effective_tensor(l, r);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("xz") != std::string::npos);
    }
}

TEST_CASE("Averaged strengths and transition strength")
{
    const auto& fb = fenchone().state("B");
    const auto s = averaged_strengths(*fb.left, *fb.right);
    CHECK(std::abs(s.deltaF - 0.22) < 0.01);
    CHECK(std::abs(s.deltaG - 23.62) < 0.01);
    CHECK(std::abs(s.deltaH - 23.62) < 0.01);
    CHECK(std::abs(delta_TP(s, 2, 2, 2) - 94.92) < 0.05);

    const auto& cb = camphor().state("B");
    const auto sc = averaged_strengths(*cb.left, *cb.right);
    CHECK(std::abs(sc.deltaF - 7.92) < 0.02);
    CHECK(std::abs(sc.deltaG - 21.34) < 0.02);
    CHECK(std::abs(sc.deltaH - 21.34) < 0.02);

    const auto z = averaged_strengths({}, {});
    CHECK(z.deltaF == 0.0);
    CHECK(z.deltaG == 0.0);
    CHECK(delta_TP(z, -0.25, 3.5, -0.25) == 0.0);

    // The effective tensor keeps every product L_ab R_ab, hence delta_G and delta_H exactly.
    // delta_F mixes different diagonal elements and is kept only approximately.
    const auto eff = effective_tensor(*fb.left, *fb.right);
    const auto se = averaged_strengths(eff, eff);
    CHECK(se.deltaG == doctest::Approx(s.deltaG).epsilon(1e-12));
    CHECK(se.deltaH == doctest::Approx(s.deltaH).epsilon(1e-12));
    CHECK(std::abs(se.deltaF - s.deltaF) < 1e-3);

    // circular weights: the weighted sum itself, pinned
    CHECK(delta_TP(s, -0.25, 3.5, -0.25) == doctest::Approx(76.714913333333328).epsilon(1e-12));
}

TEST_CASE("Rate constant scales with both photon energies")
{
    const double k1 = rate_K(10.0, 3.0, 3.0);
    CHECK(k1 > 0.0);
    CHECK(rate_K(10.0, 6.0, 3.0) == doctest::Approx(2 * k1));
    CHECK(rate_K(20.0, 3.0, 3.0) == doctest::Approx(2 * k1));
    CHECK(rate_K(0.0, 3.0, 3.0) == 0.0);
}

TEST_CASE("Rhombicity and axiality")
{
    const auto l = rhombicity_axiality(*fenchone().state("C1").left);
    CHECK(l.eigenvalues[0] == doctest::Approx(-10.96).epsilon(0.01 / 10.96));
    CHECK(l.eigenvalues[2] == doctest::Approx(13.38).epsilon(0.01 / 13.38));
    CHECK(std::abs(l.Tr - (-7.44)) < 0.02);
    CHECK(std::abs(l.Ta - 12.50) < 0.02);
    REQUIRE(l.R);
    CHECK(std::abs(*l.R - (-0.59)) < 0.02);

    const auto r = rhombicity_axiality(*camphor().state("C1").right);
    CHECK(std::abs(r.Tr - (-3.50)) < 0.02);
    CHECK(std::abs(r.Ta - 5.68) < 0.02);
    REQUIRE(r.R);
    CHECK(std::abs(*r.R - (-0.61)) < 0.02);

    const auto iso = rhombicity_axiality({3, 0, 0, 3, 0, 3});
    CHECK(iso.Tr == doctest::Approx(0.0));
    CHECK(iso.Ta == doctest::Approx(0.0));
    CHECK_FALSE(iso.R.has_value());
}
