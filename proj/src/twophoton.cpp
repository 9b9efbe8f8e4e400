#include "pecd/twophoton.hpp"
#include "pecd/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace pecd::twophoton {

using angular::wigner_3j;

namespace {

// Spherical unit vectors: V_q = e_q . V
std::array<Eigen::Vector3cd, 3> spherical_basis()
{
    const double s = 1.0 / std::sqrt(2.0);
    const cplx I(0.0, 1.0);
    std::array<Eigen::Vector3cd, 3> e;
    e[0] << s, -I * s, 0.0;   // q = -1
    e[1] << 0.0, 0.0, 1.0;    // q = 0
    e[2] << -s, -I * s, 0.0;  // q = +1
    return e;
}

double tensor_norm2(const SphericalTensor& t)
{
    double n = 0.0;
    for (const auto& row : t.c)
        for (const auto& v : row) n += std::norm(v);
    return n;
}

} // namespace

Eigen::Matrix3d CartesianTensor::matrix() const
{
    Eigen::Matrix3d m;
    m << xx, xy, xz, xy, yy, yz, xz, yz, zz;
    return m;
}

CartesianTensor CartesianTensor::from_matrix(const Eigen::Matrix3d& m)
{
    return {m(0, 0), m(0, 1), m(0, 2), m(1, 1), m(1, 2), m(2, 2)};
}

CartesianTensor CartesianTensor::scaled(double f) const
{
    return {f * xx, f * xy, f * xz, f * yy, f * yz, f * zz};
}

int check_polarization(int rho, const char* name)
{
    if (rho < -1 || rho > 1)
        throw ValidationError(std::string(name) + " must be -1, 0 or +1 (got " + std::to_string(rho) + ")");
    return rho;
}

SphericalTensor to_spherical(const CartesianTensor& t)
{
    const auto e = spherical_basis();
    const Eigen::Matrix3cd m = t.matrix().cast<cplx>();
    SphericalTensor out;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) out.c[a][b] = e[a].transpose() * m * e[b];
    // exact symmetry for symmetric input
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) out.c[b][a] = out.c[a][b];
    return out;
}

CartesianTensor to_cartesian(const SphericalTensor& t)
{
    const auto e = spherical_basis();
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) m += t.c[a][b] * e[a].conjugate() * e[b].conjugate().transpose();
    return CartesianTensor::from_matrix(m.real());
}

namespace {

double g_direct(int K, int q1, int q2, int q3, int q4, int rho1)
{
    const int a = q1 + q2, c = q3 + q4, s = a - c;
    double g = 0.0;
    for (int Q = 0; Q <= 2; ++Q) {
        const double wq = wigner_3j(1, 1, Q, q1, q2, -a) * wigner_3j(1, 1, Q, rho1, rho1, -2 * rho1);
        if (wq == 0.0) continue;
        for (int Qp = 0; Qp <= 2; ++Qp) {
            const double wqp = wigner_3j(1, 1, Qp, q3, q4, -c) * wigner_3j(1, 1, Qp, rho1, rho1, -2 * rho1);
            if (wqp == 0.0) continue;
            const double wk = wigner_3j(Q, Qp, K, a, -c, -s) * wigner_3j(Q, Qp, K, 2 * rho1, -2 * rho1, 0);
            g += (2 * Q + 1) * (2 * Qp + 1) * (2 * K + 1) * wq * wqp * wk;
        }
    }
    return g;
}

// All 3 * 5 * 81 coefficients, built once; the optimizers call this in tight loops.
struct GTable {
    std::array<double, 3 * 5 * 81> v{};
    GTable()
    {
        for (int r = -1; r <= 1; ++r)
            for (int K = 0; K <= 4; ++K)
                for (int i = 0; i < 81; ++i)
                    v[((r + 1) * 5 + K) * 81 + i] = g_direct(K, i / 27 - 1, i / 9 % 3 - 1, i / 3 % 3 - 1, i % 3 - 1, r);
    }
};

} // namespace

double g_coefficient(int K, int q1, int q2, int q3, int q4, int rho1)
{
    check_polarization(rho1, "rho1");
    if (K < 0 || K > 4) return 0.0;
    for (int q : {q1, q2, q3, q4})
        if (q < -1 || q > 1) return 0.0;
    static const GTable table;
    const int i = (q1 + 1) * 27 + (q2 + 1) * 9 + (q3 + 1) * 3 + (q4 + 1);
    return table.v[((rho1 + 1) * 5 + K) * 81 + i];
}

double normalization_B(const SphericalTensor& t, int rho1)
{
    check_polarization(rho1, "rho1");
    double B = 0.0;
    for (int q1 = -1; q1 <= 1; ++q1)
        for (int q2 = -1; q2 <= 1; ++q2)
            for (int p1 = -1; p1 <= 1; ++p1)
                for (int p2 = -1; p2 <= 1; ++p2) {
                    if (q1 + q2 != p1 + p2) continue;
                    double sum_q = 0.0;
                    for (int Q = 0; Q <= 2; ++Q) {
                        const double r = wigner_3j(1, 1, Q, rho1, rho1, -2 * rho1);
                        sum_q += (2 * Q + 1) * wigner_3j(1, 1, Q, p1, p2, -p1 - p2) * r *
                                 wigner_3j(1, 1, Q, q1, q2, -p1 - p2) * r;
                    }
                    B += (t(q1, q2) * std::conj(t(p1, p2))).real() * sum_q;
                }
    return B;
}

bool is_forbidden(const SphericalTensor& t, int rho1)
{
    const double n2 = tensor_norm2(t);
    return n2 == 0.0 || normalization_B(t, rho1) <= 1e-12 * n2;
}

double rho_2P_unnormalized(const SphericalTensor& t, int rho1, const angular::EulerAngles& omega)
{
    check_polarization(rho1, "rho1");
    cplx d[3];
    for (int q = -1; q <= 1; ++q) d[q + 1] = angular::wigner_D(1, q, rho1, omega);
    cplx amp = 0.0;
    for (int q1 = -1; q1 <= 1; ++q1)
        for (int q2 = -1; q2 <= 1; ++q2) amp += d[q1 + 1] * d[q2 + 1] * t(q1, q2);
    return std::norm(amp);
}

double rho_2P(const SphericalTensor& t, int rho1, const angular::EulerAngles& omega)
{
    if (is_forbidden(t, rho1))
        throw ForbiddenTransition("two-photon transition is forbidden for rho1 = " + std::to_string(rho1));
    return rho_2P_unnormalized(t, rho1, omega) / normalization_B(t, rho1);
}

TensorDecomposition decompose(const CartesianTensor& t)
{
    TensorDecomposition d;
    d.alpha0 = (t.xx + t.yy + t.zz) / 3.0;
    d.diag_aniso = {t.xx - d.alpha0, t.yy - d.alpha0, t.zz - d.alpha0};
    d.offdiag = {t.xy, t.xz, t.yz};
    d.isotropic = true;
    for (double v : d.diag_aniso) d.isotropic = d.isotropic && std::abs(v) <= 1e-12;
    for (double v : d.offdiag) d.isotropic = d.isotropic && std::abs(v) <= 1e-12;
    return d;
}

CartesianTensor effective_tensor(const CartesianTensor& left, const CartesianTensor& right)
{
    auto combine = [](double l, double r, const char* name) {
        const double p = l * r;
        if (p < -1e-12)
            throw ValidationError(std::string("left and right tensors differ in sign at component ") + name);
        const double mag = std::sqrt(std::max(p, 0.0));
        return (l < 0.0 || (l == 0.0 && r < 0.0)) ? -mag : mag;
    };
    return {combine(left.xx, right.xx, "xx"), combine(left.xy, right.xy, "xy"), combine(left.xz, right.xz, "xz"),
            combine(left.yy, right.yy, "yy"), combine(left.yz, right.yz, "yz"), combine(left.zz, right.zz, "zz")};
}

Strengths averaged_strengths(const CartesianTensor& left, const CartesianTensor& right)
{
    const Eigen::Matrix3d L = left.matrix(), R = right.matrix();
    Strengths s;
    s.deltaF = L.trace() * R.trace() / 30.0;
    s.deltaG = L.cwiseProduct(R).sum() / 30.0;
    s.deltaH = L.cwiseProduct(R.transpose()).sum() / 30.0;
    return s;
}

double delta_TP(const Strengths& s, double F, double G, double H)
{
    return F * s.deltaF + G * s.deltaG + H * s.deltaH;
}

double rate_K(double deltaTP, double w1_eV, double w2_eV)
{
    constexpr double kHartreeEV = 27.211386;
    constexpr double kAlpha = 7.2973525693e-3;
    constexpr double kBohrCm = 5.29177210903e-9;
    constexpr double kTimeAuS = 2.4188843265857e-17;
    const double w1 = w1_eV / kHartreeEV, w2 = w2_eV / kHartreeEV;
    // hbar = 1 and t0 = 1 in atomic units; a0^4 t0 converts a.u. to cm^4 s
    const double k_au = 4.0 * M_PI * M_PI * kAlpha * kAlpha * w1 * w2 * deltaTP;
    return k_au * std::pow(kBohrCm, 4) * kTimeAuS;
}

Rhombicity rhombicity_axiality(const CartesianTensor& t)
{
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(t.matrix());
    Rhombicity r;
    for (int i = 0; i < 3; ++i) r.eigenvalues[i] = solver.eigenvalues()(i);
    const double T0 = (r.eigenvalues[0] + r.eigenvalues[1] + r.eigenvalues[2]) / 3.0;
    const double b = r.eigenvalues[0] - T0;
    const double e = r.eigenvalues[1] - T0;
    r.Tr = 2.0 / 3.0 * (b - e);
    r.Ta = -b - e;
    const double scale = std::max({std::abs(r.eigenvalues[0]), std::abs(r.eigenvalues[2]), 1e-300});
    if (std::abs(r.Ta) > 1e-12 * scale) r.R = r.Tr / r.Ta;
    return r;
}

} // namespace pecd::twophoton
