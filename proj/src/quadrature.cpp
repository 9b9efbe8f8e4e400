#include "pecd/quadrature.hpp"
#include "pecd/errors.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace pecd {

namespace {

QuadratureRule build_rule(int n)
{
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi's initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0, p1 = x;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node for the weight.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

} // namespace

const QuadratureRule& gauss_legendre(int n)
{
    if (n < 1) throw ValidationError("Gauss-Legendre rule needs at least one node");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<QuadratureRule>> rules;
    std::lock_guard lock(mutex);
    auto& slot = rules[n];
    if (!slot) slot = std::make_unique<QuadratureRule>(build_rule(n));
    return *slot;
}

QuadratureRule gauss_legendre(int n, double a, double b)
{
    const QuadratureRule& ref = gauss_legendre(n);
    QuadratureRule out = ref;
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < n; ++i) {
        out.nodes[i] = mid + half * ref.nodes[i];
        out.weights[i] = half * ref.weights[i];
    }
    return out;
}

} // namespace pecd
