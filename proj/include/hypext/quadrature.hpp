#pragma once

#include <vector>

namespace hypext::quad {

/// Nodes and weights of a Gaussian rule. Legendre/Jacobi rules live on [-1,1],
/// Laguerre rules on [0, inf).
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

/// Weight 1 on [-1,1].
Rule gauss_legendre(int n);

/// Weight (1-x)^alpha (1+x)^beta on [-1,1]; alpha, beta > -1.
Rule gauss_jacobi(int n, double alpha, double beta);

/// Weight x^alpha e^{-x} on [0, inf); alpha > -1.
Rule gauss_laguerre(int n, double alpha = 0.0);

/// Shared immutable Legendre rule (built once per n).
const Rule& legendre(int n);

/// Integrate f over [a,b] with a fixed Legendre rule.
template <class F>
auto integrate_fixed(const Rule& rule, double a, double b, F&& f) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    decltype(f(mid)) sum{};
    for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

}  // namespace hypext::quad
