#include "hypext/quadrature.hpp"

#include "hypext/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

namespace hypext::quad {

namespace {

// Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix.
Rule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double mu0) {
    const auto n = diag.size();
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    if (n == 1) {
        rule.nodes[0] = diag[0];
        rule.weights[0] = mu0;
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::NonConvergence, "Golub-Welsch eigensolver failed");
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](auto a, auto b) { return solver.eigenvalues()[a] < solver.eigenvalues()[b]; });
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto k = order[i];
        const double v0 = solver.eigenvectors()(0, k);
        rule.nodes[i] = solver.eigenvalues()[k];
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

}  // namespace

Rule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1 || alpha <= -1.0 || beta <= -1.0)
        throw Error(ErrorCode::InvalidArgument, "gauss_jacobi needs n >= 1 and exponents > -1");
    Eigen::VectorXd diag(n);
    Eigen::VectorXd off(std::max(n - 1, 0));
    const double ab = alpha + beta;
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + ab;
        if (k == 0) {
            diag[k] = (beta - alpha) / (ab + 2.0);
        } else {
            diag[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
        }
    }
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        const double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
        const double den = s * s * (s + 1.0) * (s - 1.0);
        off[k - 1] = std::sqrt(num / den);
    }
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                                std::lgamma(ab + 2.0));
    return golub_welsch(diag, off, mu0);
}

Rule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

Rule gauss_laguerre(int n, double alpha) {
    if (n < 1 || alpha <= -1.0) throw Error(ErrorCode::InvalidArgument, "gauss_laguerre needs n >= 1, alpha > -1");
    Eigen::VectorXd diag(n);
    Eigen::VectorXd off(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(k * (k + alpha));
    return golub_welsch(diag, off, std::tgamma(alpha + 1.0));
}

const Rule& legendre(int n) {
    static std::mutex mutex;
    static std::map<int, Rule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
    return it->second;
}

}  // namespace hypext::quad
