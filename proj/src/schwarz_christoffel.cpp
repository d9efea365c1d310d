#include "hypext/conformal.hpp"

#include "hypext/error.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypext {

namespace {

constexpr int kNodes = 24;
constexpr double kSnap = 1e-13;

double reduce_angle(double theta, double base) {
    double t = std::fmod(theta - base, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return base + t;
}

}  // namespace

ConformalMap ConformalMap::identity() {
    ConformalMap m;
    m.kind_ = MapKind::DiskIdentity;
    m.theta_ = {0.0};
    m.image_scale_ = 2.0;
    m.perimeter_ = kTwoPi;
    return m;
}

ConformalMap ConformalMap::disk_to_square() {
    std::vector<double> theta, beta;
    std::vector<Point> w;
    for (int k = 0; k < 4; ++k) {
        theta.push_back(kPi / 4.0 + k * kPi / 2.0);
        beta.push_back(-0.5);
        w.push_back(std::polar(std::sqrt(0.5), kPi / 4.0 + k * kPi / 2.0));
    }
    return from_parameters(MapKind::DiskToSquare, theta, beta, w);
}

ConformalMap ConformalMap::from_parameters(MapKind kind, std::vector<double> prevertices, std::vector<double> betas,
                                           std::vector<Point> vertices) {
    if (prevertices.size() != betas.size() || prevertices.size() != vertices.size() || prevertices.size() < 3)
        throw Error(ErrorCode::InvalidArgument, "prevertices, turning parameters and vertices must match (>= 3)");
    ConformalMap m;
    m.kind_ = kind;
    m.theta_ = std::move(prevertices);
    m.beta_ = std::move(betas);
    m.w_ = std::move(vertices);
    for (std::size_t k = 1; k < m.theta_.size(); ++k)
        if (!(m.theta_[k] > m.theta_[k - 1]) || m.theta_[k] >= m.theta_[0] + kTwoPi)
            throw Error(ErrorCode::InvalidArgument, "prevertices must be strictly increasing within one turn");
    m.prepare();
    return m;
}

void ConformalMap::prepare() {
    const std::size_t n = theta_.size();
    zeta_.resize(n);
    for (std::size_t k = 0; k < n; ++k) zeta_[k] = std::polar(1.0, theta_[k]);
    if (jacobi_.size() != n) {
        jacobi_.clear();
        for (double b : beta_) jacobi_.push_back(quad::gauss_jacobi(kNodes, 0.0, b));
    }
    I_.assign(n, Point(0.0, 0.0));
    I_[0] = integrate(Point(0.0, 0.0), zeta_[0]);
    for (std::size_t k = 1; k < n; ++k) I_[k] = I_[k - 1] + integrate(zeta_[k - 1], zeta_[k]);
    C_ = (w_[1] - w_[0]) / (I_[1] - I_[0]);
    A_ = w_[0] - C_ * I_[0];

    side_start_.assign(n + 1, 0.0);
    double xmin = w_[0].real(), xmax = xmin, ymin = w_[0].imag(), ymax = ymin;
    for (std::size_t k = 0; k < n; ++k) {
        side_start_[k + 1] = side_start_[k] + std::abs(w_[(k + 1) % n] - w_[k]);
        xmin = std::min(xmin, w_[k].real());
        xmax = std::max(xmax, w_[k].real());
        ymin = std::min(ymin, w_[k].imag());
        ymax = std::max(ymax, w_[k].imag());
    }
    perimeter_ = side_start_[n];
    image_scale_ = std::hypot(xmax - xmin, ymax - ymin);

    double res = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        res = std::max(res, std::abs(A_ + C_ * I_[k] - w_[k]) / image_scale_);
        const Point side = k + 1 < n ? I_[k + 1] - I_[k] : integrate(zeta_[n - 1], zeta_[0]);
        const double len = std::abs(w_[(k + 1) % n] - w_[k]);
        res = std::max(res, std::abs(std::abs(C_ * side) / len - 1.0));
    }
    residual_ = res;
}

Point ConformalMap::integrand(Point t, int skip) const {
    Point log_sum(0.0, 0.0);
    for (std::size_t k = 0; k < zeta_.size(); ++k) {
        if (static_cast<int>(k) == skip || beta_[k] == 0.0) continue;
        log_sum += beta_[k] * std::log(1.0 - t / zeta_[k]);
    }
    return std::exp(log_sum);
}

int ConformalMap::singular_index(Point z) const {
    for (std::size_t k = 0; k < zeta_.size(); ++k)
        if (std::abs(z - zeta_[k]) < kSnap) return static_cast<int>(k);
    return -1;
}

Point ConformalMap::integrate_regular(Point a, Point b) const {
    const double L = std::abs(b - a);
    if (L == 0.0) return {0.0, 0.0};
    const Point u = (b - a) / L;
    const auto& gl = quad::legendre(kNodes);
    Point total(0.0, 0.0);
    double pos = 0.0;
    while (pos < L) {
        const Point t0 = a + pos * u;
        double d = std::numeric_limits<double>::infinity();
        for (const Point& z : zeta_) d = std::min(d, std::abs(t0 - z));
        double step = std::min(L - pos, std::max(d, 1e-3 * L * 1e-12));
        if (L - pos - step < 0.25 * step) step = L - pos;
        const Point half = 0.5 * step * u;
        const Point mid = t0 + half;
        Point sum(0.0, 0.0);
        for (std::size_t i = 0; i < gl.size(); ++i) sum += gl.weights[i] * integrand(mid + gl.nodes[i] * half);
        total += sum * half;
        pos += step;
    }
    return total;
}

Point ConformalMap::integrate_from_singular(int k, Point b) const {
    const Point a = zeta_[k];
    const double L = std::abs(b - a);
    if (L == 0.0) return {0.0, 0.0};
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < zeta_.size(); ++m)
        if (static_cast<int>(m) != k) d = std::min(d, std::abs(a - zeta_[m]));
    const double h = std::min(L, 0.5 * d);
    const Point u = (b - a) / L;
    // Panel [a, a + h u]: (1 - t/zeta_k)^beta = (c (1+x))^beta with c = -h u / (2 zeta_k).
    const Point half = 0.5 * h * u;
    const Point c = -half / a;
    const Point cb = std::pow(c, beta_[k]);
    const quad::Rule& gj = jacobi_[k];
    Point sum(0.0, 0.0);
    for (std::size_t i = 0; i < gj.size(); ++i) sum += gj.weights[i] * integrand(a + (1.0 + gj.nodes[i]) * half, k);
    Point total = sum * cb * half;
    if (h < L) total += integrate_regular(a + h * u, b);
    return total;
}

Point ConformalMap::integrate(Point a, Point b) const {
    if (kind_ == MapKind::DiskIdentity) return b - a;
    const int sa = singular_index(a);
    const int sb = singular_index(b);
    if (sa >= 0 && sb >= 0) {
        if (sa == sb) return {0.0, 0.0};
        const Point mid = 0.5 * (a + b);
        return integrate_from_singular(sa, mid) - integrate_from_singular(sb, mid);
    }
    if (sa >= 0) return integrate_from_singular(sa, b);
    if (sb >= 0) return -integrate_from_singular(sb, a);
    return integrate_regular(a, b);
}

Point ConformalMap::evaluate(Point z) const {
    if (std::abs(z) > 1.0 + 1e-12) throw Error(ErrorCode::OutsideDisk, "evaluation point outside the closed disk");
    if (kind_ == MapKind::DiskIdentity) return z;
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < zeta_.size(); ++k) {
        const double d = std::abs(z - zeta_[k]);
        if (d < bd) {
            bd = d;
            best = k;
        }
    }
    if (bd < std::abs(z)) return A_ + C_ * (I_[best] + integrate(zeta_[best], z));
    return A_ + C_ * integrate(Point(0.0, 0.0), z);
}

Point ConformalMap::derivative(Point z) const {
    if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::OutsideDisk, "derivative needs |z| < 1");
    if (kind_ == MapKind::DiskIdentity) return {1.0, 0.0};
    return C_ * integrand(z);
}

double ConformalMap::boundary_arclength(double theta) const {
    if (kind_ == MapKind::DiskIdentity) return reduce_angle(theta, 0.0);
    const std::size_t n = theta_.size();
    const double t = reduce_angle(theta, theta_[0]);
    std::size_t k = static_cast<std::size_t>(std::upper_bound(theta_.begin(), theta_.end(), t) - theta_.begin()) - 1;
    if (t == theta_[k]) return side_start_[k];
    const double next = k + 1 < n ? theta_[k + 1] : theta_[0] + kTwoPi;
    const Point e = std::polar(1.0, t);
    const double len = side_start_[k + 1] - side_start_[k];
    double s;
    if (t - theta_[k] <= next - t) {
        s = std::abs(C_ * integrate(zeta_[k], e));
    } else {
        s = len - std::abs(C_ * integrate(zeta_[(k + 1) % n], e));
    }
    return side_start_[k] + std::clamp(s, 0.0, len);
}

Point ConformalMap::boundary_trace(double theta) const {
    if (kind_ == MapKind::DiskIdentity) {
        // Radial limit by Richardson extrapolation in eps.
        const Point e = std::polar(1.0, theta);
        const double eps[3] = {1e-3, 1e-4, 1e-5};
        Point f[3];
        for (int i = 0; i < 3; ++i) f[i] = evaluate((1.0 - eps[i]) * e);
        // Neville extrapolation to eps = 0.
        Point p01 = (f[1] * eps[0] - f[0] * eps[1]) / (eps[0] - eps[1]);
        Point p12 = (f[2] * eps[1] - f[1] * eps[2]) / (eps[1] - eps[2]);
        return (p12 * eps[0] - p01 * eps[2]) / (eps[0] - eps[2]);
    }
    const double s = boundary_arclength(theta);
    const std::size_t n = w_.size();
    std::size_t k = static_cast<std::size_t>(std::upper_bound(side_start_.begin(), side_start_.end(), s) -
                                             side_start_.begin()) - 1;
    k = std::min(k, n - 1);
    const Point a = w_[k], b = w_[(k + 1) % n];
    const double len = side_start_[k + 1] - side_start_[k];
    return a + (s - side_start_[k]) / len * (b - a);
}

double ConformalMap::boundary_angle(double arclength) const {
    if (kind_ == MapKind::DiskIdentity) return reduce_angle(arclength, 0.0);
    const std::size_t n = theta_.size();
    double s = std::fmod(arclength, perimeter_);
    if (s < 0.0) s += perimeter_;
    std::size_t k = static_cast<std::size_t>(std::upper_bound(side_start_.begin(), side_start_.end(), s) -
                                             side_start_.begin()) - 1;
    k = std::min(k, n - 1);
    if (s == side_start_[k]) return theta_[k];
    const double lo = theta_[k];
    const double hi = k + 1 < n ? theta_[k + 1] : theta_[0] + kTwoPi;
    auto g = [&](double t) {
        if (t <= lo) return side_start_[k] - s;
        if (t >= hi) return side_start_[k + 1] - s;
        return boundary_arclength(t) - s;
    };
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(g, lo, hi, g(lo), g(hi),
                                                     boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (r.first + r.second);
}

double ConformalMap::boundary_arclength_of_point(Point w) const {
    if (kind_ == MapKind::DiskIdentity) return reduce_angle(std::arg(w), 0.0);
    const std::size_t n = w_.size();
    double best = std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double t = 0.0;
        const double d = segment_distance(w, w_[k], w_[(k + 1) % n], &t);
        if (d < best) {
            best = d;
            s = side_start_[k] + t * (side_start_[k + 1] - side_start_[k]);
        }
    }
    return s;
}

Point ConformalMap::preimage(Point w, double tol) const {
    if (kind_ == MapKind::DiskIdentity) {
        if (!(std::abs(w) < 1.0)) throw Error(ErrorCode::PreimageNotFound, "point outside the unit disk");
        return w;
    }
    const double target = tol * image_scale_;
    struct Seed {
        double res;
        Point z;
    };
    std::vector<Seed> seeds;
    seeds.push_back({std::abs(evaluate(0.0) - w), Point(0.0, 0.0)});
    for (double r : {0.25, 0.5, 0.7, 0.85, 0.95})
        for (int k = 0; k < 16; ++k) {
            const Point z = std::polar(r, kTwoPi * (k + 0.5) / 16.0);
            seeds.push_back({std::abs(evaluate(z) - w), z});
        }
    std::stable_sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) { return a.res < b.res; });
    seeds.resize(9);
    for (const Seed& s : seeds) {
        Point z = s.z;
        double res = s.res;
        for (int it = 0; it < 80 && res >= target; ++it) {
            const Point dz = (evaluate(z) - w) / derivative(z);
            double lambda = 1.0;
            Point zn = z - dz;
            double rn = std::numeric_limits<double>::infinity();
            while (lambda > 1e-8) {
                zn = z - lambda * dz;
                if (std::abs(zn) < 1.0 - 1e-15) {
                    rn = std::abs(evaluate(zn) - w);
                    if (rn < res) break;
                }
                lambda *= 0.5;
            }
            if (!(rn < res)) break;
            z = zn;
            res = rn;
        }
        if (res < target) {
            // One polishing step.
            const Point zn = z - (evaluate(z) - w) / derivative(z);
            if (std::abs(zn) < 1.0 && std::abs(evaluate(zn) - w) <= res) z = zn;
            return z;
        }
    }
    throw Error(ErrorCode::PreimageNotFound, "Newton failed from all 9 seeds");
}

Polyline ConformalMap::map_polyline(const Polyline& z) const {
    Polyline out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (std::abs(z[i]) >= 1.0 - 1e-14) {
            out[i] = boundary_trace(std::arg(z[i]));
        } else if (i == 0 || kind_ == MapKind::DiskIdentity) {
            out[i] = evaluate(z[i]);
        } else {
            const Point prev = std::abs(z[i - 1]) >= 1.0 - 1e-14 ? z[i - 1] / std::abs(z[i - 1]) : z[i - 1];
            const Point base = std::abs(z[i - 1]) >= 1.0 - 1e-14 ? evaluate(prev) : out[i - 1];
            out[i] = base + C_ * integrate(prev, z[i]);
        }
    }
    return out;
}

ConformalMap solve_schwarz_christoffel(const JordanDomain& domain, Point z0, double tol, int max_iterations) {
    const auto& w = domain.vertices();
    const std::size_t n = w.size();
    if (n > 64) throw Error(ErrorCode::InvalidArgument, "Schwarz-Christoffel solver is limited to 64 vertices");
    if (!domain.contains(z0)) throw Error(ErrorCode::PointOutside, "center image must lie inside the domain");

    ConformalMap m;
    m.kind_ = MapKind::SchwarzChristoffel;
    m.w_ = w;
    m.beta_.resize(n);
    std::vector<double> L(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Point in = w[k] - w[(k + n - 1) % n];
        const Point out = w[(k + 1) % n] - w[k];
        m.beta_[k] = -std::arg(out / in) / kPi;
        L[k] = std::abs(out);
    }
    const Point target = (z0 - w[0]) / (w[1] - w[0]);
    const int dim = static_cast<int>(n) - 1;

    auto angles = [&](const Eigen::VectorXd& y) {
        std::vector<double> g(n);
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            g[k] = k + 1 < n ? std::exp(y[k]) : 1.0;
            sum += g[k];
        }
        std::vector<double> theta(n, 0.0);
        for (std::size_t k = 1; k < n; ++k) theta[k] = theta[k - 1] + kTwoPi * g[k - 1] / sum;
        for (std::size_t k = 0; k < n; ++k)
            if (kTwoPi * g[k] / sum < 1e-14)
                throw Error(ErrorCode::CrowdingOverflow, "prevertex gap below 1e-14 at index " + std::to_string(k));
        return theta;
    };
    auto residual = [&](const Eigen::VectorXd& y) {
        m.theta_ = angles(y);
        m.zeta_.resize(n);
        for (std::size_t k = 0; k < n; ++k) m.zeta_[k] = std::polar(1.0, m.theta_[k]);
        if (m.jacobi_.size() != n)
            for (double b : m.beta_) m.jacobi_.push_back(quad::gauss_jacobi(kNodes, 0.0, b));
        std::vector<Point> J(n - 1);
        for (std::size_t k = 0; k + 1 < n; ++k) J[k] = m.integrate(m.zeta_[k], m.zeta_[k + 1]);
        const Point I0 = m.integrate(Point(0.0, 0.0), m.zeta_[0]);
        Eigen::VectorXd F(dim);
        for (std::size_t k = 1; k + 2 < n; ++k)
            F[k - 1] = std::log(std::abs(J[k])) - std::log(std::abs(J[0])) - std::log(L[k] / L[0]);
        const Point q = -I0 / J[0] - target;
        F[dim - 2] = q.real();
        F[dim - 1] = q.imag();
        return F;
    };

    Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd F = residual(y);
    int it = 0;
    const double goal = 0.01 * tol;
    for (; it < max_iterations && F.lpNorm<Eigen::Infinity>() > goal; ++it) {
        Eigen::MatrixXd Jac(dim, dim);
        for (int c = 0; c < dim; ++c) {
            Eigen::VectorXd yp = y;
            const double h = 1e-7 * std::max(1.0, std::abs(y[c]));
            yp[c] += h;
            Jac.col(c) = (residual(yp) - F) / h;
        }
        const Eigen::VectorXd step = Jac.colPivHouseholderQr().solve(F);
        double lambda = 1.0;
        bool moved = false;
        while (lambda > 1e-6) {
            const Eigen::VectorXd yn = y - lambda * step;
            Eigen::VectorXd Fn;
            try {
                Fn = residual(yn);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::CrowdingOverflow) throw;
                lambda *= 0.5;
                continue;
            }
            if (Fn.lpNorm<Eigen::Infinity>() < F.lpNorm<Eigen::Infinity>()) {
                y = yn;
                F = Fn;
                moved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!moved) break;
    }
    m.theta_ = angles(y);
    m.jacobi_.clear();
    m.prepare();
    // Rotate the disk so that f'(0) = C is real and positive.
    const double psi = std::arg(m.C_);
    for (double& t : m.theta_) t += psi;
    const double shift = reduce_angle(m.theta_[0], 0.0) - m.theta_[0];
    for (double& t : m.theta_) t += shift;
    m.prepare();
    m.iterations_ = it;
    if (!(m.residual_ < tol))
        throw Error(ErrorCode::NonConvergence, "iterations=" + std::to_string(it) +
                                                   " residual=" + std::to_string(m.residual_));
    return m;
}

}  // namespace hypext
