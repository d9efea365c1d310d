#include "hypext/integrability.hpp"

#include "hypext/error.hpp"
#include "hypext/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>

namespace hypext {

namespace {

template <class F>
double half_line(F&& f, double tol, const char* what) {
    boost::math::quadrature::exp_sinh<double> integrator;
    double err = 0.0, l1 = 0.0;
    double value = 0.0;
    try {
        value = integrator.integrate(f, tol, &err, &l1);
    } catch (const std::exception& e) {
        throw Error(ErrorCode::QuadratureBudgetExceeded, std::string(what) + ": " + e.what());
    }
    if (!std::isfinite(value) || err > std::max(tol, 1e-8) * std::abs(value))
        throw Error(ErrorCode::QuadratureBudgetExceeded, std::string(what) + ": error estimate too large");
    return value;
}

}  // namespace

double disk_phi_integral(const PhiSpec& spec, double tol) {
    // r = 1 - e^{-u}: log((1+r)/(1-r)) = u + log(2 - e^{-u}), dr = e^{-u} du.
    auto f = [&](double u) {
        const double e = std::exp(-u);
        return (1.0 - e) * spec(u + std::log(2.0 - e)) * e;
    };
    return kTwoPi * half_line(f, tol, "disk integral");
}

double radial_phi_integral(const PhiSpec& spec, double tol) {
    auto f = [&](double u) { return spec(u) * std::exp(-u); };
    return half_line(f, tol, "radial integral");
}

std::string to_string(IntegralVerdict v) {
    switch (v) {
        case IntegralVerdict::Finite: return "Finite";
        case IntegralVerdict::DivergenceSuspected: return "DivergenceSuspected";
        case IntegralVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

IntegralReport phi_hyperbolic_area_integral(const ConformalMap& map, const PhiSpec& spec, int radial_levels,
                                            int angular_nodes, int radial_nodes) {
    if (radial_levels < 1 || angular_nodes < 1 || radial_nodes < 1)
        throw Error(ErrorCode::InvalidArgument, "quadrature sizes must be positive");
    IntegralReport rep;
    rep.radial_levels = radial_levels;
    rep.angular_nodes = angular_nodes;
    rep.radial_nodes = radial_nodes;
    const quad::Rule& gl = quad::legendre(radial_nodes);
    const double dtheta = kTwoPi / angular_nodes;
    double total = 0.0;
    double r0 = 0.0;
    for (int j = 1; j <= radial_levels; ++j) {
        const double r1 = 1.0 - std::ldexp(1.0, -j);
        const double half = 0.5 * (r1 - r0), mid = 0.5 * (r1 + r0);
        double annulus = 0.0;
        for (std::size_t q = 0; q < gl.size(); ++q) {
            const double r = mid + half * gl.nodes[q];
            const double weight = spec(2.0 * std::atanh(r)) * r;
            double ring = 0.0;
            // Offset by half a spacing so nodes avoid prevertex directions.
            for (int k = 0; k < angular_nodes; ++k) ring += std::norm(map.derivative(std::polar(r, (k + 0.5) * dtheta)));
            annulus += gl.weights[q] * weight * ring * dtheta;
        }
        annulus *= half;
        total += annulus;
        rep.radii.push_back(r1);
        rep.contributions.push_back(annulus);
        rep.partial_by_radius.push_back(total);
        r0 = r1;
    }
    rep.value = total;
    const auto& c = rep.contributions;
    if (c.size() >= 4) {
        bool decay = true, grow = true;
        for (std::size_t i = c.size() - 3; i < c.size(); ++i) {
            decay = decay && c[i] < 0.9 * c[i - 1];
            grow = grow && c[i] >= c[i - 1];
        }
        rep.verdict = decay ? IntegralVerdict::Finite : grow ? IntegralVerdict::DivergenceSuspected
                                                             : IntegralVerdict::Inconclusive;
    }
    return rep;
}

}  // namespace hypext
