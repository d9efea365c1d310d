#pragma once

#include "hypext/conformal.hpp"
#include "hypext/phi.hpp"

#include <string>
#include <vector>

namespace hypext {

/// 2 pi int_0^1 r phi(log((1+r)/(1-r))) dr, the integral of phi(h(0,z)) over the disk.
double disk_phi_integral(const PhiSpec& spec, double tol = 1e-10);

/// int_0^1 phi(log(1/(1-r))) dr.
double radial_phi_integral(const PhiSpec& spec, double tol = 1e-10);

enum class IntegralVerdict { Finite, DivergenceSuspected, Inconclusive };
std::string to_string(IntegralVerdict v);

struct IntegralReport {
    double value = 0.0;
    std::vector<double> radii;          // r_j = 1 - 2^{-j}, j = 1..levels
    std::vector<double> partial_by_radius;
    std::vector<double> contributions;  // annulus integrals
    IntegralVerdict verdict = IntegralVerdict::Inconclusive;
    int radial_levels = 0;
    int angular_nodes = 0;
    int radial_nodes = 0;
};

/// Integral of phi(h(f(0), w)) over the image domain, pulled back to the
/// disk on dyadic annuli: phi(2 artanh r) |f'(r e^{i theta})|^2 r.
IntegralReport phi_hyperbolic_area_integral(const ConformalMap& map, const PhiSpec& spec, int radial_levels = 24,
                                            int angular_nodes = 256, int radial_nodes = 16);

}  // namespace hypext
