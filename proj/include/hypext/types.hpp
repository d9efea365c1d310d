#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace hypext {

/// Planar points and disk points share the complex representation.
using Point = std::complex<double>;
using Polyline = std::vector<Point>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Gap bound for boundary point pairs, 4*pi/(1+pi^2).
inline constexpr double kGapBound = 4.0 * std::numbers::pi / (1.0 + std::numbers::pi * std::numbers::pi);

inline double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }
inline double dot(Point a, Point b) { return a.real() * b.real() + a.imag() * b.imag(); }

/// Orientation of c relative to the directed line a->b (positive: left).
inline double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

inline double polyline_length(const Polyline& line) {
    double total = 0.0;
    for (std::size_t i = 1; i < line.size(); ++i) total += std::abs(line[i] - line[i - 1]);
    return total;
}

/// Wrap an angle into [0, 2*pi).
inline double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

}  // namespace hypext
