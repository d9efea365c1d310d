#include "hypext/counterexample.hpp"

#include "hypext/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hypext {

namespace {

constexpr int kTurnSegments = 8;
constexpr int kCapSegments = 32;

// Centreline tracer emitting left/right offsets at every station.
struct Tracer {
    Point p{0.0, 0.0};
    Point d{1.0, 0.0};
    Polyline left, right, center;

    void emit(double h) {
        const Point nrm = Point(0.0, 1.0) * d;
        left.push_back(p + h * nrm);
        right.push_back(p - h * nrm);
        center.push_back(p);
    }
    void straight(double len, double h_end) {
        p += len * d;
        emit(h_end);
    }
    // sign +1: counterclockwise (left) turn by pi/2 on a centreline circle of radius R.
    void turn(int sign, double R, double h) {
        const Point c = p + static_cast<double>(sign) * R * (Point(0.0, 1.0) * d);
        const Point p0 = p, d0 = d;
        for (int k = 1; k <= kTurnSegments; ++k) {
            const Point rot = std::polar(1.0, sign * 0.5 * kPi * k / kTurnSegments);
            p = c + (p0 - c) * rot;
            d = d0 * rot;
            emit(h);
        }
        d = std::abs(d.real()) > std::abs(d.imag()) ? Point(d.real() > 0 ? 1.0 : -1.0, 0.0)
                                                   : Point(0.0, d.imag() > 0 ? 1.0 : -1.0);
    }
};

JordanDomain close_tube(const Tracer& tr, double cap_radius, double hint) {
    std::vector<Point> v;
    v.reserve(2 * tr.left.size() + kCapSegments);
    for (const Point& q : tr.right) v.push_back(q);
    for (auto it = tr.left.rbegin(); it != tr.left.rend(); ++it) v.push_back(*it);
    for (int k = 1; k < kCapSegments; ++k) v.push_back(std::polar(cap_radius, 0.5 * kPi + kPi * k / kCapSegments));
    return JordanDomain::from_vertices(std::move(v), hint);
}

}  // namespace

JordanDomain unfolded_chain(const CounterexamplePlan& plan, long last) {
    const double c = plan.c_M;
    Tracer tr;
    tr.emit(c * plan.a[1]);
    for (long k = 1; k <= last; ++k) tr.straight(plan.a[k], c * plan.a[k + 1]);
    return close_tube(tr, c * plan.a[1], c * plan.a[last + 1]);
}

FoldedLayout fold_layout(const CounterexamplePlan& plan, int G) {
    if (G < 1 || G > plan.groups) throw Error(ErrorCode::InvalidArgument, "G must lie in [1, groups]");
    const double c = plan.c_M;
    const std::vector<double>& a = plan.a;
    FoldedLayout out;
    out.w.assign(G + 1, 0.0);
    out.height.assign(G + 1, 0.0);
    out.tube_length.assign(G + 1, 0.0);
    out.group_end.assign(G + 1, Point());
    Tracer tr;
    tr.emit(c * a[1]);
    for (long k = 1; k <= plan.grouping.i[1]; ++k) tr.straight(a[k], c * a[k + 1]);
    out.group_end[0] = tr.p;
    auto run = [&](long from, long to) {
        for (long k = from; k <= to; ++k) tr.straight(a[k], c * a[k + 1]);
    };
    for (int n = 1; n <= G; ++n) {
        const GroupSegments& seg = plan.segments[n - 1];
        const std::size_t mark = tr.center.size();
        const double x0 = tr.p.real();
        if (seg.empty()) {
            out.group_end[n] = tr.p;
            continue;
        }
        for (long k = seg.first; k <= seg.last; ++k) out.tube_length[n] += a[k];
        if (seg.exhausted) {
            run(seg.first, seg.last);
        } else {
            tr.turn(+1, 3.0 * c * a[seg.first], c * a[seg.first]);
            bool up = true;
            for (std::size_t d = 0; d < seg.windows.size(); ++d) {
                const auto [from, to] = seg.windows[d];
                const double pipe_x = tr.p.real();
                run(from, to);
                if (d + 1 == seg.windows.size()) {
                    tr.turn(up ? -1 : +1, 3.0 * c * a[to + 1], c * a[to + 1]);
                    ++out.turns;
                    break;
                }
                const long next = to + 1;
                const long s = seg.s[d];
                tr.turn(up ? -1 : +1, 3.0 * c * a[next], c * a[next]);
                double guard = 0.0;
                for (long k = next; k < next + s; ++k) guard += a[k];
                run(next, next + s - 1);
                const long start = next + s;
                tr.turn(up ? -1 : +1, 3.0 * c * a[start], c * a[start]);
                out.turns += 2;
                up = !up;
                const double gap = tr.p.real() - pipe_x;
                out.clearance.push_back(gap - c * a[from] - c * a[start]);
                out.guard_required.push_back(c * a[from]);
                out.guard_provided.push_back(3.0 * c * a[next] + guard);
                if (!(out.clearance.back() > 0.0))
                    throw Error(ErrorCode::GuardViolated, "adjacent pipes overlap in group " + std::to_string(n));
            }
            ++out.turns;
        }
        out.w[n] = tr.p.real() - x0;
        double ymin = 1e300, ymax = -1e300;
        for (std::size_t k = mark; k < tr.center.size(); ++k) {
            ymin = std::min({ymin, tr.left[k].imag(), tr.right[k].imag()});
            ymax = std::max({ymax, tr.left[k].imag(), tr.right[k].imag()});
        }
        out.height[n] = ymax - ymin;
        out.group_end[n] = tr.p;
    }
    out.tip = tr.p;
    out.centerline = tr.center;
    const long last = plan.grouping.i[G + 1];
    out.domain = close_tube(tr, c * a[1], c * a[last + 1]);
    return out;
}

}  // namespace hypext
