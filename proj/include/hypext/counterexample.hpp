#pragma once

#include "hypext/extension.hpp"
#include "hypext/geometry.hpp"
#include "hypext/phi.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace hypext {

/// a_n = 1/phi(n) (sum_{k<=n} 1/phi(k))^{-2/3} and b_n = sum_{k<n} a_k, with a_0 = 0.
struct BaseSequences {
    long N = 0;
    std::vector<double> a;  // a[0] = 0, a[1..N]
    std::vector<double> b;  // b[1..N+1]
    std::vector<double> S;  // S[n] = sum_{k<=n} 1/phi(k)
    double c_M = 0.0;       // max a_n / a_{n+1}, n < N
    long c_M_argmax = 0;
    bool nonincreasing = true;
    TailVerdict tail = TailVerdict::Inconclusive;
};

/// Throws TailConvergent when int 1/phi converges (the construction needs a divergent sum).
BaseSequences base_sequences(const PhiSpec& spec, long N);

/// i_n: maximal index with sum_{k>=i_n} a_k^2 >= sum_{k>n} 4^{-k}, after rescaling so that sum a_k^2 = 1/3.
struct Grouping {
    double scale = 1.0;          // factor applied to a
    double tail_model = 0.0;     // unscaled sum_{k>N} a_k^2 from the power-law extrapolation
    double tail_exponent = 0.0;  // fitted q in a_k^2 ~ C k^{-q}
    std::vector<long> i;         // i[n], n = 1..groups+1 (i[0] unused)
    std::vector<double> group_mass;   // index n: sum_{k=i_n+1}^{i_{n+1}} a_k^2 (scaled)
    std::vector<bool> mass_bound_ok;  // index n: group_mass <= 4^{-(n-1)} or empty group
    bool approximate = true;          // tail beyond N is modelled
};

/// a as returned by base_sequences (unscaled). Throws TruncationTooShort when i_{groups+1} reaches N.
Grouping grouping_indices(const std::vector<double>& a, int groups);

/// Pipes and guards of one group: windows [start, end] (inclusive), interior ones with
/// l_n/2 <= sum a <= 2 l_n, separated by guard runs of s_d indices.
struct GroupSegments {
    int n = 0;
    long first = 0, last = 0;  // i_n + 1 .. i_{n+1}
    std::vector<long> m;       // m_1..m_K
    std::vector<long> s;       // s_1..s_{K-1}
    std::vector<std::pair<long, long>> windows;  // pipe index ranges; the last one is the final segment
    std::vector<double> window_sums;
    bool exhausted = false;  // no window fits; the group is laid out straight
    bool empty() const { return last < first; }
};

/// a is the scaled sequence. Throws GroupExhausted for an empty group.
GroupSegments segment_plan(const std::vector<double>& a, double c_M, long first, long last, int n);

struct CounterexamplePlan {
    PhiSpec spec = PhiSpec::alpha_log(1.0);
    BaseSequences base;
    Grouping grouping;
    std::vector<double> a;  // scaled
    std::vector<double> b;  // scaled
    double c_M = 0.0;
    int groups = 0;
    std::vector<double> l;                // l[n] = 2^{-n}
    std::vector<GroupSegments> segments;  // index n-1
};

CounterexamplePlan make_counterexample_plan(const PhiSpec& spec, int groups, long N = 100000);

struct FoldedLayout {
    JordanDomain domain;
    Point basepoint{0.0, 0.0};  // centre of the half-disk cap
    Point tip;                  // midpoint of the end cap
    Polyline centerline;
    std::vector<double> w;                // w[n], realized horizontal extent of group n
    std::vector<double> height;           // height[n], realized vertical extent of group n
    std::vector<double> tube_length;      // tube_length[n] = sum of a over group n
    std::vector<Point> group_end;         // group_end[n]: centreline point at the end of group n (index 0: trunk end)
    std::vector<double> clearance;        // realized pipe clearance per U-turn
    std::vector<double> guard_required;   // c_M a at the previous pipe start, per U-turn
    std::vector<double> guard_provided;   // 3 c_M a + guard length, per U-turn
    std::size_t turns = 0;
};

/// Serpentine layout of the first G groups: cap, trunk, then per group vertical pipes joined by
/// quarter-annulus turns (radii 2 c_M a and 4 c_M a) and horizontal guard runs.
/// Throws SelfIntersecting or GuardViolated.
FoldedLayout fold_layout(const CounterexamplePlan& plan, int G);

/// Unfolded domain R truncated after index last: cap plus straight trapezoid chain.
JordanDomain unfolded_chain(const CounterexamplePlan& plan, long last);

struct CounterexampleReport {
    // (1) sum a_n^2 phi(n) (unscaled sequence)
    std::vector<double> weighted_partials;  // at indices 10^k and N
    std::vector<long> weighted_indices;
    double weighted_increment_at_1e5 = 0.0;  // a_n^2 phi(n) at n = min(1e5, N)
    long cauchy_index = 0;                   // first index with term < 1e-8
    double series_slack = 0.0;                // proof inequality slack with delta = -1/3
    // (2) internal distance from the cap centre to the end of each group
    std::vector<double> diameter;      // index g = 0..G (0: end of trunk)
    std::vector<double> tube_added;    // index g: tube length of group g
    std::vector<double> growth_ratio;  // index g >= 1: (diameter[g]-diameter[g-1]) / tube_added[g]
    double b_range = 0.0;              // b_{i_{G+1}+1}
    // (3) chain-bound quasi-hyperbolic integral per trapezoid
    std::vector<double> trapezoid_integral;  // index n = 1..i_{G+1}
    std::vector<double> trapezoid_ratio;     // integral / (a_n^2 phi(n) + a_n^2 radial)
    double integral_total = 0.0;
    double rhs = 0.0;                        // (sum a_n^2 phi(n)) (1 + radial)
    double radial = 0.0;
    double max_ratio = 0.0;
    // spot check of the chain bound against grid quasi-hyperbolic distances
    std::vector<std::pair<double, double>> spot_checks;  // (chain value, grid value)
};

CounterexampleReport verify_counterexample(const CounterexamplePlan& plan, const FoldedLayout& layout, double pitch,
                                           long budget, unsigned seed = 1);

/// Arclength reference parametrization of a polygon boundary: angle pi is sent to `tip`.
BoundaryParam arclength_reference(const JordanDomain& domain, Point tip);

/// Internal distances from a fixed basepoint to a batch of points.
using DistanceOracle = std::function<std::vector<double>(const std::vector<Point>&)>;
DistanceOracle polygon_distance_oracle(const JordanDomain& domain, Point basepoint);

struct BadParametrizationPlan {
    double omega0 = kPi;
    double unit = 1.0;    // lengths are certified against offset + unit * 4^n
    double offset = 0.0;  // least sampled internal distance on the walk
    int first_level = 2;
    std::vector<int> levels;
    std::vector<double> theta;  // t_n
    std::vector<double> delta;  // delta_n
    std::vector<double> alpha;  // start of A_n = pi - pi/2^n
    std::vector<double> width;  // |A_n| = pi/4^n
    std::vector<double> certified_distance;  // min d_I over the image of I(theta_n, delta_n)
    std::vector<std::pair<double, double>> table;  // (circle angle, reference angle), strictly increasing
    BoundaryParam reference;
    int max_certified = 0;
    double reference_angle(double t) const;  // piecewise linear table, t in [-pi, pi]
    Point operator()(double t) const { return reference(reference_angle(t)); }
};

/// Levels first_level..N along the boundary walk from the nearest sample towards angle pi;
/// unit defaults to 0.95 (d_max - offset) / (2 4^N). Throws InsufficientDepth when a level
/// cannot be certified and strict is set.
BadParametrizationPlan bad_parametrization(const BoundaryParam& reference, const DistanceOracle& oracle, int N,
                                           double unit = 0.0, bool strict = true, int samples = 4096);

struct W11Probe {
    std::vector<int> levels;
    std::vector<double> L;         // |A_n| * (min distance from the inner image to Phi(A_n))
    std::vector<double> partials;
    std::vector<double> radial;    // sum over t in A_n of the image length of the radial segment (when available)
    bool linear_growth = false;    // increments bounded below by a positive constant
    bool geometric_decay = false;  // successive ratios <= 1/2
};

/// Arcs are (start angle, width) on the circle; boundary maps circle angles to boundary points;
/// inner_radius bounds the internal distance from the basepoint to the image of the eta-circle.
/// extension, when given, evaluates Phi on the disk for the radial-integral version.
W11Probe w11_lowerbound_probe(const std::vector<std::pair<double, double>>& arcs, const std::vector<int>& levels,
                              const std::function<Point(double)>& boundary, const DistanceOracle& oracle,
                              double inner_radius, double eta = 0.5,
                              const std::function<std::optional<Point>(Point)>& extension = {}, int radial_samples = 8);

}  // namespace hypext
