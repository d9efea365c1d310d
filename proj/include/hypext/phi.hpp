#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hypext {

enum class PhiFamily { AlphaLog, Table };
enum class TailKind { None, Power, Exp };

/// Gauge function: phi_alpha(t) = t (log(e + t))^alpha, or a piecewise
/// linear table starting at (0, phi(0)) with a declared tail beyond the
/// last knot (power: phi_last (t/t_last)^gamma, exp: phi_last e^{lambda (t - t_last)}).
class PhiSpec {
public:
    static PhiSpec alpha_log(double alpha);
    static PhiSpec table(std::vector<std::pair<double, double>> knots, TailKind tail, double tail_parameter);
    /// "alpha:1.5" or "table:path.json" ({"knots": [[t, phi], ...], "tail": {"kind": ..., "exponent"|"rate": x}}).
    static PhiSpec parse(const std::string& text);

    PhiFamily family() const { return family_; }
    double alpha() const { return alpha_; }
    TailKind tail() const { return tail_; }
    double tail_parameter() const { return tail_param_; }
    const std::vector<std::pair<double, double>>& knots() const { return knots_; }

    double operator()(double t) const { return eval(t); }
    double eval(double t) const;
    /// log phi(e^u) without overflow for large u.
    double log_eval_exp(double u) const;
    /// log(phi(e^u) / e^u), free of cancellation for large u.
    double log_ratio_exp(double u) const;

    std::optional<double> M() const { return M_; }
    PhiSpec with_M(double M) const;

    std::string describe() const;

private:
    PhiSpec() = default;
    PhiFamily family_ = PhiFamily::AlphaLog;
    double alpha_ = 1.0;
    std::vector<std::pair<double, double>> knots_;
    TailKind tail_ = TailKind::None;
    double tail_param_ = 0.0;
    std::optional<double> M_;
};

/// Log-uniform sampling plan on [lo, hi], plus 0 when include_zero.
struct SamplingPlan {
    double lo = 1e-6;
    double hi = 1e6;
    int points = 150;  // per axis; unordered pairs with s <= t
    bool include_zero = true;

    std::vector<double> values() const;
};

/// Empirical max phi(s+t)/(phi(s)+phi(t)); returns M-hat and the spec with M = 1.05 M-hat.
struct SubadditivityEstimate {
    double M_hat = 0.0;
    double s = 0.0, t = 0.0;  // maximizer
    std::size_t pairs = 0;
    PhiSpec spec;
};
SubadditivityEstimate estimate_subadditivity_M(const PhiSpec& spec, const SamplingPlan& plan = {});

/// Empirical max over x of phi(a x)/phi(x).
double quasilinearity_constant(const PhiSpec& spec, double a, const SamplingPlan& plan = {});

enum class TailVerdict { Convergent, Divergent, Inconclusive };
std::string to_string(TailVerdict v);

/// Tail integral of 1/phi from t0, accumulated over windows in u = log t:
/// [u0, u0+1], then [u0+2^k, u0+2^{k+1}].
struct TailClassification {
    TailVerdict verdict = TailVerdict::Inconclusive;
    double value = 0.0;    // partial plus geometric tail estimate (Convergent)
    double partial = 0.0;  // integral over the processed windows
    int windows = 0;       // K
    double u_end = 0.0;    // partial covers t in [t0, exp(u_end)]
    std::size_t evaluations = 0;
    std::vector<double> window_values;
};

struct TailOptions {
    double tol = 1e-6;
    std::size_t budget = 10000;  // integrand evaluations
    double divergence_threshold = 50.0;
    double ratio_threshold = 0.95;
    int certificate_windows = 5;
};

TailClassification classify_tail_integral(const PhiSpec& spec, double t0 = 1.0, const TailOptions& options = {});

}  // namespace hypext
