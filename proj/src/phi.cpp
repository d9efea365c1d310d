#include "hypext/phi.hpp"

#include "hypext/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace hypext {

namespace {

// log(e + e^u) for any real u.
double log_e_plus_exp(double u) {
    if (u > 1.0) return u + std::log1p(std::exp(1.0 - u));
    return 1.0 + std::log1p(std::exp(u - 1.0));
}

}  // namespace

PhiSpec PhiSpec::alpha_log(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::InvalidArgument, "alpha must be >= 0");
    PhiSpec s;
    s.family_ = PhiFamily::AlphaLog;
    s.alpha_ = alpha;
    return s;
}

PhiSpec PhiSpec::table(std::vector<std::pair<double, double>> knots, TailKind tail, double tail_parameter) {
    if (knots.size() < 2) throw Error(ErrorCode::InvalidArgument, "table needs at least 2 knots");
    if (knots.front().first != 0.0) throw Error(ErrorCode::InvalidArgument, "first table knot must be at t = 0");
    if (knots.front().second < 0.0) throw Error(ErrorCode::InvalidArgument, "phi(0) must be >= 0");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i].first > knots[i - 1].first) || !(knots[i].second > knots[i - 1].second))
            throw Error(ErrorCode::NotIncreasing, "table knots must be strictly increasing in t and phi");
    if (tail != TailKind::None && !(tail_parameter > 0.0))
        throw Error(ErrorCode::InvalidArgument, "tail exponent/rate must be positive");
    PhiSpec s;
    s.family_ = PhiFamily::Table;
    s.knots_ = std::move(knots);
    s.tail_ = tail;
    s.tail_param_ = tail_parameter;
    return s;
}

PhiSpec PhiSpec::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::InvalidArgument, "phi spec must be alpha:X or table:PATH");
    const std::string kind = text.substr(0, colon);
    const std::string arg = text.substr(colon + 1);
    if (kind == "alpha") {
        std::size_t used = 0;
        double a = 0.0;
        try {
            a = std::stod(arg, &used);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, "bad alpha value '" + arg + "'");
        }
        if (used != arg.size()) throw Error(ErrorCode::InvalidArgument, "bad alpha value '" + arg + "'");
        return alpha_log(a);
    }
    if (kind == "table") {
        std::ifstream in(arg);
        if (!in) throw Error(ErrorCode::Io, "cannot open phi table '" + arg + "'");
        nlohmann::json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw Error(ErrorCode::Io, std::string("bad phi table JSON: ") + e.what());
        }
        std::vector<std::pair<double, double>> knots;
        for (const auto& k : j.at("knots")) knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
        TailKind tail = TailKind::None;
        double param = 0.0;
        if (j.contains("tail")) {
            const auto& t = j["tail"];
            const std::string tk = t.value("kind", "none");
            if (tk == "power") {
                tail = TailKind::Power;
                param = t.at("exponent").get<double>();
            } else if (tk == "exp") {
                tail = TailKind::Exp;
                param = t.at("rate").get<double>();
            } else if (tk != "none") {
                throw Error(ErrorCode::InvalidArgument, "unknown tail kind '" + tk + "'");
            }
        }
        return table(std::move(knots), tail, param);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown phi family '" + kind + "'");
}

double PhiSpec::eval(double t) const {
    if (t < 0.0 || std::isnan(t)) throw Error(ErrorCode::NegativeArgument, "phi needs t >= 0");
    if (family_ == PhiFamily::AlphaLog) return alpha_ == 0.0 ? t : t * std::pow(std::log(std::numbers::e + t), alpha_);
    const auto& [tl, pl] = knots_.back();
    if (t <= tl) {
        auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                   [](double v, const auto& k) { return v < k.first; });
        if (it == knots_.end()) return pl;
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        return lo.second + (t - lo.first) * (hi.second - lo.second) / (hi.first - lo.first);
    }
    switch (tail_) {
        case TailKind::Power: return pl * std::pow(t / tl, tail_param_);
        case TailKind::Exp: return pl * std::exp(tail_param_ * (t - tl));
        case TailKind::None: {
            const auto& prev = knots_[knots_.size() - 2];
            return pl + (t - tl) * (pl - prev.second) / (tl - prev.first);
        }
    }
    return pl;
}

double PhiSpec::log_eval_exp(double u) const {
    if (family_ == PhiFamily::AlphaLog) return u + alpha_ * std::log(log_e_plus_exp(u));
    const auto& [tl, pl] = knots_.back();
    if (u < 700.0 && std::exp(u) <= tl) return std::log(eval(std::exp(u)));
    switch (tail_) {
        case TailKind::Power: return std::log(pl) + tail_param_ * (u - std::log(tl));
        case TailKind::Exp: return u > 700.0 ? std::numeric_limits<double>::infinity() : std::log(pl) + tail_param_ * (std::exp(u) - tl);
        case TailKind::None: {
            const auto& prev = knots_[knots_.size() - 2];
            const double slope = (pl - prev.second) / (tl - prev.first);
            return u > 700.0 ? u + std::log(slope) : std::log(pl + (std::exp(u) - tl) * slope);
        }
    }
    return std::log(pl);
}

double PhiSpec::log_ratio_exp(double u) const {
    if (family_ == PhiFamily::AlphaLog) return alpha_ * std::log(log_e_plus_exp(u));
    const auto& [tl, pl] = knots_.back();
    if (u < 700.0 && std::exp(u) <= tl) return log_eval_exp(u) - u;
    switch (tail_) {
        case TailKind::Power: return std::log(pl) - tail_param_ * std::log(tl) + (tail_param_ - 1.0) * u;
        case TailKind::Exp: return log_eval_exp(u) - u;
        case TailKind::None: {
            const auto& prev = knots_[knots_.size() - 2];
            const double slope = (pl - prev.second) / (tl - prev.first);
            return u > 700.0 ? std::log(slope) : log_eval_exp(u) - u;
        }
    }
    return log_eval_exp(u) - u;
}

PhiSpec PhiSpec::with_M(double M) const {
    PhiSpec s = *this;
    s.M_ = M;
    return s;
}

std::string PhiSpec::describe() const {
    std::ostringstream os;
    os.precision(12);
    if (family_ == PhiFamily::AlphaLog) {
        os << "alpha:" << alpha_;
    } else {
        os << "table(" << knots_.size() << " knots, tail ";
        os << (tail_ == TailKind::Power ? "power " : tail_ == TailKind::Exp ? "exp " : "none");
        if (tail_ != TailKind::None) os << tail_param_;
        os << ")";
    }
    return os.str();
}

std::vector<double> SamplingPlan::values() const {
    std::vector<double> v;
    if (include_zero) v.push_back(0.0);
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < points; ++i) v.push_back(std::exp(a + (b - a) * i / std::max(points - 1, 1)));
    return v;
}

SubadditivityEstimate estimate_subadditivity_M(const PhiSpec& spec, const SamplingPlan& plan) {
    const std::vector<double> grid = plan.values();
    std::vector<double> f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        f[i] = spec(grid[i]);
        if (i > 0 && !(f[i] > f[i - 1])) throw Error(ErrorCode::NotIncreasing, "phi not increasing on the sampling grid");
    }
    SubadditivityEstimate est{0.0, 0.0, 0.0, 0, spec};
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i; j < grid.size(); ++j) {
            const double den = f[i] + f[j];
            if (den == 0.0) continue;
            ++est.pairs;
            const double r = spec(grid[i] + grid[j]) / den;
            if (r > est.M_hat) {
                est.M_hat = r;
                est.s = grid[i];
                est.t = grid[j];
            }
        }
    est.spec = spec.with_M(1.05 * est.M_hat);
    return est;
}

double quasilinearity_constant(const PhiSpec& spec, double a, const SamplingPlan& plan) {
    if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale a must be positive");
    double best = 0.0;
    double prev = -1.0;
    for (double x : plan.values()) {
        if (x <= 0.0) continue;
        const double fx = spec(x);
        if (!(fx > prev)) throw Error(ErrorCode::NotIncreasing, "phi not increasing on the sampling grid");
        prev = fx;
        best = std::max(best, spec(a * x) / fx);
    }
    return best;
}

std::string to_string(TailVerdict v) {
    switch (v) {
        case TailVerdict::Convergent: return "Convergent";
        case TailVerdict::Divergent: return "Divergent";
        case TailVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

TailClassification classify_tail_integral(const PhiSpec& spec, double t0, const TailOptions& opt) {
    if (!(t0 >= 1.0)) throw Error(ErrorCode::InvalidArgument, "t0 must be >= 1");
    TailClassification out;
    if (spec.family() == PhiFamily::Table && spec.tail() == TailKind::None) return out;  // no declared asymptotics

    const double u0 = std::log(t0);
    std::size_t evals = 0;
    // dt/phi(t) = exp(u - log phi(e^u)) du
    auto f = [&](double u) {
        ++evals;
        return std::exp(-spec.log_ratio_exp(u));
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    double lo = u0, hi = u0 + 1.0;
    int below = 0, above = 0;
    while (evals < opt.budget && out.windows < 1020) {
        const double w = GK::integrate(f, lo, hi, 8, 1e-12);
        out.window_values.push_back(w);
        out.partial += w;
        ++out.windows;
        out.u_end = hi;
        if (out.window_values.size() >= 2) {
            const double prev = out.window_values[out.window_values.size() - 2];
            const double ratio = prev > 0.0 ? w / prev : 0.0;
            if (ratio < opt.ratio_threshold) {
                ++below;
                above = 0;
            } else {
                ++above;
                below = 0;
            }
            if (below >= opt.certificate_windows && ratio < 1.0) {
                const double tail = w * ratio / (1.0 - ratio);
                if (tail < opt.tol * out.partial) {
                    out.verdict = TailVerdict::Convergent;
                    out.value = out.partial + tail;
                    break;
                }
            }
            if (above >= opt.certificate_windows && out.partial >= opt.divergence_threshold) {
                out.verdict = TailVerdict::Divergent;
                out.value = out.partial;
                break;
            }
        }
        lo = hi;
        hi = u0 + 2.0 * (hi - u0);
    }
    out.evaluations = evals;
    if (out.verdict == TailVerdict::Inconclusive) out.value = out.partial;
    return out;
}

}  // namespace hypext
