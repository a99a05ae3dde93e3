#include "secrecylab/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace secrecylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLog2e = 1.0 / std::log(2.0);

}  // namespace

RenyiCurve::RenyiCurve(const JointPmf& joint) {
    const Pmf pr = joint.row_marginal();
    const Pmf pc = joint.col_marginal();
    for (std::size_t r = 0; r < pr.size(); ++r)
        for (std::size_t c = 0; c < pc.size(); ++c) {
            const double j = joint(r, c);
            if (j == 0.0) continue;
            log_joint_.push_back(std::log(j));
            log_prod_.push_back(std::log(pr(r)) + std::log(pc(c)));
        }
    mutual_info_ = secrecylab::mutual_information(joint);
}

Bits RenyiCurve::operator()(double alpha) const {
    if (!(alpha > 1.0)) throw ValidationError("RenyiCurve requires alpha > 1");
    double m = -kInf;
    for (std::size_t i = 0; i < log_joint_.size(); ++i)
        m = std::max(m, alpha * log_joint_[i] + (1.0 - alpha) * log_prod_[i]);
    double s = 0.0;
    for (std::size_t i = 0; i < log_joint_.size(); ++i)
        s += std::exp(alpha * log_joint_[i] + (1.0 - alpha) * log_prod_[i] - m);
    return (m + std::log(s)) * kLog2e / (alpha - 1.0);
}

ExponentParams::ExponentParams(JointPmf j, double rate_, double delta_,
                               std::optional<unsigned> n_)
    : joint(std::move(j)), rate(rate_), delta(delta_), n(n_) {
    if (!(rate >= 0.0)) throw ValidationError("rate must be non-negative");
    if (!(delta >= 0.0)) throw ValidationError("delta must be non-negative");
}

Bits epsilon_alpha_delta(const ExponentParams& params, double alpha) {
    if (!(alpha > 1.0)) throw ValidationError("epsilon_alpha_delta requires alpha > 1");
    const RenyiCurve d(params.joint);
    const double da = d(alpha);
    const double half = 0.5;
    return (half * (params.rate - params.delta) + (alpha - 1.0) * da) /
               (half + (alpha - 1.0)) -
           d.mutual_information();
}

Bits beta_alpha_delta(const ExponentParams& params, double alpha) {
    if (!(alpha > 1.0)) throw ValidationError("beta_alpha_delta requires alpha > 1");
    const RenyiCurve d(params.joint);
    const double da = d(alpha);
    if (std::isinf(da)) return -kInf;
    return (alpha - 1.0) / (2.0 * alpha - 1.0) * (params.rate - params.delta - da);
}

namespace {

// beta as a function of t = ln(alpha-1), for the grid and the refinement.
double beta_at_log(const RenyiCurve& d, double rate, double delta, double t) {
    const double am1 = std::exp(t);
    const double alpha = 1.0 + am1;
    const double da = d(alpha);
    if (std::isinf(da)) return -kInf;
    return am1 / (2.0 * alpha - 1.0) * (rate - delta - da);
}

}  // namespace

SupremumResult gamma_delta(const ExponentParams& params) {
    const RenyiCurve d(params.joint);
    const double lo = std::log(1e-4);
    const double hi = std::log(1e4);
    constexpr int kGrid = 512;

    int best = -1;
    double best_val = -kInf;
    std::vector<double> ts(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        ts[i] = lo + (hi - lo) * i / (kGrid - 1);
        const double v = beta_at_log(d, params.rate, params.delta, ts[i]);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }

    // Golden-section refinement on the bracket formed by the neighbors of the
    // best grid point. No unimodality is assumed globally; the refinement
    // only polishes the located grid maximum.
    double a = ts[std::max(best - 1, 0)];
    double b = ts[std::min(best + 1, kGrid - 1)];
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = beta_at_log(d, params.rate, params.delta, x1);
    double f2 = beta_at_log(d, params.rate, params.delta, x2);
    for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = beta_at_log(d, params.rate, params.delta, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = beta_at_log(d, params.rate, params.delta, x1);
        }
    }
    const double tm = 0.5 * (a + b);
    const double fm = beta_at_log(d, params.rate, params.delta, tm);

    SupremumResult result;
    if (fm > best_val) {
        best_val = fm;
        result.alpha_star = 1.0 + std::exp(tm);
    } else {
        result.alpha_star = 1.0 + std::exp(ts[best]);
    }
    result.value_unclamped = best_val;
    result.value = std::max(best_val, 0.0);
    return result;
}

double c_delta(const Pmf& qv, const ExponentParams& params) {
    const double gamma = gamma_delta(params).value;
    double max_inv = 0.0;
    for (double p : qv.probs())
        if (p > 0.0) max_inv = std::max(max_inv, 1.0 / p);
    return 3.0 * kLog2e + 2.0 * gamma + 2.0 * std::log2(max_inv);
}

ProbabilityBound failure_probability_bound(unsigned n, double delta,
                                           std::size_t v_alphabet_size) {
    if (n < 1) throw ValidationError("failure_probability_bound requires n >= 1");
    if (!(delta >= 0.0)) throw ValidationError("delta must be non-negative");
    // log(1 + |V|^n) computed as softplus(n ln|V|) so |V|^n never overflows.
    const double a = n * std::log(static_cast<double>(v_alphabet_size));
    const double log1p_vn = a > 700.0 ? a : std::log1p(std::exp(a));
    const double exponent_pow = n * delta * std::log(2.0);  // ln(2^{n delta})
    const double decay = exponent_pow > 700.0 ? kInf : std::exp(exponent_pow) / 3.0;
    ProbabilityBound bound;
    bound.log_raw = log1p_vn - decay;
    bound.raw = bound.log_raw > 700.0 ? kInf : std::exp(bound.log_raw);
    bound.clamped = std::min(bound.raw, 1.0);
    return bound;
}

ChernoffBound chernoff_bound(double m_count, double mu, double b, double c) {
    if (!(m_count >= 1.0)) throw ValidationError("chernoff_bound requires M >= 1");
    if (!(mu > 0.0 && mu <= b)) throw ValidationError("chernoff_bound requires 0 < mu <= B");
    const double r = c / mu;
    if (!(r >= 1.0)) throw ValidationError("chernoff_bound requires c/mu >= 1");
    const double scale = m_count * mu / b;
    ChernoffBound out;
    out.exact = std::exp(-scale * (r * (std::log(r) - 1.0) + 1.0));
    if (r <= 2.0) {
        out.quadratic = std::exp(-scale / 3.0 * (r - 1.0) * (r - 1.0));
        out.exact_le_quadratic = out.exact <= *out.quadratic + 1e-15;
    }
    return out;
}

double expected_divergence_bound(double gamma1, double gamma2, unsigned n,
                                 const Pmf& qv) {
    if (!(gamma1 > 0.0 && gamma2 > 0.0))
        throw ValidationError("expected_divergence_bound requires gamma1, gamma2 > 0");
    const double mu = qv.min_support_prob();
    if (!(mu > 0.0)) throw ValidationError("qv must have a positive support minimum");
    const double first = std::exp(-static_cast<double>(n) * gamma1);
    const double inner = static_cast<double>(n) * gamma2;
    const double second =
        inner > 700.0 ? 0.0 : n * std::log2(1.0 / mu) * std::exp(-std::exp(inner));
    return first + second;
}

ExponentReport exponent_report(const ExponentParams& params, const Pmf& qv) {
    ExponentReport report;
    const SupremumResult sup = gamma_delta(params);
    report.alpha_star = sup.alpha_star;
    report.gamma_delta = sup.value;
    report.epsilon = epsilon_alpha_delta(params, sup.alpha_star);
    report.beta = sup.value_unclamped;
    ExponentParams at_zero(params.joint, params.rate, 0.0, params.n);
    report.gamma_star = gamma_delta(at_zero).value;
    report.c_delta = c_delta(qv, params);
    if (params.n) {
        report.failure_bound =
            failure_probability_bound(*params.n, params.delta, qv.size());
        report.divergence_threshold = report.c_delta * static_cast<double>(*params.n) *
                                      std::exp2(-static_cast<double>(*params.n) *
                                                report.gamma_delta);
    }
    return report;
}

}  // namespace secrecylab
