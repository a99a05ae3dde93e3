#pragma once

#include <optional>
#include <vector>

#include "secrecylab/info_measures.hpp"
#include "secrecylab/probability.hpp"

namespace secrecylab {

// d_alpha(Q_{U,V}, Q_U Q_V) as a function of alpha, with the joint and the
// product of marginals cached in log form. For a joint this divergence is
// always finite: the product marginals cover the joint's support.
class RenyiCurve {
public:
    explicit RenyiCurve(const JointPmf& joint);

    Bits operator()(double alpha) const;
    Bits mutual_information() const { return mutual_info_; }

private:
    std::vector<double> log_joint_;  // ln of joint over its support
    std::vector<double> log_prod_;   // ln of matching product entries
    Bits mutual_info_;
};

// Inputs of the soft-covering exponent formulas: the joint Q_{U,V}, the
// codebook rate R (bits/symbol), the confidence parameter delta, and an
// optional blocklength for the n-dependent bounds.
struct ExponentParams {
    JointPmf joint;
    double rate = 0.0;
    double delta = 0.0;
    std::optional<unsigned> n;

    ExponentParams(JointPmf j, double rate_, double delta_,
                   std::optional<unsigned> n_ = std::nullopt);
};

// eps_{alpha,delta} = [ (R-delta)/2 + (alpha-1) d_alpha ] / [ 1/2 + (alpha-1) ] - I(U;V).
Bits epsilon_alpha_delta(const ExponentParams& params, double alpha);

// beta_{alpha,delta} = (alpha-1)/(2 alpha-1) (R - delta - d_alpha); may be
// negative, the supremum stage clamps.
Bits beta_alpha_delta(const ExponentParams& params, double alpha);

struct SupremumResult {
    double alpha_star = 0.0;  // grid-plus-refinement argmax; attainment not claimed
    Bits value = 0.0;         // clamped at 0
    Bits value_unclamped = 0.0;
};

// gamma_delta = sup_{alpha>1} beta_{alpha,delta}, evaluated on a 512-point
// logarithmic grid with alpha-1 in [1e-4, 1e4] and golden-section refinement
// around the best grid point. Points where d_alpha = +inf are skipped.
SupremumResult gamma_delta(const ExponentParams& params);

// c_delta = 3 log2 e + 2 gamma_delta + 2 log2( max_{v in supp(Q_V)} 1/Q_V(v) ).
double c_delta(const Pmf& qv, const ExponentParams& params);

struct ProbabilityBound {
    double raw = 0.0;      // may exceed 1 in degenerate ranges
    double clamped = 0.0;  // min(raw, 1)
    double log_raw = 0.0;  // natural log of raw, stable for extreme n
};

// (1 + |V|^n) exp(-2^{n delta}/3), the codebook failure probability bound.
ProbabilityBound failure_probability_bound(unsigned n, double delta,
                                           std::size_t v_alphabet_size);

struct ChernoffBound {
    double exact = 0.0;                 // exp(-(M mu/B)(r(ln r - 1) + 1)), r = c/mu >= 1
    std::optional<double> quadratic;    // exp(-(M mu/3B)(r-1)^2), defined for r in [1,2]
    bool exact_le_quadratic = false;    // the quadratic form dominates on its domain
};

ChernoffBound chernoff_bound(double m_count, double mu, double b, double c);

// E D <= exp(-n gamma1) + n log2(1/mu_V) exp(-exp(n gamma2)), the expected
// soft-covering divergence bound; mu_V is the minimum support mass of qv.
double expected_divergence_bound(double gamma1, double gamma2, unsigned n, const Pmf& qv);

struct ExponentReport {
    double alpha_star = 0.0;
    Bits epsilon = 0.0;       // eps_{alpha*,delta}
    Bits beta = 0.0;          // beta_{alpha*,delta} (unclamped)
    Bits gamma_delta = 0.0;   // clamped supremum
    Bits gamma_star = 0.0;    // sup_{delta>0} gamma_delta = gamma at delta=0
    double c_delta = 0.0;
    std::optional<ProbabilityBound> failure_bound;  // present when n is given
    std::optional<double> divergence_threshold;     // c_delta * n * 2^{-n gamma_delta}
};

ExponentReport exponent_report(const ExponentParams& params, const Pmf& qv);

}  // namespace secrecylab
