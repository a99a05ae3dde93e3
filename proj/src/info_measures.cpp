#include "secrecylab/info_measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace secrecylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLog2e = 1.0 / std::log(2.0);

double log2_stable(double x) { return std::log(x) * kLog2e; }

}  // namespace

Bits entropy(const Pmf& p) {
    double h = 0.0;
    for (double v : p.probs())
        if (v > 0.0) h -= v * log2_stable(v);
    return h;
}

Bits binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw ValidationError("binary_entropy argument must lie in [0,1]");
    double h = 0.0;
    if (x > 0.0) h -= x * log2_stable(x);
    if (x < 1.0) h -= (1.0 - x) * log2_stable(1.0 - x);
    return h;
}

Bits relative_entropy(const Pmf& p, const Pmf& q) {
    if (p.alphabet() != q.alphabet())
        throw ValidationError("relative_entropy: alphabets differ");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p(i) == 0.0) continue;
        if (q(i) == 0.0) return kInf;
        d += p(i) * log2_stable(p(i) / q(i));
    }
    return d;
}

Bits mutual_information(const JointPmf& joint) {
    const Pmf pr = joint.row_marginal();
    const Pmf pc = joint.col_marginal();
    double mi = 0.0;
    for (std::size_t r = 0; r < pr.size(); ++r)
        for (std::size_t c = 0; c < pc.size(); ++c) {
            const double j = joint(r, c);
            if (j == 0.0) continue;
            mi += j * log2_stable(j / (pr(r) * pc(c)));
        }
    return std::max(mi, 0.0);
}

Bits renyi_divergence(const Pmf& g, const Pmf& pi, double alpha) {
    if (!(alpha > 1.0))
        throw ValidationError(
            "renyi_divergence requires alpha > 1; use renyi_limit_alpha_one for the limit");
    if (g.alphabet() != pi.alphabet())
        throw ValidationError("renyi_divergence: alphabets differ");
    // log-sum-exp over supp(g) of alpha*ln g + (1-alpha)*ln pi, so extreme
    // alpha cannot overflow the plain power sum.
    std::vector<double> terms;
    terms.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g(i) == 0.0) continue;
        if (pi(i) == 0.0) return kInf;
        terms.push_back(alpha * std::log(g(i)) + (1.0 - alpha) * std::log(pi(i)));
    }
    const double m = *std::max_element(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += std::exp(t - m);
    const double lse = m + std::log(s);
    return lse * kLog2e / (alpha - 1.0);
}

Bits renyi_limit_alpha_one(const Pmf& g, const Pmf& pi) {
    return relative_entropy(g, pi);
}

Bits information_density(const JointPmf& joint, std::size_t u, std::size_t v) {
    const Pmf pu = joint.row_marginal();
    const Pmf pv = joint.col_marginal();
    if (pu(u) == 0.0 || pv(v) == 0.0)
        throw ValidationError("information_density: zero-marginal symbol");
    const double cond = joint(u, v) / pu(u);
    if (cond == 0.0) return -kInf;
    return log2_stable(cond / pv(v));
}

Bits information_density_seq(const JointPmf& joint, const SequenceIndex& useq,
                             const SequenceIndex& vseq) {
    if (useq.length() != vseq.length())
        throw ValidationError("information_density_seq: sequence lengths differ");
    double sum = 0.0;
    for (std::size_t t = 0; t < useq.length(); ++t)
        sum += information_density(joint, useq.letter(t), vseq.letter(t));
    return sum;
}

Bits binary_divergence(double delta, double beta) {
    if (!(delta >= 0.0 && delta <= 1.0) || !(beta >= 0.0 && beta <= 1.0))
        throw ValidationError("binary_divergence arguments must lie in [0,1]");
    double d = 0.0;
    if (delta > 0.0) {
        if (beta == 0.0) return kInf;
        d += delta * log2_stable(delta / beta);
    }
    if (delta < 1.0) {
        if (beta == 1.0) return kInf;
        d += (1.0 - delta) * log2_stable((1.0 - delta) / (1.0 - beta));
    }
    return d;
}

}  // namespace secrecylab
