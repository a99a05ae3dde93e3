#pragma once

#include "secrecylab/probability.hpp"

namespace secrecylab {

// All information measures are in bits (log base 2), matching the base-two
// expression of rates. Conventions: 0*log(0/q) = 0 and p*log(p/0) = +inf,
// with +inf the IEEE infinity, never an overflowed finite value.
using Bits = double;

Bits entropy(const Pmf& p);

// h(x) = -x log2 x - (1-x) log2(1-x), h(0) = h(1) = 0.
Bits binary_entropy(double x);

// D(p||q) over supp(p); +inf when supp(p) is not contained in supp(q).
Bits relative_entropy(const Pmf& p, const Pmf& q);

// I(row;col) = D(joint || product of marginals).
Bits mutual_information(const JointPmf& joint);

// Renyi divergence of order alpha > 1:
//   d_alpha(g, pi) = 1/(alpha-1) * log2 sum_x g(x)^alpha pi(x)^(1-alpha).
// alpha = 1 is rejected; the one-sided limit alpha -> 1+ is exposed as
// renyi_limit_alpha_one, which equals the relative entropy.
Bits renyi_divergence(const Pmf& g, const Pmf& pi, double alpha);
Bits renyi_limit_alpha_one(const Pmf& g, const Pmf& pi);

// i(u,v) = log2( Q_{V|U}(v|u) / Q_V(v) ); requires both marginals positive
// at (u,v); -inf when the conditional is zero.
Bits information_density(const JointPmf& joint, std::size_t u, std::size_t v);

// Sequence variant: sum of per-letter densities.
Bits information_density_seq(const JointPmf& joint, const SequenceIndex& useq,
                             const SequenceIndex& vseq);

// D_b(delta, beta) = delta log2(delta/beta) + (1-delta) log2((1-delta)/(1-beta)),
// i.e. the relative entropy between Ber(delta) and Ber(beta). Boundary
// arguments are handled by the limit conventions above.
Bits binary_divergence(double delta, double beta);

}  // namespace secrecylab
