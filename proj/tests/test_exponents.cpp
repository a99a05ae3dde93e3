#include <doctest.h>

#include <cmath>

#include "secrecylab/exponents.hpp"
#include "secrecylab/rng.hpp"
#include "test_helpers.hpp"

using namespace secrecylab;
using namespace secrecylab::testing;

namespace {

JointPmf identity_joint_half() {
    return JointPmf(Alphabet::binary(), Alphabet::binary(), {{0.5, 0.0}, {0.0, 0.5}});
}

JointPmf independent_joint() {
    return JointPmf(Alphabet::binary(), Alphabet::binary(),
                    {{0.25, 0.25}, {0.25, 0.25}});
}

// d_alpha via the general Renyi operation over flattened pmfs: an
// implementation path independent of RenyiCurve.
double d_alpha_oracle(const JointPmf& joint, double alpha) {
    const Pmf pr = joint.row_marginal(), pc = joint.col_marginal();
    std::vector<std::vector<double>> prod(pr.size(), std::vector<double>(pc.size()));
    for (std::size_t r = 0; r < pr.size(); ++r)
        for (std::size_t c = 0; c < pc.size(); ++c) prod[r][c] = pr(r) * pc(c);
    return renyi_divergence(joint.flattened(),
                            JointPmf(joint.row_alphabet(), joint.col_alphabet(), prod)
                                .flattened(),
                            alpha);
}

}  // namespace

TEST_CASE("epsilon_alpha_delta") {
    // R - delta = I exactly: eps reduces to (alpha-1)(d_alpha - I)/(1/2 + alpha - 1)
    const JointPmf joint =
        JointPmf::from_input_and_channel(Pmf::bernoulli(0.5), Channel::bsc(0.2));
    const double mutual = mutual_information(joint);
    const ExponentParams params(joint, mutual + 0.1, 0.1);
    for (double alpha : {1.5, 2.0, 5.0}) {
        const double da = d_alpha_oracle(joint, alpha);
        const double oracle = (alpha - 1.0) * (da - mutual) / (0.5 + alpha - 1.0);
        CHECK(epsilon_alpha_delta(params, alpha) == doctest::Approx(oracle).epsilon(1e-10));
        CHECK(epsilon_alpha_delta(params, alpha) >= -1e-12);
    }
    CHECK_THROWS_AS(epsilon_alpha_delta(params, 1.0), ValidationError);

    // independent joint, R=1, delta=0.2, alpha=2: (1/2)(R-delta)/(3/2)
    const ExponentParams indep(independent_joint(), 1.0, 0.2);
    CHECK(epsilon_alpha_delta(indep, 2.0) ==
          doctest::Approx(0.5 * 0.8 / 1.5).epsilon(1e-12));

    // nonnegative whenever R - delta > I
    CounterRng rng(23);
    for (int t = 0; t < 100; ++t) {
        const JointPmf j = random_joint(rng, Alphabet::indexed(3), Alphabet::indexed(3), 0.02);
        const double i = mutual_information(j);
        const double delta = 0.2 * rng.next_double();
        const double rate = i + delta + 0.01 + rng.next_double();
        const ExponentParams p(j, rate, delta);
        const double alpha = 1.0 + 5.0 * rng.next_double();
        CHECK(epsilon_alpha_delta(p, alpha) >= -1e-12);
    }
}

TEST_CASE("beta_alpha_delta") {
    const ExponentParams indep(independent_joint(), 1.0, 0.0);
    // vanishing prefactor as alpha -> 1+
    CHECK(std::abs(beta_alpha_delta(indep, 1.0 + 1e-9)) <= 2e-9);
    // direct substitution oracle at alpha = 2
    CHECK(beta_alpha_delta(indep, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // beta <= (R - delta)/2 across alphas, inside the lemma regime R - delta > I
    CounterRng rng(29);
    for (int t = 0; t < 50; ++t) {
        const JointPmf j = random_joint(rng, Alphabet::indexed(2), Alphabet::indexed(3), 0.02);
        const double delta = 0.2 * rng.next_double();
        const double rate = mutual_information(j) + delta + 2.0 * rng.next_double() + 1e-3;
        const ExponentParams p(j, rate, delta);
        for (double alpha : {1.1, 2.0, 10.0, 1000.0})
            CHECK(beta_alpha_delta(p, alpha) <= 0.5 * (rate - delta) + 1e-12);
    }
}

TEST_CASE("gamma_delta") {
    // zero at and past the soft-covering boundary
    const JointPmf joint =
        JointPmf::from_input_and_channel(Pmf::bernoulli(0.5), Channel::bsc(0.2));
    const double mutual = mutual_information(joint);
    CHECK(gamma_delta(ExponentParams(joint, mutual + 0.1, 0.2)).value == 0.0);
    CHECK(gamma_delta(ExponentParams(joint, mutual, 0.0)).value == 0.0);

    // identity channel: d_alpha = 1 for every alpha, so the supremum of
    // (alpha-1)/(2 alpha-1) * 0.4 is approached at the top of the alpha grid
    const ExponentParams ident(identity_joint_half(), 1.5, 0.1);
    const SupremumResult got = gamma_delta(ident);
    double brute = 0.0;
    for (int i = 0; i < 1000000; ++i) {
        const double t = std::log(1e-4) + (std::log(1e4) - std::log(1e-4)) * i / 999999.0;
        const double alpha = 1.0 + std::exp(t);
        const double beta =
            (alpha - 1.0) / (2.0 * alpha - 1.0) * (1.5 - 0.1 - d_alpha_oracle(ident.joint, alpha));
        brute = std::max(brute, beta);
    }
    CHECK(got.value == doctest::Approx(brute).epsilon(1e-6));
    CHECK(got.value > 0.19);
    CHECK(got.alpha_star > 100.0);
}

TEST_CASE("gamma_delta monotonicity and gamma_star") {
    CounterRng rng(31);
    for (int t = 0; t < 50; ++t) {
        const JointPmf j = random_joint(rng, Alphabet::indexed(2), Alphabet::indexed(2), 0.05);
        const double i = mutual_information(j);
        const double rate = i + 0.05 + rng.next_double();
        const double g0 = gamma_delta(ExponentParams(j, rate, 0.0)).value;
        const double g1 = gamma_delta(ExponentParams(j, rate, 0.1)).value;
        const double g2 = gamma_delta(ExponentParams(j, rate, 0.3)).value;
        CHECK(g0 >= g1 - 1e-12);  // non-increasing in delta; gamma* = gamma_0
        CHECK(g1 >= g2 - 1e-12);
        const double gr = gamma_delta(ExponentParams(j, rate + 0.2, 0.1)).value;
        CHECK(gr >= g1 - 1e-12);  // non-decreasing in rate
    }
}

TEST_CASE("c_delta") {
    // uniform binary output, gamma = 0: c = 3 log2 e + 2 log2 2
    const JointPmf joint = identity_joint_half();
    const double mutual = mutual_information(joint);
    const ExponentParams at_boundary(joint, mutual, 0.0);  // gamma_delta = 0
    const Pmf qv = joint.col_marginal();
    const double expected = 3.0 * std::log2(std::exp(1.0)) + 2.0;
    CHECK(c_delta(qv, at_boundary) == doctest::Approx(expected).epsilon(1e-12));

    // a zero-probability symbol leaves the support maximum unchanged
    const Pmf padded(Alphabet::indexed(3), {0.5, 0.5, 0.0});
    CHECK(c_delta(padded, at_boundary) == doctest::Approx(expected).epsilon(1e-12));

    // non-decreasing in gamma_delta
    const ExponentParams richer(joint, 3.0, 0.0);
    CHECK(c_delta(qv, richer) >= c_delta(qv, at_boundary));
}

TEST_CASE("failure_probability_bound") {
    // small n: raw value above 1 is clamped, raw preserved
    const ProbabilityBound small = failure_probability_bound(1, 0.1, 2);
    const double raw_oracle = 3.0 * std::exp(-std::pow(2.0, 0.1) / 3.0);
    CHECK(small.raw == doctest::Approx(raw_oracle).epsilon(1e-12));
    CHECK(small.raw > 1.0);
    CHECK(small.clamped == 1.0);

    // large n: compare the log against the direct formula
    const ProbabilityBound big = failure_probability_bound(60, 0.5, 2);
    const double log_oracle = std::log1p(std::pow(2.0, 60)) - std::pow(2.0, 30) / 3.0;
    CHECK(big.log_raw == doctest::Approx(log_oracle).epsilon(1e-12));
    CHECK(big.clamped == 0.0);

    // delta -> 0: no decay, bound tends to (1+|V|^n) e^{-1/3}
    const ProbabilityBound flat = failure_probability_bound(5, 0.0, 2);
    CHECK(flat.raw == doctest::Approx(33.0 * std::exp(-1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("chernoff_bound forms") {
    // c/mu = 1: quadratic bound equals 1
    const ChernoffBound unit = chernoff_bound(100, 0.1, 1.0, 0.1);
    CHECK(*unit.quadratic == doctest::Approx(1.0).epsilon(1e-15));

    // c/mu = 2: quadratic is exp(-M mu / 3B)
    const ChernoffBound twice = chernoff_bound(2000, 0.01, 1.0, 0.02);
    CHECK(*twice.quadratic == doctest::Approx(std::exp(-20.0 / 3.0)).epsilon(1e-12));
    CHECK(twice.exact <= *twice.quadratic);

    // exact form dominates nowhere on [1,2]
    for (int i = 0; i <= 500; ++i) {
        const double r = 1.0 + i / 500.0;
        const ChernoffBound b = chernoff_bound(500, 0.02, 1.0, 0.02 * r);
        CHECK(b.exact <= *b.quadratic + 1e-15);
        CHECK(b.exact_le_quadratic);
    }

    // beyond r=2 only the exact form applies
    CHECK_FALSE(chernoff_bound(10, 0.1, 1.0, 0.5).quadratic.has_value());
    CHECK_THROWS_AS(chernoff_bound(10, 0.1, 1.0, 0.05), ValidationError);
}

TEST_CASE("chernoff bound dominates a Bernoulli Monte Carlo") {
    // M=2000 Bernoulli(0.01) variables; empirical P(mean >= c) vs the bound
    const double mu = 0.01;
    const int m_count = 2000;
    const int ensembles = 20000;
    for (double r : {1.5, 2.0}) {
        const double c = mu * r;
        int exceed = 0;
        for (int e = 0; e < ensembles; ++e) {
            CounterRng rng = CounterRng::at(777, static_cast<std::uint64_t>(r * 4), e);
            int count = 0;
            for (int m = 0; m < m_count; ++m)
                if (rng.next_double() < mu) ++count;
            if (count >= c * m_count) ++exceed;
        }
        const double empirical = static_cast<double>(exceed) / ensembles;
        CHECK(empirical <= *chernoff_bound(m_count, mu, 1.0, c).quadratic);
    }
}

TEST_CASE("expected_divergence_bound") {
    // direct arithmetic oracle
    const Pmf uniform = Pmf::bernoulli(0.5);
    const double oracle = std::exp(-1.0) + 10.0 * 1.0 * std::exp(-std::exp(2.0));
    CHECK(expected_divergence_bound(0.1, 0.2, 10, uniform) ==
          doctest::Approx(oracle).epsilon(1e-12));

    // the almost-sure cap term uses n log2(1/mu_V)
    const Pmf skew = Pmf::bernoulli(0.25);
    const double oracle_skew =
        std::exp(-0.5) + 5.0 * std::log2(4.0) * std::exp(-std::exp(5.0 * 0.3));
    CHECK(expected_divergence_bound(0.1, 0.3, 5, skew) ==
          doctest::Approx(oracle_skew).epsilon(1e-12));

    // eventually decreasing in n
    double prev = expected_divergence_bound(0.1, 0.2, 40, uniform);
    for (unsigned n = 41; n <= 60; ++n) {
        const double cur = expected_divergence_bound(0.1, 0.2, n, uniform);
        CHECK(cur <= prev);
        prev = cur;
    }
    CHECK_THROWS_AS(expected_divergence_bound(0.0, 0.1, 5, uniform), ValidationError);
}

TEST_CASE("exponent_report bundles the pieces consistently") {
    const JointPmf joint =
        JointPmf::from_input_and_channel(Pmf::bernoulli(0.5), Channel::bsc(0.2));
    const ExponentParams params(joint, 0.8, 0.1, 10u);
    const Pmf qv = joint.col_marginal();
    const ExponentReport report = exponent_report(params, qv);
    CHECK(report.gamma_delta >= 0.0);
    CHECK(report.gamma_delta <= report.gamma_star + 1e-12);
    CHECK(report.failure_bound.has_value());
    CHECK(report.failure_bound->clamped >= 0.0);
    CHECK(report.failure_bound->clamped <= 1.0);
    CHECK(report.divergence_threshold.has_value());
    CHECK(*report.divergence_threshold ==
          doctest::Approx(report.c_delta * 10.0 * std::exp2(-10.0 * report.gamma_delta)));
    CHECK(report.beta == doctest::Approx(beta_alpha_delta(params, report.alpha_star)));
    CHECK(report.epsilon == doctest::Approx(epsilon_alpha_delta(params, report.alpha_star)));
}
