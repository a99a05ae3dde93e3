#include <doctest.h>

#include <cmath>

#include "secrecylab/info_measures.hpp"
#include "secrecylab/secrecy_capacity.hpp"
#include "test_helpers.hpp"

using namespace secrecylab;
using namespace secrecylab::testing;

namespace {

// re-evaluates a capacity maximizer through the plain mutual-information
// path: I(U;Y) - sum of weighted I(U;Z_k)
double reevaluate(const JointPmf& joint_ux, const Channel& main, double alpha) {
    return mutual_information(joint_through_channel(joint_ux, main)) -
           alpha * mutual_information(joint_ux);
}

OptimizerOptions fast_options() {
    OptimizerOptions opt;
    opt.restarts = 24;
    opt.threads = 4;
    return opt;
}

}  // namespace

TEST_CASE("ba_capacity anchors") {
    // closed-form BSC capacity
    const BaResult bsc = ba_capacity(Channel::bsc(0.11));
    CHECK(bsc.capacity == doctest::Approx(1.0 - binary_entropy(0.11)).epsilon(1e-6));
    CHECK(bsc.bracket <= 1e-9);

    // noiseless k-ary channel
    const BaResult ident = ba_capacity(Channel::identity(Alphabet::indexed(4)));
    CHECK(ident.capacity == doctest::Approx(2.0).epsilon(1e-9));

    // useless channel: identical rows
    const Channel flat(Alphabet::binary(), Alphabet::indexed(3),
                       {{0.2, 0.5, 0.3}, {0.2, 0.5, 0.3}});
    CHECK(std::abs(ba_capacity(flat).capacity) <= 1e-12);

    // an asymmetric channel cannot reach 1e-9 from the uniform start in one step
    const Channel zch(Alphabet::binary(), Alphabet::binary(), {{1.0, 0.0}, {0.5, 0.5}});
    CHECK_THROWS_AS(ba_capacity(zch, 1e-9, 1), ConvergenceError);
    // Z-channel closed form: log2(1 + (1-p) p^{p/(1-p)}) at p = 1/2
    CHECK(ba_capacity(zch).capacity == doctest::Approx(std::log2(1.25)).epsilon(1e-9));
}

TEST_CASE("erasure_channel construction") {
    const Alphabet b = Alphabet::binary();
    const Channel full = erasure_channel(1.0, b);
    CHECK(full.prob(0, 0) == 1.0);
    CHECK(full.prob(0, 2) == 0.0);

    const Channel none = erasure_channel(0.0, b);
    CHECK(none.prob(0, 2) == 1.0);
    CHECK(none.prob(1, 2) == 1.0);

    const Channel partial = erasure_channel(0.3, b);
    CHECK(partial.prob(0, 0) == doctest::Approx(0.3));
    CHECK(partial.prob(0, 1) == 0.0);
    CHECK(partial.prob(0, 2) == doctest::Approx(0.7));
    CHECK(partial.prob(1, 1) == doctest::Approx(0.3));
    CHECK(partial.output_alphabet().has_erasure());

    CHECK_THROWS_AS(erasure_channel(1.2, b), ValidationError);
}

TEST_CASE("erasure reduction identity is exact") {
    // endpoints
    CounterRng rng(61);
    const JointPmf j = random_joint(rng, Alphabet::indexed(3), Alphabet::indexed(4), 0.01);
    CHECK(erasure_reduction_check(j, 0.0).lhs <= 1e-12);
    const ErasureReductionReport one = erasure_reduction_check(j, 1.0);
    CHECK(one.lhs == doctest::Approx(mutual_information(j)).epsilon(1e-12));

    // randomized sweep
    for (int t = 0; t < 200; ++t) {
        const std::size_t nu = 2 + t % 4, nx = 2 + (t / 4) % 4;
        const JointPmf joint =
            random_joint(rng, Alphabet::indexed(nu), Alphabet::indexed(nx));
        const double beta = rng.next_double();
        CHECK(erasure_reduction_check(joint, beta).abs_diff < 1e-12);
    }
}

TEST_CASE("objective gradients match central finite differences") {
    CounterRng rng(71);
    const Alphabet x3 = Alphabet::indexed(3);
    for (int t = 0; t < 10; ++t) {
        const Channel main = random_channel(rng, x3, Alphabet::indexed(3), 0.05);
        const double alpha = rng.next_double();
        SecrecyObjective obj({main, Channel::identity(x3)}, {1.0, -alpha}, 2);

        // strictly interior random point (free extension: no normalization)
        std::vector<double> params(obj.param_count());
        for (auto& v : params) v = 0.1 + 0.8 * rng.next_double();

        const std::vector<double> grad = obj.gradient(params);
        const double step = 1e-6;
        for (std::size_t i = 0; i < params.size(); ++i) {
            std::vector<double> plus = params, minus = params;
            plus[i] += step;
            minus[i] -= step;
            const double fd = (obj.value(plus) - obj.value(minus)) / (2.0 * step);
            const double scale = std::max({1.0, std::abs(fd), std::abs(grad[i])});
            CHECK(std::abs(grad[i] - fd) <= 1e-5 * scale);
        }
    }
}

TEST_CASE("wtc2 capacity anchors") {
    const Channel bsc = Channel::bsc(0.11);
    const CapacityResult at0 = wtc2_ss_capacity(bsc, 0.0, 2);
    CHECK(at0.value == doctest::Approx(ba_capacity(bsc).capacity).epsilon(1e-9));
    CHECK(at0.value == doctest::Approx(1.0 - binary_entropy(0.11)).epsilon(1e-6));

    const CapacityResult at1 = wtc2_ss_capacity(bsc, 1.0, 2);
    CHECK(at1.value == 0.0);

    // noiseless binary main at alpha = 1/2: U = X uniform gives 1/2 bit
    const Channel noiseless = Channel::identity(Alphabet::binary());
    const CapacityResult half = wtc2_ss_capacity(noiseless, 0.5, 2, fast_options());
    CHECK(half.value == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(half.grid_value.has_value());
    CHECK(half.value >= *half.grid_value - 1e-6);
    CHECK_FALSE(half.flagged);
}

TEST_CASE("wtc2 maximizer re-evaluates to the reported value") {
    const Channel bsc = Channel::bsc(0.1);
    for (double alpha : {0.2, 0.6}) {
        const CapacityResult res = wtc2_ss_capacity(bsc, alpha, 2, fast_options());
        CHECK(reevaluate(res.maximizer, bsc, alpha) ==
              doctest::Approx(res.value).epsilon(1e-10));
        CHECK(res.value >= -1e-12);
    }
}

TEST_CASE("wtc2 capacity is invariant under input relabeling") {
    const Alphabet b = Alphabet::binary();
    const Channel ch(b, b, {{0.85, 0.15}, {0.35, 0.65}});
    const Channel permuted(b, b, {{0.35, 0.65}, {0.85, 0.15}});
    const CapacityResult orig = wtc2_ss_capacity(ch, 0.3, 2, fast_options());
    const CapacityResult swap = wtc2_ss_capacity(permuted, 0.3, 2, fast_options());
    CHECK(orig.value == doctest::Approx(swap.value).epsilon(1e-9));
}

TEST_CASE("wtc1 capacity special cases") {
    const Channel main = Channel::bsc(0.1);
    // eavesdropper sees exactly the legitimate output
    const CapacityResult degraded = wtc1_ss_capacity(main, main, 2, fast_options());
    CHECK(degraded.value <= 1e-9);

    // useless eavesdropper: the full main capacity is recovered
    const Channel useless(Alphabet::binary(), Alphabet::binary(),
                          {{0.5, 0.5}, {0.5, 0.5}});
    const CapacityResult open = wtc1_ss_capacity(main, useless, 2, fast_options());
    CHECK(open.value == doctest::Approx(ba_capacity(main).capacity).epsilon(1e-6));

    // erasure eavesdropper reduces to the wtc2 formula with beta = alpha
    const CapacityResult erased =
        wtc1_ss_capacity(main, erasure_channel(0.4, Alphabet::binary()), 2, fast_options());
    const CapacityResult direct = wtc2_ss_capacity(main, 0.4, 2, fast_options());
    CHECK(erased.value == doctest::Approx(direct.value).epsilon(1e-6));
}

TEST_CASE("capacity_curve endpoints, shape, and degenerate channel") {
    const Channel bsc = Channel::bsc(0.1);
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    const CurveResult curve = capacity_curve(bsc, grid, 2, fast_options());
    CHECK(curve.values.front() ==
          doctest::Approx(ba_capacity(bsc).capacity).epsilon(1e-9));
    CHECK(curve.values.back() == 0.0);
    CHECK(curve.non_increasing);
    CHECK(curve.convex);
    CHECK(curve.bounded);

    const Channel flat(Alphabet::binary(), Alphabet::binary(), {{0.6, 0.4}, {0.6, 0.4}});
    const CurveResult zero = capacity_curve(flat, {0.0, 0.5, 1.0}, 2, fast_options());
    for (double v : zero.values) CHECK(std::abs(v) <= 1e-9);

    CHECK_THROWS_AS(capacity_curve(bsc, {0.0, 1.5}, 2), ValidationError);
}

TEST_CASE("simplex projection") {
    std::vector<double> v{0.4, 0.9, -0.2};
    project_to_simplex(v);
    double sum = 0.0;
    for (double x : v) {
        CHECK(x >= 0.0);
        sum += x;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    // already on the simplex: unchanged
    std::vector<double> p{0.2, 0.5, 0.3};
    std::vector<double> q = p;
    project_to_simplex(q);
    for (std::size_t i = 0; i < p.size(); ++i)
        CHECK(q[i] == doctest::Approx(p[i]).epsilon(1e-12));
}
