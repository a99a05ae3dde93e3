#include <doctest.h>

#include <cmath>

#include "secrecylab/probability.hpp"
#include "secrecylab/secrecy_capacity.hpp"
#include "test_helpers.hpp"

using namespace secrecylab;
using namespace secrecylab::testing;

TEST_CASE("make_pmf normalizes and validates") {
    const Alphabet b = Alphabet::binary();
    const Pmf even = make_pmf(b, {1.0, 1.0});
    CHECK(even(0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(even(1) == doctest::Approx(0.5).epsilon(1e-15));

    const Alphabet t = Alphabet::indexed(3);
    const Pmf gap = make_pmf(t, {2.0, 0.0, 2.0});
    CHECK(gap(1) == 0.0);
    CHECK(gap.support() == std::vector<std::size_t>{0, 2});

    // sum off by 1e-13: inside the construction tolerance, still exactly
    // normalized because make_pmf always divides by the exact sum
    const Pmf close = make_pmf(b, {0.3, 0.7000000000001});
    double sum = 0.0;
    for (double v : close.probs()) sum += v;
    CHECK(std::abs(sum - 1.0) <= 1e-12);

    CHECK_THROWS_WITH_AS(make_pmf(b, {0.2, -0.1}), doctest::Contains("index 1"),
                         ValidationError);
    CHECK_THROWS_AS(make_pmf(b, {0.0, 0.0}), ValidationError);
}

TEST_CASE("pmf renormalization flag") {
    const Alphabet b = Alphabet::binary();
    CHECK_FALSE(Pmf(b, {0.3, 0.7}).was_renormalized());
    const Pmf off(b, {0.3, 0.8});
    CHECK(off.was_renormalized());
    CHECK(off(0) == doctest::Approx(0.3 / 1.1).epsilon(1e-15));
}

TEST_CASE("alphabet invariants") {
    CHECK_THROWS_AS(Alphabet({"a", "a"}), ValidationError);
    const Alphabet withq = Alphabet::binary().with_erasure();
    CHECK(withq.has_erasure());
    CHECK(withq.erasure_index() == 2);
    CHECK_THROWS_AS(withq.with_erasure(), ValidationError);
    CHECK(Alphabet::binary() == Alphabet::binary());
    CHECK(Alphabet::binary() != withq);
}

TEST_CASE("product_probability") {
    const Pmf half = Pmf::bernoulli(0.5);
    const SequenceIndex s010(half.alphabet(), {0, 1, 0});
    CHECK(product_probability(half, s010) == doctest::Approx(0.125).epsilon(1e-15));

    // zero-probability symbol in the sequence
    const Pmf point(Alphabet::binary(), {1.0, 0.0});
    CHECK(product_probability(point, s010) == 0.0);

    // direct multiplication oracle
    const Pmf quarter = Pmf::bernoulli(0.25);
    const SequenceIndex s11(quarter.alphabet(), {1, 1});
    const double oracle = 0.25 * 0.25;
    CHECK(product_probability(quarter, s11) == doctest::Approx(oracle).epsilon(1e-15));

    // alphabet mismatch
    CHECK_THROWS_AS(product_probability(Pmf::uniform(Alphabet::indexed(3)), s11),
                    ValidationError);
}

TEST_CASE("product_probability log-space path agrees with the plain path") {
    // min support prob 1e-7 over n=120 forces the log-space branch even
    // though the actual sequence only uses the heavy symbol
    const Pmf skew(Alphabet::binary(), {1e-7, 1.0 - 1e-7});
    std::vector<std::size_t> ones(120, 1);
    const SequenceIndex seq(skew.alphabet(), ones);
    double plain = 1.0;
    for (int i = 0; i < 120; ++i) plain *= (1.0 - 1e-7);
    CHECK(product_probability(skew, seq) == doctest::Approx(plain).epsilon(1e-12));
}

TEST_CASE("product probabilities sum to one over the full sequence space") {
    const Pmf p = Pmf::bernoulli(0.3);
    for (unsigned n : {4u, 8u, 12u}) {
        double total = 0.0;
        const std::uint64_t count = *checked_pow(2, n);
        for (std::uint64_t code = 0; code < count; ++code)
            total += product_probability(p, SequenceIndex::from_code(p.alphabet(), n, code));
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("sequence code bijection is exhaustive and lexicographic") {
    const Alphabet t = Alphabet::indexed(3);
    const unsigned n = 10;  // 3^10 = 59049
    const std::uint64_t count = *checked_pow(3, n);
    for (std::uint64_t code = 0; code < count; ++code) {
        CHECK(SequenceIndex::from_code(t, n, code).code() == code);
    }
    // code 0 is the all-first-symbol sequence; adjacent codes are adjacent
    // in lexicographic order
    const SequenceIndex first = SequenceIndex::from_code(t, n, 0);
    for (std::size_t i = 0; i < n; ++i) CHECK(first.letter(i) == 0);
    const SequenceIndex a = SequenceIndex::from_code(t, n, 12345);
    const SequenceIndex b = SequenceIndex::from_code(t, n, 12346);
    CHECK(std::lexicographical_compare(a.letters().begin(), a.letters().end(),
                                       b.letters().begin(), b.letters().end()));
    CHECK_THROWS_AS(SequenceIndex::from_code(t, n, count), ValidationError);
}

TEST_CASE("channel_output_pmf") {
    const Alphabet b = Alphabet::binary();
    const Pmf p = Pmf::bernoulli(0.37);
    const Pmf out_id = channel_output_pmf(Channel::identity(b), p);
    for (std::size_t i = 0; i < 2; ++i) CHECK(out_id(i) == doctest::Approx(p(i)));

    const Pmf symmetric = channel_output_pmf(Channel::bsc(0.1), Pmf::bernoulli(0.5));
    CHECK(symmetric(0) == doctest::Approx(0.5).epsilon(1e-15));

    // erasure channel: compare with the joint-marginal oracle
    const Channel erasure = erasure_channel(0.7, b);
    const Pmf in = Pmf::bernoulli(0.4);
    const Pmf out = channel_output_pmf(erasure, in);
    const Pmf oracle = JointPmf::from_input_and_channel(in, erasure).col_marginal();
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(out(i) == doctest::Approx(oracle(i)).epsilon(1e-15));
    CHECK(out(0) == doctest::Approx(0.6 * 0.7).epsilon(1e-15));
    CHECK(out(1) == doctest::Approx(0.4 * 0.7).epsilon(1e-15));
    CHECK(out(2) == doctest::Approx(0.3).epsilon(1e-15));

    CHECK_THROWS_AS(channel_output_pmf(erasure, Pmf::uniform(Alphabet::indexed(3))),
                    ValidationError);
}

TEST_CASE("channel output sums to one for random channels") {
    CounterRng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const Alphabet in = Alphabet::indexed(2 + trial % 4);
        const Alphabet out = Alphabet::indexed(2 + (trial / 2) % 4);
        const Channel ch = random_channel(rng, in, out);
        const Pmf p = random_pmf(rng, in);
        const Pmf out_pmf = channel_output_pmf(ch, p);
        double sum = 0.0;
        for (double v : out_pmf.probs()) sum += v;
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("empirical_pmf counts") {
    const Alphabet b = Alphabet::binary();
    const Pmf balanced = empirical_pmf(SequenceIndex(b, {0, 0, 1, 1}));
    CHECK(balanced(0) == doctest::Approx(0.5).epsilon(1e-15));

    const Alphabet t = Alphabet::indexed(3);
    const Pmf constant = empirical_pmf(SequenceIndex(t, {0, 0, 0}));
    CHECK(constant(0) == 1.0);
    CHECK(constant(1) == 0.0);

    // count oracle
    const Pmf mixed = empirical_pmf(SequenceIndex(t, {0, 1, 1, 1, 2}));
    CHECK(mixed(0) == doctest::Approx(1.0 / 5));
    CHECK(mixed(1) == doctest::Approx(3.0 / 5));
    CHECK(mixed(2) == doctest::Approx(1.0 / 5));
}

TEST_CASE("is_letter_typical") {
    const Pmf half = Pmf::bernoulli(0.5);
    CHECK(is_letter_typical(SequenceIndex(half.alphabet(), {0, 1}), half, 0.0));

    // a symbol outside supp(P) always disqualifies
    const Pmf point(Alphabet::binary(), {1.0, 0.0});
    CHECK_FALSE(is_letter_typical(SequenceIndex(point.alphabet(), {0, 1, 0}), point, 10.0));

    // |3/4 - 1/2| = 0.25 > 0.4 * 0.5
    CHECK_FALSE(is_letter_typical(SequenceIndex(half.alphabet(), {0, 0, 0, 1}), half, 0.4));

    CHECK_THROWS_AS(is_letter_typical(SequenceIndex(half.alphabet(), {0}), half, -0.1),
                    ValidationError);
}

TEST_CASE("eps=0 typicality matches the exact rational oracle exhaustively") {
    // weights (1,1,2)/4: the empirical PMF can hit it exactly when n is a
    // multiple of 4, and each comparison is exact in binary floating point
    const Alphabet t = Alphabet::indexed(3);
    const std::vector<std::uint64_t> weights{1, 1, 2};
    const Pmf p = make_pmf(t, {1.0, 1.0, 2.0});
    const unsigned n = 8;
    std::uint64_t accepted = 0;
    for (std::uint64_t code = 0; code < *checked_pow(3, n); ++code) {
        const SequenceIndex seq = SequenceIndex::from_code(t, n, code);
        std::vector<std::uint64_t> counts(3, 0);
        for (std::size_t i = 0; i < n; ++i) ++counts[seq.letter(i)];
        const bool oracle = exact_typical_eps0(counts, weights, n);
        CHECK(is_letter_typical(seq, p, 0.0) == oracle);
        if (oracle) ++accepted;
    }
    // multinomial count of the exact type (2,2,4): 8!/(2!2!4!) = 420
    CHECK(accepted == 420);
}

TEST_CASE("joint_typicality_test") {
    const Alphabet b = Alphabet::binary();
    // V = U deterministic, uniform
    const JointPmf diag(b, b, {{0.5, 0.0}, {0.0, 0.5}});
    const SequenceIndex u(b, {0, 1}), v(b, {0, 1});
    CHECK(joint_typicality_test(u, v, diag, 0.0));

    // a pair cell with zero joint mass
    const SequenceIndex vbad(b, {1, 1});
    CHECK_FALSE(joint_typicality_test(u, vbad, diag, 5.0));

    CHECK_THROWS_AS(joint_typicality_test(u, SequenceIndex(b, {0, 1, 1}), diag, 0.1),
                    ValidationError);

    // randomized ternary cases against a direct per-cell inequality oracle
    CounterRng rng(97);
    const Alphabet t = Alphabet::indexed(3);
    for (int trial = 0; trial < 25; ++trial) {
        const JointPmf joint = random_joint(rng, t, t, 0.01);
        const unsigned n = 9;
        std::vector<std::size_t> ul(n), vl(n);
        for (auto& x : ul) x = rng.next_u64() % 3;
        for (auto& x : vl) x = rng.next_u64() % 3;
        const double eps = 0.3;
        bool oracle = true;
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) {
                double count = 0.0;
                for (unsigned i = 0; i < n; ++i)
                    if (ul[i] == r && vl[i] == c) count += 1.0;
                if (std::abs(count / n - joint(r, c)) > eps * joint(r, c)) oracle = false;
            }
        CHECK(joint_typicality_test(SequenceIndex(t, ul), SequenceIndex(t, vl), joint,
                                    eps) == oracle);
    }
}

TEST_CASE("joint pmf marginals and conditionals") {
    const Alphabet b = Alphabet::binary();
    const JointPmf j(b, b, {{0.5, 0.0}, {0.1, 0.4}});
    const Pmf rm = j.row_marginal();
    CHECK(rm(0) == doctest::Approx(0.5));
    const Pmf cond = j.conditional_given_row(1);
    CHECK(cond(1) == doctest::Approx(0.8));

    const JointPmf degenerate(b, b, {{0.5, 0.5}, {0.0, 0.0}});
    CHECK_THROWS_AS(degenerate.conditional_given_row(1), ValidationError);

    // marginalization yields valid pmfs for random joints
    CounterRng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const JointPmf joint = random_joint(rng, Alphabet::indexed(4), Alphabet::indexed(3));
        const Pmf marginal = joint.row_marginal();
        double s = 0.0;
        for (double v : marginal.probs()) s += v;
        CHECK(std::abs(s - 1.0) <= 1e-12);
    }
}
