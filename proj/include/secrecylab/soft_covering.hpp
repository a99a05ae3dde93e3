#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "secrecylab/exponents.hpp"
#include "secrecylab/probability.hpp"

namespace secrecylab {

inline constexpr std::uint64_t kDefaultDenseCap = 1ULL << 24;
inline constexpr std::uint64_t kDefaultCodebookCap = 1ULL << 24;

// Random codebook of 2^{round(nR)} length-n codewords drawn i.i.d. per letter.
// The realized rate log2|W|/n replaces the nominal R in every exponent
// formula downstream, since rounding the codebook size shifts the rate.
struct Codebook {
    unsigned n = 0;
    double nominal_rate = 0.0;
    std::uint64_t seed = 0;
    Alphabet u_alphabet;
    std::vector<std::uint64_t> codewords;  // sequence codes

    double realized_rate() const;
    std::vector<std::size_t> letters_of(std::size_t w) const;
    SequenceIndex codeword(std::size_t w) const;
};

Codebook sample_codebook(const Pmf& qu, unsigned n, double rate, std::uint64_t seed,
                         std::uint64_t size_cap = kDefaultCodebookCap);

// Exact output distribution of a codebook through a memoryless channel:
// P(v) = |W|^{-1} sum_w Q^n(v | u(w)). Dense vector over all |V|^n sequences
// up to the cap, sparse map (sorted by sequence code) beyond it.
class InducedDistribution {
public:
    InducedDistribution(unsigned n, Alphabet v_alphabet, std::vector<double> dense);
    InducedDistribution(unsigned n, Alphabet v_alphabet,
                        std::vector<std::pair<std::uint64_t, double>> sparse);

    unsigned blocklength() const { return n_; }
    const Alphabet& v_alphabet() const { return v_alphabet_; }
    bool is_dense() const { return dense_mode_; }
    const std::vector<double>& dense() const { return dense_; }
    const std::vector<std::pair<std::uint64_t, double>>& sparse() const { return sparse_; }
    double total_mass() const;

private:
    unsigned n_;
    Alphabet v_alphabet_;
    bool dense_mode_;
    std::vector<double> dense_;
    std::vector<std::pair<std::uint64_t, double>> sparse_;
};

InducedDistribution induced_distribution(const Codebook& cb, const Channel& ch,
                                         std::uint64_t dense_cap = kDefaultDenseCap,
                                         bool allow_sparse = true);

struct DivergenceResult {
    Bits divergence = 0.0;              // D(P || Q_V^n); +inf on support violation
    Bits almost_sure_cap = 0.0;         // n log2(1/mu_V)
    std::optional<std::uint64_t> offending;  // sequence with P > 0, Q^n = 0
};

DivergenceResult soft_covering_divergence(const InducedDistribution& ind, const Pmf& qv);

// The typical/atypical split of the proof: P_1 collects codeword terms whose
// per-symbol information density stays below I(U;V) + eps, P_2 the rest.
struct SplitReport {
    double epsilon = 0.0;
    double p2_mass = 0.0;        // integral of dP_2
    double delta1_max = 0.0;     // max_v P_1(v)/Q^n(v)
    Bits delta2_cap_log2 = 0.0;  // n log2(max 1/Q_V), the a.s. bound on Delta_2
    Bits lemma4_bound = 0.0;     // h(p1) + sum P_1 log(P_1/Q^n) + sum P_2 log(P_2/Q^n)
    Bits exact_divergence = 0.0;
};

SplitReport split_report(const Codebook& cb, const Channel& ch, const JointPmf& joint,
                         double eps, std::uint64_t dense_cap = kDefaultDenseCap);

struct EnsembleTrial {
    unsigned n = 0;
    unsigned trial = 0;
    std::uint64_t seed = 0;
    Bits divergence = 0.0;
    double threshold = 0.0;
    bool exceeded = false;
};

struct EnsemblePerN {
    unsigned n = 0;
    std::uint64_t word_count = 0;
    double realized_rate = 0.0;
    Bits gamma_delta = 0.0;
    double c_delta = 0.0;
    double threshold = 0.0;  // c_delta * n * 2^{-n gamma_delta}
    Bits mean = 0.0;
    Bits median = 0.0;
    Bits max = 0.0;
    unsigned exceed_count = 0;
    unsigned trials = 0;
    ProbabilityBound failure_bound;
};

struct EnsembleResult {
    std::vector<EnsembleTrial> trials;  // ordered by (n, trial)
    std::vector<EnsemblePerN> per_n;
    double slope_log2_mean = 0.0;  // least-squares slope of log2(mean D) vs n
};

EnsembleResult ensemble_experiment(const Pmf& qu, const Channel& ch, double rate,
                                   double delta, const std::vector<unsigned>& n_list,
                                   unsigned trials, std::uint64_t seed,
                                   std::uint64_t dense_cap = kDefaultDenseCap,
                                   unsigned threads = 1);

// Dense product helpers shared with the wiretap module. Sequence codes are
// lexicographic, first letter most significant.
std::vector<double> dense_conditional_product(const Channel& ch,
                                              const std::vector<std::size_t>& input_letters);
std::vector<double> dense_iid_product(const Pmf& p, unsigned n);

}  // namespace secrecylab
