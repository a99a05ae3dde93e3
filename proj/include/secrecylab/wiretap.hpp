#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "secrecylab/info_measures.hpp"
#include "secrecylab/probability.hpp"
#include "secrecylab/soft_covering.hpp"

namespace secrecylab {

inline constexpr std::uint64_t kDefaultSubsetBudget = 1000000;

// Wiretap codebook {x(m,w)}: one subcode of |W| codewords per message, drawn
// i.i.d. per letter from the generator PMF. With a prefix channel the stored
// codewords live on U and the transmitted sequence is the stochastic image
// through Q_{X|U}.
struct WiretapCode {
    unsigned n = 0;
    std::uint64_t message_count = 0;
    std::uint64_t randomness_count = 0;
    double typicality_eps = 0.0;
    std::uint64_t seed = 0;
    Pmf generator;                   // Q_X, or Q_U when prefixed
    std::optional<Channel> prefix;   // Q_{X|U}
    std::vector<std::uint64_t> codewords;  // index (m * |W| + w)

    const Alphabet& codeword_alphabet() const { return generator.alphabet(); }
    double realized_rate() const;             // log2|M| / n
    double realized_randomness_rate() const;  // log2|W| / n
    std::vector<std::size_t> letters_of(std::uint64_t m, std::uint64_t w) const;
    SequenceIndex codeword(std::uint64_t m, std::uint64_t w) const;
    // Channel from the codeword alphabet to the output of `ch` on X.
    Channel effective_channel(const Channel& ch_from_x) const;
};

WiretapCode build_wiretap_code(const Pmf& qx, unsigned n, double rate, double rate_tilde,
                               double eps, std::uint64_t seed,
                               std::uint64_t size_cap = kDefaultCodebookCap);

WiretapCode build_wiretap_code_prefixed(const Pmf& qu, const Channel& prefix, unsigned n,
                                        double rate, double rate_tilde, double eps,
                                        std::uint64_t seed,
                                        std::uint64_t size_cap = kDefaultCodebookCap);

// Exact message/randomness counts (rates are then log2 of the counts over n).
WiretapCode build_wiretap_code_counts(const Pmf& qx, unsigned n, std::uint64_t messages,
                                      std::uint64_t randomness, double eps,
                                      std::uint64_t seed,
                                      std::uint64_t size_cap = kDefaultCodebookCap);

// The stored codeword, or its stochastic prefix image drawn from noise_seed.
SequenceIndex encode(const WiretapCode& code, std::uint64_t m, std::uint64_t w,
                     std::uint64_t noise_seed = 0);

// Joint-typicality decoder: the unique (m,w) whose codeword is jointly
// typical with y at the code's eps, nullopt (erasure) on zero or multiple.
std::optional<std::uint64_t> decode(const WiretapCode& code, const SequenceIndex& y,
                                    const JointPmf& joint_cw_y);

struct ErrorReport {
    std::vector<double> per_message;  // e_m, averaged over the encoder randomness
    double max_error = 0.0;           // e* = max_m e_m
    bool exact = false;
    unsigned mc_trials_per_message = 0;
    // Wilson 99% intervals per message (MC mode only).
    std::vector<std::pair<double, double>> wilson99;
};

// Exact per-message error probability by enumerating all |Y|^n outputs.
// ch_to_y maps the codeword alphabet to Y (compose the prefix upstream).
ErrorReport error_probabilities_exact(const WiretapCode& code, const Channel& ch_to_y,
                                      const JointPmf& joint_cw_y,
                                      std::uint64_t dense_cap = kDefaultDenseCap);

ErrorReport error_probabilities_mc(const WiretapCode& code, const Channel& ch_to_y,
                                   const JointPmf& joint_cw_y, unsigned trials_per_message,
                                   std::uint64_t seed);

struct ExpurgationResult {
    WiretapCode code;
    bool unchanged = false;  // |M| = 1 input is returned as-is
    std::vector<std::uint64_t> kept_messages;
};

// Keeps the ceil(|M|/2) messages with the smallest error, ties by index.
ExpurgationResult expurgate(const WiretapCode& code, const std::vector<double>& errors);

struct LeakageReport {
    std::vector<Bits> per_message_divergence;  // D(P_{Z|M=m} || reference^n)
    std::uint64_t max_message = 0;
    Bits max_divergence = 0.0;
    Bits exact_sem = 0.0;  // max_{P_M} I(M;Z), the capacity of the m -> Z channel
    bool bound_holds = false;  // exact_sem <= max_divergence
    unsigned ba_iterations = 0;
};

// WTC I leakage: exact conditionals P_{Z|M=m} over Z^n, exact SS metric via
// alternating maximization, per-message divergences to Q_Z^n.
LeakageReport ss_metric_wtc1(const WiretapCode& code, const Channel& eave,
                             std::uint64_t dense_cap = kDefaultDenseCap);

// Exact conditional of the observed substring x^S given message m, over X^mu.
std::vector<double> eavesdropper_conditional_wtc2(const WiretapCode& code,
                                                  const std::vector<unsigned>& subset,
                                                  std::uint64_t m);

struct SubsetReport {
    std::vector<unsigned> subset;
    LeakageReport report;
};

struct SubsetLeakage {
    unsigned mu = 0;
    std::vector<SubsetReport> per_subset;
    Bits max_sem_over_subsets = 0.0;   // Sem_mu over the recorded subsets
    Bits max_divergence = 0.0;         // max over (m, S)
    bool sampled = false;              // true when not exhaustive; never silent
    std::uint64_t subsets_evaluated = 0;
    bool bound_holds_all = false;      // per-subset sem <= per-subset max divergence
};

enum class SubsetMode { kExhaustive, kSampled };

// WTC II leakage over eavesdropper subsets of size mu = floor(alpha n).
// Exhaustive mode walks every subset, within the (subsets x messages)
// evaluation budget; sampled mode draws sample_count distinct subsets.
SubsetLeakage ss_metric_wtc2(const WiretapCode& code, double alpha,
                             SubsetMode mode = SubsetMode::kExhaustive,
                             std::uint64_t sample_count = 0, std::uint64_t seed = 0,
                             std::uint64_t budget = kDefaultSubsetBudget,
                             unsigned threads = 1);

// (n+1)^2 2^{-n D_b(delta,beta)} * n log2(|X|+1): the erasure-count large
// deviation term of the converse. delta defaults to the (beta,alpha) midpoint.
double sanov_bound(unsigned n, double alpha, double beta, std::size_t x_alphabet_size,
                   std::optional<double> delta = std::nullopt);

// Smallest n at which the bound drops below threshold, if any within n_max.
std::optional<std::uint64_t> sanov_crossover(double threshold, double alpha, double beta,
                                             std::size_t x_alphabet_size,
                                             std::optional<double> delta = std::nullopt,
                                             std::uint64_t n_max = 10000000);

// n choose k, or nullopt on overflow.
std::optional<std::uint64_t> subset_count(unsigned n, unsigned k);

}  // namespace secrecylab
