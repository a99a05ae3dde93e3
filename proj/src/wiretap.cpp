#include "secrecylab/wiretap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "secrecylab/parallel.hpp"
#include "secrecylab/rng.hpp"
#include "secrecylab/secrecy_capacity.hpp"

namespace secrecylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLog2e = 1.0 / std::log(2.0);

std::uint64_t rate_to_count(unsigned n, double rate, const char* what) {
    if (!(rate > 0.0)) throw ValidationError(std::string(what) + " must be positive");
    const long long bits = std::max(0LL, std::llround(static_cast<double>(n) * rate));
    if (bits >= 63)
        throw CapExceededError(std::string(what) + ": 2^" + std::to_string(bits) +
                               " exceeds the representable range");
    return 1ULL << bits;
}

WiretapCode build_code(Pmf generator, std::optional<Channel> prefix, unsigned n,
                       std::uint64_t messages, std::uint64_t randomness, double eps,
                       std::uint64_t seed, std::uint64_t size_cap) {
    if (n < 1) throw ValidationError("blocklength must be at least 1");
    if (messages < 1 || randomness < 1)
        throw ValidationError("message and randomness counts must be at least 1");
    if (messages > size_cap / randomness)
        throw CapExceededError("wiretap codebook of " + std::to_string(messages) + " x " +
                               std::to_string(randomness) + " codewords exceeds the cap");
    if (!checked_pow(generator.size(), n))
        throw ValidationError("|X|^n overflows the sequence code range");
    WiretapCode code;
    code.n = n;
    code.message_count = messages;
    code.randomness_count = randomness;
    code.typicality_eps = eps;
    code.seed = seed;
    code.generator = std::move(generator);
    code.prefix = std::move(prefix);
    code.codewords.resize(messages * randomness);
    const auto probs = code.generator.probs();
    for (std::uint64_t m = 0; m < messages; ++m)
        for (std::uint64_t w = 0; w < randomness; ++w) {
            // Keyed per (m, w) so enlarging |W| nests the smaller codebook.
            CounterRng rng = CounterRng::at(seed, m, w);
            std::uint64_t cw = 0;
            for (unsigned t = 0; t < n; ++t)
                cw = cw * code.generator.size() + rng.next_categorical(probs);
            code.codewords[m * randomness + w] = cw;
        }
    return code;
}

}  // namespace

double WiretapCode::realized_rate() const {
    return std::log2(static_cast<double>(message_count)) / n;
}

double WiretapCode::realized_randomness_rate() const {
    return std::log2(static_cast<double>(randomness_count)) / n;
}

std::vector<std::size_t> WiretapCode::letters_of(std::uint64_t m, std::uint64_t w) const {
    std::vector<std::size_t> letters(n);
    std::uint64_t code = codewords[m * randomness_count + w];
    const std::uint64_t base = codeword_alphabet().size();
    for (unsigned t = n; t-- > 0;) {
        letters[t] = static_cast<std::size_t>(code % base);
        code /= base;
    }
    return letters;
}

SequenceIndex WiretapCode::codeword(std::uint64_t m, std::uint64_t w) const {
    return SequenceIndex(codeword_alphabet(), letters_of(m, w));
}

Channel WiretapCode::effective_channel(const Channel& ch_from_x) const {
    return prefix ? compose(*prefix, ch_from_x) : ch_from_x;
}

WiretapCode build_wiretap_code(const Pmf& qx, unsigned n, double rate, double rate_tilde,
                               double eps, std::uint64_t seed, std::uint64_t size_cap) {
    return build_code(qx, std::nullopt, n, rate_to_count(n, rate, "message rate"),
                      rate_to_count(n, rate_tilde, "randomness rate"), eps, seed,
                      size_cap);
}

WiretapCode build_wiretap_code_prefixed(const Pmf& qu, const Channel& prefix, unsigned n,
                                        double rate, double rate_tilde, double eps,
                                        std::uint64_t seed, std::uint64_t size_cap) {
    if (qu.alphabet() != prefix.input_alphabet())
        throw ValidationError("prefix channel input alphabet must match the generator");
    return build_code(qu, prefix, n, rate_to_count(n, rate, "message rate"),
                      rate_to_count(n, rate_tilde, "randomness rate"), eps, seed,
                      size_cap);
}

WiretapCode build_wiretap_code_counts(const Pmf& qx, unsigned n, std::uint64_t messages,
                                      std::uint64_t randomness, double eps,
                                      std::uint64_t seed, std::uint64_t size_cap) {
    return build_code(qx, std::nullopt, n, messages, randomness, eps, seed, size_cap);
}

SequenceIndex encode(const WiretapCode& code, std::uint64_t m, std::uint64_t w,
                     std::uint64_t noise_seed) {
    if (m >= code.message_count || w >= code.randomness_count)
        throw ValidationError("encode: message or randomness index out of range");
    std::vector<std::size_t> letters = code.letters_of(m, w);
    if (!code.prefix) return SequenceIndex(code.codeword_alphabet(), std::move(letters));
    CounterRng rng = CounterRng::at(noise_seed, m, w);
    std::vector<std::size_t> x(letters.size());
    for (std::size_t t = 0; t < letters.size(); ++t)
        x[t] = rng.next_categorical(code.prefix->row(letters[t]));
    return SequenceIndex(code.prefix->output_alphabet(), std::move(x));
}

std::optional<std::uint64_t> decode(const WiretapCode& code, const SequenceIndex& y,
                                    const JointPmf& joint_cw_y) {
    if (y.length() != code.n) throw ValidationError("decode: observation length mismatch");
    std::optional<std::uint64_t> found;
    for (std::uint64_t m = 0; m < code.message_count; ++m)
        for (std::uint64_t w = 0; w < code.randomness_count; ++w) {
            if (!joint_typicality_test(code.codeword(m, w), y, joint_cw_y,
                                       code.typicality_eps))
                continue;
            if (found) return std::nullopt;  // a second matching pair is an erasure
            found = m;
        }
    return found;
}

ErrorReport error_probabilities_exact(const WiretapCode& code, const Channel& ch_to_y,
                                      const JointPmf& joint_cw_y,
                                      std::uint64_t dense_cap) {
    if (ch_to_y.input_alphabet() != code.codeword_alphabet())
        throw ValidationError("error_probabilities: channel input alphabet mismatch");
    const std::size_t y_size = ch_to_y.output_alphabet().size();
    const auto total = checked_pow(y_size, code.n);
    if (!total || *total > dense_cap)
        throw CapExceededError("|Y|^n exceeds the dense cap for exact error computation");

    // Decode decision for every output sequence, shared across messages.
    std::vector<std::optional<std::uint64_t>> decisions(*total);
    for (std::uint64_t yc = 0; yc < *total; ++yc)
        decisions[yc] =
            decode(code, SequenceIndex::from_code(ch_to_y.output_alphabet(), code.n, yc),
                   joint_cw_y);

    ErrorReport report;
    report.exact = true;
    report.per_message.assign(code.message_count, 0.0);
    for (std::uint64_t m = 0; m < code.message_count; ++m) {
        double em = 0.0;
        for (std::uint64_t w = 0; w < code.randomness_count; ++w) {
            const std::vector<double> row =
                dense_conditional_product(ch_to_y, code.letters_of(m, w));
            double miss = 0.0;
            for (std::uint64_t yc = 0; yc < *total; ++yc)
                if (!decisions[yc] || *decisions[yc] != m) miss += row[yc];
            em += miss;
        }
        report.per_message[m] = em / static_cast<double>(code.randomness_count);
    }
    report.max_error =
        *std::max_element(report.per_message.begin(), report.per_message.end());
    return report;
}

ErrorReport error_probabilities_mc(const WiretapCode& code, const Channel& ch_to_y,
                                   const JointPmf& joint_cw_y,
                                   unsigned trials_per_message, std::uint64_t seed) {
    if (trials_per_message < 1)
        throw ValidationError("error_probabilities_mc requires at least one trial");
    if (ch_to_y.input_alphabet() != code.codeword_alphabet())
        throw ValidationError("error_probabilities: channel input alphabet mismatch");
    ErrorReport report;
    report.exact = false;
    report.mc_trials_per_message = trials_per_message;
    report.per_message.assign(code.message_count, 0.0);
    report.wilson99.resize(code.message_count);
    constexpr double z = 2.5758293035489004;  // 99% two-sided normal quantile
    for (std::uint64_t m = 0; m < code.message_count; ++m) {
        unsigned errors = 0;
        for (unsigned t = 0; t < trials_per_message; ++t) {
            CounterRng rng = CounterRng::at(seed, m, t, 0xecc0ULL);
            const std::uint64_t w = rng.next_u64() % code.randomness_count;
            const std::vector<std::size_t> letters = code.letters_of(m, w);
            std::vector<std::size_t> y(code.n);
            for (unsigned i = 0; i < code.n; ++i)
                y[i] = rng.next_categorical(ch_to_y.row(letters[i]));
            const auto decision =
                decode(code, SequenceIndex(ch_to_y.output_alphabet(), std::move(y)),
                       joint_cw_y);
            if (!decision || *decision != m) ++errors;
        }
        const double nt = trials_per_message;
        const double phat = errors / nt;
        report.per_message[m] = phat;
        const double denom = 1.0 + z * z / nt;
        const double center = (phat + z * z / (2.0 * nt)) / denom;
        const double half =
            z * std::sqrt(phat * (1.0 - phat) / nt + z * z / (4.0 * nt * nt)) / denom;
        report.wilson99[m] = {std::max(0.0, center - half), std::min(1.0, center + half)};
    }
    report.max_error =
        *std::max_element(report.per_message.begin(), report.per_message.end());
    return report;
}

ExpurgationResult expurgate(const WiretapCode& code, const std::vector<double>& errors) {
    if (errors.size() != code.message_count)
        throw ValidationError("expurgate: error vector does not match the message count");
    ExpurgationResult result;
    if (code.message_count == 1) {
        result.code = code;
        result.unchanged = true;
        result.kept_messages = {0};
        return result;
    }
    std::vector<std::uint64_t> order(code.message_count);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
        return errors[a] < errors[b];  // ties keep the smaller message index
    });
    const std::uint64_t keep = (code.message_count + 1) / 2;
    result.kept_messages.assign(order.begin(), order.begin() + keep);
    std::sort(result.kept_messages.begin(), result.kept_messages.end());

    WiretapCode pruned;
    pruned.n = code.n;
    pruned.message_count = keep;
    pruned.randomness_count = code.randomness_count;
    pruned.typicality_eps = code.typicality_eps;
    pruned.seed = code.seed;
    pruned.generator = code.generator;
    pruned.prefix = code.prefix;
    pruned.codewords.reserve(keep * code.randomness_count);
    for (std::uint64_t m : result.kept_messages)
        for (std::uint64_t w = 0; w < code.randomness_count; ++w)
            pruned.codewords.push_back(code.codewords[m * code.randomness_count + w]);
    result.code = std::move(pruned);
    return result;
}

namespace {

LeakageReport leakage_from_conditionals(const std::vector<std::vector<double>>& conditionals,
                                        const std::vector<double>& reference) {
    LeakageReport report;
    report.per_message_divergence.resize(conditionals.size());
    for (std::size_t m = 0; m < conditionals.size(); ++m) {
        double d = 0.0;
        for (std::size_t i = 0; i < reference.size(); ++i) {
            const double p = conditionals[m][i];
            if (p <= 0.0) continue;
            if (reference[i] <= 0.0) {
                d = kInf;
                break;
            }
            d += p * std::log(p / reference[i]) * kLog2e;
        }
        report.per_message_divergence[m] = d;
    }
    const auto it = std::max_element(report.per_message_divergence.begin(),
                                     report.per_message_divergence.end());
    report.max_message = static_cast<std::uint64_t>(
        std::distance(report.per_message_divergence.begin(), it));
    report.max_divergence = *it;
    const BaRowsResult ba = ba_capacity_rows(conditionals, 1e-9);
    report.exact_sem = std::max(ba.capacity, 0.0);
    report.ba_iterations = ba.iterations;
    report.bound_holds = report.exact_sem <= report.max_divergence + 1e-9;
    return report;
}

}  // namespace

LeakageReport ss_metric_wtc1(const WiretapCode& code, const Channel& eave,
                             std::uint64_t dense_cap) {
    const Channel eff = code.effective_channel(eave);
    const std::size_t z_size = eff.output_alphabet().size();
    const auto total = checked_pow(z_size, code.n);
    if (!total || *total > dense_cap)
        throw CapExceededError("|Z|^n exceeds the dense cap for the exact SS metric");

    std::vector<std::vector<double>> conditionals(code.message_count);
    const double weight = 1.0 / static_cast<double>(code.randomness_count);
    for (std::uint64_t m = 0; m < code.message_count; ++m) {
        std::vector<double> acc(*total, 0.0);
        for (std::uint64_t w = 0; w < code.randomness_count; ++w) {
            const std::vector<double> row =
                dense_conditional_product(eff, code.letters_of(m, w));
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += weight * row[i];
        }
        conditionals[m] = std::move(acc);
    }
    const Pmf qz = channel_output_pmf(eff, code.generator);
    return leakage_from_conditionals(conditionals, dense_iid_product(qz, code.n));
}

std::vector<double> eavesdropper_conditional_wtc2(const WiretapCode& code,
                                                  const std::vector<unsigned>& subset,
                                                  std::uint64_t m) {
    if (m >= code.message_count) throw ValidationError("message index out of range");
    for (unsigned i : subset)
        if (i >= code.n) throw ValidationError("subset index out of range");
    const Pmf qx = code.prefix ? channel_output_pmf(*code.prefix, code.generator)
                               : code.generator;
    const std::size_t x_size = qx.size();
    const unsigned mu = static_cast<unsigned>(subset.size());
    const auto total = checked_pow(x_size, mu);
    if (!total) throw CapExceededError("|X|^mu overflows");
    std::vector<double> acc(*total, 0.0);
    const double weight = 1.0 / static_cast<double>(code.randomness_count);
    for (std::uint64_t w = 0; w < code.randomness_count; ++w) {
        const std::vector<std::size_t> letters = code.letters_of(m, w);
        if (!code.prefix) {
            std::uint64_t sub = 0;
            for (unsigned i : subset) sub = sub * x_size + letters[i];
            acc[sub] += weight;
        } else {
            // Substring distribution through the prefix channel.
            std::vector<double> cur{weight};
            std::vector<double> next;
            for (unsigned i : subset) {
                const auto row = code.prefix->row(letters[i]);
                next.assign(cur.size() * x_size, 0.0);
                for (std::size_t j = 0; j < cur.size(); ++j)
                    for (std::size_t x = 0; x < x_size; ++x)
                        next[j * x_size + x] = cur[j] * row[x];
                std::swap(cur, next);
            }
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += cur[i];
        }
    }
    return acc;
}

std::optional<std::uint64_t> subset_count(unsigned n, unsigned k) {
    if (k > n) return 0;
    std::uint64_t result = 1;
    for (unsigned i = 1; i <= k; ++i) {
        const std::uint64_t num = n - k + i;
        if (result > std::numeric_limits<std::uint64_t>::max() / num) return std::nullopt;
        result = result * num / i;
    }
    return result;
}

SubsetLeakage ss_metric_wtc2(const WiretapCode& code, double alpha, SubsetMode mode,
                             std::uint64_t sample_count, std::uint64_t seed,
                             std::uint64_t budget, unsigned threads) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ValidationError("wtc2 alpha must lie in [0,1]");
    const unsigned mu = static_cast<unsigned>(std::floor(alpha * code.n));
    const Pmf ref = code.prefix ? channel_output_pmf(*code.prefix, code.generator)
                                : code.generator;  // I_Z restricted to X, or Q_Z
    const auto x_total = checked_pow(ref.size(), mu);
    if (!x_total || *x_total > budget)
        throw CapExceededError("|X|^mu exceeds the evaluation budget");

    std::vector<std::vector<unsigned>> subsets;
    const auto combos = subset_count(code.n, mu);
    if (mode == SubsetMode::kExhaustive) {
        if (!combos || *combos > budget / std::max<std::uint64_t>(code.message_count, 1))
            throw CapExceededError(
                "exhaustive subset evaluation exceeds the budget; rerun with "
                "--subsets sampled:K");
        std::vector<unsigned> current(mu);
        std::iota(current.begin(), current.end(), 0);
        if (mu == 0) {
            subsets.push_back({});
        } else {
            while (true) {
                subsets.push_back(current);
                int i = static_cast<int>(mu) - 1;
                while (i >= 0 && current[i] == code.n - mu + i) --i;
                if (i < 0) break;
                ++current[i];
                for (unsigned j = i + 1; j < mu; ++j) current[j] = current[j - 1] + 1;
            }
        }
    } else {
        if (sample_count == 0)
            throw ValidationError("sampled subset mode requires a positive sample count");
        std::set<std::vector<unsigned>> seen;
        CounterRng rng = CounterRng::at(seed, 0x5e75ULL);
        const std::uint64_t limit = combos ? std::min<std::uint64_t>(*combos, sample_count)
                                           : sample_count;
        std::vector<unsigned> indices(code.n);
        std::uint64_t attempts = 0;
        while (seen.size() < limit && attempts < 1000 * limit + 1000) {
            ++attempts;
            std::iota(indices.begin(), indices.end(), 0);
            for (unsigned i = 0; i < mu; ++i) {
                const std::uint64_t j = i + rng.next_u64() % (code.n - i);
                std::swap(indices[i], indices[j]);
            }
            std::vector<unsigned> pick(indices.begin(), indices.begin() + mu);
            std::sort(pick.begin(), pick.end());
            seen.insert(std::move(pick));
        }
        subsets.assign(seen.begin(), seen.end());
    }

    SubsetLeakage leakage;
    leakage.mu = mu;
    leakage.sampled = mode == SubsetMode::kSampled;
    leakage.subsets_evaluated = subsets.size();
    leakage.per_subset.resize(subsets.size());

    const std::vector<double> reference = dense_iid_product(ref, mu);
    parallel_for(subsets.size(), threads, [&](std::size_t si) {
        std::vector<std::vector<double>> conditionals(code.message_count);
        for (std::uint64_t m = 0; m < code.message_count; ++m)
            conditionals[m] = eavesdropper_conditional_wtc2(code, subsets[si], m);
        leakage.per_subset[si].subset = subsets[si];
        leakage.per_subset[si].report = leakage_from_conditionals(conditionals, reference);
    });

    leakage.max_sem_over_subsets = 0.0;
    leakage.max_divergence = 0.0;
    leakage.bound_holds_all = true;
    for (const auto& entry : leakage.per_subset) {
        leakage.max_sem_over_subsets =
            std::max(leakage.max_sem_over_subsets, entry.report.exact_sem);
        leakage.max_divergence = std::max(leakage.max_divergence, entry.report.max_divergence);
        leakage.bound_holds_all = leakage.bound_holds_all && entry.report.bound_holds;
    }
    return leakage;
}

double sanov_bound(unsigned n, double alpha, double beta, std::size_t x_alphabet_size,
                   std::optional<double> delta) {
    if (!(alpha > beta)) throw ValidationError("sanov_bound requires beta < alpha");
    if (!(beta >= 0.0 && alpha <= 1.0))
        throw ValidationError("sanov_bound requires 0 <= beta < alpha <= 1");
    const double d = delta.value_or(0.5 * (alpha + beta));
    if (!(d >= beta && d < alpha))
        throw ValidationError("sanov delta must lie in [beta, alpha)");
    const double db = binary_divergence(d, beta);
    const double np1 = static_cast<double>(n) + 1.0;
    return np1 * np1 * std::exp2(-static_cast<double>(n) * db) *
           static_cast<double>(n) * std::log2(static_cast<double>(x_alphabet_size) + 1.0);
}

std::optional<std::uint64_t> sanov_crossover(double threshold, double alpha, double beta,
                                             std::size_t x_alphabet_size,
                                             std::optional<double> delta,
                                             std::uint64_t n_max) {
    if (!(threshold > 0.0)) throw ValidationError("crossover threshold must be positive");
    if (!(alpha > beta)) throw ValidationError("sanov_crossover requires beta < alpha");
    const double d = delta.value_or(0.5 * (alpha + beta));
    if (!(d >= beta && d < alpha))
        throw ValidationError("sanov delta must lie in [beta, alpha)");
    const double db = binary_divergence(d, beta);
    if (db == 0.0) return std::nullopt;  // degenerate delta: polynomial growth, no decay
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        // log2 of the bound, so astronomically small values cannot underflow.
        const double log2_bound = 2.0 * std::log2(static_cast<double>(n) + 1.0) -
                                  static_cast<double>(n) * db +
                                  std::log2(static_cast<double>(n)) +
                                  std::log2(std::log2(static_cast<double>(x_alphabet_size) + 1.0));
        if (log2_bound < std::log2(threshold)) return n;
    }
    return std::nullopt;
}

}  // namespace secrecylab
