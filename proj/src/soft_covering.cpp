#include "secrecylab/soft_covering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "secrecylab/parallel.hpp"
#include "secrecylab/rng.hpp"

namespace secrecylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Compensated (Kahan) accumulator; divergence sums run in sequence-code order
// so results are bit-reproducible regardless of worker count.
struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

std::uint64_t codebook_size(unsigned n, double rate) {
    if (!(rate > 0.0)) throw ValidationError("codebook rate must be positive");
    const long long k = std::llround(static_cast<double>(n) * rate);
    const long long bits = std::max(0LL, k);
    if (bits >= 63) throw CapExceededError("codebook size 2^" + std::to_string(bits) +
                                           " exceeds the representable range");
    return 1ULL << bits;
}

}  // namespace

double Codebook::realized_rate() const {
    return std::log2(static_cast<double>(codewords.size())) / n;
}

std::vector<std::size_t> Codebook::letters_of(std::size_t w) const {
    std::vector<std::size_t> letters(n);
    std::uint64_t code = codewords[w];
    const std::uint64_t base = u_alphabet.size();
    for (unsigned t = n; t-- > 0;) {
        letters[t] = static_cast<std::size_t>(code % base);
        code /= base;
    }
    return letters;
}

SequenceIndex Codebook::codeword(std::size_t w) const {
    return SequenceIndex(u_alphabet, letters_of(w));
}

Codebook sample_codebook(const Pmf& qu, unsigned n, double rate, std::uint64_t seed,
                         std::uint64_t size_cap) {
    if (n < 1) throw ValidationError("blocklength must be at least 1");
    const std::uint64_t words = codebook_size(n, rate);
    if (words > size_cap)
        throw CapExceededError("codebook of " + std::to_string(words) +
                               " codewords exceeds the cap of " + std::to_string(size_cap));
    if (!checked_pow(qu.size(), n))
        throw ValidationError("|U|^n overflows the sequence code range");
    Codebook cb;
    cb.n = n;
    cb.nominal_rate = rate;
    cb.seed = seed;
    cb.u_alphabet = qu.alphabet();
    cb.codewords.resize(words);
    const auto probs = qu.probs();
    for (std::uint64_t w = 0; w < words; ++w) {
        CounterRng rng = CounterRng::at(seed, w);
        std::uint64_t code = 0;
        for (unsigned t = 0; t < n; ++t)
            code = code * qu.size() + rng.next_categorical(probs);
        cb.codewords[w] = code;
    }
    return cb;
}

InducedDistribution::InducedDistribution(unsigned n, Alphabet v_alphabet,
                                         std::vector<double> dense)
    : n_(n), v_alphabet_(std::move(v_alphabet)), dense_mode_(true),
      dense_(std::move(dense)) {}

InducedDistribution::InducedDistribution(
    unsigned n, Alphabet v_alphabet,
    std::vector<std::pair<std::uint64_t, double>> sparse)
    : n_(n), v_alphabet_(std::move(v_alphabet)), dense_mode_(false),
      sparse_(std::move(sparse)) {}

double InducedDistribution::total_mass() const {
    Kahan acc;
    if (dense_mode_)
        for (double p : dense_) acc.add(p);
    else
        for (const auto& [code, p] : sparse_) acc.add(p);
    return acc.sum;
}

std::vector<double> dense_conditional_product(const Channel& ch,
                                              const std::vector<std::size_t>& input_letters) {
    const std::size_t v_size = ch.output_alphabet().size();
    std::vector<double> cur{1.0};
    std::vector<double> next;
    for (std::size_t u : input_letters) {
        const auto row = ch.row(u);
        next.resize(cur.size() * v_size);
        for (std::size_t j = 0; j < cur.size(); ++j) {
            const double base = cur[j];
            double* out = next.data() + j * v_size;
            for (std::size_t v = 0; v < v_size; ++v) out[v] = base * row[v];
        }
        std::swap(cur, next);
    }
    return cur;
}

std::vector<double> dense_iid_product(const Pmf& p, unsigned n) {
    const std::size_t v_size = p.size();
    std::vector<double> cur{1.0};
    std::vector<double> next;
    for (unsigned t = 0; t < n; ++t) {
        next.resize(cur.size() * v_size);
        for (std::size_t j = 0; j < cur.size(); ++j) {
            const double base = cur[j];
            double* out = next.data() + j * v_size;
            for (std::size_t v = 0; v < v_size; ++v) out[v] = base * p(v);
        }
        std::swap(cur, next);
    }
    return cur;
}

InducedDistribution induced_distribution(const Codebook& cb, const Channel& ch,
                                         std::uint64_t dense_cap, bool allow_sparse) {
    if (cb.u_alphabet != ch.input_alphabet())
        throw ValidationError("codebook alphabet does not match channel input alphabet");
    const std::size_t v_size = ch.output_alphabet().size();
    const auto total = checked_pow(v_size, cb.n);
    const double weight = 1.0 / static_cast<double>(cb.codewords.size());

    // Identical codewords share one conditional row.
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t code : cb.codewords) ++counts[code];

    if (total && *total <= dense_cap) {
        std::vector<double> acc(*total, 0.0);
        for (const auto& [code, count] : counts) {
            std::uint64_t c = code;
            std::vector<std::size_t> letters(cb.n);
            for (unsigned t = cb.n; t-- > 0;) {
                letters[t] = static_cast<std::size_t>(c % cb.u_alphabet.size());
                c /= cb.u_alphabet.size();
            }
            const std::vector<double> row = dense_conditional_product(ch, letters);
            const double scale = weight * static_cast<double>(count);
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += scale * row[i];
        }
        return InducedDistribution(cb.n, ch.output_alphabet(), std::move(acc));
    }

    if (!allow_sparse)
        throw CapExceededError("|V|^n exceeds the dense cap of " +
                               std::to_string(dense_cap) + " entries and sparse mode is off");

    // Sparse accumulation keyed by sequence code; only nonzero branches are
    // walked, so sparse channels (identity, erasure) stay cheap.
    std::map<std::uint64_t, double> acc;
    std::vector<std::size_t> letters(cb.n);
    const std::function<void(unsigned, std::uint64_t, double)> walk =
        [&](unsigned depth, std::uint64_t code, double prob) {
            if (depth == cb.n) {
                acc[code] += prob;
                if (acc.size() > dense_cap)
                    throw CapExceededError(
                        "sparse induced distribution exceeded the cap of " +
                        std::to_string(dense_cap) + " entries");
                return;
            }
            for (std::size_t v = 0; v < v_size; ++v) {
                const double p = ch.prob(letters[depth], v);
                if (p > 0.0) walk(depth + 1, code * v_size + v, prob * p);
            }
        };
    for (const auto& [code, count] : counts) {
        std::uint64_t c = code;
        for (unsigned t = cb.n; t-- > 0;) {
            letters[t] = static_cast<std::size_t>(c % cb.u_alphabet.size());
            c /= cb.u_alphabet.size();
        }
        walk(0, 0, weight * static_cast<double>(count));
    }
    std::vector<std::pair<std::uint64_t, double>> entries(acc.begin(), acc.end());
    return InducedDistribution(cb.n, ch.output_alphabet(), std::move(entries));
}

DivergenceResult soft_covering_divergence(const InducedDistribution& ind, const Pmf& qv) {
    if (qv.alphabet() != ind.v_alphabet())
        throw ValidationError("soft_covering_divergence: alphabet mismatch");
    DivergenceResult result;
    const double mu = qv.min_support_prob();
    result.almost_sure_cap = ind.blocklength() * std::log2(1.0 / mu);
    const double log2e = 1.0 / std::log(2.0);

    Kahan acc;
    if (ind.is_dense()) {
        const std::vector<double> q = dense_iid_product(qv, ind.blocklength());
        const auto& p = ind.dense();
        for (std::size_t code = 0; code < p.size(); ++code) {
            if (p[code] <= 0.0) continue;
            if (q[code] <= 0.0) {
                result.divergence = kInf;
                result.offending = code;
                return result;
            }
            acc.add(p[code] * std::log(p[code] / q[code]) * log2e);
        }
    } else {
        for (const auto& [code, pv] : ind.sparse()) {
            if (pv <= 0.0) continue;
            std::uint64_t c = code;
            double logq = 0.0;
            bool null_q = false;
            for (unsigned t = 0; t < ind.blocklength(); ++t) {
                const std::size_t v = static_cast<std::size_t>(c % qv.size());
                c /= qv.size();
                if (qv(v) == 0.0) {
                    null_q = true;
                    break;
                }
                logq += std::log(qv(v));
            }
            if (null_q) {
                result.divergence = kInf;
                result.offending = code;
                return result;
            }
            acc.add(pv * (std::log(pv) - logq) * log2e);
        }
    }
    result.divergence = acc.sum;
    return result;
}

SplitReport split_report(const Codebook& cb, const Channel& ch, const JointPmf& joint,
                         double eps, std::uint64_t dense_cap) {
    if (std::isnan(eps)) throw ValidationError("split eps must not be NaN");
    const std::size_t v_size = ch.output_alphabet().size();
    const auto total = checked_pow(v_size, cb.n);
    if (!total || *total > dense_cap)
        throw CapExceededError("split_report requires |V|^n within the dense cap");

    const Pmf qv = joint.col_marginal();
    const Pmf qu = joint.row_marginal();
    const double mutual = mutual_information(joint);
    const double log2e = 1.0 / std::log(2.0);

    // Per-letter information density table i(u,v) in bits; -inf marks joint
    // zeros, which always land inside the typical set.
    std::vector<double> density(qu.size() * v_size);
    for (std::size_t u = 0; u < qu.size(); ++u)
        for (std::size_t v = 0; v < v_size; ++v) {
            const double j = joint(u, v);
            density[u * v_size + v] =
                (j == 0.0 || qu(u) == 0.0)
                    ? -kInf
                    : std::log2(j / (qu(u) * qv(v)));
        }

    const double threshold = cb.n * (mutual + eps);
    std::vector<double> part1(*total, 0.0);
    std::vector<double> part2(*total, 0.0);
    const double weight = 1.0 / static_cast<double>(cb.codewords.size());

    std::vector<double> dens_cur, dens_next;
    for (std::size_t w = 0; w < cb.codewords.size(); ++w) {
        const std::vector<std::size_t> letters = cb.letters_of(w);
        const std::vector<double> row = dense_conditional_product(ch, letters);
        // Additive DP for the density sums over all v-sequences.
        dens_cur.assign(1, 0.0);
        for (std::size_t u : letters) {
            dens_next.resize(dens_cur.size() * v_size);
            const double* d = density.data() + u * v_size;
            for (std::size_t j = 0; j < dens_cur.size(); ++j) {
                const double base = dens_cur[j];
                double* out = dens_next.data() + j * v_size;
                for (std::size_t v = 0; v < v_size; ++v) out[v] = base + d[v];
            }
            std::swap(dens_cur, dens_next);
        }
        for (std::size_t code = 0; code < *total; ++code) {
            const double mass = weight * row[code];
            if (dens_cur[code] < threshold)
                part1[code] += mass;
            else
                part2[code] += mass;
        }
    }

    const std::vector<double> qprod = dense_iid_product(qv, cb.n);
    SplitReport report;
    report.epsilon = eps;

    Kahan p2_mass, term1, term2, exact;
    double delta1_max = 0.0;
    for (std::size_t code = 0; code < *total; ++code) {
        const double p1 = part1[code];
        const double p2 = part2[code];
        const double q = qprod[code];
        p2_mass.add(p2);
        if (p1 > 0.0) {
            if (q <= 0.0) throw ValidationError("induced mass outside supp(Q_V^n)");
            term1.add(p1 * std::log(p1 / q) * log2e);
            delta1_max = std::max(delta1_max, p1 / q);
        }
        if (p2 > 0.0) {
            if (q <= 0.0) throw ValidationError("induced mass outside supp(Q_V^n)");
            term2.add(p2 * std::log(p2 / q) * log2e);
        }
        const double p = p1 + p2;
        if (p > 0.0) exact.add(p * std::log(p / q) * log2e);
    }

    report.p2_mass = std::clamp(p2_mass.sum, 0.0, 1.0);
    report.delta1_max = delta1_max;
    double max_inv = 0.0;
    for (double p : qv.probs())
        if (p > 0.0) max_inv = std::max(max_inv, 1.0 / p);
    report.delta2_cap_log2 = cb.n * std::log2(max_inv);
    report.lemma4_bound = binary_entropy(1.0 - report.p2_mass) + term1.sum + term2.sum;
    report.exact_divergence = exact.sum;
    return report;
}

EnsembleResult ensemble_experiment(const Pmf& qu, const Channel& ch, double rate,
                                   double delta, const std::vector<unsigned>& n_list,
                                   unsigned trials, std::uint64_t seed,
                                   std::uint64_t dense_cap, unsigned threads) {
    if (trials < 1) throw ValidationError("ensemble_experiment requires trials >= 1");
    if (n_list.empty()) throw ValidationError("ensemble_experiment requires a non-empty n list");
    const JointPmf joint = JointPmf::from_input_and_channel(qu, ch);
    const Pmf qv = joint.col_marginal();

    EnsembleResult result;
    result.trials.resize(n_list.size() * trials);
    result.per_n.resize(n_list.size());

    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        const unsigned n = n_list[ni];
        const std::uint64_t words = codebook_size(n, rate);
        const auto v_total = checked_pow(qv.size(), n);
        if (!v_total || *v_total > dense_cap)
            throw CapExceededError("|V|^" + std::to_string(n) +
                                   " exceeds the dense cap; reduce n or raise --cap-dense");

        EnsemblePerN& stats = result.per_n[ni];
        stats.n = n;
        stats.word_count = words;
        stats.realized_rate = std::log2(static_cast<double>(words)) / n;
        ExponentParams params(joint, stats.realized_rate, delta, n);
        stats.gamma_delta = gamma_delta(params).value;
        stats.c_delta = c_delta(qv, params);
        stats.threshold = stats.c_delta * static_cast<double>(n) *
                          std::exp2(-static_cast<double>(n) * stats.gamma_delta);
        stats.failure_bound = failure_probability_bound(n, delta, qv.size());
        stats.trials = trials;

        parallel_for(trials, threads, [&](std::size_t t) {
            const std::uint64_t trial_seed = CounterRng::derive(seed, n, t);
            const Codebook cb = sample_codebook(qu, n, rate, trial_seed);
            const InducedDistribution ind = induced_distribution(cb, ch, dense_cap);
            const DivergenceResult div = soft_covering_divergence(ind, qv);
            EnsembleTrial& row = result.trials[ni * trials + t];
            row.n = n;
            row.trial = static_cast<unsigned>(t);
            row.seed = trial_seed;
            row.divergence = div.divergence;
            row.threshold = stats.threshold;
            row.exceeded = div.divergence > stats.threshold;
        });

        Kahan mean;
        std::vector<double> values(trials);
        double maxv = -kInf;
        unsigned exceed = 0;
        for (unsigned t = 0; t < trials; ++t) {
            const EnsembleTrial& row = result.trials[ni * trials + t];
            mean.add(row.divergence);
            values[t] = row.divergence;
            maxv = std::max(maxv, row.divergence);
            if (row.exceeded) ++exceed;
        }
        std::sort(values.begin(), values.end());
        stats.mean = mean.sum / trials;
        stats.median = trials % 2 == 1 ? values[trials / 2]
                                       : 0.5 * (values[trials / 2 - 1] + values[trials / 2]);
        stats.max = maxv;
        stats.exceed_count = exceed;
    }

    // Least-squares slope of log2(mean divergence) against n.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double count = static_cast<double>(result.per_n.size());
    for (const auto& stats : result.per_n) {
        const double x = stats.n;
        const double y = std::log2(std::max(stats.mean, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = count * sxx - sx * sx;
    result.slope_log2_mean = denom != 0.0 ? (count * sxy - sx * sy) / denom : 0.0;
    return result;
}

}  // namespace secrecylab
