#include "secrecylab/probability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace secrecylab {

namespace {

constexpr double kSumTolerance = 1e-12;

std::string fmt_index(std::size_t i) { return "index " + std::to_string(i); }

}  // namespace

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t result = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base)
            return std::nullopt;
        result *= base;
    }
    return result;
}

Alphabet::Alphabet(std::vector<std::string> symbols) {
    if (symbols.empty()) throw ValidationError("alphabet must have at least one symbol");
    std::unordered_set<std::string_view> seen;
    for (const auto& s : symbols) {
        if (!seen.insert(s).second)
            throw ValidationError("alphabet symbols must be unique; duplicate \"" + s + "\"");
    }
    symbols_ = std::make_shared<const std::vector<std::string>>(std::move(symbols));
    for (std::size_t i = 0; i < symbols_->size(); ++i)
        if ((*symbols_)[i] == "?") erasure_ = i;
}

Alphabet Alphabet::binary() { return Alphabet({"0", "1"}); }

Alphabet Alphabet::indexed(std::size_t count) {
    std::vector<std::string> symbols;
    symbols.reserve(count);
    for (std::size_t i = 0; i < count; ++i) symbols.push_back(std::to_string(i));
    return Alphabet(std::move(symbols));
}

Alphabet Alphabet::with_erasure() const {
    if (has_erasure())
        throw ValidationError("alphabet already contains the erasure symbol \"?\"");
    std::vector<std::string> symbols = *symbols_;
    symbols.push_back("?");
    return Alphabet(std::move(symbols));
}

std::optional<std::size_t> Alphabet::index_of(std::string_view s) const {
    for (std::size_t i = 0; i < symbols_->size(); ++i)
        if ((*symbols_)[i] == s) return i;
    return std::nullopt;
}

std::size_t Alphabet::erasure_index() const {
    if (!erasure_) throw ValidationError("alphabet has no erasure symbol \"?\"");
    return *erasure_;
}

bool Alphabet::operator==(const Alphabet& other) const {
    return symbols_ == other.symbols_ || *symbols_ == *other.symbols_;
}

Alphabet pair_alphabet(const Alphabet& row, const Alphabet& col) {
    std::vector<std::string> symbols;
    symbols.reserve(row.size() * col.size());
    for (std::size_t r = 0; r < row.size(); ++r)
        for (std::size_t c = 0; c < col.size(); ++c)
            symbols.push_back("(" + row.symbol(r) + "," + col.symbol(c) + ")");
    return Alphabet(std::move(symbols));
}

Pmf::Pmf(Alphabet alphabet, std::vector<double> probs)
    : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {
    if (probs_.size() != alphabet_.size())
        throw ValidationError("pmf length " + std::to_string(probs_.size()) +
                              " does not match alphabet size " +
                              std::to_string(alphabet_.size()));
    double sum = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (!(probs_[i] >= 0.0))
            throw ValidationError("pmf entry at " + fmt_index(i) + " is negative or NaN");
        sum += probs_[i];
    }
    if (sum <= 0.0) throw ValidationError("pmf has zero total mass");
    if (std::abs(sum - 1.0) > kSumTolerance) {
        for (auto& p : probs_) p /= sum;
        renormalized_ = true;
    }
}

Pmf Pmf::uniform(const Alphabet& alphabet) {
    return Pmf(alphabet, std::vector<double>(alphabet.size(), 1.0 / alphabet.size()));
}

Pmf Pmf::bernoulli(double p_one) {
    if (!(p_one >= 0.0 && p_one <= 1.0))
        throw ValidationError("bernoulli parameter must lie in [0,1]");
    return Pmf(Alphabet::binary(), {1.0 - p_one, p_one});
}

std::vector<std::size_t> Pmf::support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < probs_.size(); ++i)
        if (probs_[i] > 0.0) out.push_back(i);
    return out;
}

double Pmf::min_support_prob() const {
    double m = std::numeric_limits<double>::infinity();
    for (double p : probs_)
        if (p > 0.0) m = std::min(m, p);
    return m;
}

Pmf make_pmf(const Alphabet& alphabet, const std::vector<double>& weights) {
    if (weights.size() != alphabet.size())
        throw ValidationError("weight vector length " + std::to_string(weights.size()) +
                              " does not match alphabet size " +
                              std::to_string(alphabet.size()));
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] >= 0.0))
            throw ValidationError("negative weight at " + fmt_index(i));
        sum += weights[i];
    }
    if (sum <= 0.0) throw ValidationError("all weights are zero; no index carries mass");
    std::vector<double> probs(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) probs[i] = weights[i] / sum;
    return Pmf(alphabet, std::move(probs));
}

Channel::Channel(Alphabet input, Alphabet output,
                 const std::vector<std::vector<double>>& rows)
    : input_(std::move(input)), output_(std::move(output)) {
    if (rows.size() != input_.size())
        throw ValidationError("channel row count " + std::to_string(rows.size()) +
                              " does not match input alphabet size " +
                              std::to_string(input_.size()));
    rows_.reserve(input_.size() * output_.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        Pmf row(output_, rows[r]);  // validates each row
        rows_.insert(rows_.end(), row.probs().begin(), row.probs().end());
    }
}

Channel Channel::identity(const Alphabet& alphabet) {
    std::vector<std::vector<double>> rows(alphabet.size(),
                                          std::vector<double>(alphabet.size(), 0.0));
    for (std::size_t i = 0; i < alphabet.size(); ++i) rows[i][i] = 1.0;
    return Channel(alphabet, alphabet, rows);
}

Channel Channel::bsc(double crossover) {
    if (!(crossover >= 0.0 && crossover <= 1.0))
        throw ValidationError("BSC crossover must lie in [0,1]");
    const Alphabet b = Alphabet::binary();
    return Channel(b, b, {{1.0 - crossover, crossover}, {crossover, 1.0 - crossover}});
}

std::span<const double> Channel::row(std::size_t input) const {
    return std::span<const double>(rows_.data() + input * output_.size(), output_.size());
}

Pmf Channel::row_pmf(std::size_t input) const {
    auto r = row(input);
    return Pmf(output_, std::vector<double>(r.begin(), r.end()));
}

Channel compose(const Channel& first, const Channel& second) {
    if (first.output_alphabet() != second.input_alphabet())
        throw ValidationError("channel composition: inner alphabets do not match");
    std::vector<std::vector<double>> rows(
        first.input_alphabet().size(),
        std::vector<double>(second.output_alphabet().size(), 0.0));
    for (std::size_t x = 0; x < first.input_alphabet().size(); ++x)
        for (std::size_t y = 0; y < first.output_alphabet().size(); ++y) {
            const double p = first.prob(x, y);
            if (p == 0.0) continue;
            for (std::size_t z = 0; z < second.output_alphabet().size(); ++z)
                rows[x][z] += p * second.prob(y, z);
        }
    return Channel(first.input_alphabet(), second.output_alphabet(), rows);
}

JointPmf::JointPmf(Alphabet row_alphabet, Alphabet col_alphabet,
                   const std::vector<std::vector<double>>& table)
    : row_(std::move(row_alphabet)), col_(std::move(col_alphabet)) {
    if (table.size() != row_.size())
        throw ValidationError("joint table row count does not match row alphabet size");
    table_.reserve(row_.size() * col_.size());
    double sum = 0.0;
    for (std::size_t r = 0; r < table.size(); ++r) {
        if (table[r].size() != col_.size())
            throw ValidationError("joint table row " + std::to_string(r) +
                                  " does not match column alphabet size");
        for (double v : table[r]) {
            if (!(v >= 0.0))
                throw ValidationError("joint table entry is negative or NaN");
            table_.push_back(v);
            sum += v;
        }
    }
    if (sum <= 0.0) throw ValidationError("joint table has zero total mass");
    if (std::abs(sum - 1.0) > kSumTolerance)
        for (auto& v : table_) v /= sum;
}

JointPmf JointPmf::from_input_and_channel(const Pmf& input, const Channel& channel) {
    if (input.alphabet() != channel.input_alphabet())
        throw ValidationError("input pmf alphabet does not match channel input alphabet");
    std::vector<std::vector<double>> table(input.size());
    for (std::size_t u = 0; u < input.size(); ++u) {
        table[u].resize(channel.output_alphabet().size());
        for (std::size_t v = 0; v < channel.output_alphabet().size(); ++v)
            table[u][v] = input(u) * channel.prob(u, v);
    }
    return JointPmf(input.alphabet(), channel.output_alphabet(), table);
}

Pmf JointPmf::row_marginal() const {
    std::vector<double> m(row_.size(), 0.0);
    for (std::size_t r = 0; r < row_.size(); ++r)
        for (std::size_t c = 0; c < col_.size(); ++c) m[r] += (*this)(r, c);
    return Pmf(row_, std::move(m));
}

Pmf JointPmf::col_marginal() const {
    std::vector<double> m(col_.size(), 0.0);
    for (std::size_t r = 0; r < row_.size(); ++r)
        for (std::size_t c = 0; c < col_.size(); ++c) m[c] += (*this)(r, c);
    return Pmf(col_, std::move(m));
}

Pmf JointPmf::conditional_given_row(std::size_t r) const {
    double mass = 0.0;
    for (std::size_t c = 0; c < col_.size(); ++c) mass += (*this)(r, c);
    if (mass <= 0.0)
        throw ValidationError("conditional undefined: row " + std::to_string(r) +
                              " has zero marginal mass");
    std::vector<double> probs(col_.size());
    for (std::size_t c = 0; c < col_.size(); ++c) probs[c] = (*this)(r, c) / mass;
    return Pmf(col_, std::move(probs));
}

Channel JointPmf::conditional_channel() const {
    std::vector<std::vector<double>> rows;
    rows.reserve(row_.size());
    for (std::size_t r = 0; r < row_.size(); ++r) {
        Pmf cond = conditional_given_row(r);
        rows.emplace_back(cond.probs().begin(), cond.probs().end());
    }
    return Channel(row_, col_, rows);
}

Pmf JointPmf::flattened() const {
    return Pmf(pair_alphabet(row_, col_),
               std::vector<double>(table_.begin(), table_.end()));
}

SequenceIndex::SequenceIndex(Alphabet alphabet, std::vector<std::size_t> letters)
    : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
    if (letters_.empty())
        throw ValidationError("sequence must have length at least 1");
    for (std::size_t v : letters_)
        if (v >= alphabet_.size())
            throw ValidationError("sequence letter out of alphabet range");
}

SequenceIndex SequenceIndex::from_code(const Alphabet& alphabet, unsigned n,
                                       std::uint64_t code) {
    const auto total = checked_pow(alphabet.size(), n);
    if (!total) throw ValidationError("|alphabet|^n overflows the sequence code range");
    if (code >= *total) throw ValidationError("sequence code out of range");
    std::vector<std::size_t> letters(n);
    const std::uint64_t base = alphabet.size();
    for (unsigned t = n; t-- > 0;) {
        letters[t] = static_cast<std::size_t>(code % base);
        code /= base;
    }
    return SequenceIndex(alphabet, std::move(letters));
}

std::uint64_t SequenceIndex::code() const {
    const auto total = checked_pow(alphabet_.size(), length());
    if (!total) throw ValidationError("|alphabet|^n overflows the sequence code range");
    std::uint64_t code = 0;
    for (std::size_t v : letters_) code = code * alphabet_.size() + v;
    return code;
}

double product_probability(const Pmf& p, const SequenceIndex& seq) {
    if (p.alphabet() != seq.alphabet())
        throw ValidationError("product_probability: pmf and sequence alphabets differ");
    const double min_pos = p.min_support_prob();
    const unsigned n = seq.length();
    const bool log_space = n * std::log(min_pos) < -700.0;
    if (!log_space) {
        double prod = 1.0;
        for (std::size_t v : seq.letters()) prod *= p(v);
        return prod;
    }
    double log_sum = 0.0;
    for (std::size_t v : seq.letters()) {
        if (p(v) == 0.0) return 0.0;
        log_sum += std::log(p(v));
    }
    return std::exp(log_sum);
}

Pmf empirical_pmf(const SequenceIndex& seq) {
    std::vector<double> counts(seq.alphabet().size(), 0.0);
    for (std::size_t v : seq.letters()) counts[v] += 1.0;
    for (auto& c : counts) c /= seq.length();
    return Pmf(seq.alphabet(), std::move(counts));
}

bool is_letter_typical(const SequenceIndex& seq, const Pmf& p, double eps) {
    if (!(eps >= 0.0)) throw ValidationError("typicality eps must be non-negative");
    if (p.alphabet() != seq.alphabet())
        throw ValidationError("is_letter_typical: pmf and sequence alphabets differ");
    std::vector<double> counts(p.size(), 0.0);
    for (std::size_t v : seq.letters()) counts[v] += 1.0;
    const double n = seq.length();
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (std::abs(counts[a] / n - p(a)) > eps * p(a)) return false;
    }
    return true;
}

bool joint_typicality_test(const SequenceIndex& useq, const SequenceIndex& vseq,
                           const JointPmf& joint, double eps) {
    if (useq.length() != vseq.length())
        throw ValidationError("joint_typicality_test: sequence lengths differ");
    if (useq.alphabet() != joint.row_alphabet() || vseq.alphabet() != joint.col_alphabet())
        throw ValidationError("joint_typicality_test: alphabets do not match the joint");
    const std::size_t cols = joint.col_alphabet().size();
    std::vector<std::size_t> letters(useq.length());
    for (std::size_t t = 0; t < letters.size(); ++t)
        letters[t] = useq.letter(t) * cols + vseq.letter(t);
    SequenceIndex paired(pair_alphabet(joint.row_alphabet(), joint.col_alphabet()),
                         std::move(letters));
    return is_letter_typical(paired, joint.flattened(), eps);
}

Pmf channel_output_pmf(const Channel& ch, const Pmf& input) {
    if (input.alphabet() != ch.input_alphabet())
        throw ValidationError("channel_output_pmf: input alphabet mismatch");
    std::vector<double> out(ch.output_alphabet().size(), 0.0);
    for (std::size_t u = 0; u < input.size(); ++u) {
        if (input(u) == 0.0) continue;
        for (std::size_t v = 0; v < out.size(); ++v) out[v] += input(u) * ch.prob(u, v);
    }
    return Pmf(ch.output_alphabet(), std::move(out));
}

}  // namespace secrecylab
