#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "secrecylab/errors.hpp"

namespace secrecylab {

// |A|^n if it fits in a uint64, nullopt otherwise.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp);

// Finite ordered symbol set. Symbols are unique strings; "?" is the
// conventional erasure symbol and is an ordinary member of the alphabet,
// so erasure channels need no sentinel handling anywhere else.
class Alphabet {
public:
    Alphabet() : Alphabet(std::vector<std::string>{"0"}) {}  // placeholder singleton
    explicit Alphabet(std::vector<std::string> symbols);

    static Alphabet binary();                                   // {"0","1"}
    static Alphabet indexed(std::size_t count);                 // {"0",...,"k-1"}
    Alphabet with_erasure() const;                              // symbols + "?"

    std::size_t size() const { return symbols_->size(); }
    const std::string& symbol(std::size_t i) const { return (*symbols_)[i]; }
    const std::vector<std::string>& symbols() const { return *symbols_; }
    std::optional<std::size_t> index_of(std::string_view s) const;

    bool has_erasure() const { return erasure_.has_value(); }
    std::size_t erasure_index() const;

    bool operator==(const Alphabet& other) const;
    bool operator!=(const Alphabet& other) const { return !(*this == other); }

private:
    std::shared_ptr<const std::vector<std::string>> symbols_;
    std::optional<std::size_t> erasure_;
};

// Alphabet of (row, col) pairs in row-major order, used for typicality tests
// on paired sequences.
Alphabet pair_alphabet(const Alphabet& row, const Alphabet& col);

// Probability vector over an alphabet. Entries must be non-negative. A sum
// within 1e-12 of 1 is accepted as-is; anything farther off is renormalized
// and the instance is flagged, since hand-entered matrices commonly carry
// rounding.
class Pmf {
public:
    Pmf() : Pmf(Alphabet(), {1.0}) {}  // placeholder point mass
    Pmf(Alphabet alphabet, std::vector<double> probs);

    static Pmf uniform(const Alphabet& alphabet);
    // Mass p_one on symbol "1" of the binary alphabet.
    static Pmf bernoulli(double p_one);

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t size() const { return probs_.size(); }
    double operator()(std::size_t i) const { return probs_[i]; }
    std::span<const double> probs() const { return probs_; }

    std::vector<std::size_t> support() const;
    // min_{p(i)>0} p(i); the paper's mu_V.
    double min_support_prob() const;
    bool was_renormalized() const { return renormalized_; }

private:
    Alphabet alphabet_;
    std::vector<double> probs_;
    bool renormalized_ = false;
};

// Normalizes non-negative weights into a Pmf. Rejects negative entries and
// all-zero vectors, naming the offending index.
Pmf make_pmf(const Alphabet& alphabet, const std::vector<double>& weights);

// Stochastic matrix: one output Pmf per input symbol.
class Channel {
public:
    Channel(Alphabet input, Alphabet output, const std::vector<std::vector<double>>& rows);

    static Channel identity(const Alphabet& alphabet);
    static Channel bsc(double crossover);

    const Alphabet& input_alphabet() const { return input_; }
    const Alphabet& output_alphabet() const { return output_; }
    double prob(std::size_t input, std::size_t output) const {
        return rows_[input * output_.size() + output];
    }
    std::span<const double> row(std::size_t input) const;
    Pmf row_pmf(std::size_t input) const;

private:
    Alphabet input_;
    Alphabet output_;
    std::vector<double> rows_;  // row-major |input| x |output|
};

// first, then second: P(z|x) = sum_y first(y|x) second(z|y).
Channel compose(const Channel& first, const Channel& second);

// Joint distribution over a pair of alphabets, row-major table summing to 1.
class JointPmf {
public:
    JointPmf() : JointPmf(Alphabet(), Alphabet(), {{1.0}}) {}  // placeholder
    JointPmf(Alphabet row_alphabet, Alphabet col_alphabet,
             const std::vector<std::vector<double>>& table);

    static JointPmf from_input_and_channel(const Pmf& input, const Channel& channel);

    const Alphabet& row_alphabet() const { return row_; }
    const Alphabet& col_alphabet() const { return col_; }
    double operator()(std::size_t r, std::size_t c) const {
        return table_[r * col_.size() + c];
    }
    std::span<const double> table() const { return table_; }

    Pmf row_marginal() const;
    Pmf col_marginal() const;
    // Conditional of the column variable given row r; defined only on rows
    // with positive marginal mass.
    Pmf conditional_given_row(std::size_t r) const;
    // Conditional channel row -> col; every row marginal must be positive.
    Channel conditional_channel() const;
    // The joint as a Pmf over the pair alphabet (for typicality tests).
    Pmf flattened() const;

private:
    Alphabet row_;
    Alphabet col_;
    std::vector<double> table_;
};

// Length-n symbol sequence, bijectively identified with an integer in
// [0, |A|^n) in lexicographic order (first letter most significant).
class SequenceIndex {
public:
    SequenceIndex(Alphabet alphabet, std::vector<std::size_t> letters);

    static SequenceIndex from_code(const Alphabet& alphabet, unsigned n, std::uint64_t code);
    std::uint64_t code() const;

    const Alphabet& alphabet() const { return alphabet_; }
    unsigned length() const { return static_cast<unsigned>(letters_.size()); }
    std::size_t letter(std::size_t t) const { return letters_[t]; }
    std::span<const std::size_t> letters() const { return letters_; }

private:
    Alphabet alphabet_;
    std::vector<std::size_t> letters_;
};

// prod_t p(seq_t). Switches to log-space accumulation when the worst case
// n*log(min support prob) could underflow (below about -700 nats).
double product_probability(const Pmf& p, const SequenceIndex& seq);

// Empirical PMF nu_x(a) = N(a|x)/n.
Pmf empirical_pmf(const SequenceIndex& seq);

// Letter typicality: |nu_x(a) - p(a)| <= eps*p(a) for all a. Forces zero
// count on every zero-probability symbol.
bool is_letter_typical(const SequenceIndex& seq, const Pmf& p, double eps);

// Letter typicality of the paired sequence over the product alphabet under
// the joint PMF.
bool joint_typicality_test(const SequenceIndex& useq, const SequenceIndex& vseq,
                           const JointPmf& joint, double eps);

// output(v) = sum_u input(u) ch(v|u).
Pmf channel_output_pmf(const Channel& ch, const Pmf& input);

}  // namespace secrecylab
