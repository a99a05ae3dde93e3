#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "secrecylab/info_measures.hpp"
#include "secrecylab/probability.hpp"

namespace secrecylab {

struct BaResult {
    Bits capacity = 0.0;
    Pmf input;
    unsigned iterations = 0;
    double bracket = 0.0;  // final upper-lower gap of the alternating maximization
};

// Alternating-maximization channel capacity. Stops when the classical
// upper/lower capacity bounds are within tol; throws ConvergenceError
// (carrying the bracket) past max_iterations.
BaResult ba_capacity(const Channel& ch, double tol = 1e-9, unsigned max_iterations = 100000);

struct BaRowsResult {
    Bits capacity = 0.0;
    std::vector<double> input;
    unsigned iterations = 0;
    double bracket = 0.0;
};

// Same iteration on a raw stochastic matrix; used where the output space is
// a sequence space too large for an Alphabet (the SS metric's max over P_M).
BaRowsResult ba_capacity_rows(const std::vector<std::vector<double>>& rows,
                              double tol = 1e-9, unsigned max_iterations = 100000);

// Output alphabet X + "?"; row x puts beta on x and 1-beta on "?".
Channel erasure_channel(double beta, const Alphabet& x_alphabet);

struct ErasureReductionReport {
    Bits lhs = 0.0;  // I(U;Z) through the erasure channel
    Bits rhs = 0.0;  // beta * I(U;X)
    double abs_diff = 0.0;
};

// Exact check of the identity I(U;Z) = beta I(U;X) for Z = E^(beta)(X).
ErasureReductionReport erasure_reduction_check(const JointPmf& joint_ux, double beta);

// J_{U,Y}(u,y) = sum_x J_{U,X}(u,x) ch(y|x).
JointPmf joint_through_channel(const JointPmf& joint_ux, const Channel& ch);

// f(Q_U, Q_{X|U}) = sum_j weights[j] * I(U; ch_j(X)), the secrecy objectives
// in one shape: wtc2 is [(main,+1),(identity,-alpha)], wtc1 is
// [(main,+1),(eave,-1)]. Values and analytic gradients are defined on the
// free extension (parameters need not sum to 1), which is what the
// finite-difference validation probes.
class SecrecyObjective {
public:
    SecrecyObjective(std::vector<Channel> channels, std::vector<double> weights,
                     unsigned u_card);

    unsigned u_card() const { return u_card_; }
    std::size_t x_card() const { return x_card_; }
    // Layout: [Q_U (u_card), row of Q_{X|U=0} (x_card), row of Q_{X|U=1}, ...].
    std::size_t param_count() const { return u_card_ + u_card_ * x_card_; }

    double value(std::span<const double> params) const;
    std::vector<double> gradient(std::span<const double> params) const;

    JointPmf to_joint(std::span<const double> params) const;

private:
    std::vector<Channel> channels_;
    std::vector<double> weights_;
    unsigned u_card_;
    std::size_t x_card_;
};

struct OptimizerOptions {
    unsigned restarts = 64;
    unsigned max_iterations = 10000;
    double gradient_tol = 1e-9;
    std::uint64_t seed = 0x5ecc1ab5ULL;
    unsigned threads = 1;
    bool use_grid_oracle = true;               // dense grid guard at small alphabets
    std::optional<std::vector<double>> warm_start;  // extra start (curve chaining)
};

struct RestartTrace {
    unsigned restart = 0;
    double value = 0.0;
    unsigned iterations = 0;
};

struct CapacityResult {
    Bits value = 0.0;
    JointPmf maximizer;
    unsigned u_cardinality = 0;
    bool flagged = false;  // ascent stagnated more than 1e-4 below the grid oracle
    std::string flag_reason;
    std::vector<RestartTrace> trace;
    std::optional<double> grid_value;  // polished dense-grid value when computed
};

// max I(U;Y) - alpha I(U;X) over Q_{U,X} with U-X-Y. alpha in [0,1];
// the endpoints short-circuit to exact anchors.
CapacityResult wtc2_ss_capacity(const Channel& main, double alpha, unsigned u_card,
                                const OptimizerOptions& options = {});

// max I(U;Y) - I(U;Z) over Q_{U,X} with U-X-(Y,Z).
CapacityResult wtc1_ss_capacity(const Channel& main, const Channel& eave, unsigned u_card,
                                const OptimizerOptions& options = {});

struct CurveResult {
    std::vector<double> alphas;
    std::vector<Bits> values;
    std::vector<bool> point_flags;
    bool non_increasing = false;
    bool convex = false;          // second differences >= -1e-6
    bool bounded = false;         // values <= log2|Y|
    double min_second_difference = 0.0;
};

CurveResult capacity_curve(const Channel& main, const std::vector<double>& alpha_grid,
                           unsigned u_card, const OptimizerOptions& options = {});

// Euclidean projection onto the probability simplex (exposed for tests).
void project_to_simplex(std::span<double> v);

}  // namespace secrecylab
