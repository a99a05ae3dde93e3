#pragma once

#include <cstdint>
#include <vector>

#include "secrecylab/probability.hpp"
#include "secrecylab/rng.hpp"

namespace secrecylab::testing {

// Random PMF with every entry at least `floor` (before normalization the
// draws are uniform on [floor, 1]). floor > 0 keeps logs well away from
// the boundary in property tests.
inline Pmf random_pmf(CounterRng& rng, const Alphabet& alphabet, double floor = 0.0) {
    std::vector<double> w(alphabet.size());
    for (auto& v : w) v = floor + (1.0 - floor) * rng.next_double();
    return make_pmf(alphabet, w);
}

inline Channel random_channel(CounterRng& rng, const Alphabet& in, const Alphabet& out,
                              double floor = 0.0) {
    std::vector<std::vector<double>> rows(in.size());
    for (auto& row : rows) {
        row.resize(out.size());
        double sum = 0.0;
        for (auto& v : row) {
            v = floor + (1.0 - floor) * rng.next_double();
            sum += v;
        }
        for (auto& v : row) v /= sum;
    }
    return Channel(in, out, rows);
}

inline JointPmf random_joint(CounterRng& rng, const Alphabet& row, const Alphabet& col,
                             double floor = 0.0) {
    std::vector<std::vector<double>> table(row.size());
    double sum = 0.0;
    for (auto& r : table) {
        r.resize(col.size());
        for (auto& v : r) {
            v = floor + (1.0 - floor) * rng.next_double();
            sum += v;
        }
    }
    for (auto& r : table)
        for (auto& v : r) v /= sum;
    return JointPmf(row, col, table);
}

// Exact-rational typicality oracle for eps = 0: the empirical PMF of integer
// counts equals weights/sum(weights) iff counts[i]*sum == weights[i]*n for
// every letter. Pure integer arithmetic, no rounding.
inline bool exact_typical_eps0(const std::vector<std::uint64_t>& counts,
                               const std::vector<std::uint64_t>& weights,
                               std::uint64_t n) {
    std::uint64_t wsum = 0;
    for (std::uint64_t w : weights) wsum += w;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i] * wsum != weights[i] * n) return false;
    return true;
}

}  // namespace secrecylab::testing
