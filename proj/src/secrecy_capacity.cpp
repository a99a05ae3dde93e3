#include "secrecylab/secrecy_capacity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "secrecylab/parallel.hpp"
#include "secrecylab/rng.hpp"

namespace secrecylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLog2e = 1.0 / std::log(2.0);
constexpr double kTieTol = 1e-12;

double safe_log(double x) { return std::log(std::max(x, 1e-300)); }

}  // namespace

BaRowsResult ba_capacity_rows(const std::vector<std::vector<double>>& rows, double tol,
                              unsigned max_iterations) {
    if (rows.empty()) throw ValidationError("ba_capacity_rows: no rows");
    const std::size_t nx = rows.size();
    const std::size_t ny = rows[0].size();
    for (const auto& row : rows)
        if (row.size() != ny) throw ValidationError("ba_capacity_rows: ragged matrix");
    std::vector<double> p(nx, 1.0 / nx);
    std::vector<double> q(ny, 0.0);
    std::vector<double> d(nx, 0.0);

    double bracket = kInf;
    for (unsigned iter = 1; iter <= max_iterations; ++iter) {
        std::fill(q.begin(), q.end(), 0.0);
        for (std::size_t x = 0; x < nx; ++x)
            for (std::size_t y = 0; y < ny; ++y) q[y] += p[x] * rows[x][y];

        double upper = -kInf;
        for (std::size_t x = 0; x < nx; ++x) {
            double dx = 0.0;
            for (std::size_t y = 0; y < ny; ++y) {
                const double w = rows[x][y];
                if (w > 0.0) dx += w * (std::log(w) - std::log(q[y])) * kLog2e;
            }
            d[x] = dx;
            upper = std::max(upper, dx);
        }
        // lower bound: log2 of sum_x p(x) 2^{d(x)}, stabilized by the max.
        double s = 0.0;
        for (std::size_t x = 0; x < nx; ++x)
            s += p[x] * std::exp2(d[x] - upper);
        const double lower = upper + std::log2(s);
        bracket = upper - lower;

        double norm = 0.0;
        for (std::size_t x = 0; x < nx; ++x) {
            p[x] *= std::exp2(d[x] - upper);
            norm += p[x];
        }
        for (auto& v : p) v /= norm;

        if (bracket <= tol) return BaRowsResult{lower, std::move(p), iter, bracket};
    }
    throw ConvergenceError("alternating maximization did not reach tolerance; bracket = " +
                               std::to_string(bracket),
                           bracket);
}

BaResult ba_capacity(const Channel& ch, double tol, unsigned max_iterations) {
    const std::size_t nx = ch.input_alphabet().size();
    std::vector<std::vector<double>> rows(nx);
    for (std::size_t x = 0; x < nx; ++x) {
        const auto r = ch.row(x);
        rows[x].assign(r.begin(), r.end());
    }
    BaRowsResult raw = ba_capacity_rows(rows, tol, max_iterations);
    return BaResult{raw.capacity, Pmf(ch.input_alphabet(), std::move(raw.input)),
                    raw.iterations, raw.bracket};
}

Channel erasure_channel(double beta, const Alphabet& x_alphabet) {
    if (!(beta >= 0.0 && beta <= 1.0))
        throw ValidationError("erasure channel beta must lie in [0,1]");
    const Alphabet out = x_alphabet.with_erasure();
    std::vector<std::vector<double>> rows(x_alphabet.size(),
                                          std::vector<double>(out.size(), 0.0));
    for (std::size_t x = 0; x < x_alphabet.size(); ++x) {
        rows[x][x] = beta;
        rows[x][out.erasure_index()] = 1.0 - beta;
    }
    return Channel(x_alphabet, out, rows);
}

ErasureReductionReport erasure_reduction_check(const JointPmf& joint_ux, double beta) {
    const Channel erasure = erasure_channel(beta, joint_ux.col_alphabet());
    const JointPmf joint_uz = joint_through_channel(joint_ux, erasure);
    ErasureReductionReport report;
    report.lhs = mutual_information(joint_uz);
    report.rhs = beta * mutual_information(joint_ux);
    report.abs_diff = std::abs(report.lhs - report.rhs);
    return report;
}

JointPmf joint_through_channel(const JointPmf& joint_ux, const Channel& ch) {
    if (joint_ux.col_alphabet() != ch.input_alphabet())
        throw ValidationError("joint_through_channel: column alphabet mismatch");
    const std::size_t nu = joint_ux.row_alphabet().size();
    const std::size_t nx = joint_ux.col_alphabet().size();
    const std::size_t ny = ch.output_alphabet().size();
    std::vector<std::vector<double>> table(nu, std::vector<double>(ny, 0.0));
    for (std::size_t u = 0; u < nu; ++u)
        for (std::size_t x = 0; x < nx; ++x) {
            const double j = joint_ux(u, x);
            if (j == 0.0) continue;
            for (std::size_t y = 0; y < ny; ++y) table[u][y] += j * ch.prob(x, y);
        }
    return JointPmf(joint_ux.row_alphabet(), ch.output_alphabet(), table);
}

SecrecyObjective::SecrecyObjective(std::vector<Channel> channels,
                                   std::vector<double> weights, unsigned u_card)
    : channels_(std::move(channels)), weights_(std::move(weights)), u_card_(u_card) {
    if (channels_.empty() || channels_.size() != weights_.size())
        throw ValidationError("objective needs matching channel and weight lists");
    if (u_card_ < 1) throw ValidationError("u cardinality must be at least 1");
    x_card_ = channels_[0].input_alphabet().size();
    for (const auto& ch : channels_)
        if (ch.input_alphabet() != channels_[0].input_alphabet())
            throw ValidationError("objective channels must share the input alphabet");
}

double SecrecyObjective::value(std::span<const double> params) const {
    const double* a = params.data();
    const double* q = params.data() + u_card_;
    double total = 0.0;
    std::vector<double> t, qy;
    for (std::size_t j = 0; j < channels_.size(); ++j) {
        const Channel& ch = channels_[j];
        const std::size_t ny = ch.output_alphabet().size();
        t.assign(u_card_ * ny, 0.0);
        qy.assign(ny, 0.0);
        for (unsigned u = 0; u < u_card_; ++u)
            for (std::size_t x = 0; x < x_card_; ++x) {
                const double w = q[u * x_card_ + x];
                if (w == 0.0) continue;
                for (std::size_t y = 0; y < ny; ++y)
                    t[u * ny + y] += w * ch.prob(x, y);
            }
        for (unsigned u = 0; u < u_card_; ++u)
            for (std::size_t y = 0; y < ny; ++y) qy[y] += a[u] * t[u * ny + y];
        double mi = 0.0;
        for (unsigned u = 0; u < u_card_; ++u) {
            if (a[u] == 0.0) continue;
            for (std::size_t y = 0; y < ny; ++y) {
                const double tv = t[u * ny + y];
                if (tv > 0.0) mi += a[u] * tv * (std::log(tv) - std::log(qy[y]));
            }
        }
        total += weights_[j] * mi * kLog2e;
    }
    return total;
}

std::vector<double> SecrecyObjective::gradient(std::span<const double> params) const {
    const double* a = params.data();
    const double* q = params.data() + u_card_;
    std::vector<double> grad(param_count(), 0.0);
    std::vector<double> t, qy;
    for (std::size_t j = 0; j < channels_.size(); ++j) {
        const Channel& ch = channels_[j];
        const std::size_t ny = ch.output_alphabet().size();
        t.assign(u_card_ * ny, 0.0);
        qy.assign(ny, 0.0);
        for (unsigned u = 0; u < u_card_; ++u)
            for (std::size_t x = 0; x < x_card_; ++x) {
                const double w = q[u * x_card_ + x];
                if (w == 0.0) continue;
                for (std::size_t y = 0; y < ny; ++y)
                    t[u * ny + y] += w * ch.prob(x, y);
            }
        for (unsigned u = 0; u < u_card_; ++u)
            for (std::size_t y = 0; y < ny; ++y) qy[y] += a[u] * t[u * ny + y];

        const double wj = weights_[j];
        for (unsigned u = 0; u < u_card_; ++u) {
            // d/d a_u: sum_y T(y|u) log2(T/QY) - log2(e) * sum_y T(y|u)
            double term = 0.0;
            double mass = 0.0;
            for (std::size_t y = 0; y < ny; ++y) {
                const double tv = t[u * ny + y];
                if (tv <= 0.0) continue;
                term += tv * (safe_log(tv) - safe_log(qy[y]));
                mass += tv;
            }
            grad[u] += wj * (term - mass) * kLog2e;
            // d/d q(x|u): a_u sum_y W(y|x) log2(T(y|u)/QY(y))
            for (std::size_t x = 0; x < x_card_; ++x) {
                double gx = 0.0;
                for (std::size_t y = 0; y < ny; ++y) {
                    const double w = ch.prob(x, y);
                    if (w == 0.0) continue;
                    gx += w * (safe_log(t[u * ny + y]) - safe_log(qy[y]));
                }
                grad[u_card_ + u * x_card_ + x] += wj * a[u] * gx * kLog2e;
            }
        }
    }
    return grad;
}

JointPmf SecrecyObjective::to_joint(std::span<const double> params) const {
    std::vector<std::vector<double>> table(u_card_, std::vector<double>(x_card_, 0.0));
    for (unsigned u = 0; u < u_card_; ++u)
        for (std::size_t x = 0; x < x_card_; ++x)
            table[u][x] = params[u] * params[u_card_ + u * x_card_ + x];
    return JointPmf(Alphabet::indexed(u_card_), channels_[0].input_alphabet(), table);
}

void project_to_simplex(std::span<double> v) {
    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cum = 0.0;
    double tau = 0.0;
    std::size_t rho = 0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        cum += sorted[j];
        const double candidate = (cum - 1.0) / static_cast<double>(j + 1);
        if (sorted[j] - candidate > 0.0) {
            rho = j + 1;
            tau = candidate;
        }
    }
    (void)rho;
    for (auto& x : v) x = std::max(x - tau, 0.0);
}

namespace {

void project_params(std::span<double> params, unsigned u_card, std::size_t x_card) {
    project_to_simplex(params.subspan(0, u_card));
    for (unsigned u = 0; u < u_card; ++u)
        project_to_simplex(params.subspan(u_card + u * x_card, x_card));
}

struct AscentOutcome {
    std::vector<double> params;
    double value = -kInf;
    unsigned iterations = 0;
};

// Projected gradient ascent with backtracking line search on the projection
// arc. Convergence is measured by the projected gradient displacement so
// boundary maximizers terminate cleanly.
AscentOutcome projected_ascent(const SecrecyObjective& objective,
                               std::vector<double> start,
                               const OptimizerOptions& options) {
    const unsigned u_card = objective.u_card();
    const std::size_t x_card = objective.x_card();
    project_params(std::span<double>(start), u_card, x_card);
    double f = objective.value(start);
    double step = 0.5;

    AscentOutcome out;
    unsigned iter = 0;
    unsigned stalled = 0;
    std::vector<double> candidate(start.size());
    for (; iter < options.max_iterations; ++iter) {
        const std::vector<double> grad = objective.gradient(start);

        candidate = start;
        for (std::size_t i = 0; i < candidate.size(); ++i) candidate[i] += grad[i];
        project_params(std::span<double>(candidate), u_card, x_card);
        double pg_norm = 0.0;
        for (std::size_t i = 0; i < candidate.size(); ++i) {
            const double d = candidate[i] - start[i];
            pg_norm += d * d;
        }
        pg_norm = std::sqrt(pg_norm);
        if (pg_norm < options.gradient_tol) break;

        step = std::min(step * 2.0, 4.0);
        bool accepted = false;
        while (step > 1e-18) {
            candidate = start;
            for (std::size_t i = 0; i < candidate.size(); ++i)
                candidate[i] += step * grad[i];
            project_params(std::span<double>(candidate), u_card, x_card);
            const double fc = objective.value(candidate);
            double inner = 0.0;
            for (std::size_t i = 0; i < candidate.size(); ++i)
                inner += grad[i] * (candidate[i] - start[i]);
            if (fc >= f + 1e-4 * inner && fc > f - 1e-15) {
                stalled = fc - f < 1e-16 ? stalled + 1 : 0;
                start = candidate;
                f = fc;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted || stalled > 20) break;  // step collapsed or plateaued
    }
    out.params = std::move(start);
    out.value = f;
    out.iterations = iter;
    return out;
}

std::vector<double> random_start(const SecrecyObjective& objective, std::uint64_t seed,
                                 unsigned restart) {
    CounterRng rng = CounterRng::at(seed, restart, 0xd1cEULL);
    std::vector<double> params(objective.param_count());
    const unsigned u_card = objective.u_card();
    const std::size_t x_card = objective.x_card();
    auto fill_simplex = [&](std::span<double> block) {
        double sum = 0.0;
        for (auto& v : block) {
            v = -std::log(std::max(rng.next_double(), 1e-12));  // Exp(1) -> Dirichlet(1)
            sum += v;
        }
        for (auto& v : block) v /= sum;
    };
    fill_simplex(std::span<double>(params.data(), u_card));
    for (unsigned u = 0; u < u_card; ++u)
        fill_simplex(std::span<double>(params.data() + u_card + u * x_card, x_card));
    return params;
}

std::vector<double> structured_start(const SecrecyObjective& objective, unsigned kind,
                                     const Pmf* ba_input) {
    const unsigned u_card = objective.u_card();
    const std::size_t x_card = objective.x_card();
    std::vector<double> params(objective.param_count(), 0.0);
    if (kind == 0 && ba_input) {
        // near-deterministic U=X seeded with the single-channel optimal input
        for (unsigned u = 0; u < u_card; ++u)
            params[u] = std::max((*ba_input)(u % x_card), 1e-3);
    } else if (kind == 1) {
        for (unsigned u = 0; u < u_card; ++u) params[u] = 1.0;
    } else {
        // independent X: zero-objective baseline, exact for the alpha=1 edge
        for (unsigned u = 0; u < u_card; ++u) params[u] = 1.0;
        for (unsigned u = 0; u < u_card; ++u)
            for (std::size_t x = 0; x < x_card; ++x)
                params[u_card + u * x_card + x] = 1.0 / static_cast<double>(x_card);
        double sum = 0.0;
        for (unsigned u = 0; u < u_card; ++u) sum += params[u];
        for (unsigned u = 0; u < u_card; ++u) params[u] /= sum;
        return params;
    }
    double sum = 0.0;
    for (unsigned u = 0; u < u_card; ++u) sum += params[u];
    for (unsigned u = 0; u < u_card; ++u) params[u] /= sum;
    for (unsigned u = 0; u < u_card; ++u) {
        for (std::size_t x = 0; x < x_card; ++x)
            params[u_card + u * x_card + x] = (x == u % x_card) ? 0.94 : 0.06 / (x_card - 1);
        if (x_card == 1) params[u_card + u * x_card] = 1.0;
    }
    return params;
}

// Lattice points of the probability simplex with the given resolution.
void enumerate_simplex(std::size_t dims, unsigned resolution,
                       const std::function<void(std::span<const double>)>& emit) {
    std::vector<double> point(dims, 0.0);
    const std::function<void(std::size_t, unsigned)> rec = [&](std::size_t d,
                                                               unsigned left) {
        if (d + 1 == dims) {
            point[d] = static_cast<double>(left) / resolution;
            emit(point);
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            point[d] = static_cast<double>(k) / resolution;
            rec(d + 1, left - k);
        }
    };
    rec(0, resolution);
}

std::uint64_t simplex_point_count(std::size_t dims, unsigned resolution) {
    // C(resolution + dims - 1, dims - 1)
    std::uint64_t num = 1;
    for (std::size_t i = 1; i < dims; ++i) {
        num = num * (resolution + i) / i;
    }
    return num;
}

struct GridOutcome {
    std::vector<double> params;
    double value = -kInf;
};

GridOutcome grid_search(const SecrecyObjective& objective) {
    const unsigned u_card = objective.u_card();
    const std::size_t x_card = objective.x_card();
    // Choose the finest resolution keeping the total under ~3e6 evaluations.
    unsigned resolution = 64;
    for (; resolution >= 4; resolution /= 2) {
        double total = static_cast<double>(simplex_point_count(u_card, resolution));
        for (unsigned u = 0; u < u_card; ++u)
            total *= static_cast<double>(simplex_point_count(x_card, resolution));
        if (total <= 6e6) break;
    }
    resolution = std::max(resolution, 4u);

    GridOutcome best;
    std::vector<double> params(objective.param_count());
    const std::function<void(unsigned)> rec_rows = [&](unsigned u) {
        if (u == u_card) {
            const double v = objective.value(params);
            if (v > best.value) {
                best.value = v;
                best.params = params;
            }
            return;
        }
        enumerate_simplex(x_card, resolution, [&](std::span<const double> row) {
            std::copy(row.begin(), row.end(), params.begin() + u_card + u * x_card);
            rec_rows(u + 1);
        });
    };
    enumerate_simplex(u_card, resolution, [&](std::span<const double> qu) {
        std::copy(qu.begin(), qu.end(), params.begin());
        rec_rows(0);
    });
    return best;
}

CapacityResult run_optimizer(const SecrecyObjective& objective,
                             const OptimizerOptions& options, const Pmf* ba_input) {
    const unsigned structured = 3;
    const unsigned total = std::max(options.restarts, structured + 1) +
                           (options.warm_start ? 1u : 0u);
    std::vector<AscentOutcome> outcomes(total);
    parallel_for(total, options.threads, [&](std::size_t r) {
        std::vector<double> start;
        if (options.warm_start && r == total - 1) {
            start = *options.warm_start;
        } else if (r < structured) {
            start = structured_start(objective, static_cast<unsigned>(r), ba_input);
        } else {
            start = random_start(objective, options.seed, static_cast<unsigned>(r));
        }
        outcomes[r] = projected_ascent(objective, std::move(start), options);
    });

    // Deterministic reduction: best value, ties by lexicographically smallest
    // parameter vector, then by restart index.
    std::size_t best = 0;
    for (std::size_t r = 1; r < total; ++r) {
        if (outcomes[r].value > outcomes[best].value + kTieTol) {
            best = r;
        } else if (std::abs(outcomes[r].value - outcomes[best].value) <= kTieTol &&
                   outcomes[r].params < outcomes[best].params) {
            best = r;
        }
    }

    CapacityResult result;
    result.u_cardinality = objective.u_card();
    result.trace.reserve(total);
    for (std::size_t r = 0; r < total; ++r)
        result.trace.push_back({static_cast<unsigned>(r), outcomes[r].value,
                                outcomes[r].iterations});

    std::vector<double> best_params = outcomes[best].params;
    double best_value = outcomes[best].value;

    if (options.use_grid_oracle && objective.x_card() <= 3 && objective.u_card() <= 3) {
        GridOutcome grid = grid_search(objective);
        AscentOutcome polished = projected_ascent(objective, grid.params, options);
        result.grid_value = std::max(grid.value, polished.value);
        if (best_value < *result.grid_value - 1e-4) {
            result.flagged = true;
            result.flag_reason = "multi-start ascent stagnated below the grid oracle";
        }
        if (polished.value > best_value) {
            best_value = polished.value;
            best_params = polished.params;
        }
    }

    // Independence always attains 0, so the supremum is never negative.
    if (best_value < 0.0) {
        best_value = 0.0;
        std::vector<double> indep(objective.param_count(), 0.0);
        for (unsigned u = 0; u < objective.u_card(); ++u)
            indep[u] = 1.0 / objective.u_card();
        for (unsigned u = 0; u < objective.u_card(); ++u)
            for (std::size_t x = 0; x < objective.x_card(); ++x)
                indep[objective.u_card() + u * objective.x_card() + x] =
                    1.0 / static_cast<double>(objective.x_card());
        best_params = indep;
    }

    result.value = best_value;
    result.maximizer = objective.to_joint(best_params);
    return result;
}

CapacityResult exact_anchor_result(const Channel& main, unsigned u_card, double value,
                                   const Pmf* ba_input) {
    const std::size_t x_card = main.input_alphabet().size();
    std::vector<std::vector<double>> table(u_card, std::vector<double>(x_card, 0.0));
    if (ba_input && u_card >= x_card) {
        for (std::size_t x = 0; x < x_card; ++x) table[x][x] = (*ba_input)(x);
    } else {
        for (unsigned u = 0; u < u_card; ++u)
            for (std::size_t x = 0; x < x_card; ++x)
                table[u][x] = 1.0 / static_cast<double>(u_card * x_card);
    }
    CapacityResult result;
    result.value = value;
    result.u_cardinality = u_card;
    result.maximizer = JointPmf(Alphabet::indexed(u_card), main.input_alphabet(), table);
    return result;
}

}  // namespace

CapacityResult wtc2_ss_capacity(const Channel& main, double alpha, unsigned u_card,
                                const OptimizerOptions& options) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ValidationError("wtc2 alpha must lie in [0,1]");
    if (u_card < 1) throw ValidationError("u cardinality must be at least 1");
    const std::size_t x_card = main.input_alphabet().size();
    if (alpha == 0.0 && u_card >= x_card) {
        const BaResult ba = ba_capacity(main);
        return exact_anchor_result(main, u_card, ba.capacity, &ba.input);
    }
    if (alpha == 1.0) return exact_anchor_result(main, u_card, 0.0, nullptr);

    SecrecyObjective objective({main, Channel::identity(main.input_alphabet())},
                               {1.0, -alpha}, u_card);
    const BaResult ba = ba_capacity(main);
    return run_optimizer(objective, options, &ba.input);
}

CapacityResult wtc1_ss_capacity(const Channel& main, const Channel& eave, unsigned u_card,
                                const OptimizerOptions& options) {
    if (main.input_alphabet() != eave.input_alphabet())
        throw ValidationError("wtc1 channels must share the input alphabet");
    if (u_card < 1) throw ValidationError("u cardinality must be at least 1");
    SecrecyObjective objective({main, eave}, {1.0, -1.0}, u_card);
    const BaResult ba = ba_capacity(main);
    return run_optimizer(objective, options, &ba.input);
}

CurveResult capacity_curve(const Channel& main, const std::vector<double>& alpha_grid,
                           unsigned u_card, const OptimizerOptions& options) {
    for (double a : alpha_grid)
        if (!(a >= 0.0 && a <= 1.0))
            throw ValidationError("capacity curve grid must lie within [0,1]");
    CurveResult curve;
    curve.alphas = alpha_grid;
    std::sort(curve.alphas.begin(), curve.alphas.end());
    curve.values.reserve(curve.alphas.size());
    curve.point_flags.reserve(curve.alphas.size());

    OptimizerOptions point_options = options;
    std::optional<std::vector<double>> previous;
    for (double alpha : curve.alphas) {
        point_options.warm_start = previous;
        const CapacityResult res = wtc2_ss_capacity(main, alpha, u_card, point_options);
        curve.values.push_back(res.value);
        curve.point_flags.push_back(res.flagged);
        // Chain the maximizer as a warm start for the next grid point.
        std::vector<double> params(u_card + u_card * main.input_alphabet().size(), 0.0);
        const Pmf qu = res.maximizer.row_marginal();
        for (unsigned u = 0; u < u_card; ++u) {
            params[u] = qu(u);
            if (qu(u) > 0.0) {
                const Pmf row = res.maximizer.conditional_given_row(u);
                for (std::size_t x = 0; x < row.size(); ++x)
                    params[u_card + u * row.size() + x] = row(x);
            } else {
                for (std::size_t x = 0; x < main.input_alphabet().size(); ++x)
                    params[u_card + u * main.input_alphabet().size() + x] =
                        1.0 / static_cast<double>(main.input_alphabet().size());
            }
        }
        previous = std::move(params);
    }

    curve.non_increasing = true;
    for (std::size_t i = 0; i + 1 < curve.values.size(); ++i)
        if (curve.values[i + 1] > curve.values[i] + 1e-9) curve.non_increasing = false;

    curve.min_second_difference = kInf;
    for (std::size_t i = 0; i + 2 < curve.values.size(); ++i) {
        const double second =
            curve.values[i] - 2.0 * curve.values[i + 1] + curve.values[i + 2];
        curve.min_second_difference = std::min(curve.min_second_difference, second);
    }
    if (curve.values.size() < 3) curve.min_second_difference = 0.0;
    curve.convex = curve.min_second_difference >= -1e-6;

    const double bound = std::log2(static_cast<double>(main.output_alphabet().size()));
    curve.bounded = true;
    for (double v : curve.values)
        if (v > bound + 1e-12) curve.bounded = false;
    return curve;
}

}  // namespace secrecylab
