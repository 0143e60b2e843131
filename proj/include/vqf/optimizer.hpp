// Copyright 2026 The VQF Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "vqf/errors.hpp"
#include "vqf/instances.hpp"
#include "vqf/qaoa.hpp"
#include "vqf/rng.hpp"

namespace vqf {

enum class CostMode { exact, sampled };

struct TrainConfig {
    int s = 1;
    /// G for a G x G grid per layer; 0 picks default_grid_size.
    int grid_size = 0;
    double gamma_span = 2.0 * std::numbers::pi;
    double beta_span = std::numbers::pi;
    double bfgs_tol = 1e-4;
    double fd_step = 1e-4;
    int bfgs_max_iters = 200;
    int64_t max_evals = 50'000'000;
    CostMode cost_mode = CostMode::sampled;
    /// Refine all parameters after each new layer instead of once at the end.
    bool per_layer_refine = false;
    int workers = 1;
};

/// One cost evaluation, for the training trace log.
struct TraceRecord {
    int64_t eval_index = 0;
    std::string stage;  // "grid" or "bfgs"
    int layer = 0;      // grid layer (1-based); 0 for bfgs
    std::vector<double> params;  // flat [gammas..., betas...]
    double cost = 0.0;
};

struct GridPoint {
    double gamma = 0.0;
    double beta = 0.0;
    double cost = std::numeric_limits<double>::infinity();
};

/// Cost budget ran out; carries the best point seen so far.
class BudgetExhausted : public Error {
   public:
    BudgetExhausted(const std::string &what, GridPoint best) : Error(what), best_(best) {}
    const GridPoint &best() const { return best_; }

   private:
    GridPoint best_;
};

struct GridRule {
    int per_qubit = 3;
    int max_size = 64;
};

/// The gradient bound suggests O(n_c^2 n^4) points per grid axis; in practice
/// far coarser grids suffice, so reference instances use their tabulated size
/// and anything else gets per_qubit * n, capped at max_size.
inline int default_grid_size(uint64_t m, int n_c, int n, GridRule rule = {}) {
    (void)n_c;
    if (auto ref = find_reference(m)) {
        return ref->grid_size;
    }
    return std::clamp(rule.per_qubit * std::max(n, 1), 1, std::max(rule.max_size, 1));
}

inline int64_t gradient_bound_grid_size(int n_c, int n) {
    const auto nc = static_cast<int64_t>(n_c);
    const auto nn = static_cast<int64_t>(n);
    return nc * nc * nn * nn * nn * nn;
}

/// QAOA cost M(beta, gamma) on a fixed energy table, exact or estimated from
/// nu samples. Counts evaluations and enforces the budget.
class Objective {
   public:
    Objective(const EnergyTable &energies, NoiseConfig noise, CostMode mode, int64_t max_evals,
              int density_cap = kDefaultDensityCap)
        : energies_(&energies), noise_(noise), mode_(mode), max_evals_(max_evals), cap_(density_cap) {
        check_noise_rate(energies.n, noise.epsilon);
        if (noise.nu < 1) {
            throw Error("sample count must be positive");
        }
    }

    CostMode mode() const { return mode_; }
    const NoiseConfig &noise() const { return noise_; }
    const EnergyTable &energies() const { return *energies_; }

    int64_t evals() const { return evals_.load(); }
    int64_t remaining() const { return max_evals_ - evals_.load(); }

    /// Claims `count` evaluation indices; returns the first one.
    int64_t reserve(int64_t count) { return evals_.fetch_add(count); }

    /// Cost under the random stream `stream` (ignored in exact mode).
    double cost_at(const QaoaParams &params, uint64_t stream) const {
        auto state = run_ansatz(params, *energies_, noise_.epsilon, cap_);
        if (mode_ == CostMode::exact) {
            return exact_cost(state, *energies_);
        }
        Rng rng(noise_.seed, stream);
        return estimate_cost(state, *energies_, noise_.nu, rng);
    }

    /// Counted evaluation; throws BudgetExhausted when nothing is left.
    double operator()(const QaoaParams &params, uint64_t stream, const char *stage = "bfgs", int layer = 0) {
        if (remaining() <= 0) {
            throw BudgetExhausted("cost evaluation budget exhausted", {});
        }
        const int64_t index = reserve(1);
        const double c = cost_at(params, stream);
        record({index, stage, layer, params.flat(), c});
        return c;
    }

    void record(const TraceRecord &r) {
        if (trace_) {
            trace_(r);
        }
    }
    void set_trace(std::function<void(const TraceRecord &)> sink) { trace_ = std::move(sink); }

   private:
    const EnergyTable *energies_;
    NoiseConfig noise_;
    CostMode mode_;
    int64_t max_evals_;
    int cap_;
    std::atomic<int64_t> evals_{0};
    std::function<void(const TraceRecord &)> trace_;
};

namespace detail {

inline constexpr uint64_t kGridStreamTag = 0x6772696400000000ULL;
inline constexpr uint64_t kBfgsStreamTag = 0x6266677300000000ULL;

/// Runs fn(i) for i in [0, count) on up to `workers` threads.
template <typename Fn>
void parallel_for(size_t count, int workers, Fn &&fn) {
    const size_t w = std::min<size_t>(std::max(workers, 1), count);
    if (w <= 1) {
        for (size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (size_t t = 0; t < w; ++t) {
        pool.emplace_back([&, t] {
            for (size_t i = t; i < count; i += w) {
                fn(i);
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
}

}  // namespace detail

/// Exhaustive G x G search for layer k = prefix.depth() + 1 with the earlier
/// layers frozen. gamma_j = span * j / G, beta_j likewise. Lowest cost wins;
/// ties go to the lowest gamma index, then the lowest beta index. Each point
/// draws its own random stream from its evaluation index.
inline GridPoint grid_search_layer(const QaoaParams &prefix, Objective &objective, int grid,
                                   const TrainConfig &cfg = {}) {
    if (grid < 1) {
        throw Error("grid size must be at least 1");
    }
    const int layer = static_cast<int>(prefix.depth()) + 1;
    const size_t points = static_cast<size_t>(grid) * static_cast<size_t>(grid);
    const auto available = static_cast<size_t>(std::max<int64_t>(objective.remaining(), 0));
    const size_t todo = std::min(points, available);
    const int64_t base = objective.reserve(static_cast<int64_t>(todo));
    std::vector<double> costs(todo);
    auto point = [&](size_t i) {
        QaoaParams p = prefix;
        p.gammas.push_back(cfg.gamma_span * static_cast<double>(i / static_cast<size_t>(grid)) / grid);
        p.betas.push_back(cfg.beta_span * static_cast<double>(i % static_cast<size_t>(grid)) / grid);
        return p;
    };
    detail::parallel_for(todo, cfg.workers, [&](size_t i) {
        costs[i] = objective.cost_at(point(i), detail::kGridStreamTag ^ static_cast<uint64_t>(base + static_cast<int64_t>(i)));
    });
    GridPoint best;
    for (size_t i = 0; i < todo; ++i) {
        auto p = point(i);
        objective.record({base + static_cast<int64_t>(i), "grid", layer, p.flat(), costs[i]});
        if (costs[i] < best.cost) {
            best = {p.gammas.back(), p.betas.back(), costs[i]};
        }
    }
    if (todo < points) {
        throw BudgetExhausted("cost evaluation budget exhausted during grid search", best);
    }
    return best;
}

struct LayerwiseResult {
    QaoaParams params;
    std::vector<double> layer_costs;  // best grid cost after each new layer
};

/// Grows the ansatz from `prefix` to depth s one grid-searched layer at a time.
inline LayerwiseResult train_layerwise(int s, Objective &objective, int grid, const TrainConfig &cfg = {},
                                       QaoaParams prefix = {}) {
    LayerwiseResult out;
    out.params = std::move(prefix);
    while (static_cast<int>(out.params.depth()) < s) {
        auto best = grid_search_layer(out.params, objective, grid, cfg);
        out.params.gammas.push_back(best.gamma);
        out.params.betas.push_back(best.beta);
        out.layer_costs.push_back(best.cost);
    }
    return out;
}

struct BfgsResult {
    std::vector<double> x;
    double cost = 0.0;
    double seed_cost = 0.0;
    int64_t evals = 0;
    int iterations = 0;
    bool converged = false;
    std::string stop_reason;
};

/// f(x, stream): the stream lets all points of one gradient stencil and line
/// search share random numbers in sampled mode.
using StreamedCost = std::function<double(const std::vector<double> &, uint64_t)>;

struct BfgsOptions {
    double grad_tol = 1e-4;
    double fd_step = 1e-4;
    int max_iters = 200;
    int64_t max_evals = 1'000'000;
    /// Re-evaluate f(x) on each iteration's stream (needed for sampled costs).
    bool stochastic = false;
    uint64_t stream_tag = detail::kBfgsStreamTag;
};

/// BFGS with central finite-difference gradients and an Armijo backtracking
/// line search; the inverse Hessian estimate starts at the identity and skips
/// updates with non-positive curvature. Returns the best point observed.
inline BfgsResult bfgs_refine(std::vector<double> x, const StreamedCost &f, const BfgsOptions &opt = {}) {
    const size_t dim = x.size();
    BfgsResult out;
    int64_t evals = 0;
    struct Budget {};
    auto eval = [&](const std::vector<double> &p, uint64_t stream) {
        if (evals >= opt.max_evals) {
            throw Budget{};
        }
        ++evals;
        return f(p, stream);
    };
    auto stream_of = [&](int iter) { return opt.stream_tag ^ splitmix64(static_cast<uint64_t>(iter)); };

    std::vector<double> best_x = x;
    double best = 0.0;
    out.stop_reason = "max_iters";
    try {
        double fx = eval(x, stream_of(0));
        out.seed_cost = fx;
        best = fx;
        if (dim == 0) {
            out.converged = true;
            out.stop_reason = "no_parameters";
            throw Budget{};
        }
        std::vector<double> hinv(dim * dim, 0.0);
        for (size_t i = 0; i < dim; ++i) {
            hinv[i * dim + i] = 1.0;
        }
        auto gradient = [&](const std::vector<double> &p, uint64_t stream) {
            std::vector<double> g(dim);
            std::vector<double> probe = p;
            for (size_t i = 0; i < dim; ++i) {
                probe[i] = p[i] + opt.fd_step;
                const double fp = eval(probe, stream);
                probe[i] = p[i] - opt.fd_step;
                const double fm = eval(probe, stream);
                probe[i] = p[i];
                g[i] = (fp - fm) / (2.0 * opt.fd_step);
            }
            return g;
        };
        auto norm = [](const std::vector<double> &v) {
            double s = 0.0;
            for (double e : v) {
                s += e * e;
            }
            return std::sqrt(s);
        };
        uint64_t stream = stream_of(0);
        std::vector<double> g = gradient(x, stream);
        for (int iter = 0; iter < opt.max_iters; ++iter) {
            out.iterations = iter;
            if (norm(g) <= opt.grad_tol) {
                out.converged = true;
                out.stop_reason = "gradient_tolerance";
                break;
            }
            std::vector<double> dir(dim, 0.0);
            for (size_t i = 0; i < dim; ++i) {
                for (size_t j = 0; j < dim; ++j) {
                    dir[i] -= hinv[i * dim + j] * g[j];
                }
            }
            double slope = 0.0;
            for (size_t i = 0; i < dim; ++i) {
                slope += dir[i] * g[i];
            }
            if (slope >= 0.0) {
                // Lost descent; restart from steepest descent.
                std::fill(hinv.begin(), hinv.end(), 0.0);
                for (size_t i = 0; i < dim; ++i) {
                    hinv[i * dim + i] = 1.0;
                    dir[i] = -g[i];
                }
                slope = -norm(g) * norm(g);
            }
            double step = 1.0;
            std::vector<double> trial(dim);
            double ft = 0.0;
            bool accepted = false;
            for (int ls = 0; ls < 30; ++ls) {
                for (size_t i = 0; i < dim; ++i) {
                    trial[i] = x[i] + step * dir[i];
                }
                ft = eval(trial, stream);
                if (ft <= fx + 1e-4 * step * slope) {
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) {
                out.stop_reason = "line_search";
                out.converged = true;
                break;
            }
            if (ft < best) {
                best = ft;
                best_x = trial;
            }
            const uint64_t next_stream = opt.stochastic ? stream_of(iter + 1) : stream;
            double f_next = ft;
            if (opt.stochastic) {
                f_next = eval(trial, next_stream);
            }
            std::vector<double> g_next = gradient(trial, next_stream);
            std::vector<double> sv(dim);
            std::vector<double> yv(dim);
            double sy = 0.0;
            for (size_t i = 0; i < dim; ++i) {
                sv[i] = trial[i] - x[i];
                yv[i] = g_next[i] - g[i];
                sy += sv[i] * yv[i];
            }
            if (sy > 1e-12) {
                // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
                const double rho = 1.0 / sy;
                std::vector<double> hy(dim, 0.0);
                for (size_t i = 0; i < dim; ++i) {
                    for (size_t j = 0; j < dim; ++j) {
                        hy[i] += hinv[i * dim + j] * yv[j];
                    }
                }
                double yhy = 0.0;
                for (size_t i = 0; i < dim; ++i) {
                    yhy += yv[i] * hy[i];
                }
                for (size_t i = 0; i < dim; ++i) {
                    for (size_t j = 0; j < dim; ++j) {
                        hinv[i * dim + j] += -rho * (hy[i] * sv[j] + sv[i] * hy[j]) + (rho * rho * yhy + rho) * sv[i] * sv[j];
                    }
                }
            }
            x = std::move(trial);
            fx = f_next;
            g = std::move(g_next);
            stream = next_stream;
            out.iterations = iter + 1;
        }
    } catch (const Budget &) {
        if (out.stop_reason != "no_parameters") {
            out.stop_reason = "max_evals";
            out.converged = false;
        }
    }
    out.x = best_x;
    out.cost = best;
    out.evals = evals;
    return out;
}

/// Refines all 2s angles of a seeded ansatz on the QAOA objective.
inline std::pair<QaoaParams, BfgsResult> bfgs_refine(const QaoaParams &seed, Objective &objective,
                                                     const TrainConfig &cfg) {
    BfgsOptions opt;
    opt.grad_tol = cfg.bfgs_tol;
    opt.fd_step = cfg.fd_step;
    opt.max_iters = cfg.bfgs_max_iters;
    opt.max_evals = std::max<int64_t>(objective.remaining(), 0);
    opt.stochastic = objective.mode() == CostMode::sampled;
    auto res = bfgs_refine(seed.flat(), [&](const std::vector<double> &x, uint64_t stream) {
        return objective(QaoaParams::from_flat(x), stream);
    }, opt);
    return {QaoaParams::from_flat(res.x), res};
}

struct TrainOutcome {
    QaoaParams params;
    QaoaParams seeded;  // after grid search, before refinement
    double cost = 0.0;  // objective value at params
    int64_t grid_evals = 0;
    int64_t bfgs_evals = 0;
    bool converged = true;
};

/// Layer-by-layer grid search to depth s, then BFGS over every angle (or
/// after every new layer with per_layer_refine). `start` extends an already
/// trained shallower ansatz.
inline TrainOutcome train_qaoa(Objective &objective, int grid, const TrainConfig &cfg, const QaoaParams &start = {}) {
    TrainOutcome out;
    QaoaParams params = start;
    const int64_t before = objective.evals();
    double cost = 0.0;
    if (static_cast<int>(params.depth()) >= cfg.s && cfg.s >= 0) {
        params.gammas.resize(static_cast<size_t>(cfg.s));
        params.betas.resize(static_cast<size_t>(cfg.s));
    }
    auto refine = [&](QaoaParams seed) {
        auto [refined, res] = bfgs_refine(seed, objective, cfg);
        out.bfgs_evals += res.evals;
        out.converged = out.converged && res.converged;
        cost = res.cost;
        return refined;
    };
    if (cfg.per_layer_refine) {
        while (static_cast<int>(params.depth()) < cfg.s) {
            auto layer = train_layerwise(static_cast<int>(params.depth()) + 1, objective, grid, cfg, params);
            params = refine(layer.params);
        }
        out.seeded = params;
    } else {
        auto layered = train_layerwise(cfg.s, objective, grid, cfg, params);
        out.seeded = layered.params;
        params = refine(layered.params);
    }
    out.params = params;
    out.cost = cost;
    out.grid_evals = objective.evals() - before - out.bfgs_evals;
    return out;
}

}  // namespace vqf
