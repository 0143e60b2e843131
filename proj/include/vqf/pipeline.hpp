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
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vqf/clause_gen.hpp"
#include "vqf/errors.hpp"
#include "vqf/instances.hpp"
#include "vqf/optimizer.hpp"
#include "vqf/qaoa.hpp"
#include "vqf/simplifier.hpp"
#include "vqf/spin_polynomial.hpp"

namespace vqf {

/// How the reduced problem is obtained.
struct ProblemConfig {
    /// Unset: reference instances use their tabulated lengths, others wlog.
    std::optional<LengthMode> length_mode;
    std::optional<FactorLengths> lengths;
    /// Use the shipped clause tables for instances that have one.
    bool use_curated = true;
    SimplifyOptions simplify;
};

struct RunConfig {
    ProblemConfig problem;
    TrainConfig train;
    NoiseConfig noise;
    int density_cap = kDefaultDensityCap;
    int table_cap = kDefaultTableCap;
};

struct VqfResult {
    uint64_t m = 0;
    int n_p = 0;
    int n_q = 0;
    int n = 0;
    int n_z = 0;
    int s = 0;
    double epsilon = 0.0;
    int nu = 0;
    uint64_t seed = 0;
    int grid_size = 0;
    std::string cost_mode;
    QaoaParams params;
    QaoaParams seeded_params;
    /// Exact expectation of H in the final state.
    double final_cost = 0.0;
    /// Objective value reached by training (sampled or exact).
    double training_cost = 0.0;
    double success_prob = 0.0;
    std::vector<std::string> qubits;
    std::vector<double> probabilities;
    std::vector<double> energies;
    std::map<uint64_t, int> distribution;  // sample histogram
    std::optional<FactorPair> factors;
    int64_t eval_count = 0;
    int64_t grid_evals = 0;
    int64_t bfgs_evals = 0;
    bool converged = true;
    bool classically_solved = false;
};

inline LengthMode resolve_length_mode(uint64_t m, const ProblemConfig &cfg) {
    if (cfg.length_mode) {
        return *cfg.length_mode;
    }
    if (cfg.lengths || find_reference(m)) {
        return LengthMode::known;
    }
    return LengthMode::wlog;
}

/// Clause generation and simplification, or the shipped table when one exists
/// for the requested lengths.
inline SimplifiedProblem prepare_problem(uint64_t m, const ProblemConfig &cfg = {}) {
    const LengthMode mode = resolve_length_mode(m, cfg);
    std::optional<FactorLengths> lengths = cfg.lengths;
    if (mode == LengthMode::known && !lengths) {
        lengths = reference_lengths(m);
        if (!lengths) {
            throw InvalidLengths("known-length mode needs n_p and n_q");
        }
    }
    auto inst = FactoringInstance::make(m, mode, lengths);
    if (cfg.use_curated && mode == LengthMode::known) {
        if (auto cur = curated_problem(m); cur && cur->n_p == inst.n_p && cur->n_q == inst.n_q) {
            return *cur;
        }
    }
    auto prob = simplify_instance(inst, cfg.simplify);
    prob.length_mode = mode;
    return prob;
}

/// First sample whose decoded factors multiply to m with both above 1.
inline std::optional<FactorPair> verify_factors(const std::vector<uint64_t> &samples, const SimplifiedProblem &prob,
                                                uint64_t m) {
    for (uint64_t b : samples) {
        auto f = decode_factors(prob, b);
        if (is_nontrivial_factorization(f, m)) {
            return f;
        }
    }
    return std::nullopt;
}

inline constexpr uint64_t kFinalSampleStream = 0x73616d706c650000ULL;

/// Rejects problems whose register holds no nontrivial factorization: in
/// wlog mode that means m is prime, otherwise the lengths are wrong.
inline void check_solvable(const SimplifiedProblem &prob, const std::vector<char> &mask) {
    for (char c : mask) {
        if (c) {
            return;
        }
    }
    if (prob.length_mode == LengthMode::wlog) {
        throw PrimeInput(std::to_string(prob.m) + " has no nontrivial factorization");
    }
    throw InfeasibleInstance("no assignment of the free bits factors " + std::to_string(prob.m));
}

inline const char *cost_mode_name(CostMode mode) { return mode == CostMode::exact ? "exact" : "sampled"; }

/// Trains and samples the ansatz on an already reduced problem. `start`
/// seeds the first layers (depth sweeps extend the previous depth); `trace`
/// receives every cost evaluation.
inline VqfResult run_vqf(const SimplifiedProblem &prob, const RunConfig &cfg, const QaoaParams &start = {},
                         std::function<void(const TraceRecord &)> trace = {}) {
    VqfResult out;
    out.m = prob.m;
    out.n_p = prob.n_p;
    out.n_q = prob.n_q;
    out.n = prob.n;
    out.n_z = prob.n_z;
    out.s = cfg.train.s;
    out.epsilon = cfg.noise.epsilon;
    out.nu = cfg.noise.nu;
    out.seed = cfg.noise.seed;
    out.cost_mode = cost_mode_name(cfg.train.cost_mode);
    for (const auto &v : prob.qubit_map) {
        out.qubits.push_back(v.name());
    }

    if (prob.n == 0) {
        // Fully determined classically.
        out.classically_solved = true;
        out.s = 0;
        out.success_prob = 1.0;
        auto f = decode_factors(prob, 0);
        if (!is_nontrivial_factorization(f, prob.m)) {
            check_solvable(prob, {0});
        }
        out.factors = f;
        out.probabilities = {1.0};
        out.energies = {0.0};
        out.distribution[0] = cfg.noise.nu;
        return out;
    }
    // Solvability only needs the diagonal, so primes are reported even when
    // the register is too large to simulate.
    const auto h = build_hamiltonian(prob);
    const auto table = diagonal(h, prob.n, cfg.table_cap);
    const auto mask = solution_mask(prob);
    check_solvable(prob, mask);
    if (prob.n > cfg.density_cap) {
        throw CapExceeded("register of " + std::to_string(prob.n) + " qubits exceeds the density-matrix cap of " +
                          std::to_string(cfg.density_cap));
    }

    const int n_c = prob.n_p + prob.n_q - 1;
    out.grid_size = cfg.train.grid_size > 0 ? cfg.train.grid_size : default_grid_size(prob.m, n_c, prob.n);

    Objective objective(table, cfg.noise, cfg.train.cost_mode, cfg.train.max_evals, cfg.density_cap);
    objective.set_trace(std::move(trace));
    auto trained = train_qaoa(objective, out.grid_size, cfg.train, start);
    out.params = trained.params;
    out.seeded_params = trained.seeded;
    out.training_cost = trained.cost;
    out.grid_evals = trained.grid_evals;
    out.bfgs_evals = trained.bfgs_evals;
    out.eval_count = objective.evals();
    out.converged = trained.converged;

    const auto state = run_ansatz(out.params, table, cfg.noise.epsilon, cfg.density_cap);
    out.final_cost = exact_cost(state, table);
    out.success_prob = std::clamp(success_probability(state, mask), 0.0, 1.0);
    out.probabilities = state.probabilities();
    out.energies = table.values;

    Rng rng(cfg.noise.seed, kFinalSampleStream);
    BasisSampler sampler(state);
    std::vector<uint64_t> samples(static_cast<size_t>(cfg.noise.nu));
    for (auto &b : samples) {
        b = sampler.draw(rng);
        ++out.distribution[b];
    }
    out.factors = verify_factors(samples, prob, prob.m);
    return out;
}

inline VqfResult run_vqf(uint64_t m, const RunConfig &cfg = {}) { return run_vqf(prepare_problem(m, cfg.problem), cfg); }

struct SweepCell {
    int s = 0;
    double epsilon = 0.0;
    std::vector<double> success;  // one entry per repetition
    std::vector<int64_t> bfgs_evals;
    std::vector<int64_t> evals;
    double mean = 0.0;
    double stddev = 0.0;
};

inline void summarize(SweepCell &cell) {
    const auto k = static_cast<double>(cell.success.size());
    double sum = 0.0;
    for (double v : cell.success) {
        sum += v;
    }
    cell.mean = k > 0 ? sum / k : 0.0;
    double var = 0.0;
    for (double v : cell.success) {
        var += (v - cell.mean) * (v - cell.mean);
    }
    // Sample standard deviation; a single repetition has none.
    cell.stddev = k > 1 ? std::sqrt(var / (k - 1)) : 0.0;
}

struct SweepOptions {
    int repetitions = 3;
    /// Extend the trained depth-s parameters to depth s+1 instead of
    /// retraining every depth from scratch.
    bool extend = true;
};

/// Success probability against depth; repetition r uses seed + r.
inline std::vector<SweepCell> sweep_depth(const SimplifiedProblem &prob, const std::vector<int> &depths,
                                          const RunConfig &cfg, const SweepOptions &opt = {}) {
    if (depths.empty() || opt.repetitions < 1) {
        throw Error("depth sweep needs at least one depth and one repetition");
    }
    std::vector<SweepCell> cells(depths.size());
    for (size_t i = 0; i < depths.size(); ++i) {
        cells[i].s = depths[i];
        cells[i].epsilon = cfg.noise.epsilon;
    }
    for (int rep = 0; rep < opt.repetitions; ++rep) {
        RunConfig run = cfg;
        run.noise.seed = cfg.noise.seed + static_cast<uint64_t>(rep);
        QaoaParams previous;
        for (size_t i = 0; i < depths.size(); ++i) {
            run.train.s = depths[i];
            const bool can_extend = opt.extend && static_cast<int>(previous.depth()) <= depths[i];
            auto res = run_vqf(prob, run, can_extend ? previous : QaoaParams{});
            previous = res.params;
            cells[i].success.push_back(res.success_prob);
            cells[i].bfgs_evals.push_back(res.bfgs_evals);
            cells[i].evals.push_back(res.eval_count);
        }
    }
    for (auto &c : cells) {
        summarize(c);
    }
    return cells;
}

/// Success probability against noise rate at fixed depth.
inline std::vector<SweepCell> sweep_noise(const SimplifiedProblem &prob, const std::vector<double> &epsilons,
                                          const RunConfig &cfg, const SweepOptions &opt = {}) {
    if (epsilons.empty() || opt.repetitions < 1) {
        throw Error("noise sweep needs at least one rate and one repetition");
    }
    for (double e : epsilons) {
        check_noise_rate(prob.n, e);
    }
    std::vector<SweepCell> cells;
    for (double e : epsilons) {
        SweepCell cell;
        cell.s = cfg.train.s;
        cell.epsilon = e;
        for (int rep = 0; rep < opt.repetitions; ++rep) {
            RunConfig run = cfg;
            run.noise.epsilon = e;
            run.noise.seed = cfg.noise.seed + static_cast<uint64_t>(rep);
            auto res = run_vqf(prob, run);
            cell.success.push_back(res.success_prob);
            cell.bfgs_evals.push_back(res.bfgs_evals);
            cell.evals.push_back(res.eval_count);
        }
        summarize(cell);
        cells.push_back(std::move(cell));
    }
    return cells;
}

}  // namespace vqf
