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
#include <map>
#include <string>
#include <vector>

#include "vqf/density.hpp"
#include "vqf/errors.hpp"
#include "vqf/rng.hpp"
#include "vqf/simplifier.hpp"
#include "vqf/spin_polynomial.hpp"

namespace vqf {

/// Angles of an s-layer ansatz; layer i applies gammas[i] then betas[i].
struct QaoaParams {
    std::vector<double> betas;
    std::vector<double> gammas;

    size_t depth() const { return gammas.size(); }
    bool operator==(const QaoaParams &) const = default;

    /// Flat layout [gamma_1..gamma_s, beta_1..beta_s].
    std::vector<double> flat() const {
        std::vector<double> x = gammas;
        x.insert(x.end(), betas.begin(), betas.end());
        return x;
    }
    static QaoaParams from_flat(const std::vector<double> &x) {
        const size_t s = x.size() / 2;
        QaoaParams p;
        p.gammas.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(s));
        p.betas.assign(x.begin() + static_cast<std::ptrdiff_t>(s), x.end());
        return p;
    }
};

struct NoiseConfig {
    double epsilon = 1e-3;
    int nu = 10000;
    uint64_t seed = 0;
};

/// prepare |+>^n, then per layer: cost, mixer. The Pauli channel follows the
/// preparation and every unitary, 2s + 1 applications in total.
inline DensityState run_ansatz(const QaoaParams &params, const EnergyTable &energies, double epsilon,
                               int cap = kDefaultDensityCap) {
    if (params.betas.size() != params.gammas.size()) {
        throw DimensionMismatch("betas and gammas differ in length");
    }
    check_noise_rate(energies.n, epsilon);
    DensityState state = prepare_plus(energies.n, cap);
    apply_noise(state, epsilon);
    for (size_t i = 0; i < params.depth(); ++i) {
        apply_cost_layer(state, params.gammas[i], energies);
        apply_noise(state, epsilon);
        apply_mixer_layer(state, params.betas[i]);
        apply_noise(state, epsilon);
    }
    return state;
}

/// <H_c> = sum_b rho_bb E_b.
inline double exact_cost(const DensityState &state, const EnergyTable &energies) {
    if (energies.size() != state.dim()) {
        throw DimensionMismatch("energy table does not match the register");
    }
    double total = 0.0;
    for (size_t b = 0; b < state.dim(); ++b) {
        total += state(b, b).real() * energies[b];
    }
    return total;
}

/// Inverse-CDF sampler over the computational-basis distribution.
class BasisSampler {
   public:
    explicit BasisSampler(const DensityState &state) : cdf_(state.dim()) {
        double run = 0.0;
        for (size_t b = 0; b < state.dim(); ++b) {
            run += std::max(0.0, state(b, b).real());
            cdf_[b] = run;
        }
        total_ = run;
    }

    uint64_t draw(Rng &rng) const {
        const double u = rng.uniform() * total_;
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.end()) {
            --it;
        }
        // upper_bound never lands on a zero-probability state.
        return static_cast<uint64_t>(it - cdf_.begin());
    }

   private:
    std::vector<double> cdf_;
    double total_ = 0.0;
};

/// Empirical mean energy over nu basis-state samples.
inline double estimate_cost(const DensityState &state, const EnergyTable &energies, int nu, Rng &rng) {
    if (nu < 1) {
        throw Error("sample count must be positive");
    }
    if (energies.size() != state.dim()) {
        throw DimensionMismatch("energy table does not match the register");
    }
    BasisSampler sampler(state);
    double total = 0.0;
    for (int i = 0; i < nu; ++i) {
        total += energies[sampler.draw(rng)];
    }
    return total / nu;
}

/// Histogram of nu samples keyed by basis index.
inline std::map<uint64_t, int> sample_bitstrings(const DensityState &state, int nu, Rng &rng) {
    if (nu < 1) {
        throw Error("sample count must be positive");
    }
    BasisSampler sampler(state);
    std::map<uint64_t, int> hist;
    for (int i = 0; i < nu; ++i) {
        ++hist[sampler.draw(rng)];
    }
    return hist;
}

/// Basis states whose factor bits multiply to m (carry bits ignored, both
/// orderings, trivial 1 x m excluded).
inline std::vector<char> solution_mask(const SimplifiedProblem &prob) {
    const size_t dim = size_t{1} << prob.n;
    std::vector<char> mask(dim, 0);
    for (size_t b = 0; b < dim; ++b) {
        mask[b] = is_nontrivial_factorization(decode_factors(prob, b), prob.m) ? 1 : 0;
    }
    return mask;
}

inline double success_probability(const DensityState &state, const std::vector<char> &mask) {
    if (mask.size() != state.dim()) {
        throw DimensionMismatch("solution mask does not match the register");
    }
    double total = 0.0;
    for (size_t b = 0; b < state.dim(); ++b) {
        if (mask[b]) {
            total += state(b, b).real();
        }
    }
    return total;
}

inline double success_probability(const DensityState &state, const SimplifiedProblem &prob) {
    return success_probability(state, solution_mask(prob));
}

}  // namespace vqf
