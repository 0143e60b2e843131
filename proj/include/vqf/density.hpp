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

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "vqf/errors.hpp"
#include "vqf/spin_polynomial.hpp"

namespace vqf {

using cplx = std::complex<double>;

inline constexpr int kDefaultDensityCap = 12;

/// Row-major 2^n x 2^n density matrix.
class DensityState {
   public:
    DensityState() = default;
    explicit DensityState(int n) : n_(n), dim_(size_t{1} << n), data_(dim_ * dim_) {}

    int n() const { return n_; }
    size_t dim() const { return dim_; }
    cplx &operator()(size_t r, size_t c) { return data_[r * dim_ + c]; }
    const cplx &operator()(size_t r, size_t c) const { return data_[r * dim_ + c]; }
    std::vector<cplx> &data() { return data_; }
    const std::vector<cplx> &data() const { return data_; }

    cplx trace() const {
        cplx t{};
        for (size_t i = 0; i < dim_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    /// tr(rho^2) = sum |rho_ab|^2 for Hermitian rho.
    double purity() const {
        double s = 0.0;
        for (const auto &v : data_) {
            s += std::norm(v);
        }
        return s;
    }

    /// Max |rho_ab - conj(rho_ba)|.
    double hermiticity_error() const {
        double e = 0.0;
        for (size_t r = 0; r < dim_; ++r) {
            for (size_t c = r; c < dim_; ++c) {
                e = std::max(e, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
            }
        }
        return e;
    }

    std::vector<double> probabilities() const {
        std::vector<double> p(dim_);
        for (size_t i = 0; i < dim_; ++i) {
            p[i] = (*this)(i, i).real();
        }
        return p;
    }

   private:
    int n_ = 0;
    size_t dim_ = 1;
    std::vector<cplx> data_{cplx{1.0, 0.0}};
};

inline double max_entry_distance(const DensityState &a, const DensityState &b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("density matrices differ in size");
    }
    double e = 0.0;
    for (size_t i = 0; i < a.data().size(); ++i) {
        e = std::max(e, std::abs(a.data()[i] - b.data()[i]));
    }
    return e;
}

/// |+><+|^n: every entry 2^-n.
inline DensityState prepare_plus(int n, int cap = kDefaultDensityCap) {
    if (n < 0 || n > cap) {
        throw CapExceeded("density matrix for " + std::to_string(n) + " qubits exceeds cap " + std::to_string(cap));
    }
    DensityState s(n);
    const double v = 1.0 / static_cast<double>(s.dim());
    for (auto &x : s.data()) {
        x = v;
    }
    return s;
}

/// rho_ab <- exp(-i gamma (E_a - E_b)) rho_ab.
inline void apply_cost_layer(DensityState &state, double gamma, const EnergyTable &energies) {
    if (energies.size() != state.dim()) {
        throw DimensionMismatch("energy table does not match the register");
    }
    const size_t dim = state.dim();
    std::vector<cplx> phase(dim);
    for (size_t a = 0; a < dim; ++a) {
        phase[a] = std::polar(1.0, -gamma * energies[a]);
    }
    for (size_t a = 0; a < dim; ++a) {
        cplx *row = &state(a, 0);
        const cplx pa = phase[a];
        for (size_t b = 0; b < dim; ++b) {
            if (b != a) {
                row[b] *= pa * std::conj(phase[b]);
            }
        }
    }
}

/// Conjugation by prod_k exp(-i beta X_k), one qubit at a time.
inline void apply_mixer_layer(DensityState &state, double beta) {
    const size_t dim = state.dim();
    const double c = std::cos(beta);
    const cplx is{0.0, std::sin(beta)};
    for (int k = 0; k < state.n(); ++k) {
        const size_t bit = size_t{1} << k;
        // Left: U rho with U = [[c, -is], [-is, c]].
        for (size_t r0 = 0; r0 < dim; ++r0) {
            if (r0 & bit) {
                continue;
            }
            cplx *a = &state(r0, 0);
            cplx *b = &state(r0 | bit, 0);
            for (size_t col = 0; col < dim; ++col) {
                const cplx x = a[col];
                const cplx y = b[col];
                a[col] = c * x - is * y;
                b[col] = c * y - is * x;
            }
        }
        // Right: rho U^dagger with U^dagger = [[c, is], [is, c]].
        for (size_t row = 0; row < dim; ++row) {
            cplx *r = &state(row, 0);
            for (size_t c0 = 0; c0 < dim; ++c0) {
                if (c0 & bit) {
                    continue;
                }
                const cplx x = r[c0];
                const cplx y = r[c0 | bit];
                r[c0] = c * x + is * y;
                r[c0 | bit] = c * y + is * x;
            }
        }
    }
}

inline void check_noise_rate(int n, double epsilon) {
    if (!(epsilon >= 0.0) || static_cast<double>(n) * epsilon > 1.0) {
        throw InvalidNoise("Pauli error rate " + std::to_string(epsilon) + " invalid for " + std::to_string(n) +
                           " qubits (need 0 <= n*epsilon <= 1)");
    }
}

/// rho -> (1 - n eps) rho + (eps / 3) sum_j sum_{P in X,Y,Z} P_j rho P_j,
/// as a single map over all qubits.
///
/// Per qubit j, (X rho X + Y rho Y + Z rho Z)_ab equals
/// 2 rho_{a^j, b^j} + rho_ab when a and b agree on bit j, and -rho_ab otherwise.
inline void apply_noise(DensityState &state, double epsilon) {
    const int n = state.n();
    check_noise_rate(n, epsilon);
    if (epsilon == 0.0 || n == 0) {
        return;
    }
    const size_t dim = state.dim();
    const DensityState in = state;
    const double keep = 1.0 - n * epsilon;
    const double third = epsilon / 3.0;
    for (size_t a = 0; a < dim; ++a) {
        for (size_t b = 0; b < dim; ++b) {
            const int differ = std::popcount(a ^ b);
            cplx flipped{};
            for (int j = 0; j < n; ++j) {
                const size_t bit = size_t{1} << j;
                if (((a ^ b) & bit) == 0) {
                    flipped += in(a ^ bit, b ^ bit);
                }
            }
            state(a, b) = (keep + third * static_cast<double>(n - 2 * differ)) * in(a, b) + 2.0 * third * flipped;
        }
    }
}

}  // namespace vqf
