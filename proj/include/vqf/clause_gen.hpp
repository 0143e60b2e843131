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
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vqf/clause.hpp"
#include "vqf/errors.hpp"

namespace vqf {

enum class LengthMode { wlog, known };

struct FactorLengths {
    int n_p = 0;
    int n_q = 0;
    bool operator==(const FactorLengths &) const = default;
};

/// Little-endian binary expansion of m; m_bits.size() is the bit count.
inline std::vector<int> decompose_bits(uint64_t m) {
    std::vector<int> bits;
    do {
        bits.push_back(static_cast<int>(m & 1));
        m >>= 1;
    } while (m != 0);
    return bits;
}

/// Without prior knowledge the larger factor may need all n_m bits and the
/// smaller at most ceil(n_m / 2). In known mode the supplied pair is checked
/// and echoed.
inline FactorLengths infer_factor_lengths(int n_m, LengthMode mode, std::optional<FactorLengths> known = std::nullopt) {
    if (n_m < 2) {
        throw InvalidLengths("n_m must be at least 2");
    }
    if (mode == LengthMode::wlog) {
        return {n_m, (n_m + 1) / 2};
    }
    if (!known) {
        throw InvalidLengths("known length mode requires n_p and n_q");
    }
    if (known->n_q < 1 || known->n_q > known->n_p || known->n_p > n_m) {
        throw InvalidLengths("factor lengths must satisfy 1 <= n_q <= n_p <= n_m (got n_p=" + std::to_string(known->n_p) +
                             ", n_q=" + std::to_string(known->n_q) + ", n_m=" + std::to_string(n_m) + ")");
    }
    return *known;
}

struct FactoringInstance {
    uint64_t m = 0;
    std::vector<int> m_bits;
    int n_m = 0;
    int n_p = 0;
    int n_q = 0;
    LengthMode length_mode = LengthMode::wlog;

    int n_c() const { return n_p + n_q - 1; }
    /// Leading factor bits are pinned to 1 only when the lengths are exact.
    bool fixes_leading_bits() const { return length_mode == LengthMode::known; }

    static FactoringInstance make(uint64_t m, LengthMode mode, std::optional<FactorLengths> known = std::nullopt) {
        if (m < 9 || m % 2 == 0) {
            throw InvalidLengths("m must be odd and at least 9 (got " + std::to_string(m) + ")");
        }
        if (m >> 62) {
            throw InvalidLengths("m is too large for 64-bit clause arithmetic");
        }
        FactoringInstance inst;
        inst.m = m;
        inst.m_bits = decompose_bits(m);
        inst.n_m = static_cast<int>(inst.m_bits.size());
        auto lengths = infer_factor_lengths(inst.n_m, mode, known);
        inst.n_p = lengths.n_p;
        inst.n_q = lengths.n_q;
        inst.length_mode = mode;
        if (inst.n_m > inst.n_p + inst.n_q) {
            throw InvalidLengths("a " + std::to_string(inst.n_p) + "-bit by " + std::to_string(inst.n_q) +
                                 "-bit product cannot reach " + std::to_string(inst.n_m) + " bits");
        }
        return inst;
    }

    int m_bit(int k) const { return k < n_m ? m_bits[k] : 0; }
};

namespace detail {

/// Bit k of a factor as it enters the product table: constant 1 for bit 0
/// (m odd forces p_0 = q_0 = 1), absent past the factor length.
inline std::optional<Variable> factor_bit(Family family, int k, int length, bool &is_one) {
    is_one = false;
    if (k >= length) {
        return std::nullopt;
    }
    if (k == 0) {
        is_one = true;
        return std::nullopt;
    }
    return Variable{family, k, 0};
}

inline int64_t carry_bound_exponent(int64_t bound) {
    if (bound <= 1) {
        return 0;
    }
    return std::bit_width(static_cast<uint64_t>(bound)) - 1;
}

}  // namespace detail

/// Removes outgoing carries z_{i,i+j} of column i whose weight 2^j exceeds
/// the largest value the remaining terms can reach.
inline Clause truncate_carries(const Clause &clause, int position) {
    Clause others(clause.constant());
    std::vector<std::pair<Variable, int64_t>> outgoing;
    for (const auto &[mono, coeff] : clause.terms()) {
        if (mono.size() == 1 && mono[0].is_carry() && mono[0].first == position && coeff < 0) {
            outgoing.emplace_back(mono[0], coeff);
        } else {
            others.add(mono, coeff);
        }
    }
    int64_t bound = others.max_value();
    Clause out = others;
    for (const auto &[var, coeff] : outgoing) {
        if (-coeff <= bound) {
            out.add(var, coeff);
        }
    }
    return out;
}

/// Column i of the long multiplication p * q = m, as a clause that must be 0:
///
///   sum_j q_j p_{i-j} + (incoming carries) - m_i - sum_j 2^j z_{i,i+j}.
///
/// Carries are generated only for offsets j with 2^j no larger than the
/// maximum of the other terms (carry truncation). The last column n_c - 1
/// has no outgoing carries: it absorbs every carry landing at or beyond it
/// with weight 2^(target - n_c + 1) and subtracts m >> (n_c - 1).
inline std::vector<Clause> generate_clauses(const FactoringInstance &inst) {
    const int n_c = inst.n_c();
    const int top = n_c - 1;
    std::vector<std::vector<std::pair<Variable, int64_t>>> incoming(n_c);
    std::vector<Clause> clauses;
    clauses.reserve(n_c);
    for (int i = 0; i < n_c; ++i) {
        Clause c;
        for (int j = 0; j <= i; ++j) {
            bool q_one = false;
            bool p_one = false;
            auto qv = detail::factor_bit(Family::Q, j, inst.n_q, q_one);
            auto pv = detail::factor_bit(Family::P, i - j, inst.n_p, p_one);
            if ((!qv && !q_one) || (!pv && !p_one)) {
                continue;
            }
            std::vector<Variable> mono;
            if (qv) {
                mono.push_back(*qv);
            }
            if (pv) {
                mono.push_back(*pv);
            }
            c.add(std::move(mono), 1);
        }
        for (const auto &[z, weight] : incoming[i]) {
            c.add(z, weight);
        }
        if (i == top) {
            c.add_constant(-static_cast<int64_t>(inst.m >> top));
            clauses.push_back(std::move(c));
            break;
        }
        c.add_constant(-inst.m_bit(i));
        const int64_t max_offset = detail::carry_bound_exponent(c.max_value());
        for (int64_t j = 1; j <= max_offset; ++j) {
            const int target = i + static_cast<int>(j);
            auto z = Variable::z(i, target);
            c.add(z, -(int64_t{1} << j));
            if (target >= top) {
                incoming[top].emplace_back(z, int64_t{1} << (target - top));
            } else {
                incoming[target].emplace_back(z, 1);
            }
        }
        clauses.push_back(std::move(c));
    }
    return clauses;
}

/// Number of distinct unknowns in the generated system (bit 0 fixing and
/// carry truncation included, no rule passes).
inline int count_qubits_unsimplified(const FactoringInstance &inst) {
    return static_cast<int>(variables_of(generate_clauses(inst)).size());
}

}  // namespace vqf
