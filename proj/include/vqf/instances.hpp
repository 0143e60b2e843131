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

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "vqf/clause.hpp"
#include "vqf/clause_gen.hpp"
#include "vqf/simplifier.hpp"

namespace vqf {

/// Reference biprimes with their tabulated register sizes.
struct ReferenceInstance {
    uint64_t m;
    uint64_t p;  // larger factor
    uint64_t q;
    int qubits;
    int carries;
    bool pq_symmetric;
    int grid_size;
    bool curated;  // reduced clauses ship with the library
};

inline constexpr std::array<ReferenceInstance, 6> kReferenceInstances{{
    {35, 7, 5, 2, 0, true, 6, false},
    {77, 11, 7, 6, 3, false, 24, false},
    {1207, 71, 17, 8, 5, false, 36, false},
    {33667, 257, 131, 3, 1, false, 9, false},
    {56153, 241, 233, 4, 0, true, 12, true},
    {291311, 557, 523, 6, 0, true, 24, true},
}};

inline std::optional<ReferenceInstance> find_reference(uint64_t m) {
    for (const auto &r : kReferenceInstances) {
        if (r.m == m) {
            return r;
        }
    }
    return std::nullopt;
}

/// Factor bit lengths of a reference instance (known-length mode).
inline std::optional<FactorLengths> reference_lengths(uint64_t m) {
    auto r = find_reference(m);
    if (!r) {
        return std::nullopt;
    }
    return FactorLengths{static_cast<int>(decompose_bits(r->p).size()), static_cast<int>(decompose_bits(r->q).size())};
}

namespace detail {

inline SimplifiedProblem curated_problem(uint64_t m, int bits, const std::vector<int> &free_bits,
                                         const std::vector<std::pair<int, int>> &fixed, std::vector<Clause> clauses) {
    SimplifiedProblem prob;
    prob.m = m;
    prob.n_p = bits;
    prob.n_q = bits;
    prob.length_mode = LengthMode::known;
    prob.curated = true;
    for (const auto &[bit, value] : fixed) {
        prob.relations.assign(Variable::p(bit), value);
        prob.relations.assign(Variable::q(bit), value);
    }
    for (int k : free_bits) {
        prob.qubit_map.push_back(Variable::p(k));
    }
    for (int k : free_bits) {
        prob.qubit_map.push_back(Variable::q(k));
    }
    prob.clauses = std::move(clauses);
    prob.n = static_cast<int>(prob.qubit_map.size());
    prob.n_z = 0;
    return prob;
}

}  // namespace detail

/// Reduced clause systems for the two instances whose small registers come
/// from a stronger preprocessing scheme than the five deduction rules.
/// Both factors share their bit length and every unknown bit pairs with its
/// counterpart in a p_k + q_k - 1 clause, so the systems are p <-> q symmetric
/// with exactly two roots and no carries.
inline std::optional<SimplifiedProblem> curated_problem(uint64_t m) {
    using V = Variable;
    if (m == 56153) {
        // 233 = 0b11101001, 241 = 0b11110001: bits 3 and 4 differ.
        std::vector<Clause> cl(3);
        cl[0].add(V::p(3), 1).add(V::q(3), 1).add_constant(-1);
        cl[1].add(V::p(4), 1).add(V::q(4), 1).add_constant(-1);
        cl[2].add({V::p(3), V::q(4)}, 1).add({V::p(4), V::q(3)}, 1).add_constant(-1);
        return detail::curated_problem(m, 8, {3, 4}, {{1, 0}, {2, 0}, {5, 1}, {6, 1}, {7, 1}}, std::move(cl));
    }
    if (m == 291311) {
        // 523 = 0b1000001011, 557 = 0b1000101101: bits 1, 2 and 5 differ.
        std::vector<Clause> cl(5);
        cl[0].add(V::p(1), 1).add(V::q(1), 1).add_constant(-1);
        cl[1].add(V::p(2), 1).add(V::q(2), 1).add_constant(-1);
        cl[2].add(V::p(5), 1).add(V::q(5), 1).add_constant(-1);
        cl[3].add({V::p(1), V::q(2)}, 1).add({V::p(2), V::q(1)}, 1).add_constant(-1);
        cl[4].add({V::p(1), V::q(5)}, 1).add({V::p(5), V::q(1)}, 1).add_constant(-1);
        return detail::curated_problem(m, 10, {1, 2, 5}, {{3, 1}, {4, 0}, {6, 0}, {7, 0}, {8, 0}, {9, 1}},
                                       std::move(cl));
    }
    return std::nullopt;
}

}  // namespace vqf
