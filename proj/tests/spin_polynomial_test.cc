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
#include "vqf/spin_polynomial.hpp"

#include <random>
#include <set>

#include "gtest/gtest.h"
#include "vqf/instances.hpp"
#include "vqf/pipeline.hpp"

using namespace vqf;

namespace {

const Dyadic half = Dyadic::from_parts(1, 1);
const Dyadic quarter = Dyadic::from_parts(1, 2);

std::vector<int> bits_of(uint64_t b, int n) {
    std::vector<int> bits(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        bits[static_cast<size_t>(k)] = basis_bit(b, k, n);
    }
    return bits;
}

/// Sum of squared clause values at basis state b, straight from the clauses.
int64_t clause_energy(const SimplifiedProblem &p, uint64_t b) {
    int64_t e = 0;
    for (const auto &c : p.clauses) {
        int64_t v = c.evaluate([&](const Variable &var) { return basis_bit(b, p.qubit_of(var), p.n); });
        e += v * v;
    }
    return e;
}

}  // namespace

TEST(quantize, examples) {
    std::vector<Variable> one{Variable::p(1)};
    Clause c;
    c.add(Variable::p(1), 1).add_constant(-1);
    auto s = quantize(c, one);
    EXPECT_EQ(s.terms().size(), 2u);
    EXPECT_EQ(s.coefficient({}), -half);
    EXPECT_EQ(s.coefficient({0}), -half);

    EXPECT_TRUE(quantize(Clause(), one).empty());

    std::vector<Variable> two{Variable::p(1), Variable::q(1)};
    Clause xy;
    xy.add({Variable::p(1), Variable::q(1)}, 1);
    auto t = quantize(xy, two);
    EXPECT_EQ(t.coefficient({}), quarter);
    EXPECT_EQ(t.coefficient({0}), -quarter);
    EXPECT_EQ(t.coefficient({1}), -quarter);
    EXPECT_EQ(t.coefficient({0, 1}), quarter);

    Clause bad;
    bad.add(Variable::q(4), 1);
    EXPECT_THROW(quantize(bad, two), Error);
}

TEST(square_and_sum, examples) {
    SpinPolynomial p;
    p.add({}, -half).add({0}, -half);
    auto h = square_and_sum({p});
    EXPECT_EQ(h.terms().size(), 2u);
    EXPECT_EQ(h.coefficient({}), half);
    EXPECT_EQ(h.coefficient({0}), half);
    EXPECT_TRUE(square_and_sum({}).empty());
}

TEST(spin_polynomial, z_squared_is_identity) {
    SpinPolynomial p;
    p.add({1, 0, 1}, Dyadic(3));
    EXPECT_EQ(p.coefficient({0}), Dyadic(3));
    SpinPolynomial q;
    q.add({2}, Dyadic(1));
    EXPECT_EQ((q * q).coefficient({}), Dyadic(1));
    EXPECT_EQ((q * q).degree(), 0u);
}

TEST(hamiltonian, diagonal_matches_clause_energies) {
    for (const auto &r : kReferenceInstances) {
        auto p = prepare_problem(r.m);
        if (p.n > 14) {
            continue;
        }
        auto h = build_hamiltonian(p);
        auto t = diagonal(h, p.n);
        ASSERT_EQ(t.size(), size_t{1} << p.n);
        for (uint64_t b = 0; b < t.size(); ++b) {
            EXPECT_EQ(t[b], static_cast<double>(clause_energy(p, b))) << r.m << " state " << b;
            EXPECT_EQ(energy(h, bits_of(b, p.n), p.n), t[b]);
        }
    }
}

TEST(hamiltonian, m35_table) {
    auto p = prepare_problem(35);
    auto t = diagonal(build_hamiltonian(p), p.n);
    // Two copies of p1 + q1 - 1: energies 2(p1 + q1 - 1)^2.
    EXPECT_EQ(t.values, (std::vector<double>{2, 0, 0, 2}));
}

TEST(hamiltonian, locality_nonnegativity_and_dyadic_structure) {
    for (const auto &r : kReferenceInstances) {
        auto p = prepare_problem(r.m);
        auto h = build_hamiltonian(p);
        size_t d = 0;
        for (const auto &c : p.clauses) {
            d = std::max(d, c.degree());
        }
        EXPECT_LE(h.degree(), 2 * d);
        EXPECT_LE(h.degree(), 4u);
        for (const auto &[mono, c] : h.terms()) {
            EXPECT_LE(c.shift(), static_cast<int>(2 * d)) << r.m;
        }
        if (p.n <= 14) {
            for (double e : diagonal(h, p.n).values) {
                EXPECT_GE(e, 0.0);
                EXPECT_EQ(e, std::floor(e));
            }
        }
    }
}

TEST(diagonal, random_polynomials_match_pointwise_energy) {
    std::mt19937_64 gen(7);
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (int trial = 0; trial < 20; ++trial) {
        SpinPolynomial h;
        for (int mask = 0; mask < 8; ++mask) {
            ZMonomial mono;
            for (int k = 0; k < 3; ++k) {
                if (mask & (1 << k)) mono.push_back(k);
            }
            h.add(mono, Dyadic::from_parts(coeff(gen), 3));
        }
        auto t = diagonal(h, 3);
        for (uint64_t b = 0; b < 8; ++b) {
            EXPECT_EQ(t[b], energy(h, bits_of(b, 3), 3));
        }
    }
}

TEST(diagonal, edge_cases) {
    auto c = SpinPolynomial::constant(Dyadic(5));
    auto t0 = diagonal(c, 0);
    EXPECT_EQ(t0.values, (std::vector<double>{5.0}));
    EXPECT_THROW(diagonal(c, 25), CapExceeded);
    EXPECT_THROW(diagonal(c, 13, 12), CapExceeded);
    SpinPolynomial z3;
    z3.add({3}, Dyadic(1));
    EXPECT_THROW(diagonal(z3, 2), DimensionMismatch);
    EXPECT_THROW(energy(z3, {0, 1}, 3), DimensionMismatch);
    EXPECT_EQ(energy(SpinPolynomial(), {1, 0, 1}, 3), 0.0);
}

TEST(ground_states, m56153_has_two_symmetric_roots) {
    auto p = prepare_problem(56153);
    auto t = diagonal(build_hamiltonian(p), p.n);
    EXPECT_EQ(t.size(), 16u);
    EXPECT_EQ(std::count(t.values.begin(), t.values.end(), 0.0), 2);
}

TEST(ground_states, decode_to_factors) {
    auto p35 = prepare_problem(35);
    auto g = ground_states_bruteforce(build_hamiltonian(p35), p35.n);
    EXPECT_EQ(g.min_energy, 0.0);
    std::set<std::pair<uint64_t, uint64_t>> pairs;
    for (auto b : g.states) {
        auto f = decode_factors(p35, b);
        pairs.insert({f.p, f.q});
    }
    EXPECT_EQ(pairs, (std::set<std::pair<uint64_t, uint64_t>>{{7, 5}, {5, 7}}));

    auto p77 = prepare_problem(77);
    auto g77 = ground_states_bruteforce(build_hamiltonian(p77), p77.n);
    EXPECT_EQ(g77.min_energy, 0.0);
    ASSERT_FALSE(g77.states.empty());
    for (auto b : g77.states) {
        auto f = decode_factors(p77, b);
        EXPECT_EQ(std::minmax(f.p, f.q), std::minmax(uint64_t{7}, uint64_t{11}));
    }

    auto empty = ground_states_bruteforce(SpinPolynomial(), 1);
    EXPECT_EQ(empty.min_energy, 0.0);
    EXPECT_EQ(empty.states, (std::vector<uint64_t>{0, 1}));
}
