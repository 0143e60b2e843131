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
#include "vqf/simplifier.hpp"

#include <map>
#include <set>

#include "gtest/gtest.h"
#include "vqf/instances.hpp"

using namespace vqf;

namespace {

const Variable x = Variable::p(1);
const Variable y = Variable::q(1);
const Variable z = Variable::z(1, 2);

Clause lin(std::initializer_list<std::pair<Variable, int64_t>> terms, int64_t constant) {
    Clause c(constant);
    for (const auto &[v, k] : terms) {
        c.add(v, k);
    }
    return c;
}

using Assignment = std::map<Variable, int>;

bool satisfies(const std::vector<Clause> &cl, const Assignment &a) {
    for (const auto &c : cl) {
        if (c.evaluate([&](const Variable &v) { return a.at(v); }) != 0) {
            return false;
        }
    }
    return true;
}

/// Every satisfying assignment of the generated system, by enumeration.
std::set<Assignment> original_solutions(const FactoringInstance &inst) {
    auto cl = generate_clauses(inst);
    auto vs = variables_of(cl);
    std::vector<Variable> vars(vs.begin(), vs.end());
    std::set<Assignment> out;
    for (uint64_t bits = 0; bits < (uint64_t{1} << vars.size()); ++bits) {
        Assignment a;
        for (size_t k = 0; k < vars.size(); ++k) {
            a[vars[k]] = static_cast<int>((bits >> k) & 1);
        }
        if (inst.fixes_leading_bits()) {
            if (a.count(Variable::p(inst.n_p - 1)) && a[Variable::p(inst.n_p - 1)] == 0) continue;
            if (a.count(Variable::q(inst.n_q - 1)) && a[Variable::q(inst.n_q - 1)] == 0) continue;
        }
        if (satisfies(cl, a)) {
            out.insert(a);
        }
    }
    return out;
}

/// Zeros of the reduced system, lifted back to the original variables.
std::set<Assignment> reduced_solutions(const SimplifiedProblem &prob, const std::set<Variable> &universe) {
    std::set<Assignment> out;
    for (uint64_t b = 0; b < (uint64_t{1} << prob.n); ++b) {
        Assignment q;
        for (int k = 0; k < prob.n; ++k) {
            q[prob.qubit_map[static_cast<size_t>(k)]] = basis_bit(b, k, prob.n);
        }
        if (!satisfies(prob.clauses, q)) {
            continue;
        }
        Assignment a;
        for (const auto &v : universe) {
            a[v] = variable_value(prob, v, b);
        }
        out.insert(a);
    }
    return out;
}

}  // namespace

TEST(substitute, constants_products_and_idempotence) {
    RelationStore r;
    r.assign(x, 1);
    EXPECT_EQ(substitute(lin({{x, 1}, {y, 1}}, -1), r), lin({{y, 1}}, 0));

    RelationStore pz;
    pz.add_product_zero(x, y);
    Clause c;
    c.add({x, y}, 1).add(z, 1);
    EXPECT_EQ(substitute(c, pz), lin({{z, 1}}, 0));

    Clause sq;
    sq.add({x, x}, 1).add(x, -1);
    EXPECT_TRUE(substitute(sq, RelationStore{}).is_zero());
}

TEST(substitute, complemented_equality_expands) {
    RelationStore r;
    r.equate(y, x, true);  // y = 1 - x
    Clause c;
    c.add({x, y}, 1).add(y, 2).add_constant(-2);
    // x(1 - x) + 2(1 - x) - 2 = -2x
    EXPECT_EQ(substitute(c, r), lin({{x, -2}}, 0));
}

TEST(apply_rules, each_rule_fires) {
    {
        RelationStore r;
        Clause c;
        c.add({x, y}, 1).add_constant(-1);
        auto res = apply_rules({c}, r);
        EXPECT_EQ(res.fired[0], Rule::product_one);
        EXPECT_EQ(r.value(x), 1);
        EXPECT_EQ(r.value(y), 1);
        EXPECT_TRUE(res.changed);
    }
    {
        RelationStore r;
        auto res = apply_rules({lin({{x, 1}, {y, 1}}, -1)}, r);
        EXPECT_EQ(res.fired[0], Rule::pair_sum_one);
        EXPECT_TRUE(r.kills(make_monomial({x, y})));
        EXPECT_FALSE(r.is_assigned(x));
    }
    {
        RelationStore r;
        auto res = apply_rules({lin({{z, -2}}, 2)}, r);
        EXPECT_EQ(res.fired[0], Rule::scaled_single);
        EXPECT_EQ(r.value(z), 1);
    }
    {
        RelationStore r;
        auto res = apply_rules({lin({{x, 1}, {y, 1}, {z, 1}}, 0)}, r);
        EXPECT_EQ(res.fired[0], Rule::sum_zero);
        EXPECT_EQ(r.value(x), 0);
        EXPECT_EQ(r.value(z), 0);
    }
    {
        RelationStore r;
        auto res = apply_rules({lin({{x, 1}, {y, 1}, {z, 1}}, -3)}, r);
        EXPECT_EQ(res.fired[0], Rule::sum_all);
        EXPECT_EQ(r.value(y), 1);
    }
}

TEST(apply_rules, facts_reach_later_clauses_in_the_same_pass) {
    RelationStore r;
    auto res = apply_rules({lin({{x, 1}}, -1), lin({{x, 1}, {y, 1}}, -1)}, r);
    EXPECT_EQ(r.value(y), 0);
    EXPECT_TRUE(res.clauses[1].is_zero());
}

TEST(apply_rules, no_fire_means_no_change) {
    RelationStore r;
    auto res = apply_rules({lin({{x, 1}, {y, 1}, {z, -2}}, 0)}, r);
    EXPECT_EQ(res.fired[0], Rule::none);
    EXPECT_FALSE(res.changed);
    EXPECT_EQ(r.fact_count(), 0u);
}

TEST(apply_rules, opt_in_rules_are_off_by_default) {
    RelationStore r;
    auto res = apply_rules({lin({{x, 1}, {y, -1}}, 0)}, r);
    EXPECT_EQ(res.fired[0], Rule::none);
    SimplifyOptions o;
    o.equality_rule = true;
    RelationStore r2;
    auto res2 = apply_rules({lin({{x, 1}, {y, -1}}, 0)}, r2, o);
    EXPECT_EQ(res2.fired[0], Rule::equality);
    EXPECT_EQ(r2.resolve(y).literal.var, x);
}

TEST(simplify, single_clause) {
    auto p = simplify({lin({{x, 1}}, -1)});
    EXPECT_EQ(p.n, 0);
    EXPECT_TRUE(p.clauses.empty());
    EXPECT_EQ(p.relations.value(x), 1);
}

TEST(simplify, nonzero_constant_is_infeasible) {
    EXPECT_THROW(simplify({lin({{x, 1}}, -1), lin({{x, 1}}, 0)}), InfeasibleInstance);
    EXPECT_THROW(simplify({lin({{x, 1}, {y, 1}}, -3)}), InfeasibleInstance);
}

TEST(simplify, reference_counts_35_and_77) {
    auto p35 = simplify_instance(FactoringInstance::make(35, LengthMode::known, reference_lengths(35)));
    EXPECT_EQ(p35.n, 2);
    EXPECT_EQ(p35.n_z, 0);
    auto p77 = simplify_instance(FactoringInstance::make(77, LengthMode::known, reference_lengths(77)));
    EXPECT_EQ(p77.n, 6);
    EXPECT_EQ(p77.n_z, 3);
}

TEST(simplify, qubit_map_order_and_coverage) {
    for (uint64_t m : {35ull, 77ull, 1207ull, 33667ull}) {
        auto p = simplify_instance(FactoringInstance::make(m, LengthMode::known, reference_lengths(m)));
        EXPECT_TRUE(std::is_sorted(p.qubit_map.begin(), p.qubit_map.end()));
        EXPECT_EQ(p.n, static_cast<int>(p.qubit_map.size()));
        for (const auto &c : p.clauses) {
            EXPECT_FALSE(c.is_constant());
            for (const auto &v : c.variables()) {
                EXPECT_GE(p.qubit_of(v), 0) << v.name();
            }
        }
    }
}

TEST(simplify, preserves_solutions_exactly) {
    std::vector<FactoringInstance> cases{
        FactoringInstance::make(35, LengthMode::known, reference_lengths(35)),
        FactoringInstance::make(77, LengthMode::known, reference_lengths(77)),
        FactoringInstance::make(35, LengthMode::wlog),
        FactoringInstance::make(15, LengthMode::wlog),
        FactoringInstance::make(91, LengthMode::known, FactorLengths{4, 3}),
        FactoringInstance::make(143, LengthMode::known, FactorLengths{4, 4}),
    };
    for (bool carry_bound : {false, true}) {
        SimplifyOptions o;
        o.carry_bound_rule = carry_bound;
        for (const auto &inst : cases) {
            const auto universe = variables_of(generate_clauses(inst));
            if (universe.size() > 20) {
                continue;
            }
            auto prob = simplify_instance(inst, o);
            auto orig = original_solutions(inst);
            auto red = reduced_solutions(prob, universe);
            EXPECT_FALSE(orig.empty()) << inst.m;
            EXPECT_EQ(red, orig) << inst.m << " carry_bound=" << carry_bound;
        }
    }
}

TEST(simplify, is_idempotent) {
    for (uint64_t m : {35ull, 77ull, 1207ull, 33667ull}) {
        auto p = simplify_instance(FactoringInstance::make(m, LengthMode::known, reference_lengths(m)));
        auto again = simplify(p.clauses, p.relations);
        EXPECT_EQ(again.clauses, p.clauses) << m;
        EXPECT_EQ(again.qubit_map, p.qubit_map) << m;
        EXPECT_EQ(again.relations, p.relations) << m;
        // Leftover product-zero facts live as clauses, so a third pass must
        // reproduce the second.
        auto third = simplify(again.clauses, again.relations);
        EXPECT_EQ(third.clauses, again.clauses) << m;
        EXPECT_EQ(third.relations, again.relations) << m;
    }
}

TEST(simplify, pass_cap_bounds_the_loop) {
    for (uint64_t m = 9; m < 2000; m += 2) {
        auto inst = FactoringInstance::make(m, LengthMode::wlog);
        const auto vars = variables_of(generate_clauses(inst)).size();
        auto p = simplify_instance(inst);
        EXPECT_LE(p.passes, static_cast<int>(2 * vars)) << m;
        EXPECT_LE(p.n, static_cast<int>(vars)) << m;
    }
    SimplifyOptions one;
    one.max_passes = 1;
    auto p = simplify_instance(FactoringInstance::make(1207, LengthMode::known, reference_lengths(1207)), one);
    EXPECT_EQ(p.passes, 1);
}

TEST(simplify, carry_bound_rule_removes_more) {
    SimplifyOptions o;
    o.carry_bound_rule = true;
    for (uint64_t m : {1207ull, 33667ull}) {
        auto inst = FactoringInstance::make(m, LengthMode::known, reference_lengths(m));
        EXPECT_LT(simplify_instance(inst, o).n, simplify_instance(inst).n) << m;
    }
}

TEST(decode_factors, restores_eliminated_bits) {
    auto p = simplify_instance(FactoringInstance::make(35, LengthMode::known, reference_lengths(35)));
    std::set<std::pair<uint64_t, uint64_t>> pairs;
    for (uint64_t b = 0; b < 4; ++b) {
        auto f = decode_factors(p, b);
        if (is_nontrivial_factorization(f, 35)) {
            pairs.insert({f.p, f.q});
        }
    }
    EXPECT_EQ(pairs, (std::set<std::pair<uint64_t, uint64_t>>{{5, 7}, {7, 5}}));
    EXPECT_FALSE(is_nontrivial_factorization({1, 35}, 35));
    EXPECT_FALSE(is_nontrivial_factorization({35, 1}, 35));
    EXPECT_FALSE(is_nontrivial_factorization({5, 5}, 35));
    EXPECT_EQ(basis_bitstring(1, 2), "01");
    EXPECT_EQ(basis_bit(1, 1, 2), 1);
    EXPECT_EQ(basis_bit(1, 0, 2), 0);
}
