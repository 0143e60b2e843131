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

#include <cstdint>
#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vqf/clause.hpp"
#include "vqf/clause_gen.hpp"
#include "vqf/errors.hpp"
#include "vqf/relation_store.hpp"

namespace vqf {

/// Which deduction produced a fact; used for tracing and tests.
enum class Rule {
    none,
    product_one,      // x*y - 1 = 0        => x = y = 1
    pair_sum_one,     // x + y - 1 = 0      => x*y = 0
    scaled_single,    // a - b*x = 0        => x = 1
    sum_zero,         // sum x_i = 0        => x_i = 0
    sum_all,          // sum_{1..a} x_i - a => x_i = 1
    carry_bound,      // carry weight beyond reach => z = 0 (opt-in)
    equality,         // x - y = 0          => x = y (opt-in)
};

struct SimplifyOptions {
    /// Re-apply carry truncation inside the fixed-point loop using the
    /// current clause bounds. Off: only the five deduction rules run.
    bool carry_bound_rule = false;
    /// Deduce x = y from x - y = 0.
    bool equality_rule = false;
    /// Pass cap; 0 means 2 * (initial variable count).
    int max_passes = 0;
};

/// Replaces assigned variables by constants, rewrites equated variables as
/// their root literal (expanding 1 - y factors), deletes monomials that hold
/// a product-zero pair and merges like terms.
inline Clause substitute(const Clause &clause, const RelationStore &relations) {
    Clause out(clause.constant());
    for (const auto &[mono, coeff] : clause.terms()) {
        // Expand the product of literals as a small polynomial.
        std::map<Monomial, int64_t> partial{{Monomial{}, coeff}};
        bool vanished = false;
        for (const auto &v : mono) {
            auto r = relations.resolve(v);
            if (r.value) {
                if (*r.value == 0) {
                    vanished = true;
                    break;
                }
                continue;
            }
            std::map<Monomial, int64_t> next;
            for (const auto &[pm, pc] : partial) {
                auto with = make_monomial([&] {
                    auto m = pm;
                    m.push_back(r.literal.var);
                    return m;
                }());
                if (r.literal.negated) {
                    next[pm] += pc;
                    next[with] -= pc;
                } else {
                    next[with] += pc;
                }
            }
            partial = std::move(next);
        }
        if (vanished) {
            continue;
        }
        for (const auto &[pm, pc] : partial) {
            if (pc != 0 && !relations.kills(pm)) {
                out.add(pm, pc);
            }
        }
    }
    return out;
}

namespace detail {

/// Applies the first matching rule to an already-substituted clause.
/// Returns the rule that fired (Rule::none when nothing new was learned).
inline Rule apply_clause_rules(const Clause &raw, RelationStore &rel, const SimplifyOptions &opts) {
    if (raw.is_constant()) {
        if (raw.constant() != 0) {
            throw InfeasibleInstance("clause reduced to nonzero constant " + std::to_string(raw.constant()));
        }
        return Rule::none;
    }
    if (raw.max_value() < 0 || raw.min_value() > 0) {
        throw InfeasibleInstance("clause " + raw.str() + " has no Boolean root");
    }
    // Normalize so the constant is non-positive and, when it is zero, the
    // coefficients are not all negative.
    bool all_negative = true;
    for (const auto &[mono, coeff] : raw.terms()) {
        all_negative &= coeff < 0;
    }
    const Clause c = (raw.constant() > 0 || (raw.constant() == 0 && all_negative)) ? raw.negated() : raw;
    const auto &terms = c.terms();
    const int64_t k = c.constant();

    auto assign_all = [&](int bit) {
        bool changed = false;
        for (const auto &[mono, coeff] : terms) {
            for (const auto &v : mono) {
                changed |= rel.assign(v, bit);
            }
        }
        return changed;
    };

    if (terms.size() == 1) {
        const auto &[mono, coeff] = *terms.begin();
        if (k == 0) {
            // Single vanishing term.
            if (mono.size() == 1) {
                return rel.assign(mono[0], 0) ? Rule::sum_zero : Rule::none;
            }
            if (mono.size() == 2) {
                return rel.add_product_zero(mono[0], mono[1]) ? Rule::sum_zero : Rule::none;
            }
            return Rule::none;
        }
        if (coeff != -k) {
            throw InfeasibleInstance("clause " + c.str() + " has no Boolean root");
        }
        if (mono.size() >= 2 && coeff == 1) {
            return assign_all(1) ? Rule::product_one : Rule::none;
        }
        return assign_all(1) ? Rule::scaled_single : Rule::none;
    }

    bool all_unit_linear = true;
    bool all_unit = true;
    bool all_positive = true;
    for (const auto &[mono, coeff] : terms) {
        all_unit &= coeff == 1;
        all_unit_linear &= coeff == 1 && mono.size() == 1;
        all_positive &= coeff > 0;
    }
    if (k == -1 && terms.size() == 2 && all_unit_linear) {
        auto it = terms.begin();
        const auto x = it->first[0];
        const auto y = std::next(it)->first[0];
        return rel.add_product_zero(x, y) ? Rule::pair_sum_one : Rule::none;
    }
    if (k == 0 && all_positive) {
        bool changed = false;
        for (const auto &[mono, coeff] : terms) {
            if (mono.size() == 1) {
                changed |= rel.assign(mono[0], 0);
            } else if (mono.size() == 2) {
                changed |= rel.add_product_zero(mono[0], mono[1]);
            }
        }
        return changed ? Rule::sum_zero : Rule::none;
    }
    if (all_unit && k == -static_cast<int64_t>(terms.size())) {
        return assign_all(1) ? Rule::sum_all : Rule::none;
    }
    if (opts.equality_rule && k == 0 && terms.size() == 2) {
        auto it = terms.begin();
        const auto &[m1, c1] = *it;
        const auto &[m2, c2] = *std::next(it);
        if (m1.size() == 1 && m2.size() == 1 && c1 == -c2 && (c1 == 1 || c1 == -1)) {
            return rel.equate(m1[0], m2[0]) ? Rule::equality : Rule::none;
        }
    }
    if (opts.carry_bound_rule) {
        const int64_t hi = c.max_value();
        const int64_t lo = c.min_value();
        bool changed = false;
        for (const auto &[mono, coeff] : terms) {
            if (mono.size() != 1 || !mono[0].is_carry()) {
                continue;
            }
            // hi and lo exclude this term's own sign; setting the carry to 1
            // would leave the clause unable to reach 0.
            if ((coeff < 0 && hi + coeff < 0) || (coeff > 0 && lo + coeff > 0)) {
                changed |= rel.assign(mono[0], 0);
            }
        }
        if (changed) {
            return Rule::carry_bound;
        }
    }
    return Rule::none;
}

}  // namespace detail

struct RulePassResult {
    std::vector<Clause> clauses;
    bool changed = false;
    std::vector<Rule> fired;  // one entry per clause
};

/// One pass over all clauses in index order. Facts are applied eagerly, so
/// later clauses in the pass already see what earlier ones deduced.
inline RulePassResult apply_rules(std::vector<Clause> clauses, RelationStore &relations,
                                  const SimplifyOptions &opts = {}) {
    RulePassResult out;
    out.fired.reserve(clauses.size());
    for (auto &clause : clauses) {
        auto current = substitute(clause, relations);
        out.changed |= !(current == clause);
        auto rule = detail::apply_clause_rules(current, relations, opts);
        out.fired.push_back(rule);
        if (rule != Rule::none) {
            out.changed = true;
            current = substitute(current, relations);
        }
        clause = std::move(current);
    }
    out.clauses = std::move(clauses);
    return out;
}

/// Reduced problem: surviving clauses and the qubit register they act on.
struct SimplifiedProblem {
    uint64_t m = 0;
    int n_p = 0;
    int n_q = 0;
    LengthMode length_mode = LengthMode::known;
    std::vector<Clause> clauses;
    std::vector<Variable> qubit_map;
    RelationStore relations;
    int n = 0;
    int n_z = 0;
    int passes = 0;
    bool curated = false;

    int qubit_of(const Variable &v) const {
        auto it = std::lower_bound(qubit_map.begin(), qubit_map.end(), v);
        return (it != qubit_map.end() && *it == v) ? static_cast<int>(it - qubit_map.begin()) : -1;
    }
};

/// Basis-state convention: qubit k is bit (n - 1 - k) of the basis index, so
/// the bitstring printed qubit 0 first reads the index in binary.
inline int basis_bit(uint64_t index, int qubit, int n) { return static_cast<int>((index >> (n - 1 - qubit)) & 1U); }

inline std::string basis_bitstring(uint64_t index, int n) {
    std::string s(static_cast<size_t>(n), '0');
    for (int k = 0; k < n; ++k) {
        s[static_cast<size_t>(k)] = basis_bit(index, k, n) ? '1' : '0';
    }
    return s;
}

/// Value of any original variable at a basis state, restored through the
/// relation store when the variable was eliminated.
inline int variable_value(const SimplifiedProblem &prob, const Variable &v, uint64_t index) {
    auto r = prob.relations.resolve(v);
    if (r.value) {
        return *r.value;
    }
    int k = prob.qubit_of(r.literal.var);
    if (k < 0) {
        throw Error("variable " + v.name() + " is neither assigned nor mapped to a qubit");
    }
    return basis_bit(index, k, prob.n) ^ static_cast<int>(r.literal.negated);
}

struct FactorPair {
    uint64_t p = 0;
    uint64_t q = 0;
    bool operator==(const FactorPair &) const = default;
    auto operator<=>(const FactorPair &) const = default;
};

/// Reassembles (p, q) from a basis state. Bit 0 of both factors is 1.
inline FactorPair decode_factors(const SimplifiedProblem &prob, uint64_t index) {
    FactorPair out{1, 1};
    for (int k = 1; k < prob.n_p; ++k) {
        out.p |= static_cast<uint64_t>(variable_value(prob, Variable::p(k), index)) << k;
    }
    for (int k = 1; k < prob.n_q; ++k) {
        out.q |= static_cast<uint64_t>(variable_value(prob, Variable::q(k), index)) << k;
    }
    return out;
}

inline bool is_nontrivial_factorization(const FactorPair &f, uint64_t m) {
    return f.p > 1 && f.q > 1 && f.p <= m / f.q && f.p * f.q == m;
}

/// Runs (substitute, apply_rules) to a fixed point or the pass cap, drops
/// clauses that became 0 and numbers the surviving variables as qubits.
/// Variables that drop out of every clause without being determined are
/// genuinely free and keep a qubit.
namespace detail {

/// True when some clause over a small superset of the variables of `c`
/// forces c = 0 on all of its own zeros.
inline bool implied_by(const std::vector<Clause> &clauses, const Clause &c) {
    const auto need = c.variables();
    for (const auto &k : clauses) {
        const auto have = k.variables();
        if (have.size() > 12 || !std::includes(have.begin(), have.end(), need.begin(), need.end())) {
            continue;
        }
        const std::vector<Variable> vars(have.begin(), have.end());
        bool forced = true;
        for (uint64_t bits = 0; forced && bits < (uint64_t{1} << vars.size()); ++bits) {
            auto value_of = [&](const Variable &v) {
                const auto i = std::lower_bound(vars.begin(), vars.end(), v) - vars.begin();
                return static_cast<int>((bits >> i) & 1);
            };
            if (k.evaluate(value_of) == 0 && c.evaluate(value_of) != 0) {
                forced = false;
            }
        }
        if (forced) {
            return true;
        }
    }
    return false;
}

}  // namespace detail

inline SimplifiedProblem simplify(std::vector<Clause> clauses, RelationStore relations = {},
                                  const SimplifyOptions &opts = {}) {
    const auto universe = variables_of(clauses);
    const int cap = opts.max_passes > 0 ? opts.max_passes : std::max<int>(1, 2 * static_cast<int>(universe.size()));
    SimplifiedProblem out;
    int passes = 0;
    bool changed = true;
    while (changed && passes < cap) {
        auto pass = apply_rules(std::move(clauses), relations, opts);
        clauses = std::move(pass.clauses);
        changed = pass.changed;
        ++passes;
    }
    for (auto &c : clauses) {
        c = substitute(c, relations);
    }
    std::vector<Clause> kept;
    for (auto &c : clauses) {
        if (c.is_constant()) {
            if (c.constant() != 0) {
                throw InfeasibleInstance("clause reduced to nonzero constant " + std::to_string(c.constant()));
            }
            continue;
        }
        kept.push_back(std::move(c));
    }
    // Product-zero facts not already forced by the remaining clauses have to
    // stay in the penalty, otherwise their violations become ground states.
    for (auto &pc : relations.take_product_constraints()) {
        if (!detail::implied_by(kept, pc)) {
            kept.push_back(std::move(pc));
        }
    }
    auto live = variables_of(kept);
    for (const auto &v : universe) {
        auto r = relations.resolve(v);
        if (!r.value) {
            live.insert(r.literal.var);
        }
    }
    out.clauses = std::move(kept);
    out.qubit_map.assign(live.begin(), live.end());
    out.relations = std::move(relations);
    out.n = static_cast<int>(out.qubit_map.size());
    out.n_z = static_cast<int>(std::count_if(out.qubit_map.begin(), out.qubit_map.end(),
                                             [](const Variable &v) { return v.is_carry(); }));
    out.passes = passes;
    return out;
}

/// Clause generation plus simplification for an instance; in known-length
/// mode the leading factor bits enter as assignments.
inline SimplifiedProblem simplify_instance(const FactoringInstance &inst, const SimplifyOptions &opts = {}) {
    RelationStore rel;
    if (inst.fixes_leading_bits()) {
        if (inst.n_p > 1) {
            rel.assign(Variable::p(inst.n_p - 1), 1);
        }
        if (inst.n_q > 1) {
            rel.assign(Variable::q(inst.n_q - 1), 1);
        }
    }
    auto out = simplify(generate_clauses(inst), std::move(rel), opts);
    out.m = inst.m;
    out.n_p = inst.n_p;
    out.n_q = inst.n_q;
    out.length_mode = inst.length_mode;
    return out;
}

}  // namespace vqf
