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
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "vqf/clause.hpp"
#include "vqf/errors.hpp"

namespace vqf {

/// A variable or its complement: value = negated ? 1 - var : var.
struct Literal {
    Variable var;
    bool negated = false;
    bool operator==(const Literal &) const = default;
};

/// Facts deduced while simplifying: constant assignments, (anti-)equalities
/// kept in a union-find with parity, and pairwise product-zero facts.
///
/// Assignments live on class roots, so a variable is never assigned and
/// equated to something free at the same time. Any contradiction throws
/// InfeasibleInstance. Every mutator returns true iff the store changed.
class RelationStore {
   public:
    struct Resolved {
        Literal literal;            // root literal, meaningful when !value
        std::optional<int> value;  // set when the class is assigned
    };

    Resolved resolve(const Variable &v) const {
        auto [root, parity] = find(v);
        Resolved out{{root, parity}, std::nullopt};
        if (auto it = root_values_.find(root); it != root_values_.end()) {
            out.value = it->second ^ static_cast<int>(parity);
        }
        return out;
    }

    std::optional<int> value(const Variable &v) const { return resolve(v).value; }
    bool is_assigned(const Variable &v) const { return value(v).has_value(); }

    bool assign(const Variable &v, int bit) {
        if (bit != 0 && bit != 1) {
            throw InfeasibleInstance("assignment value must be 0 or 1");
        }
        auto [root, parity] = find(v);
        const int root_bit = bit ^ static_cast<int>(parity);
        auto [it, inserted] = root_values_.try_emplace(root, root_bit);
        if (!inserted) {
            if (it->second != root_bit) {
                throw InfeasibleInstance("contradictory assignments for " + v.name());
            }
            return false;
        }
        check_product_zeros();
        return true;
    }

    /// Records x = y (or x = 1 - y when `negated`).
    bool equate(const Variable &x, const Variable &y, bool negated = false) {
        auto [rx, px] = find(x);
        auto [ry, py] = find(y);
        const bool rel = px ^ py ^ negated;
        if (rx == ry) {
            if (rel) {
                throw InfeasibleInstance(x.name() + " cannot equal its own complement");
            }
            return false;
        }
        // The smaller variable becomes the root so qubit order stays stable.
        if (ry < rx) {
            std::swap(rx, ry);
        }
        parent_[ry] = {rx, rel};
        auto vy = root_values_.find(ry);
        if (vy != root_values_.end()) {
            const int bit = vy->second ^ static_cast<int>(rel);
            root_values_.erase(vy);
            auto [it, inserted] = root_values_.try_emplace(rx, bit);
            if (!inserted && it->second != bit) {
                throw InfeasibleInstance("equality contradicts assignments");
            }
        }
        canonicalize_product_zeros();
        check_product_zeros();
        return true;
    }

    /// Records x * y = 0.
    bool add_product_zero(const Variable &x, const Variable &y) {
        recorded_products_.insert(ordered(x, y));
        auto rx = resolve(x);
        auto ry = resolve(y);
        if ((rx.value && *rx.value == 0) || (ry.value && *ry.value == 0)) {
            return false;
        }
        if (rx.value && ry.value) {
            throw InfeasibleInstance("product " + x.name() + "*" + y.name() + " is 1 but must vanish");
        }
        if (rx.value || ry.value) {
            // One side is 1, so the other must be 0.
            return assign(rx.value ? y : x, 0);
        }
        if (rx.literal.negated || ry.literal.negated) {
            // Implied by the clause that produced it; not representable on roots.
            return false;
        }
        if (rx.literal.var == ry.literal.var) {
            return assign(x, 0);
        }
        auto key = ordered(rx.literal.var, ry.literal.var);
        return product_zeros_.insert(key).second;
    }

    /// True when a monomial over root variables contains a product-zero pair.
    bool kills(const Monomial &mono) const {
        for (const auto &[a, b] : product_zeros_) {
            if (std::binary_search(mono.begin(), mono.end(), a) && std::binary_search(mono.begin(), mono.end(), b)) {
                return true;
            }
        }
        return false;
    }

    /// Every variable with a known value (roots and their class members).
    std::map<Variable, int> assignments() const {
        std::map<Variable, int> out;
        for (const auto &[root, bit] : root_values_) {
            out[root] = bit;
        }
        for (const auto &[child, link] : parent_) {
            if (auto v = value(child)) {
                out[child] = *v;
            }
        }
        return out;
    }

    /// Non-root variables whose class is still free: (variable, root literal).
    std::vector<std::pair<Variable, Literal>> equalities() const {
        std::vector<std::pair<Variable, Literal>> out;
        for (const auto &[child, link] : parent_) {
            auto r = resolve(child);
            if (!r.value) {
                out.emplace_back(child, r.literal);
            }
        }
        return out;
    }

    const std::set<std::pair<Variable, Variable>> &product_zeros() const { return product_zeros_; }

    /// x * y rewritten over root literals and known values.
    Clause product_of(const Variable &x, const Variable &y) const {
        // Each side is c0 + c1 * root.
        auto side = [&](const Variable &v) -> std::tuple<int64_t, int64_t, Variable> {
            auto r = resolve(v);
            if (r.value) {
                return {*r.value, 0, r.literal.var};
            }
            return r.literal.negated ? std::tuple<int64_t, int64_t, Variable>{1, -1, r.literal.var}
                                     : std::tuple<int64_t, int64_t, Variable>{0, 1, r.literal.var};
        };
        auto [a0, a1, u] = side(x);
        auto [b0, b1, w] = side(y);
        Clause c(a0 * b0);
        if (a0 * b1 != 0) c.add(w, a0 * b1);
        if (a1 * b0 != 0) c.add(u, a1 * b0);
        if (a1 * b1 != 0) c.add({u, w}, a1 * b1);
        return c;
    }

    /// Every product-zero fact recorded so far, as a clause over the
    /// remaining free variables; the facts are removed from the store. Facts
    /// that hold identically are skipped, violated ones are infeasible.
    std::vector<Clause> take_product_constraints() {
        std::vector<Clause> out;
        for (const auto &[x, y] : recorded_products_) {
            auto c = product_of(x, y);
            if (c.is_constant()) {
                if (c.constant() != 0) {
                    throw InfeasibleInstance("product " + x.name() + "*" + y.name() + " is 1 but must vanish");
                }
                continue;
            }
            if (std::find(out.begin(), out.end(), c) == out.end()) {
                out.push_back(std::move(c));
            }
        }
        recorded_products_.clear();
        product_zeros_.clear();
        return out;
    }

    size_t fact_count() const { return root_values_.size() + parent_.size() + product_zeros_.size(); }

    bool operator==(const RelationStore &other) const {
        return assignments() == other.assignments() && equalities() == other.equalities() &&
               product_zeros_ == other.product_zeros_;
    }

   private:
    static std::pair<Variable, Variable> ordered(const Variable &a, const Variable &b) {
        return a < b ? std::pair{a, b} : std::pair{b, a};
    }

    std::pair<Variable, bool> find(const Variable &v) const {
        Variable cur = v;
        bool parity = false;
        for (auto it = parent_.find(cur); it != parent_.end(); it = parent_.find(cur)) {
            parity ^= it->second.second;
            cur = it->second.first;
        }
        return {cur, parity};
    }

    void canonicalize_product_zeros() {
        std::set<std::pair<Variable, Variable>> next;
        for (const auto &[a, b] : product_zeros_) {
            auto ra = find(a);
            auto rb = find(b);
            if (ra.second || rb.second || ra.first == rb.first) {
                continue;
            }
            next.insert(ordered(ra.first, rb.first));
        }
        product_zeros_ = std::move(next);
    }

    void check_product_zeros() {
        std::vector<std::pair<Variable, Variable>> pending(product_zeros_.begin(), product_zeros_.end());
        for (const auto &[a, b] : pending) {
            auto va = value(a);
            auto vb = value(b);
            if (va && vb && *va == 1 && *vb == 1) {
                throw InfeasibleInstance("product " + a.name() + "*" + b.name() + " is 1 but must vanish");
            }
            if ((va && *va == 0) || (vb && *vb == 0)) {
                product_zeros_.erase({a, b});
            } else if (va || vb) {
                product_zeros_.erase({a, b});
                assign(va ? b : a, 0);
            }
        }
    }

    std::map<Variable, std::pair<Variable, bool>> parent_;
    std::map<Variable, int> root_values_;
    std::set<std::pair<Variable, Variable>> product_zeros_;
    std::set<std::pair<Variable, Variable>> recorded_products_;
};

}  // namespace vqf
