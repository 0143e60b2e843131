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
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vqf/errors.hpp"

namespace vqf {

enum class Family : uint8_t { P = 0, Q = 1, Z = 2 };

/// A Boolean unknown of the multiplication table.
///
/// P and Q variables are factor bits and use only `first` (the bit position).
/// Z variables are carries from column `first` into column `second`.
/// The defaulted ordering is P bits ascending, then Q bits ascending, then
/// carries in lexicographic (from, to) order; it doubles as the qubit order.
struct Variable {
    Family family = Family::P;
    int first = 0;
    int second = 0;

    static constexpr Variable p(int k) { return {Family::P, k, 0}; }
    static constexpr Variable q(int k) { return {Family::Q, k, 0}; }
    static constexpr Variable z(int from, int to) { return {Family::Z, from, to}; }

    bool is_carry() const { return family == Family::Z; }

    auto operator<=>(const Variable &) const = default;

    /// "p3", "q1", "z2_4".
    std::string name() const {
        switch (family) {
            case Family::P:
                return "p" + std::to_string(first);
            case Family::Q:
                return "q" + std::to_string(first);
            case Family::Z:
                return "z" + std::to_string(first) + "_" + std::to_string(second);
        }
        return "?";
    }

    static Variable parse(std::string_view text) {
        auto fail = [&]() -> Variable { throw ParseError("bad variable name '" + std::string(text) + "'"); };
        if (text.size() < 2) {
            return fail();
        }
        auto to_int = [&](std::string_view digits) {
            if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
                fail();
            }
            return std::stoi(std::string(digits));
        };
        char head = text[0];
        auto rest = text.substr(1);
        if (head == 'p') {
            return p(to_int(rest));
        }
        if (head == 'q') {
            return q(to_int(rest));
        }
        if (head == 'z') {
            auto sep = rest.find('_');
            if (sep == std::string_view::npos) {
                return fail();
            }
            return z(to_int(rest.substr(0, sep)), to_int(rest.substr(sep + 1)));
        }
        return fail();
    }
};

/// Sorted, duplicate-free product of variables. The empty monomial is 1.
using Monomial = std::vector<Variable>;

inline Monomial make_monomial(std::vector<Variable> vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

/// Integer multilinear polynomial over Boolean variables.
///
/// Invariants: no stored zero coefficient, every key is a sorted set
/// (x*x = x is applied on insertion), the constant lives outside `terms`.
class Clause {
   public:
    Clause() = default;
    explicit Clause(int64_t constant) : constant_(constant) {}

    /// Adds coeff * (product of vars). Repeated variables collapse.
    Clause &add(std::vector<Variable> vars, int64_t coeff) {
        auto mono = make_monomial(std::move(vars));
        if (mono.empty()) {
            constant_ += coeff;
            return *this;
        }
        auto [it, inserted] = terms_.try_emplace(std::move(mono), coeff);
        if (!inserted) {
            it->second += coeff;
        }
        if (it->second == 0) {
            terms_.erase(it);
        }
        return *this;
    }
    Clause &add(Variable v, int64_t coeff) { return add(std::vector<Variable>{v}, coeff); }
    Clause &add_constant(int64_t c) {
        constant_ += c;
        return *this;
    }

    const std::map<Monomial, int64_t> &terms() const { return terms_; }
    int64_t constant() const { return constant_; }
    bool is_constant() const { return terms_.empty(); }
    bool is_zero() const { return terms_.empty() && constant_ == 0; }

    /// Largest monomial degree; 0 for a constant clause.
    size_t degree() const {
        size_t d = 0;
        for (const auto &[mono, coeff] : terms_) {
            d = std::max(d, mono.size());
        }
        return d;
    }

    std::set<Variable> variables() const {
        std::set<Variable> out;
        for (const auto &[mono, coeff] : terms_) {
            out.insert(mono.begin(), mono.end());
        }
        return out;
    }

    /// Upper bound of the clause value over all Boolean assignments.
    int64_t max_value() const {
        int64_t total = constant_;
        for (const auto &[mono, coeff] : terms_) {
            total += std::max<int64_t>(coeff, 0);
        }
        return total;
    }
    /// Lower bound of the clause value over all Boolean assignments.
    int64_t min_value() const {
        int64_t total = constant_;
        for (const auto &[mono, coeff] : terms_) {
            total += std::min<int64_t>(coeff, 0);
        }
        return total;
    }

    /// Evaluates the clause; `value_of` maps a variable to 0 or 1.
    template <typename Lookup>
    int64_t evaluate(Lookup &&value_of) const {
        int64_t total = constant_;
        for (const auto &[mono, coeff] : terms_) {
            bool on = std::all_of(mono.begin(), mono.end(), [&](const Variable &v) { return value_of(v) != 0; });
            if (on) {
                total += coeff;
            }
        }
        return total;
    }

    Clause negated() const {
        Clause out(-constant_);
        for (const auto &[mono, coeff] : terms_) {
            out.terms_.emplace(mono, -coeff);
        }
        return out;
    }

    bool operator==(const Clause &) const = default;

    std::string str() const {
        std::ostringstream out;
        bool first = true;
        for (const auto &[mono, coeff] : terms_) {
            if (!first) {
                out << (coeff < 0 ? " - " : " + ");
            } else if (coeff < 0) {
                out << "-";
            }
            int64_t mag = coeff < 0 ? -coeff : coeff;
            if (mag != 1) {
                out << mag << "*";
            }
            for (size_t i = 0; i < mono.size(); ++i) {
                out << (i ? "*" : "") << mono[i].name();
            }
            first = false;
        }
        if (first) {
            out << constant_;
        } else if (constant_ != 0) {
            out << (constant_ < 0 ? " - " : " + ") << (constant_ < 0 ? -constant_ : constant_);
        }
        return out.str();
    }

   private:
    std::map<Monomial, int64_t> terms_;
    int64_t constant_ = 0;
};

inline std::set<Variable> variables_of(const std::vector<Clause> &clauses) {
    std::set<Variable> out;
    for (const auto &c : clauses) {
        auto vs = c.variables();
        out.insert(vs.begin(), vs.end());
    }
    return out;
}

}  // namespace vqf
