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
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "vqf/clause.hpp"
#include "vqf/dyadic.hpp"
#include "vqf/errors.hpp"
#include "vqf/simplifier.hpp"

namespace vqf {

/// Sorted, duplicate-free set of qubit indices; empty means identity.
using ZMonomial = std::vector<int>;

/// Real (exactly dyadic) combination of products of Pauli Z operators.
/// Diagonal in the computational basis by construction.
class SpinPolynomial {
   public:
    SpinPolynomial() = default;

    static SpinPolynomial constant(Dyadic c) {
        SpinPolynomial out;
        out.add({}, c);
        return out;
    }

    SpinPolynomial &add(ZMonomial mono, Dyadic coeff) {
        std::sort(mono.begin(), mono.end());
        // Z_k^2 = I: equal indices cancel in pairs.
        ZMonomial reduced;
        for (size_t i = 0; i < mono.size();) {
            size_t j = i;
            while (j < mono.size() && mono[j] == mono[i]) {
                ++j;
            }
            if ((j - i) % 2 == 1) {
                reduced.push_back(mono[i]);
            }
            i = j;
        }
        auto [it, inserted] = terms_.try_emplace(std::move(reduced), coeff);
        if (!inserted) {
            it->second += coeff;
        }
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
        return *this;
    }

    const std::map<ZMonomial, Dyadic> &terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    Dyadic coefficient(const ZMonomial &mono) const {
        auto it = terms_.find(mono);
        return it == terms_.end() ? Dyadic{} : it->second;
    }

    size_t degree() const {
        size_t d = 0;
        for (const auto &[mono, c] : terms_) {
            d = std::max(d, mono.size());
        }
        return d;
    }

    friend SpinPolynomial operator+(const SpinPolynomial &a, const SpinPolynomial &b) {
        SpinPolynomial out = a;
        for (const auto &[mono, c] : b.terms_) {
            out.add(mono, c);
        }
        return out;
    }

    friend SpinPolynomial operator*(const SpinPolynomial &a, const SpinPolynomial &b) {
        SpinPolynomial out;
        for (const auto &[ma, ca] : a.terms_) {
            for (const auto &[mb, cb] : b.terms_) {
                ZMonomial merged = ma;
                merged.insert(merged.end(), mb.begin(), mb.end());
                out.add(std::move(merged), ca * cb);
            }
        }
        return out;
    }

    bool operator==(const SpinPolynomial &) const = default;

    std::string str() const {
        if (terms_.empty()) {
            return "0";
        }
        std::string s;
        for (const auto &[mono, c] : terms_) {
            if (!s.empty()) {
                s += " + ";
            }
            s += "(" + c.str() + ")";
            if (mono.empty()) {
                s += "I";
            }
            for (int k : mono) {
                s += "Z" + std::to_string(k);
            }
        }
        return s;
    }

   private:
    std::map<ZMonomial, Dyadic> terms_;
};

/// Maps each Boolean variable b_k to (I - Z_k) / 2 and expands.
inline SpinPolynomial quantize(const Clause &clause, const std::vector<Variable> &qubit_map) {
    auto qubit = [&](const Variable &v) {
        auto it = std::lower_bound(qubit_map.begin(), qubit_map.end(), v);
        if (it == qubit_map.end() || !(*it == v)) {
            throw Error("variable " + v.name() + " has no qubit");
        }
        return static_cast<int>(it - qubit_map.begin());
    };
    const Dyadic half = Dyadic::from_parts(1, 1);
    SpinPolynomial out;
    if (clause.constant() != 0) {
        out.add({}, clause.constant());
    }
    for (const auto &[mono, coeff] : clause.terms()) {
        SpinPolynomial term = SpinPolynomial::constant(coeff);
        for (const auto &v : mono) {
            SpinPolynomial factor;
            factor.add({}, half);
            factor.add({qubit(v)}, -half);
            term = term * factor;
        }
        out = out + term;
    }
    return out;
}

/// H = sum_i p_i^2.
inline SpinPolynomial square_and_sum(const std::vector<SpinPolynomial> &polys) {
    SpinPolynomial out;
    for (const auto &p : polys) {
        out = out + p * p;
    }
    return out;
}

/// Factoring Hamiltonian of a reduced problem.
inline SpinPolynomial build_hamiltonian(const SimplifiedProblem &prob) {
    std::vector<SpinPolynomial> quantized;
    quantized.reserve(prob.clauses.size());
    for (const auto &c : prob.clauses) {
        quantized.push_back(quantize(c, prob.qubit_map));
    }
    return square_and_sum(quantized);
}

/// Exact <b|H|b>; bits[k] is the value of qubit k.
inline Dyadic energy_exact(const SpinPolynomial &h, const std::vector<int> &bits) {
    Dyadic total;
    for (const auto &[mono, c] : h.terms()) {
        int parity = 0;
        for (int k : mono) {
            if (k < 0 || k >= static_cast<int>(bits.size())) {
                throw DimensionMismatch("bitstring shorter than the Hamiltonian support");
            }
            parity ^= bits[static_cast<size_t>(k)] & 1;
        }
        total += parity ? -c : c;
    }
    return total;
}

inline double energy(const SpinPolynomial &h, const std::vector<int> &bits, int n) {
    if (static_cast<int>(bits.size()) != n) {
        throw DimensionMismatch("bitstring length " + std::to_string(bits.size()) + " != " + std::to_string(n));
    }
    return energy_exact(h, bits).to_double();
}

/// Diagonal of H over all 2^n basis states (see basis_bit for the index
/// convention). Entries are exact: clause energies are integers.
struct EnergyTable {
    int n = 0;
    std::vector<double> values;

    size_t size() const { return values.size(); }
    double operator[](size_t i) const { return values[i]; }
};

inline constexpr int kDefaultTableCap = 24;

/// Tabulates H by accumulating each monomial's parity pattern in exact
/// integer arithmetic over a common dyadic denominator.
inline EnergyTable diagonal(const SpinPolynomial &h, int n, int cap = kDefaultTableCap) {
    if (n < 0 || n > cap) {
        throw CapExceeded("energy table for " + std::to_string(n) + " qubits exceeds cap " + std::to_string(cap));
    }
    int shift = 0;
    for (const auto &[mono, c] : h.terms()) {
        shift = std::max(shift, c.shift());
        for (int k : mono) {
            if (k >= n) {
                throw DimensionMismatch("Hamiltonian acts on qubit " + std::to_string(k) + " outside register");
            }
        }
    }
    const size_t dim = size_t{1} << n;
    std::vector<int64_t> acc(dim, 0);
    for (const auto &[mono, c] : h.terms()) {
        uint64_t mask = 0;
        for (int k : mono) {
            mask |= uint64_t{1} << (n - 1 - k);
        }
        const int64_t w = c.scaled_to(shift);
        for (size_t b = 0; b < dim; ++b) {
            acc[b] += (std::popcount(b & mask) & 1) ? -w : w;
        }
    }
    EnergyTable out;
    out.n = n;
    out.values.resize(dim);
    const double denom = static_cast<double>(uint64_t{1} << shift);
    for (size_t b = 0; b < dim; ++b) {
        out.values[b] = static_cast<double>(acc[b]) / denom;
    }
    return out;
}

struct GroundStates {
    double min_energy = 0.0;
    std::vector<uint64_t> states;
};

/// Brute-force argmin of the energy table.
inline GroundStates ground_states_bruteforce(const SpinPolynomial &h, int n, int cap = kDefaultTableCap) {
    auto table = diagonal(h, n, cap);
    GroundStates out;
    out.min_energy = *std::min_element(table.values.begin(), table.values.end());
    for (size_t b = 0; b < table.size(); ++b) {
        if (table.values[b] == out.min_energy) {
            out.states.push_back(b);
        }
    }
    return out;
}

}  // namespace vqf
