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
#include <cstddef>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "vqf/clause_gen.hpp"
#include "vqf/errors.hpp"
#include "vqf/rng.hpp"
#include "vqf/simplifier.hpp"

namespace vqf {

/// Odd primes below `limit` (sieve of Eratosthenes).
inline std::vector<uint64_t> odd_primes_below(uint64_t limit) {
    std::vector<char> composite(limit, 0);
    std::vector<uint64_t> out;
    for (uint64_t i = 3; i < limit; i += 2) {
        if (composite[i]) {
            continue;
        }
        out.push_back(i);
        for (uint64_t j = i * i; j < limit; j += 2 * i) {
            composite[j] = 1;
        }
    }
    return out;
}

/// \`count\` distinct odd biprimes p*q (p, q odd primes, p = q allowed) of
/// 4..max_bits bits from a seeded stream. Bit lengths cycle through the range
/// so short and long inputs are equally represented; within a length the
/// biprime is uniform.
inline std::vector<uint64_t> random_biprimes(int count, int max_bits, uint64_t seed) {
    constexpr int kMinBits = 4;  // smallest odd biprime is 9
    if (max_bits < kMinBits || max_bits > 40) {
        throw Error("biprime bit limit must lie in [4, 40]");
    }
    const uint64_t limit = uint64_t{1} << max_bits;
    const auto primes = odd_primes_below(limit / 3 + 1);
    std::vector<std::vector<uint64_t>> by_bits(static_cast<size_t>(max_bits) + 1);
    {
        std::set<uint64_t> all;
        for (size_t i = 0; i < primes.size(); ++i) {
            for (size_t j = i; j < primes.size() && primes[i] * primes[j] < limit; ++j) {
                all.insert(primes[i] * primes[j]);
            }
        }
        for (uint64_t m : all) {
            by_bits[static_cast<size_t>(std::bit_width(m))].push_back(m);
        }
    }
    size_t available = 0;
    for (const auto &v : by_bits) {
        available += v.size();
    }
    if (count < 0 || static_cast<size_t>(count) > available) {
        throw Error("not enough biprimes below the bit limit");
    }
    Rng rng(seed, 0x62697072696d6573ULL);
    std::vector<uint64_t> out;
    int bits = kMinBits;
    while (static_cast<int>(out.size()) < count) {
        auto &pool = by_bits[static_cast<size_t>(bits)];
        if (!pool.empty()) {
            const auto k = std::min(pool.size() - 1, static_cast<size_t>(rng.uniform() * static_cast<double>(pool.size())));
            out.push_back(pool[k]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
        }
        bits = bits == max_bits ? kMinBits : bits + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct ScalingRow {
    uint64_t m = 0;
    int n_m = 0;
    int raw = 0;
    int simplified = 0;
};

inline ScalingRow qubit_scaling_row(uint64_t m, LengthMode mode, std::optional<FactorLengths> lengths = std::nullopt,
                                    const SimplifyOptions &opts = {}) {
    auto inst = FactoringInstance::make(m, mode, lengths);
    return {m, inst.n_m, count_qubits_unsimplified(inst), simplify_instance(inst, opts).n};
}

/// Least-squares slope of log(count) against log(n_m): the exponent a in
/// count ~ n_m^a. Bit lengths are averaged first; lengths whose mean count
/// is zero carry no scale information and are skipped.
inline double growth_exponent(const std::vector<ScalingRow> &rows, bool simplified) {
    std::vector<std::pair<int, double>> sums;
    for (const auto &r : rows) {
        auto it = std::find_if(sums.begin(), sums.end(), [&](const auto &e) { return e.first == r.n_m; });
        if (it == sums.end()) {
            sums.push_back({r.n_m, 0.0});
            it = sums.end() - 1;
        }
        it->second += simplified ? r.simplified : r.raw;
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto &[bits, total] : sums) {
        const auto k = static_cast<double>(std::count_if(rows.begin(), rows.end(), [&](const ScalingRow &r) { return r.n_m == bits; }));
        const double mean = total / k;
        if (mean > 0.0) {
            xs.push_back(std::log(static_cast<double>(bits)));
            ys.push_back(std::log(mean));
        }
    }
    if (xs.size() < 2) {
        throw Error("growth fit needs at least two bit lengths with nonzero counts");
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double den = n * sxx - sx * sx;
    if (den <= 0.0) {
        throw Error("growth fit is degenerate");
    }
    return (n * sxy - sx * sy) / den;
}

}  // namespace vqf
