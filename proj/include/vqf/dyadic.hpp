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

#include <compare>
#include <cstdint>
#include <string>

#include "vqf/errors.hpp"

namespace vqf {

/// Exact number num / 2^shift. Normalized: shift == 0 or num odd.
class Dyadic {
   public:
    constexpr Dyadic() = default;
    constexpr Dyadic(int64_t integer) : num_(integer) {}  // NOLINT(google-explicit-constructor)
    static Dyadic from_parts(int64_t num, int shift) {
        Dyadic d;
        d.num_ = num;
        d.shift_ = shift;
        d.normalize();
        return d;
    }

    int64_t numerator() const { return num_; }
    int shift() const { return shift_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return shift_ == 0; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(uint64_t{1} << shift_); }

    /// Numerator after rescaling to a common denominator 2^target (>= shift()).
    int64_t scaled_to(int target) const { return checked_shift(num_, target - shift_); }

    friend Dyadic operator+(const Dyadic &a, const Dyadic &b) {
        const int s = a.shift_ > b.shift_ ? a.shift_ : b.shift_;
        int64_t sum = 0;
        if (__builtin_add_overflow(a.scaled_to(s), b.scaled_to(s), &sum)) {
            throw Error("dyadic overflow");
        }
        return from_parts(sum, s);
    }
    friend Dyadic operator-(const Dyadic &a) { return from_parts(-a.num_, a.shift_); }
    friend Dyadic operator-(const Dyadic &a, const Dyadic &b) { return a + (-b); }
    friend Dyadic operator*(const Dyadic &a, const Dyadic &b) {
        int64_t prod = 0;
        if (__builtin_mul_overflow(a.num_, b.num_, &prod)) {
            throw Error("dyadic overflow");
        }
        return from_parts(prod, a.shift_ + b.shift_);
    }
    Dyadic &operator+=(const Dyadic &o) { return *this = *this + o; }
    Dyadic &operator*=(const Dyadic &o) { return *this = *this * o; }

    friend bool operator==(const Dyadic &a, const Dyadic &b) { return a.num_ == b.num_ && a.shift_ == b.shift_; }
    friend std::strong_ordering operator<=>(const Dyadic &a, const Dyadic &b) {
        const int s = a.shift_ > b.shift_ ? a.shift_ : b.shift_;
        return a.scaled_to(s) <=> b.scaled_to(s);
    }

    std::string str() const {
        if (shift_ == 0) {
            return std::to_string(num_);
        }
        return std::to_string(num_) + "/" + std::to_string(uint64_t{1} << shift_);
    }

   private:
    static int64_t checked_shift(int64_t v, int by) {
        if (by < 0 || by > 62 || (v != 0 && (v > (INT64_MAX >> by) || v < (INT64_MIN >> by)))) {
            throw Error("dyadic overflow");
        }
        return v * (int64_t{1} << by);
    }
    void normalize() {
        if (num_ == 0) {
            shift_ = 0;
            return;
        }
        while (shift_ > 0 && (num_ & 1) == 0) {
            num_ /= 2;
            --shift_;
        }
    }

    int64_t num_ = 0;
    int shift_ = 0;
};

}  // namespace vqf
