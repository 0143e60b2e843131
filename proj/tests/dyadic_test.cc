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
#include "vqf/dyadic.hpp"

#include <limits>

#include "gtest/gtest.h"

using vqf::Dyadic;

TEST(dyadic, normalizes) {
    auto d = Dyadic::from_parts(4, 3);
    EXPECT_EQ(d.numerator(), 1);
    EXPECT_EQ(d.shift(), 1);
    EXPECT_EQ(Dyadic::from_parts(0, 5), Dyadic(0));
    EXPECT_TRUE(Dyadic::from_parts(6, 1).is_integer());
}

TEST(dyadic, arithmetic_is_exact) {
    auto half = Dyadic::from_parts(1, 1);
    auto quarter = Dyadic::from_parts(1, 2);
    EXPECT_EQ(half + quarter, Dyadic::from_parts(3, 2));
    EXPECT_EQ(half - quarter, quarter);
    EXPECT_EQ(half * half, quarter);
    EXPECT_EQ(-half + half, Dyadic(0));
    EXPECT_EQ((half * 3).to_double(), 1.5);
    EXPECT_EQ(Dyadic::from_parts(3, 2).scaled_to(4), 12);
}

TEST(dyadic, ordering) {
    EXPECT_LT(Dyadic::from_parts(1, 2), Dyadic::from_parts(1, 1));
    EXPECT_LT(Dyadic(-1), Dyadic::from_parts(-1, 1));
    EXPECT_GT(Dyadic(2), Dyadic::from_parts(7, 2));
}

TEST(dyadic, overflow_is_reported) {
    Dyadic big(std::numeric_limits<int64_t>::max() / 2);
    EXPECT_THROW(big * big, vqf::Error);
    EXPECT_THROW(Dyadic::from_parts(1, 2).scaled_to(200), vqf::Error);
}
