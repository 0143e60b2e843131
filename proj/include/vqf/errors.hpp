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

#include <stdexcept>
#include <string>

namespace vqf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Supplied factor bit lengths violate n_q <= n_p <= n_m.
class InvalidLengths : public Error {
   public:
    using Error::Error;
};

/// The clause system has no solution under the chosen bit lengths.
class InfeasibleInstance : public Error {
   public:
    using Error::Error;
};

/// The input admits only the trivial factorization 1 x m.
class PrimeInput : public Error {
   public:
    using Error::Error;
};

/// A register or table would exceed its configured qubit cap.
class CapExceeded : public Error {
   public:
    using Error::Error;
};

/// Pauli error rate outside 0 <= n * epsilon <= 1.
class InvalidNoise : public Error {
   public:
    using Error::Error;
};

/// Input/output shapes disagree (bitstring length, matrix dimension, ...).
class DimensionMismatch : public Error {
   public:
    using Error::Error;
};

/// Malformed problem/result document.
class ParseError : public Error {
   public:
    using Error::Error;
};

}  // namespace vqf
