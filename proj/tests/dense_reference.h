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

// Dense-matrix reference implementations used as independent oracles for the
// structured simulator.

#include <Eigen/Dense>
#include <complex>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "vqf/density.hpp"
#include "vqf/qaoa.hpp"

namespace vqf_test {

using Mat = Eigen::MatrixXcd;
using cd = std::complex<double>;

inline Mat to_dense(const vqf::DensityState &s) {
    Mat m(s.dim(), s.dim());
    for (size_t r = 0; r < s.dim(); ++r) {
        for (size_t c = 0; c < s.dim(); ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s(r, c);
        }
    }
    return m;
}

inline vqf::DensityState from_dense(const Mat &m, int n) {
    vqf::DensityState s(n);
    for (size_t r = 0; r < s.dim(); ++r) {
        for (size_t c = 0; c < s.dim(); ++c) {
            s(r, c) = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return s;
}

/// Single-qubit operator op acting on qubit k (bit n-1-k of the index).
inline Mat embed(const Mat &op, int k, int n) {
    Mat out = Mat::Identity(1, 1);
    for (int q = 0; q < n; ++q) {
        Mat f = q == k ? op : Mat::Identity(2, 2);
        Mat next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            for (Eigen::Index j = 0; j < out.cols(); ++j) {
                next.block(2 * i, 2 * j, 2, 2) = out(i, j) * f;
            }
        }
        out = next;
    }
    return out;
}

inline Mat pauli(char which) {
    Mat p(2, 2);
    if (which == 'X') {
        p << 0, 1, 1, 0;
    } else if (which == 'Y') {
        p << 0, cd(0, -1), cd(0, 1), 0;
    } else {
        p << 1, 0, 0, -1;
    }
    return p;
}

/// (1 - n eps) rho + eps/3 sum_k sum_P P_k rho P_k.
inline Mat dense_noise(const Mat &rho, int n, double eps) {
    Mat out = (1.0 - n * eps) * rho;
    for (int k = 0; k < n; ++k) {
        for (char w : {'X', 'Y', 'Z'}) {
            Mat p = embed(pauli(w), k, n);
            out += (eps / 3.0) * p * rho * p;
        }
    }
    return out;
}

/// rho(beta, gamma) from matrix exponentials of H_c = diag(E) and
/// H_a = sum_k X_k, with the channel after the preparation and each unitary.
inline Mat dense_ansatz(const vqf::QaoaParams &params, const std::vector<double> &energies, int n, double eps) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Mat hc = Mat::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        hc(b, b) = energies[static_cast<size_t>(b)];
    }
    Mat ha = Mat::Zero(dim, dim);
    for (int k = 0; k < n; ++k) {
        ha += embed(pauli('X'), k, n);
    }
    Eigen::VectorXcd plus = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    Mat rho = plus * plus.adjoint();
    const cd minus_i(0, -1);
    rho = dense_noise(rho, n, eps);
    for (size_t i = 0; i < params.depth(); ++i) {
        Mat uc = (minus_i * params.gammas[i] * hc).exp();
        rho = dense_noise(uc * rho * uc.adjoint(), n, eps);
        Mat ua = (minus_i * params.betas[i] * ha).exp();
        rho = dense_noise(ua * rho * ua.adjoint(), n, eps);
    }
    return rho;
}

}  // namespace vqf_test
