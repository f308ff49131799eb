// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXLAB_TENSOR_HPP_
#define VOXLAB_TENSOR_HPP_

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace voxlab {

// Thrown when a caller breaks a documented precondition.
struct ContractViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a computation produced non-finite or otherwise unusable values.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ContractViolation(msg);
}

// Dense row-major tensor of 64-bit reals.
struct Tensor {
    std::vector<size_t> shape;
    std::vector<double> data;

    Tensor() = default;
    explicit Tensor(std::vector<size_t> s) : shape(std::move(s)) {
        data.assign(numel_of(shape), 0.0);
    }
    Tensor(std::vector<size_t> s, double fill) : shape(std::move(s)) {
        data.assign(numel_of(shape), fill);
    }

    static size_t numel_of(const std::vector<size_t>& s) {
        size_t n = 1;
        for (size_t e : s) {
            if (e == 0) throw ContractViolation("tensor extent must be positive");
            n *= e;
        }
        return n;
    }

    size_t numel() const { return data.size(); }
    size_t rows() const { return shape.empty() ? 0 : shape[0]; }
    size_t cols() const { return shape.size() < 2 ? 1 : shape[1]; }

    double& at(size_t i) { return data[i]; }
    double at(size_t i) const { return data[i]; }
    double& at(size_t i, size_t j) { return data[i * cols() + j]; }
    double at(size_t i, size_t j) const { return data[i * cols() + j]; }

    void zero() { std::fill(data.begin(), data.end(), 0.0); }

    bool finite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

inline void ensure_finite(const Tensor& t, const std::string& what) {
    if (!t.finite()) throw NumericError("non-finite values in " + what);
}

inline void ensure_finite(double v, const std::string& what) {
    if (!std::isfinite(v)) throw NumericError("non-finite value in " + what);
}

}  // namespace voxlab

#endif  // VOXLAB_TENSOR_HPP_
