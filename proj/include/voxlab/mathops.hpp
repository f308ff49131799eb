// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXLAB_MATHOPS_HPP_
#define VOXLAB_MATHOPS_HPP_

#include <vector>

#include "voxlab/tensor.hpp"

namespace voxlab {

// Floor applied to probabilities before any log.
inline constexpr double kProbFloor = 1e-12;

// Numerically stable softmax (max subtraction); output sums to 1.
std::vector<double> softmax(const std::vector<double>& logits);

// -log(dist[target]); dist must be a probability vector.
double cross_entropy(const std::vector<double>& dist, size_t target_index);

// KL(p || q) over categorical distributions, q floored at kProbFloor.
double kl_categorical(const std::vector<double>& p, const std::vector<double>& q);

double mean(const std::vector<double>& v);
// Population standard deviation (divides by n).
double pop_std(const std::vector<double>& v);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm(const std::vector<double>& a);

// Cosine of two vectors; zero-norm inputs yield 0 and set *degenerate.
double cosine(const std::vector<double>& a, const std::vector<double>& b,
              bool* degenerate = nullptr);

}  // namespace voxlab

#endif  // VOXLAB_MATHOPS_HPP_
