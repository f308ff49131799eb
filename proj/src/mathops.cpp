// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "voxlab/mathops.hpp"

#include <algorithm>
#include <cmath>

namespace voxlab {

std::vector<double> softmax(const std::vector<double>& logits) {
    require(!logits.empty(), "softmax: empty input");
    double mx = *std::max_element(logits.begin(), logits.end());
    ensure_finite(mx, "softmax logits");
    std::vector<double> out(logits.size());
    double sum = 0.0;
    for (size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - mx);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

double cross_entropy(const std::vector<double>& dist, size_t target_index) {
    require(!dist.empty(), "cross_entropy: empty distribution");
    require(target_index < dist.size(), "cross_entropy: target index out of range");
    return -std::log(std::max(dist[target_index], kProbFloor));
}

double kl_categorical(const std::vector<double>& p, const std::vector<double>& q) {
    require(p.size() == q.size(), "kl_categorical: dimension mismatch");
    double kl = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        kl += p[i] * (std::log(std::max(p[i], kProbFloor)) - std::log(std::max(q[i], kProbFloor)));
    }
    // Rounding can leave a tiny negative residue when p == q.
    if (kl < 0.0 && kl > -1e-12) kl = 0.0;
    return kl;
}

double mean(const std::vector<double>& v) {
    require(!v.empty(), "mean: empty input");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double pop_std(const std::vector<double>& v) {
    double mu = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return std::sqrt(s / static_cast<double>(v.size()));
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    require(a.size() == b.size(), "dot: dimension mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

double cosine(const std::vector<double>& a, const std::vector<double>& b, bool* degenerate) {
    if (degenerate) *degenerate = false;
    double na = norm(a), nb = norm(b);
    if (na < 1e-15 || nb < 1e-15) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    double c = dot(a, b) / (na * nb);
    return std::clamp(c, -1.0, 1.0);
}

}  // namespace voxlab
