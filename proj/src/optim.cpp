// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "voxlab/optim.hpp"

#include <cmath>

namespace voxlab {

void AdamOptimizer::step(ParamModel& model) {
    ++t_;
    require(t_ >= 1, "adam: step count must be >= 1");
    double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    for (auto& [name, p] : model.params) {
        const Tensor& g = model.grads.at(name);
        Tensor& m = m_.try_emplace(name, Tensor(p.shape)).first->second;
        Tensor& v = v_.try_emplace(name, Tensor(p.shape)).first->second;
        for (size_t i = 0; i < p.data.size(); ++i) {
            double gi = g.data[i];
            m.data[i] = beta1_ * m.data[i] + (1.0 - beta1_) * gi;
            v.data[i] = beta2_ * v.data[i] + (1.0 - beta2_) * gi * gi;
            double mhat = m.data[i] / bc1;
            double vhat = v.data[i] / bc2;
            p.data[i] -= lr_ * (mhat / (std::sqrt(vhat) + eps_) + weight_decay_ * p.data[i]);
        }
        ensure_finite(p, "adam-updated parameter " + name);
    }
}

}  // namespace voxlab
