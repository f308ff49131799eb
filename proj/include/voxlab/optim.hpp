// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXLAB_OPTIM_HPP_
#define VOXLAB_OPTIM_HPP_

#include <map>
#include <string>

#include "voxlab/net.hpp"

namespace voxlab {

// Adam with bias correction and optional decoupled weight decay (default 0).
class AdamOptimizer {
  public:
    explicit AdamOptimizer(double lr, double beta1 = 0.9, double beta2 = 0.999,
                           double eps = 1e-8, double weight_decay = 0.0)
        : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps), weight_decay_(weight_decay) {
        require(lr > 0.0, "adam: lr must be positive");
    }

    void step(ParamModel& model);

    size_t step_count() const { return t_; }
    double lr() const { return lr_; }
    void set_lr(double lr) {
        require(lr > 0.0, "adam: lr must be positive");
        lr_ = lr;
    }

  private:
    double lr_, beta1_, beta2_, eps_, weight_decay_;
    size_t t_ = 0;
    std::map<std::string, Tensor> m_, v_;
};

}  // namespace voxlab

#endif  // VOXLAB_OPTIM_HPP_
