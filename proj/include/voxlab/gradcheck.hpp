// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXLAB_GRADCHECK_HPP_
#define VOXLAB_GRADCHECK_HPP_

#include <functional>
#include <string>

#include "voxlab/net.hpp"
#include "voxlab/rng.hpp"

namespace voxlab {

struct GradCheckReport {
    double worst_rel_err = 0.0;
    std::string worst_param;
    size_t worst_index = 0;
    size_t components_checked = 0;
};

// Compares reverse-mode gradients against central finite differences.
//
// loss_value  : evaluates the loss at the current parameters, no side effects
// loss_grad   : zeroes gradients and accumulates analytic gradients
// step        : finite-difference step (> 0)
// max_components_per_param : 0 checks every component, otherwise a seeded
//                            random subset per parameter tensor
//
// Relative error uses denominator max(|analytic|, |numeric|, 1e-8).
GradCheckReport grad_check(ParamModel& model,
                           const std::function<double()>& loss_value,
                           const std::function<void()>& loss_grad,
                           double step,
                           RngStream rng = RngStream(0),
                           size_t max_components_per_param = 0);

}  // namespace voxlab

#endif  // VOXLAB_GRADCHECK_HPP_
