// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "voxlab/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace voxlab {

GradCheckReport grad_check(ParamModel& model,
                           const std::function<double()>& loss_value,
                           const std::function<void()>& loss_grad,
                           double step,
                           RngStream rng,
                           size_t max_components_per_param) {
    require(step > 0.0, "grad_check: step must be positive");
    loss_grad();
    // Snapshot analytic gradients before probing perturbs anything.
    std::map<std::string, Tensor> analytic = model.grads;

    GradCheckReport report;
    for (auto& [name, p] : model.params) {
        std::vector<size_t> indices;
        if (max_components_per_param == 0 || p.numel() <= max_components_per_param) {
            indices.resize(p.numel());
            for (size_t i = 0; i < p.numel(); ++i) indices[i] = i;
        } else {
            std::set<size_t> picked;
            while (picked.size() < max_components_per_param)
                picked.insert(rng.uniform_index(p.numel()));
            indices.assign(picked.begin(), picked.end());
        }
        for (size_t idx : indices) {
            double saved = p.data[idx];
            p.data[idx] = saved + step;
            double lp = loss_value();
            p.data[idx] = saved - step;
            double lm = loss_value();
            p.data[idx] = saved;
            if (!std::isfinite(lp) || !std::isfinite(lm))
                throw NumericError("grad_check: non-finite loss while probing " + name);
            double numeric = (lp - lm) / (2.0 * step);
            double a = analytic.at(name).data[idx];
            double denom = std::max({std::fabs(a), std::fabs(numeric), 1e-8});
            double rel = std::fabs(a - numeric) / denom;
            ++report.components_checked;
            if (rel > report.worst_rel_err) {
                report.worst_rel_err = rel;
                report.worst_param = name;
                report.worst_index = idx;
            }
        }
    }
    return report;
}

}  // namespace voxlab
