// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXLAB_SWAY_HPP_
#define VOXLAB_SWAY_HPP_

#include <cmath>
#include <vector>

#include "voxlab/tensor.hpp"

namespace voxlab {

// Ascending flow times in [0, 1]. Step-start grids omit the terminal 1;
// full integration grids carry it explicitly.
struct TimeGrid {
    std::vector<double> times;

    size_t size() const { return times.size(); }
    double front() const { return times.front(); }
    double back() const { return times.back(); }

    bool ascending() const {
        for (size_t i = 1; i < times.size(); ++i)
            if (times[i] <= times[i - 1]) return false;
        return true;
    }
};

// f(u; s) = u + s*(cos(pi*u/2) - 1 + u). For s = -1 this is 1 - cos(pi*u/2),
// concentrating steps early; s = 0 is the identity.
inline double sway(double u, double s) {
    require(u >= 0.0 && u <= 1.0, "sway: u must lie in [0, 1]");
    require(s >= -1.0 && s <= 1.0, "sway: s must lie in [-1, 1]");
    return u + s * (std::cos(1.5707963267948966 * u) - 1.0 + u);
}

// Step-start times: sway applied to {0, 1/n, ..., (n-1)/n}.
inline TimeGrid sway_grid(size_t n_steps, double s) {
    require(n_steps >= 1, "sway_grid: n_steps must be >= 1");
    TimeGrid g;
    g.times.reserve(n_steps);
    for (size_t k = 0; k < n_steps; ++k)
        g.times.push_back(sway(static_cast<double>(k) / static_cast<double>(n_steps), s));
    return g;
}

// Appends the terminal time 1 so the grid spans [0, 1] for full integration.
inline TimeGrid with_terminal_one(TimeGrid g) {
    require(!g.times.empty() && g.times.back() < 1.0, "with_terminal_one: grid already ends at 1");
    g.times.push_back(1.0);
    return g;
}

// Refinement times for a sampler taking over at t_start: the sway map applied
// to the uniform grid on [t_start, 1); the final prediction maps to 1.
inline TimeGrid refinement_grid(double t_start, size_t steps, double s = -1.0) {
    require(t_start >= 0.0 && t_start < 1.0, "refinement_grid: t_start must lie in [0, 1)");
    require(steps >= 1, "refinement_grid: steps must be >= 1");
    TimeGrid g;
    g.times.reserve(steps);
    for (size_t m = 0; m < steps; ++m) {
        double u = static_cast<double>(m) / static_cast<double>(steps);
        g.times.push_back(t_start + (1.0 - t_start) * sway(u, s));
    }
    return g;
}

}  // namespace voxlab

#endif  // VOXLAB_SWAY_HPP_
