// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "voxlab/net.hpp"

#include <cmath>

namespace voxlab {

Mlp::Mlp(std::vector<size_t> layer_sizes, bool layer_norm, RngStream rng, double init_scale)
    : sizes_(std::move(layer_sizes)), layer_norm_(layer_norm) {
    require(sizes_.size() >= 2, "Mlp needs at least input and output sizes");
    for (size_t i = 0; i + 1 < sizes_.size(); ++i) {
        Tensor& w = add_param(wname(i), {sizes_[i], sizes_[i + 1]});
        double scale = init_scale / std::sqrt(static_cast<double>(sizes_[i]));
        for (double& v : w.data) v = scale * rng.gaussian();
        add_param(bname(i), {sizes_[i + 1]});
    }
}

std::vector<double> Mlp::forward(const std::vector<double>& input, Cache* cache) const {
    require(input.size() == sizes_.front(), "Mlp::forward: input size mismatch");
    size_t n_layers = sizes_.size() - 1;
    std::vector<double> h = input;
    if (cache) {
        cache->acts.clear();
        cache->pre_ln.clear();
        cache->normed.clear();
        cache->ln_mean.assign(n_layers, 0.0);
        cache->ln_inv_std.assign(n_layers, 0.0);
        cache->acts.push_back(h);
    }
    for (size_t l = 0; l < n_layers; ++l) {
        const Tensor& w = params.at(wname(l));
        const Tensor& b = params.at(bname(l));
        size_t in = sizes_[l], out = sizes_[l + 1];
        std::vector<double> z(out);
        for (size_t j = 0; j < out; ++j) z[j] = b.data[j];
        for (size_t i = 0; i < in; ++i) {
            double hi = h[i];
            if (hi == 0.0) continue;
            const double* wrow = &w.data[i * out];
            for (size_t j = 0; j < out; ++j) z[j] += hi * wrow[j];
        }
        bool hidden = l + 1 < n_layers;
        if (hidden && layer_norm_) {
            if (cache) cache->pre_ln.push_back(z);
            double mu = 0.0;
            for (double v : z) mu += v;
            mu /= static_cast<double>(out);
            double var = 0.0;
            for (double v : z) var += (v - mu) * (v - mu);
            var /= static_cast<double>(out);
            double inv = 1.0 / std::sqrt(var + 1e-8);
            for (double& v : z) v = (v - mu) * inv;
            if (cache) {
                cache->normed.push_back(z);
                cache->ln_mean[l] = mu;
                cache->ln_inv_std[l] = inv;
            }
        } else if (cache) {
            cache->pre_ln.emplace_back();
            cache->normed.emplace_back();
        }
        if (hidden)
            for (double& v : z) v = std::tanh(v);
        h = std::move(z);
        if (cache) cache->acts.push_back(h);
    }
    return h;
}

std::vector<double> Mlp::backward(const Cache& cache, const std::vector<double>& out_grad) {
    size_t n_layers = sizes_.size() - 1;
    require(cache.acts.size() == n_layers + 1, "Mlp::backward: stale cache");
    std::vector<double> g = out_grad;
    for (size_t l = n_layers; l-- > 0;) {
        size_t in = sizes_[l], out = sizes_[l + 1];
        bool hidden = l + 1 < n_layers;
        if (hidden) {
            const std::vector<double>& act = cache.acts[l + 1];
            for (size_t j = 0; j < out; ++j) g[j] *= 1.0 - act[j] * act[j];
            if (layer_norm_) {
                // d/dz of (z - mean)/std with the mean/var dependence included.
                const std::vector<double>& xn = cache.normed[l];
                double inv = cache.ln_inv_std[l];
                double gm = 0.0, gx = 0.0;
                for (size_t j = 0; j < out; ++j) {
                    gm += g[j];
                    gx += g[j] * xn[j];
                }
                gm /= static_cast<double>(out);
                gx /= static_cast<double>(out);
                for (size_t j = 0; j < out; ++j) g[j] = inv * (g[j] - gm - xn[j] * gx);
            }
        }
        Tensor& gw = grads.at(wname(l));
        Tensor& gb = grads.at(bname(l));
        const Tensor& w = params.at(wname(l));
        const std::vector<double>& a = cache.acts[l];
        for (size_t j = 0; j < out; ++j) gb.data[j] += g[j];
        std::vector<double> gin(in, 0.0);
        for (size_t i = 0; i < in; ++i) {
            double ai = a[i];
            const double* wrow = &w.data[i * out];
            double* gwrow = &gw.data[i * out];
            double acc = 0.0;
            for (size_t j = 0; j < out; ++j) {
                gwrow[j] += ai * g[j];
                acc += wrow[j] * g[j];
            }
            gin[i] = acc;
        }
        g = std::move(gin);
    }
    return g;
}

}  // namespace voxlab
