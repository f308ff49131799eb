// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXLAB_NET_HPP_
#define VOXLAB_NET_HPP_

#include <map>
#include <string>
#include <vector>

#include "voxlab/rng.hpp"
#include "voxlab/tensor.hpp"

namespace voxlab {

// Base for every trainable model: named parameters plus an additive gradient
// buffer per parameter. Forward passes are deterministic given parameters.
struct ParamModel {
    std::map<std::string, Tensor> params;
    std::map<std::string, Tensor> grads;

    Tensor& add_param(const std::string& name, std::vector<size_t> shape) {
        auto [it, fresh] = params.emplace(name, Tensor(shape));
        require(fresh, "duplicate parameter name: " + name);
        grads.emplace(name, Tensor(shape));
        return it->second;
    }

    void zero_grad() {
        for (auto& [name, g] : grads) g.zero();
    }

    double grad_norm() const {
        double s = 0.0;
        for (const auto& [name, g] : grads)
            for (double v : g.data) s += v * v;
        return std::sqrt(s);
    }

    size_t param_count() const {
        size_t n = 0;
        for (const auto& [name, p] : params) n += p.numel();
        return n;
    }

    void copy_params_from(const ParamModel& other) {
        require(params.size() == other.params.size(), "copy_params_from: model mismatch");
        for (auto& [name, p] : params) {
            auto it = other.params.find(name);
            require(it != other.params.end() && it->second.data.size() == p.data.size(),
                    "copy_params_from: parameter mismatch at " + name);
            p.data = it->second.data;
        }
    }

    virtual ~ParamModel() = default;
};

// Multi-layer perceptron over flat vectors: affine layers with tanh hidden
// activations and optional pre-activation layer normalization on hidden layers.
class Mlp : public ParamModel {
  public:
    Mlp() = default;
    Mlp(std::vector<size_t> layer_sizes, bool layer_norm, RngStream rng, double init_scale = 1.0);

    struct Cache {
        std::vector<std::vector<double>> acts;     // acts[0] = input, acts.back() = output
        std::vector<std::vector<double>> pre_ln;   // pre-normalization values per hidden layer
        std::vector<std::vector<double>> normed;   // normalized values per hidden layer
        std::vector<double> ln_mean, ln_inv_std;
    };

    std::vector<double> forward(const std::vector<double>& input, Cache* cache = nullptr) const;

    // Accumulates parameter gradients for d(loss)/d(output) = out_grad.
    // Returns d(loss)/d(input).
    std::vector<double> backward(const Cache& cache, const std::vector<double>& out_grad);

    size_t input_dim() const { return sizes_.front(); }
    size_t output_dim() const { return sizes_.back(); }
    const std::vector<size_t>& layer_sizes() const { return sizes_; }
    bool layer_norm() const { return layer_norm_; }

  private:
    std::vector<size_t> sizes_;
    bool layer_norm_ = false;
    std::string wname(size_t i) const { return "w" + std::to_string(i); }
    std::string bname(size_t i) const { return "b" + std::to_string(i); }
};

}  // namespace voxlab

#endif  // VOXLAB_NET_HPP_
