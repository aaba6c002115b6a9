#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "unlearn/errors.hpp"
#include "unlearn/model.hpp"

namespace unlearn {

// Pre- and post-activation values of every layer for one input.
struct ForwardCache {
    std::vector<std::vector<double>> pre;
    std::vector<std::vector<double>> post;
};

inline double forward_cached(const RegressionModel& model, std::span<const double> input,
                             ForwardCache& cache) {
    const ModelSpec& spec = model.spec();
    if (input.size() != spec.input_dim()) {
        throw ShapeError("forward_cached: input size does not match spec");
    }
    const std::size_t L = spec.layers.size();
    cache.pre.assign(L, {});
    cache.post.assign(L, {});
    const double* prev = input.data();
    std::size_t prev_n = input.size();
    for (std::size_t j = 0; j < L; ++j) {
        const auto& layer = spec.layers[j];
        const double* w = model.weights(j);
        const double* b = model.biases(j);
        cache.pre[j].resize(layer.output_dim);
        cache.post[j].resize(layer.output_dim);
        for (std::size_t o = 0; o < layer.output_dim; ++o) {
            double z = b[o];
            const double* row = w + o * layer.input_dim;
            for (std::size_t i = 0; i < prev_n; ++i) z += row[i] * prev[i];
            cache.pre[j][o] = z;
            cache.post[j][o] = apply_activation(layer.activation, z);
        }
        prev = cache.post[j].data();
        prev_n = layer.output_dim;
    }
    return cache.post[L - 1][0];
}

// Reverse pass through one cached forward evaluation.
//
// d_prediction seeds the gradient at the scalar output. extra_post_grads,
// when non-null, injects additional dL/d(post-activation) terms at arbitrary
// layers (empty inner vectors are skipped); this is how activation-matching
// losses reach the parameters. Parameter gradients are accumulated (+=) into
// param_grad, which must have param_count() entries. input_grad, when
// non-null, receives dL/dinput (accumulated as well).
inline void backprop(const RegressionModel& model, std::span<const double> input,
                     const ForwardCache& cache, double d_prediction,
                     const std::vector<std::vector<double>>* extra_post_grads,
                     std::span<double> param_grad, std::vector<double>* input_grad = nullptr) {
    const ModelSpec& spec = model.spec();
    const std::size_t L = spec.layers.size();
    if (param_grad.size() != spec.param_count()) {
        throw ShapeError("backprop: gradient buffer length mismatch");
    }

    std::vector<double> g_post;   // dL/d(post-activation of current layer)
    std::vector<double> delta;    // dL/d(pre-activation of current layer)
    std::vector<double> g_below;  // dL/d(post-activation of layer j-1)

    for (std::size_t jj = L; jj-- > 0;) {
        const auto& layer = spec.layers[jj];
        if (jj == L - 1) {
            g_post.assign(1, d_prediction);
        } else {
            g_post.swap(g_below);
        }
        if (extra_post_grads != nullptr && jj < extra_post_grads->size() &&
            !(*extra_post_grads)[jj].empty()) {
            const auto& extra = (*extra_post_grads)[jj];
            if (extra.size() != layer.output_dim) {
                throw ShapeError("backprop: extra activation gradient size mismatch");
            }
            for (std::size_t o = 0; o < layer.output_dim; ++o) g_post[o] += extra[o];
        }

        delta.resize(layer.output_dim);
        for (std::size_t o = 0; o < layer.output_dim; ++o) {
            delta[o] = g_post[o] * activation_derivative(layer.activation, cache.pre[jj][o]);
        }

        const double* below = jj == 0 ? input.data() : cache.post[jj - 1].data();
        const LayerOffsets& off = model.layout()[jj];
        for (std::size_t o = 0; o < layer.output_dim; ++o) {
            double* wrow = param_grad.data() + off.weight + o * layer.input_dim;
            const double d = delta[o];
            for (std::size_t i = 0; i < layer.input_dim; ++i) wrow[i] += d * below[i];
            param_grad[off.bias + o] += d;
        }

        if (jj > 0) {
            g_below.assign(layer.input_dim, 0.0);
            const double* w = model.weights(jj);
            for (std::size_t o = 0; o < layer.output_dim; ++o) {
                const double* row = w + o * layer.input_dim;
                const double d = delta[o];
                for (std::size_t i = 0; i < layer.input_dim; ++i) g_below[i] += d * row[i];
            }
        } else if (input_grad != nullptr) {
            input_grad->assign(layer.input_dim, 0.0);
            const double* w = model.weights(0);
            for (std::size_t o = 0; o < layer.output_dim; ++o) {
                const double* row = w + o * layer.input_dim;
                const double d = delta[o];
                for (std::size_t i = 0; i < layer.input_dim; ++i) (*input_grad)[i] += d * row[i];
            }
        }
    }
}

struct Batch {
    // Parallel views; labels[i] belongs to inputs[i].
    std::vector<std::span<const double>> inputs;
    std::vector<double> labels;
};

// Gradient of the mean batch loss w.r.t. all parameters.
inline std::vector<double> grad(const RegressionModel& model, const Batch& batch, LossKind kind) {
    if (batch.inputs.empty()) throw ArgumentError("grad: empty batch");
    if (batch.inputs.size() != batch.labels.size()) {
        throw ShapeError("grad: inputs/labels size mismatch");
    }
    std::vector<double> g(model.spec().param_count(), 0.0);
    ForwardCache cache;
    const double inv_n = 1.0 / static_cast<double>(batch.inputs.size());
    for (std::size_t s = 0; s < batch.inputs.size(); ++s) {
        const double pred = forward_cached(model, batch.inputs[s], cache);
        const double dpred = loss_grad(pred, batch.labels[s], kind) * inv_n;
        backprop(model, batch.inputs[s], cache, dpred, nullptr, g);
    }
    return g;
}

// Gradient of the single-sample loss restricted to the final affine layer's
// weights and bias: the parameters fed by the penultimate activations.
// Layout: [dW_0 ... dW_{h-1}, db], length hidden_dim + 1.
inline std::vector<double> per_sample_penultimate_grad(const RegressionModel& model,
                                                       std::span<const double> input, double label,
                                                       LossKind kind) {
    const ModelSpec& spec = model.spec();
    if (spec.layer_count() < 2) {
        throw UnsupportedArchitectureError(
            "per_sample_penultimate_grad: model must have at least two layers");
    }
    ForwardCache cache;
    const double pred = forward_cached(model, input, cache);
    const std::size_t last = spec.layer_count() - 1;
    const auto& out_layer = spec.layers[last];
    const double dpred = loss_grad(pred, label, kind);
    const double delta = dpred * activation_derivative(out_layer.activation, cache.pre[last][0]);
    const std::vector<double>& penult = cache.post[last - 1];
    std::vector<double> g(penult.size() + 1);
    for (std::size_t i = 0; i < penult.size(); ++i) g[i] = delta * penult[i];
    g[penult.size()] = delta;
    return g;
}

}  // namespace unlearn
