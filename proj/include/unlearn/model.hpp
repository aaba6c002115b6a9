#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unlearn/errors.hpp"
#include "unlearn/rng.hpp"
#include "unlearn/tensor.hpp"

namespace unlearn {

enum class Activation { identity, relu, tanh };

inline double apply_activation(Activation a, double z) {
    switch (a) {
        case Activation::identity: return z;
        case Activation::relu: return z > 0.0 ? z : 0.0;
        case Activation::tanh: return std::tanh(z);
    }
    return z;
}

// Derivative expressed through the pre-activation z.
inline double activation_derivative(Activation a, double z) {
    switch (a) {
        case Activation::identity: return 1.0;
        case Activation::relu: return z > 0.0 ? 1.0 : 0.0;
        case Activation::tanh: {
            const double t = std::tanh(z);
            return 1.0 - t * t;
        }
    }
    return 1.0;
}

inline std::string activation_name(Activation a) {
    switch (a) {
        case Activation::identity: return "identity";
        case Activation::relu: return "relu";
        case Activation::tanh: return "tanh";
    }
    return "identity";
}

inline Activation activation_from_name(const std::string& name) {
    if (name == "identity") return Activation::identity;
    if (name == "relu") return Activation::relu;
    if (name == "tanh") return Activation::tanh;
    throw ArgumentError("unknown activation: " + name);
}

struct LayerSpec {
    std::size_t input_dim = 0;
    std::size_t output_dim = 0;
    Activation activation = Activation::identity;
};

// Architecture of a scalar-output MLP: a chain of affine layers with
// elementwise activations. The final layer must emit one value.
struct ModelSpec {
    std::vector<LayerSpec> layers;

    void validate() const {
        if (layers.empty()) throw ArgumentError("model spec: at least one layer required");
        for (std::size_t j = 0; j < layers.size(); ++j) {
            if (layers[j].input_dim == 0 || layers[j].output_dim == 0) {
                throw ArgumentError("model spec: zero layer dimension");
            }
            if (j + 1 < layers.size() && layers[j].output_dim != layers[j + 1].input_dim) {
                throw ShapeError("model spec: dimension chain broken at layer " + std::to_string(j));
            }
        }
        if (layers.back().output_dim != 1) {
            throw ArgumentError("model spec: final layer must have output_dim 1");
        }
    }

    std::size_t input_dim() const { return layers.front().input_dim; }
    std::size_t layer_count() const { return layers.size(); }
    // Hidden layers are all but the final affine layer.
    std::size_t hidden_count() const { return layers.size() - 1; }
    std::size_t hidden_dim() const { return layers[layers.size() - 2].output_dim; }

    std::size_t param_count() const {
        std::size_t n = 0;
        for (const auto& l : layers) n += l.input_dim * l.output_dim + l.output_dim;
        return n;
    }

    // Builds an MLP spec from dims {d, h1, ..., 1} with one activation on
    // hidden layers and identity on the output.
    static ModelSpec mlp(const std::vector<std::size_t>& dims, Activation hidden_act) {
        if (dims.size() < 2) throw ArgumentError("mlp: need at least input and output dims");
        ModelSpec spec;
        for (std::size_t j = 0; j + 1 < dims.size(); ++j) {
            const bool last = (j + 2 == dims.size());
            spec.layers.push_back({dims[j], dims[j + 1], last ? Activation::identity : hidden_act});
        }
        spec.validate();
        return spec;
    }
};

inline bool operator==(const LayerSpec& a, const LayerSpec& b) {
    return a.input_dim == b.input_dim && a.output_dim == b.output_dim &&
           a.activation == b.activation;
}

inline bool operator==(const ModelSpec& a, const ModelSpec& b) { return a.layers == b.layers; }

// (weight, bias) offsets of one layer into the flat parameter vector.
// Weights are row-major [output_dim x input_dim], followed by the bias.
struct LayerOffsets {
    std::size_t weight = 0;
    std::size_t bias = 0;
};

// Per-layer post-activation outputs captured during one forward pass.
// The last entry is the scalar prediction.
struct ActivationTrace {
    std::vector<std::vector<double>> layers;
};

class RegressionModel {
public:
    RegressionModel() = default;

    RegressionModel(ModelSpec spec, std::vector<double> params)
        : spec_(std::move(spec)), params_(std::move(params)) {
        spec_.validate();
        build_layout();
        if (params_.size() != spec_.param_count()) {
            throw ShapeError("model: params length does not match spec");
        }
    }

    // Seeded uniform init in [-1/sqrt(fan_in), +1/sqrt(fan_in)].
    static RegressionModel init(const ModelSpec& spec, std::uint64_t seed) {
        spec.validate();
        std::vector<double> params(spec.param_count());
        Rng rng(seed);
        std::size_t pos = 0;
        for (const auto& layer : spec.layers) {
            const double bound = 1.0 / std::sqrt(static_cast<double>(layer.input_dim));
            const std::size_t n = layer.input_dim * layer.output_dim + layer.output_dim;
            for (std::size_t i = 0; i < n; ++i) params[pos++] = rng.uniform(-bound, bound);
        }
        return RegressionModel(spec, std::move(params));
    }

    const ModelSpec& spec() const { return spec_; }
    const std::vector<double>& params() const { return params_; }
    std::vector<double>& mutable_params() { return params_; }
    const std::vector<LayerOffsets>& layout() const { return layout_; }

    const double* weights(std::size_t layer) const { return params_.data() + layout_[layer].weight; }
    const double* biases(std::size_t layer) const { return params_.data() + layout_[layer].bias; }

    double predict(std::span<const double> input) const {
        return forward(input, false).prediction;
    }

    double predict(const Tensor& input) const {
        return predict(std::span<const double>(input.data));
    }

    struct ForwardResult {
        double prediction = 0.0;
        std::optional<ActivationTrace> trace;
    };

    ForwardResult forward(std::span<const double> input, bool capture) const {
        if (input.size() != spec_.input_dim()) {
            throw ShapeError("forward: input size " + std::to_string(input.size()) +
                             " does not match spec input_dim " + std::to_string(spec_.input_dim()));
        }
        ForwardResult out;
        if (capture) out.trace.emplace();
        std::vector<double> current(input.begin(), input.end());
        std::vector<double> next;
        for (std::size_t j = 0; j < spec_.layers.size(); ++j) {
            const auto& layer = spec_.layers[j];
            const double* w = weights(j);
            const double* b = biases(j);
            next.assign(layer.output_dim, 0.0);
            for (std::size_t o = 0; o < layer.output_dim; ++o) {
                double z = b[o];
                const double* row = w + o * layer.input_dim;
                for (std::size_t i = 0; i < layer.input_dim; ++i) z += row[i] * current[i];
                next[o] = apply_activation(layer.activation, z);
            }
            if (capture) out.trace->layers.push_back(next);
            current.swap(next);
        }
        out.prediction = current[0];
        return out;
    }

private:
    void build_layout() {
        layout_.clear();
        std::size_t pos = 0;
        for (const auto& layer : spec_.layers) {
            LayerOffsets off;
            off.weight = pos;
            pos += layer.input_dim * layer.output_dim;
            off.bias = pos;
            pos += layer.output_dim;
            layout_.push_back(off);
        }
    }

    ModelSpec spec_;
    std::vector<double> params_;
    std::vector<LayerOffsets> layout_;
};

enum class LossKind { mae, mse };

inline std::string loss_name(LossKind k) { return k == LossKind::mae ? "mae" : "mse"; }

inline LossKind loss_from_name(const std::string& name) {
    if (name == "mae") return LossKind::mae;
    if (name == "mse") return LossKind::mse;
    throw ArgumentError("unknown loss kind: " + name);
}

inline double loss(double prediction, double label, LossKind kind) {
    const double d = prediction - label;
    return kind == LossKind::mae ? std::abs(d) : d * d;
}

// dL/dprediction. MAE uses the subgradient sign(d) with sign(0) = 0.
inline double loss_grad(double prediction, double label, LossKind kind) {
    const double d = prediction - label;
    if (kind == LossKind::mse) return 2.0 * d;
    if (d > 0.0) return 1.0;
    if (d < 0.0) return -1.0;
    return 0.0;
}

}  // namespace unlearn
