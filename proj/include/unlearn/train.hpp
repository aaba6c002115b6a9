#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "unlearn/dataset.hpp"
#include "unlearn/grad.hpp"
#include "unlearn/model.hpp"
#include "unlearn/optimizer.hpp"
#include "unlearn/rng.hpp"

namespace unlearn {

struct TrainConfig {
    std::size_t epochs = 1;
    double learning_rate = 1e-3;
    std::size_t batch_size = 32;
    LossKind loss = LossKind::mse;
    OptimizerKind optimizer = OptimizerKind::adam;
    std::uint64_t seed = 0;

    void validate() const {
        if (epochs < 1) throw ArgumentError("train config: epochs must be >= 1");
        if (learning_rate <= 0.0) throw ArgumentError("train config: learning rate must be positive");
        if (batch_size < 1) throw ArgumentError("train config: batch size must be >= 1");
    }
};

namespace detail {

inline Batch make_batch(const std::vector<LabeledSample>& samples,
                        const std::vector<std::size_t>& order, std::size_t begin, std::size_t end) {
    Batch b;
    b.inputs.reserve(end - begin);
    b.labels.reserve(end - begin);
    for (std::size_t k = begin; k < end; ++k) {
        const LabeledSample& s = samples[order[k]];
        b.inputs.emplace_back(s.x.data(), s.x.size());
        b.labels.push_back(s.y);
    }
    return b;
}

}  // namespace detail

// Called after every optimizer step; return false to stop early.
using StepHook = std::function<bool(std::size_t step, const RegressionModel& model)>;

// Mini-batch optimization of an existing model, in place. The mini-batch
// order is a seeded shuffle per epoch. negate_gradient turns descent into
// ascent (gradient sign flipped before the optimizer sees it).
inline void train_in_place(RegressionModel& model, const std::vector<LabeledSample>& samples,
                           const TrainConfig& config, bool negate_gradient = false,
                           const StepHook& hook = {}) {
    config.validate();
    if (samples.empty()) throw ArgumentError("train: empty dataset");
    OptimizerState opt(config.optimizer, config.learning_rate, model.spec().param_count());
    Rng order_rng(derive_seed(config.seed, "batch-order"));
    std::size_t step = 0;
    std::vector<double> g;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        const auto order = order_rng.permutation(samples.size());
        for (std::size_t begin = 0; begin < samples.size(); begin += config.batch_size) {
            const std::size_t end = std::min(begin + config.batch_size, samples.size());
            const Batch batch = detail::make_batch(samples, order, begin, end);
            g = grad(model, batch, config.loss);
            if (negate_gradient) {
                for (double& v : g) v = -v;
            }
            opt.step(model.mutable_params(), g);
            ++step;
            if (hook && !hook(step, model)) return;
        }
    }
}

// Fresh seeded init followed by mini-batch training. Pure in
// (spec, dataset, config): identical seeds give bit-identical parameters.
inline RegressionModel train(const ModelSpec& spec, const std::vector<LabeledSample>& samples,
                             const TrainConfig& config) {
    config.validate();
    if (samples.empty()) throw ArgumentError("train: empty dataset");
    RegressionModel model = RegressionModel::init(spec, derive_seed(config.seed, "init"));
    train_in_place(model, samples, config);
    return model;
}

}  // namespace unlearn
