#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "unlearn/errors.hpp"

namespace unlearn {

enum class OptimizerKind { sgd, adam };

inline std::string optimizer_name(OptimizerKind k) { return k == OptimizerKind::sgd ? "sgd" : "adam"; }

inline OptimizerKind optimizer_from_name(const std::string& name) {
    if (name == "sgd") return OptimizerKind::sgd;
    if (name == "adam") return OptimizerKind::adam;
    throw ArgumentError("unknown optimizer kind: " + name);
}

struct OptimizerState {
    OptimizerKind kind = OptimizerKind::adam;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::uint64_t t = 0;
    std::vector<double> m;  // first moment, zero-initialized
    std::vector<double> v;  // second moment, zero-initialized

    OptimizerState() = default;

    OptimizerState(OptimizerKind k, double lr, std::size_t param_count)
        : kind(k), learning_rate(lr), m(param_count, 0.0), v(param_count, 0.0) {
        if (lr <= 0.0) throw ArgumentError("optimizer: learning rate must be positive");
    }

    void step(std::vector<double>& params, const std::vector<double>& gradient) {
        if (params.size() != gradient.size() || params.size() != m.size()) {
            throw ShapeError("optimizer step: parameter/gradient length mismatch");
        }
        t += 1;
        if (kind == OptimizerKind::sgd) {
            for (std::size_t i = 0; i < params.size(); ++i) {
                params[i] -= learning_rate * gradient[i];
            }
            return;
        }
        const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t));
        const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t));
        for (std::size_t i = 0; i < params.size(); ++i) {
            const double g = gradient[i];
            m[i] = beta1 * m[i] + (1.0 - beta1) * g;
            v[i] = beta2 * v[i] + (1.0 - beta2) * g * g;
            const double mhat = m[i] / bc1;
            const double vhat = v[i] / bc2;
            params[i] -= learning_rate * mhat / (std::sqrt(vhat) + epsilon);
        }
    }
};

}  // namespace unlearn
