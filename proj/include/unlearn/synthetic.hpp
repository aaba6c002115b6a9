#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "unlearn/dataset.hpp"
#include "unlearn/rng.hpp"

namespace unlearn {

enum class LabelShape { gaussian, uniform };

inline std::string label_shape_name(LabelShape s) {
    return s == LabelShape::gaussian ? "gaussian" : "uniform";
}

inline LabelShape label_shape_from_name(const std::string& name) {
    if (name == "gaussian") return LabelShape::gaussian;
    if (name == "uniform") return LabelShape::uniform;
    throw ArgumentError("unknown label shape: " + name);
}

// Age-like label scale shared by the synthetic generators.
inline constexpr double kSyntheticLabelMean = 50.0;
inline constexpr double kSyntheticLabelStd = 15.0;

// The fixed smooth target g for one (seed, dim, shape). Draws two seeded
// unit directions; the label is a smooth odd function of the projections,
// so gaussian inputs give a symmetric (near-gaussian) label distribution.
class SyntheticTarget {
public:
    SyntheticTarget(std::uint64_t seed, std::size_t dim, LabelShape shape)
        : dim_(dim), shape_(shape) {
        Rng rng(derive_seed(seed, "target-directions"));
        w_ = unit_direction(rng, dim);
        u_ = unit_direction(rng, dim);
    }

    double operator()(std::span<const double> x) const {
        if (x.size() != dim_) throw ShapeError("synthetic target: input dim mismatch");
        if (shape_ == LabelShape::uniform) {
            return kSyntheticLabelMean + kSyntheticLabelStd * x[0];
        }
        double s = 0.0, t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            s += w_[i] * x[i];
            t += u_[i] * x[i];
        }
        return kSyntheticLabelMean + kSyntheticLabelStd * (0.9 * s + 0.45 * std::tanh(t));
    }

private:
    static std::vector<double> unit_direction(Rng& rng, std::size_t dim) {
        std::vector<double> v(dim);
        double norm2 = 0.0;
        for (auto& c : v) {
            c = rng.normal();
            norm2 += c * c;
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& c : v) c *= inv;
        return v;
    }

    std::size_t dim_;
    LabelShape shape_;
    std::vector<double> w_, u_;
};

// Seeded synthetic regression data: y = g(x) + eps. Gaussian shape draws all
// input coordinates from N(0,1); uniform shape draws x_0 from U(-sqrt3, sqrt3)
// (unit variance) so the dominant linear term makes the labels near-uniform.
// Group tags are year-style cohorts in {2013..2017}.
inline RegressionDataset generate_synthetic(std::uint64_t seed, std::size_t n, std::size_t dim,
                                            double noise_std, LabelShape shape) {
    if (n < 10) throw ArgumentError("generate_synthetic: need N >= 10");
    if (dim < 1) throw ArgumentError("generate_synthetic: need d >= 1");
    if (noise_std < 0.0) throw ArgumentError("generate_synthetic: negative noise");
    const SyntheticTarget target(seed, dim, shape);
    Rng rng(derive_seed(seed, "samples"));
    const double sqrt3 = std::sqrt(3.0);
    RegressionDataset ds;
    ds.input_dim = dim;
    ds.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        LabeledSample s;
        s.id = static_cast<std::int64_t>(i);
        s.x.resize(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            if (shape == LabelShape::uniform && j == 0) {
                s.x[j] = rng.uniform(-sqrt3, sqrt3);
            } else {
                s.x[j] = rng.normal();
            }
        }
        s.group_tag = static_cast<std::int32_t>(2013 + rng.index(5));
        s.y = target(s.x) + (noise_std > 0.0 ? rng.normal(0.0, noise_std) : 0.0);
        ds.samples.push_back(std::move(s));
    }
    ds.validate();
    return ds;
}

// Per-pattern template: a bright horizontal band plus one vertical stripe,
// both position-coded by the pattern id.
inline double pattern_template(std::size_t pattern, std::size_t n_patterns, std::size_t side,
                               std::size_t row, std::size_t col) {
    const std::size_t band = side / n_patterns;
    const std::size_t row_lo = pattern * band;
    const std::size_t row_hi = (pattern + 1 == n_patterns) ? side : row_lo + band;
    const std::size_t stripe_col = (pattern * 7 + 2) % side;
    if (row >= row_lo && row < row_hi) return 0.9;
    if (col == stripe_col) return 0.8;
    return 0.05;
}

// Flattened side x side images in [0,1]; sample i carries pattern i mod
// n_patterns, label = pattern id plus small noise, group_tag = pattern id.
inline RegressionDataset generate_pattern_images(std::uint64_t seed, std::size_t n,
                                                 std::size_t side, std::size_t n_patterns) {
    if (side < 8) throw ArgumentError("generate_pattern_images: need side >= 8");
    if (n_patterns < 2) throw ArgumentError("generate_pattern_images: need n_patterns >= 2");
    if (n < n_patterns) throw ArgumentError("generate_pattern_images: need N >= n_patterns");
    Rng rng(derive_seed(seed, "pattern-samples"));
    RegressionDataset ds;
    ds.input_dim = side * side;
    ds.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t p = i % n_patterns;
        LabeledSample s;
        s.id = static_cast<std::int64_t>(i);
        s.group_tag = static_cast<std::int32_t>(p);
        s.x.resize(side * side);
        const double scale = rng.uniform(0.85, 1.0);
        for (std::size_t r = 0; r < side; ++r) {
            for (std::size_t c = 0; c < side; ++c) {
                const double base = pattern_template(p, n_patterns, side, r, c) * scale;
                const double v = base + rng.uniform(0.0, 0.08);
                s.x[r * side + c] = std::clamp(v, 0.0, 1.0);
            }
        }
        s.y = static_cast<double>(p) + rng.normal(0.0, 0.05);
        ds.samples.push_back(std::move(s));
    }
    ds.validate();
    return ds;
}

}  // namespace unlearn
