#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "unlearn/errors.hpp"
#include "unlearn/io.hpp"
#include "unlearn/tensor.hpp"

namespace unlearn {

struct LabeledSample {
    std::int64_t id = 0;  // stable across splits and relabeling
    std::vector<double> x;
    double y = 0.0;
    std::optional<std::int32_t> group_tag;
};

struct RegressionDataset {
    std::size_t input_dim = 0;
    std::vector<LabeledSample> samples;

    std::size_t size() const { return samples.size(); }

    void validate() const {
        if (samples.empty()) throw ArgumentError("dataset: empty");
        for (const auto& s : samples) {
            if (s.x.size() != input_dim) throw ShapeError("dataset: inconsistent input_dim");
            if (!all_finite(s.x) || !std::isfinite(s.y)) {
                throw ArgumentError("dataset: non-finite sample values");
            }
        }
    }
};

struct LabelGaussian {
    double mu = 0.0;
    double sigma = 0.0;
};

// Mean and population (divide-by-n) standard deviation of the labels.
inline LabelGaussian fit_label_gaussian(const std::vector<double>& labels) {
    if (labels.size() < 2) throw ArgumentError("fit_label_gaussian: need at least 2 labels");
    double mean = 0.0;
    for (double y : labels) mean += y;
    mean /= static_cast<double>(labels.size());
    double var = 0.0;
    for (double y : labels) var += (y - mean) * (y - mean);
    var /= static_cast<double>(labels.size());
    LabelGaussian g{mean, std::sqrt(var)};
    if (!std::isfinite(g.mu) || !std::isfinite(g.sigma)) {
        throw ArgumentError("fit_label_gaussian: non-finite fit");
    }
    return g;
}

// --- CSV / JSON persistence -------------------------------------------------
//
// CSV header: id,group_tag,y,x_0..x_{d-1}. Doubles are written with 17
// significant digits so both formats round-trip f64 bit-exactly.

inline std::string dataset_to_csv(const RegressionDataset& ds) {
    CsvWriter w;
    std::vector<std::string> header{"id", "group_tag", "y"};
    for (std::size_t i = 0; i < ds.input_dim; ++i) header.push_back("x_" + std::to_string(i));
    w.row(header);
    for (const auto& s : ds.samples) {
        std::vector<std::string> row;
        row.push_back(std::to_string(s.id));
        row.push_back(s.group_tag ? std::to_string(*s.group_tag) : "");
        row.push_back(format_double(s.y));
        for (double v : s.x) row.push_back(format_double(v));
        w.row(row);
    }
    return w.str();
}

inline RegressionDataset dataset_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw FormatError("dataset csv: missing header");
    const auto header = split_csv_line(line);
    if (header.size() < 4 || header[0] != "id" || header[1] != "group_tag" || header[2] != "y") {
        throw FormatError("dataset csv: unexpected header");
    }
    RegressionDataset ds;
    ds.input_dim = header.size() - 3;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) throw FormatError("dataset csv: ragged row");
        LabeledSample s;
        s.id = std::stoll(cells[0]);
        if (!cells[1].empty()) s.group_tag = static_cast<std::int32_t>(std::stol(cells[1]));
        s.y = parse_double(cells[2]);
        s.x.reserve(ds.input_dim);
        for (std::size_t i = 0; i < ds.input_dim; ++i) s.x.push_back(parse_double(cells[3 + i]));
        ds.samples.push_back(std::move(s));
    }
    ds.validate();
    return ds;
}

inline nlohmann::json dataset_to_json(const RegressionDataset& ds) {
    nlohmann::json j;
    j["input_dim"] = ds.input_dim;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : ds.samples) {
        nlohmann::json js;
        js["id"] = s.id;
        if (s.group_tag) {
            js["group_tag"] = *s.group_tag;
        } else {
            js["group_tag"] = nullptr;
        }
        js["y"] = s.y;
        js["x"] = s.x;
        arr.push_back(std::move(js));
    }
    j["samples"] = std::move(arr);
    return j;
}

inline RegressionDataset dataset_from_json(const nlohmann::json& j) {
    RegressionDataset ds;
    try {
        ds.input_dim = j.at("input_dim").get<std::size_t>();
        for (const auto& js : j.at("samples")) {
            LabeledSample s;
            s.id = js.at("id").get<std::int64_t>();
            if (!js.at("group_tag").is_null()) s.group_tag = js.at("group_tag").get<std::int32_t>();
            s.y = js.at("y").get<double>();
            s.x = js.at("x").get<std::vector<double>>();
            ds.samples.push_back(std::move(s));
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("dataset json: ") + e.what());
    }
    ds.validate();
    return ds;
}

inline std::vector<double> labels_of(const std::vector<LabeledSample>& samples) {
    std::vector<double> ys;
    ys.reserve(samples.size());
    for (const auto& s : samples) ys.push_back(s.y);
    return ys;
}

}  // namespace unlearn
