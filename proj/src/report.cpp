#include "autochaos/report.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include <fmt/format.h>
#include <json.hpp>

#include "autochaos/error.hpp"

namespace autochaos {

using nlohmann::ordered_json;

std::optional<OutputFormat> parse_format(std::string_view text) {
    if (text == "table")
        return OutputFormat::table;
    if (text == "csv")
        return OutputFormat::csv;
    if (text == "json-lines" || text == "jsonl")
        return OutputFormat::json_lines;
    return std::nullopt;
}

std::string_view to_string(ModelId model) {
    switch (model) {
        case ModelId::tm:
            return "tm";
        case ModelId::tmfr:
            return "tmfr";
        case ModelId::chaosnet:
            return "chaosnet";
    }
    return "?";
}

std::optional<ModelId> parse_model(std::string_view text) {
    if (text == "tm")
        return ModelId::tm;
    if (text == "tmfr" || text == "tm-fr")
        return ModelId::tmfr;
    if (text == "chaosnet")
        return ModelId::chaosnet;
    return std::nullopt;
}

EvalReport run_model(const Dataset& data, ModelId model, const PipelineConfig& config,
                     const ChaosNetGrid& grid) {
    if (model == ModelId::chaosnet)
        return chaosnet_grid_pipeline(data, grid, config);
    auto cfg = config;
    cfg.variant = model == ModelId::tm ? Variant::tm : Variant::tmfr;
    return run_pipeline(data, cfg);
}

namespace {

ordered_json config_json(const PipelineConfig& c) {
    return {{"seed", c.seed},
            {"test_fraction", c.test_fraction},
            {"mode", to_string(c.mode)},
            {"rule", to_string(c.rule)},
            {"scope", to_string(c.scope)},
            {"window", c.window}};
}

ordered_json stats_json(const NormalizationStats& s) {
    return {{"scope", to_string(s.scope)}, {"min", s.min}, {"max", s.max}};
}

std::string join(std::span<const double> values, int precision) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += ';';
        out += fmt::format("{:.{}f}", values[i], precision);
    }
    return out;
}

std::string config_csv(const PipelineConfig& c) {
    return fmt::format("{},{},{},{},{}", to_string(c.mode), to_string(c.rule), to_string(c.scope),
                       c.seed, c.test_fraction);
}

}  // namespace

std::string eval_to_json(const EvalReport& r, bool pretty) {
    ordered_json classes = ordered_json::array();
    for (std::size_t c = 0; c < r.class_names.size(); ++c) {
        classes.push_back({{"index", c},
                           {"name", r.class_names[c]},
                           {"f1", c < r.class_f1.size() ? r.class_f1[c] : 0.0},
                           {"test_count", c < r.class_test_counts.size() ? r.class_test_counts[c] : 0},
                           {"confusion_row", c < r.confusion.size() ? r.confusion[c]
                                                                   : std::vector<std::size_t>{}},
                           {"prototype", c < r.prototypes.size() ? r.prototypes[c].mean
                                                                 : std::vector<double>{}}});
    }
    ordered_json extra = ordered_json::object();
    for (const auto& [k, v] : r.extra)
        extra[k] = v;
    ordered_json j = {{"dataset", r.dataset_id},
                      {"model", r.model},
                      {"config", config_json(r.config)},
                      {"features_raw", r.num_features_raw},
                      {"features_extracted", r.num_features_extracted},
                      {"train_size", r.train_size},
                      {"test_size", r.test_size},
                      {"macro_f1", r.macro_f1},
                      {"classes", classes},
                      {"input_normalization", stats_json(r.input_stats)},
                      {"feature_normalization", stats_json(r.feature_stats)},
                      {"predictions", r.predictions},
                      {"test_labels", r.test_labels},
                      {"extra", extra}};
    return j.dump(pretty ? 2 : -1);
}

std::string eval_csv_header() {
    return "dataset,model,mode,rule,scope,seed,test_fraction,train_size,test_size,macro_f1,class_f1";
}

std::string eval_to_csv_row(const EvalReport& r) {
    return fmt::format("{},{},{},{},{},{:.6f},{}", r.dataset_id, r.model, config_csv(r.config),
                       r.train_size, r.test_size, r.macro_f1, join(r.class_f1, 6));
}

std::string eval_to_table(const EvalReport& r) {
    std::string out = fmt::format("dataset   {}\nmodel     {}\nconfig    mode={} rule={} scope={} seed={} split={}\n",
                                  r.dataset_id, r.model, to_string(r.config.mode),
                                  to_string(r.config.rule), to_string(r.config.scope), r.config.seed,
                                  r.config.test_fraction);
    out += fmt::format("rows      train={} test={}  features {} -> {}\n", r.train_size, r.test_size,
                       r.num_features_raw, r.num_features_extracted);
    out += fmt::format("macro F1  {:.4f}\n", r.macro_f1);
    for (std::size_t c = 0; c < r.class_names.size(); ++c)
        out += fmt::format("  class {:<2} {:<24} F1 {:.4f}  (n={})\n", c, r.class_names[c],
                           r.class_f1[c], r.class_test_counts[c]);
    for (const auto& [k, v] : r.extra)
        out += fmt::format("  {} = {}\n", k, v);
    if (r.config.rule == DecisionRule::min)
        out += "note: rule=min assigns the least similar class prototype\n";
    return out;
}

std::pair<double, double> mean_and_stddev(std::span<const double> samples) {
    if (samples.empty())
        return {0.0, 0.0};
    const double n = static_cast<double>(samples.size());
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    if (samples.size() == 1)
        return {mean, 0.0};
    double ss = 0.0;
    for (double s : samples)
        ss += (s - mean) * (s - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

BenchReport bench_cell(const Dataset& data, ModelId model, const BenchOptions& options) {
    BenchReport out;
    out.dataset_id = data.id;
    out.model = std::string(to_string(model));
    out.config = options.config;
    out.iterations = model == ModelId::chaosnet
                         ? options.chaosnet_iterations.value_or(options.iterations)
                         : options.iterations;
    if (out.iterations < 1)
        throw ConfigError("iterations must be at least 1");
    std::vector<double> elapsed;
    elapsed.reserve(out.iterations);
    try {
        for (std::size_t it = 0; it < out.iterations; ++it) {
            const auto start = std::chrono::steady_clock::now();
            const auto report = run_model(data, model, options.config, options.grid);
            const auto stop = std::chrono::steady_clock::now();
            elapsed.push_back(std::chrono::duration<double>(stop - start).count());
            out.macro_f1 = report.macro_f1;
            out.class_f1 = report.class_f1;
        }
    } catch (const std::exception& e) {
        out.error = e.what();
        return out;
    }
    std::tie(out.mean_seconds, out.stddev_seconds) = mean_and_stddev(elapsed);
    return out;
}

std::string bench_csv_header() {
    return "dataset,model,mode,rule,scope,seed,test_fraction,iterations,macro_f1,class_f1,"
           "mean_seconds,stddev_seconds,error";
}

std::string bench_to_csv_row(const BenchReport& r) {
    std::string error = r.error;
    for (auto& ch : error) {
        if (ch == ',' || ch == '\n')
            ch = ' ';
    }
    return fmt::format("{},{},{},{},{:.6f},{},{:.6g},{:.6g},{}", r.dataset_id, r.model,
                       config_csv(r.config), r.iterations, r.macro_f1, join(r.class_f1, 6),
                       r.mean_seconds, r.stddev_seconds, error);
}

std::string bench_to_json(const BenchReport& r) {
    ordered_json j = {{"dataset", r.dataset_id},
                      {"model", r.model},
                      {"config", config_json(r.config)},
                      {"iterations", r.iterations},
                      {"macro_f1", r.macro_f1},
                      {"class_f1", r.class_f1},
                      {"mean_seconds", r.mean_seconds},
                      {"stddev_seconds", r.stddev_seconds}};
    if (!r.ok())
        j["error"] = r.error;
    return j.dump();
}

std::string bench_to_table(std::span<const BenchReport> reports) {
    std::string out = fmt::format("{:<14} {:<9} {:>6} {:>9} {:>12} {:>12}\n", "dataset", "model",
                                  "iters", "macro_F1", "mean_s", "stddev_s");
    for (const auto& r : reports) {
        if (!r.ok()) {
            out += fmt::format("{:<14} {:<9} failed: {}\n", r.dataset_id, r.model, r.error);
            continue;
        }
        out += fmt::format("{:<14} {:<9} {:>6} {:>9.4f} {:>12.6f} {:>12.6f}\n", r.dataset_id,
                           r.model, r.iterations, r.macro_f1, r.mean_seconds, r.stddev_seconds);
    }
    return out;
}

std::string manifests_to_table(std::span<const DatasetManifest> manifests) {
    std::string out = fmt::format("{:<14} {:>3} {:>3} {:>5}  {:<34} {}\n", "id", "n", "k", "m",
                                  "file", "class counts");
    for (const auto& m : manifests) {
        std::string counts;
        for (const auto& c : m.classes)
            counts += fmt::format("{}{}={}", counts.empty() ? "" : " ", c.name, c.expected_count);
        out += fmt::format("{:<14} {:>3} {:>3} {:>5}  {:<34} {}\n", m.id, m.expected_features,
                           m.expected_classes(), m.expected_samples, m.file, counts);
    }
    return out;
}

}  // namespace autochaos
