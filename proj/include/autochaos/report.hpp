#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "autochaos/chaosnet.hpp"
#include "autochaos/dataset.hpp"
#include "autochaos/pipeline.hpp"

namespace autochaos {

enum class OutputFormat { table, csv, json_lines };
std::optional<OutputFormat> parse_format(std::string_view text);

enum class ModelId { tm, tmfr, chaosnet };
std::string_view to_string(ModelId model);
std::optional<ModelId> parse_model(std::string_view text);

/// Runs one model once. chaosnet means the grid search over `grid`.
EvalReport run_model(const Dataset& data, ModelId model, const PipelineConfig& config,
                     const ChaosNetGrid& grid = ChaosNetGrid::defaults());

/// EvalReport as one JSON object: config echo, per-class blocks, intermediate statistics.
std::string eval_to_json(const EvalReport& report, bool pretty = false);
std::string eval_csv_header();
std::string eval_to_csv_row(const EvalReport& report);
std::string eval_to_table(const EvalReport& report);

struct BenchReport {
    std::string dataset_id;
    std::string model;
    double macro_f1 = 0.0;
    std::vector<double> class_f1;
    std::size_t iterations = 0;
    double mean_seconds = 0.0;
    double stddev_seconds = 0.0;
    PipelineConfig config;
    std::string error;  // non-empty when the cell was aborted

    bool ok() const noexcept { return error.empty(); }
};

struct BenchOptions {
    std::size_t iterations = 50;
    /// Iterations for the chaosnet grid; defaults to `iterations`.
    std::optional<std::size_t> chaosnet_iterations;
    PipelineConfig config;
    ChaosNetGrid grid = ChaosNetGrid::defaults();
};

/// Mean and sample (n-1) standard deviation; a single sample has deviation 0.
std::pair<double, double> mean_and_stddev(std::span<const double> samples);

/// Times each model on an already-loaded dataset. Parsing is not timed.
/// A throwing run aborts only its own cell, recorded in BenchReport::error.
BenchReport bench_cell(const Dataset& data, ModelId model, const BenchOptions& options);

std::string bench_csv_header();
std::string bench_to_csv_row(const BenchReport& report);
std::string bench_to_json(const BenchReport& report);
std::string bench_to_table(std::span<const BenchReport> reports);

/// Human summary of manifests for the `manifests` command.
std::string manifests_to_table(std::span<const DatasetManifest> manifests);

}  // namespace autochaos
