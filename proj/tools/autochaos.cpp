// Command-line front end: digits, extract, eval, bench, manifests.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "autochaos/champernowne.hpp"
#include "autochaos/dataset.hpp"
#include "autochaos/error.hpp"
#include "autochaos/features.hpp"
#include "autochaos/pipeline.hpp"
#include "autochaos/report.hpp"

namespace fs = std::filesystem;
using namespace autochaos;

namespace {

enum ExitCode : int { kOk = 0, kConfig = 2, kIngest = 3, kRuntime = 4 };

struct CommonOptions {
    std::string data_dir;
    std::string manifest_file;
    std::string mode = "bound";
    std::string rule = "max";
    std::string scope = "full";
    std::uint64_t seed = 42;
    double split = 0.2;
    std::string format = "table";
    std::string out;
};

void add_pipeline_flags(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--mode", o.mode, "trace length rule")->check(CLI::IsMember({"bound", "match"}));
    cmd->add_option("--rule", o.rule, "decision rule over cosine similarity")
        ->check(CLI::IsMember({"max", "min"}));
    cmd->add_option("--scope", o.scope, "raw min-max fit scope")->check(CLI::IsMember({"full", "train"}));
    cmd->add_option("--seed", o.seed, "split seed");
    cmd->add_option("--split", o.split, "test fraction of the stratified split");
}

void add_data_flags(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--data-dir", o.data_dir, "dataset directory (default $AUTOCHAOS_DATA_DIR or ./data)");
    cmd->add_option("--manifest", o.manifest_file, "JSON manifest file replacing the built-in list");
}

PipelineConfig pipeline_config(const CommonOptions& o) {
    if (!(o.split > 0.0 && o.split < 1.0))
        throw ConfigError("--split must be in (0, 1)");
    PipelineConfig c;
    c.mode = *parse_trace_mode(o.mode);
    c.rule = *parse_rule(o.rule);
    c.scope = *parse_scope(o.scope);
    c.seed = o.seed;
    c.test_fraction = o.split;
    return c;
}

std::vector<DatasetManifest> manifests_for(const CommonOptions& o) {
    if (!o.manifest_file.empty())
        return load_manifests(o.manifest_file);
    return builtin_manifests();
}

DatasetManifest manifest_by_id(const CommonOptions& o, const std::string& id) {
    for (const auto& m : manifests_for(o)) {
        if (m.id == id)
            return m;
    }
    throw ConfigError("unknown dataset '" + id + "' (see `autochaos manifests`)");
}

fs::path data_dir(const CommonOptions& o) {
    return o.data_dir.empty() ? data_directory() : fs::path(o.data_dir);
}

/// Writes to a sibling temporary file and renames it into place on success.
void write_atomically(const fs::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) {
            out.close();
            fs::remove(tmp);
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

void emit(const CommonOptions& o, const std::string& content) {
    if (o.out.empty())
        std::cout << content;
    else
        write_atomically(o.out, content);
}

int cmd_digits(std::size_t offset, std::size_t count) {
    const auto& source = ChampernowneSource::instance();
    const auto text = source.slice(offset, count);
    std::cout << text << "\n" << "length " << source.size() << "\n";
    return kOk;
}

int cmd_extract(const CommonOptions& o, const std::string& dataset, const std::string& model) {
    const auto variant = parse_variant(model);
    if (!variant)
        throw ConfigError("extract supports --model tm or tmfr");
    const auto manifest = manifest_by_id(o, dataset);
    const auto mode = *parse_trace_mode(o.mode);
    const auto data = load(manifest, data_dir(o));

    const auto stats = fit_normalizer(data.samples);
    const FeatureExtractor extractor(mode);
    const std::size_t n = data.samples.cols();

    std::string out = "label";
    for (std::size_t j = 0; j < n; ++j)
        out += fmt::format(",mean_{}", j + 1);
    if (*variant == Variant::tmfr) {
        for (std::size_t j = 0; j < n; ++j)
            out += fmt::format(",rate_{}", j + 1);
    }
    out += '\n';
    for (std::size_t i = 0; i < data.samples.rows(); ++i) {
        const auto z = stats.apply(data.samples.row(i));
        const auto f = extractor.extract(z, *variant);
        out += std::to_string(data.labels[i]);
        for (double v : f)
            out += fmt::format(",{:.15g}", v);
        out += '\n';
    }
    emit(o, out);
    return kOk;
}

int cmd_eval(const CommonOptions& o, const std::string& dataset, const std::string& model_name,
             bool mode_given) {
    const auto model = parse_model(model_name);
    if (!model)
        throw ConfigError("unknown model '" + model_name + "'");
    if (*model == ModelId::chaosnet && mode_given)
        throw ConfigError("--mode applies to tm/tmfr only");
    const auto format = *parse_format(o.format);
    const auto config = pipeline_config(o);
    const auto manifest = manifest_by_id(o, dataset);
    const auto data = load(manifest, data_dir(o));

    const auto report = run_model(data, *model, config);
    switch (format) {
        case OutputFormat::table:
            emit(o, eval_to_table(report));
            break;
        case OutputFormat::csv:
            emit(o, eval_csv_header() + "\n" + eval_to_csv_row(report) + "\n");
            break;
        case OutputFormat::json_lines:
            emit(o, eval_to_json(report) + "\n");
            break;
    }
    return kOk;
}

int cmd_bench(const CommonOptions& o, const std::vector<std::string>& datasets,
              const std::vector<std::string>& model_names, std::size_t iterations,
              std::size_t chaosnet_iterations) {
    if (iterations < 1)
        throw ConfigError("--iterations must be at least 1");
    std::vector<ModelId> models;
    for (const auto& name : model_names) {
        const auto m = parse_model(name);
        if (!m)
            throw ConfigError("unknown model '" + name + "'");
        models.push_back(*m);
    }
    const auto format = *parse_format(o.format);
    BenchOptions options;
    options.iterations = iterations;
    if (chaosnet_iterations > 0)
        options.chaosnet_iterations = chaosnet_iterations;
    options.config = pipeline_config(o);

    std::vector<BenchReport> rows;
    for (const auto& id : datasets) {
        const auto manifest = manifest_by_id(o, id);
        Dataset data;
        std::string load_error;
        try {
            data = load(manifest, data_dir(o));
        } catch (const IngestError& e) {
            load_error = e.what();
        }
        for (auto model : models) {
            if (!load_error.empty()) {
                BenchReport failed;
                failed.dataset_id = id;
                failed.model = std::string(to_string(model));
                failed.config = options.config;
                failed.error = load_error;
                rows.push_back(failed);
                continue;
            }
            rows.push_back(bench_cell(data, model, options));
            std::cerr << fmt::format("bench {} {} done\n", id, to_string(model));
        }
    }

    std::string out;
    switch (format) {
        case OutputFormat::table:
            out = bench_to_table(rows);
            break;
        case OutputFormat::csv:
            out = bench_csv_header() + "\n";
            for (const auto& r : rows)
                out += bench_to_csv_row(r) + "\n";
            break;
        case OutputFormat::json_lines:
            for (const auto& r : rows)
                out += bench_to_json(r) + "\n";
            break;
    }
    emit(o, out);
    for (const auto& r : rows) {
        if (!r.ok())
            return kRuntime;
    }
    return kOk;
}

int cmd_manifests(const CommonOptions& o) {
    const auto manifests = manifests_for(o);
    const auto format = *parse_format(o.format);
    if (format == OutputFormat::table)
        emit(o, manifests_to_table(manifests));
    else
        emit(o, manifests_to_json(manifests));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"autochaos: chaotic features from the Champernowne orbit"};
    app.require_subcommand(1);
    CommonOptions o;

    std::size_t offset = 0;
    std::size_t count = 12;
    auto* digits = app.add_subcommand("digits", "print a slice of the digit source");
    digits->add_option("--offset", offset, "zero-based first digit");
    digits->add_option("--count", count, "number of digits");

    std::string dataset;
    std::string model = "tmfr";
    auto* extract = app.add_subcommand("extract", "write TM / TM-FR features of a dataset as CSV");
    extract->add_option("--dataset", dataset, "dataset id")->required();
    extract->add_option("--model", model, "tm or tmfr")->check(CLI::IsMember({"tm", "tmfr"}));
    extract->add_option("--mode", o.mode, "trace length rule")->check(CLI::IsMember({"bound", "match"}));
    extract->add_option("--out", o.out, "output CSV path (default stdout)");
    add_data_flags(extract, o);

    auto* eval = app.add_subcommand("eval", "run one classification experiment");
    eval->add_option("--dataset", dataset, "dataset id")->required();
    eval->add_option("--model", model, "tm, tmfr or chaosnet")
        ->check(CLI::IsMember({"tm", "tmfr", "chaosnet"}));
    add_pipeline_flags(eval, o);
    eval->add_option("--format", o.format)->check(CLI::IsMember({"table", "csv", "json-lines"}));
    eval->add_option("--out", o.out, "output path (default stdout)");
    add_data_flags(eval, o);

    std::vector<std::string> datasets{"iris", "seeds", "statlog", "sonar"};
    std::vector<std::string> models{"tm", "tmfr", "chaosnet"};
    std::size_t iterations = 50;
    std::size_t chaosnet_iterations = 0;
    auto* bench = app.add_subcommand("bench", "time models over repeated runs");
    bench->add_option("--dataset", datasets, "dataset ids")->delimiter(',');
    bench->add_option("--model", models, "model ids")->delimiter(',')
        ->check(CLI::IsMember({"tm", "tmfr", "chaosnet"}));
    bench->add_option("--iterations", iterations, "timed runs per cell");
    bench->add_option("--chaosnet-iterations", chaosnet_iterations,
                      "timed runs for the chaosnet grid (default: --iterations)");
    add_pipeline_flags(bench, o);
    bench->add_option("--format", o.format)->check(CLI::IsMember({"table", "csv", "json-lines"}));
    bench->add_option("--out", o.out, "output path (default stdout)");
    add_data_flags(bench, o);

    auto* manifests = app.add_subcommand("manifests", "list the dataset manifests");
    manifests->add_option("--format", o.format)->check(CLI::IsMember({"table", "csv", "json-lines"}));
    manifests->add_option("--out", o.out, "output path (default stdout)");
    manifests->add_option("--manifest", o.manifest_file, "JSON manifest file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*digits)
            return cmd_digits(offset, count);
        if (*extract)
            return cmd_extract(o, dataset, model);
        if (*eval)
            return cmd_eval(o, dataset, model, eval->count("--mode") > 0);
        if (*bench)
            return cmd_bench(o, datasets, models, iterations, chaosnet_iterations);
        if (*manifests)
            return cmd_manifests(o);
    } catch (const IngestError& e) {
        std::cerr << "ingestion error: " << e.what() << "\n";
        return kIngest;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfig;
    } catch (const std::out_of_range& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntime;
    }
    return kOk;
}
