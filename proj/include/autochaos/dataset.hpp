#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace autochaos {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    /// Appends a row; the first row fixes the column count of an empty matrix.
    void append_row(std::span<const double> values);

    std::span<const double> data() const noexcept { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct Dataset {
    std::string id;
    Matrix samples;            // m x n raw features
    std::vector<int> labels;   // m class indices in 0..k-1
    std::vector<std::string> class_names;
    std::vector<std::string> feature_names;

    std::size_t num_classes() const noexcept { return class_names.size(); }
    /// Throws std::invalid_argument if labels and samples disagree.
    void validate() const;
};

std::vector<std::size_t> class_counts(std::span<const int> labels, std::size_t num_classes);

/// One output class of a manifest: display name, raw label spellings, expected size.
struct ClassSpec {
    std::string name;
    std::vector<std::string> raw_labels;
    std::size_t expected_count = 0;
};

/// How to read one benchmark file and what it must contain.
///
/// `delimiter` is a single character, or the word "whitespace" for runs of
/// blanks and tabs. Column references (`label_column`, `drop_columns`) are
/// header names, or zero-based indices written as decimal text.
struct DatasetManifest {
    std::string id;
    std::string display_name;
    std::string file;
    std::string delimiter = ",";
    bool header = true;
    std::string label_column;
    std::vector<std::string> drop_columns;
    std::vector<ClassSpec> classes;
    bool drop_incomplete_rows = false;
    std::vector<std::string> missing_tokens = {"", "NA", "?"};
    std::size_t expected_features = 0;
    std::size_t expected_samples = 0;
    std::string note;

    std::size_t expected_classes() const noexcept { return classes.size(); }
};

/// Reads the manifest's file from `data_dir` and validates shape and class counts.
/// Throws IngestError with row/column context on any mismatch.
Dataset load(const DatasetManifest& manifest, const std::filesystem::path& data_dir);

/// Parses already-read file contents; `source_name` only appears in messages.
Dataset load_from_text(const DatasetManifest& manifest, std::string_view text,
                       std::string_view source_name);

const std::vector<DatasetManifest>& builtin_manifests();
std::optional<DatasetManifest> find_manifest(std::string_view id);

/// Reads a JSON manifest document (see data/manifests.json for the schema).
std::vector<DatasetManifest> load_manifests(const std::filesystem::path& path);
std::string manifests_to_json(std::span<const DatasetManifest> manifests);

/// AUTOCHAOS_DATA_DIR if set, otherwise `fallback`.
std::filesystem::path data_directory(const std::filesystem::path& fallback = "data");

}  // namespace autochaos
