#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "autochaos/dataset.hpp"
#include "autochaos/features.hpp"

namespace autochaos {

enum class NormalizationScope { full, train };
enum class DecisionRule { max, min };

std::string_view to_string(NormalizationScope scope);
std::string_view to_string(DecisionRule rule);
std::optional<NormalizationScope> parse_scope(std::string_view text);
std::optional<DecisionRule> parse_rule(std::string_view text);

/// Per-feature min-max statistics.
struct NormalizationStats {
    std::vector<double> min;
    std::vector<double> max;
    NormalizationScope scope = NormalizationScope::full;

    /// (x - min) / (max - min) clamped to [0, 1]; constant features map to 0.
    std::vector<double> apply(std::span<const double> row) const;
    void apply_in_place(std::span<double> row) const;
};

/// Fits over the given rows, or every row when `rows` is empty.
/// Throws std::invalid_argument if the matrix has no rows.
NormalizationStats fit_normalizer(const Matrix& data, std::span<const std::size_t> rows = {},
                                  NormalizationScope scope = NormalizationScope::full);

inline std::vector<double> apply_normalizer(const NormalizationStats& stats,
                                            std::span<const double> row) {
    return stats.apply(row);
}

struct ClassPrototype {
    int label = 0;
    std::vector<double> mean;
};

/// Componentwise class means over `rows` (all rows when empty), summed in row order.
/// Throws std::invalid_argument when a class in 0..num_classes-1 has no rows.
std::vector<ClassPrototype> class_prototypes(const Matrix& features, std::span<const int> labels,
                                             std::size_t num_classes,
                                             std::span<const std::size_t> rows = {});

/// Dot product over the product of norms; 0 when either vector has zero norm.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// Arg-max (or arg-min) similarity; ties go to the lowest class index.
int predict(std::span<const ClassPrototype> prototypes, std::span<const double> feature,
            DecisionRule rule = DecisionRule::max);

/// F1 for each class in 0..num_classes-1; P + R == 0 gives 0.
std::vector<double> per_class_f1(std::span<const int> predicted, std::span<const int> actual,
                                 std::size_t num_classes);

/// Unweighted mean of per-class F1 over the classes present in either list.
/// Throws std::invalid_argument on a length mismatch or empty input.
double macro_f1(std::span<const int> predicted, std::span<const int> actual);

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Per-class shuffle (Fisher-Yates over mt19937_64) then round(count * test_fraction)
/// rows of each class go to test, keeping at least one training row per class.
/// Throws ConfigError if the test set would be empty or the fraction is outside (0, 1).
SplitIndices stratified_split(std::span<const int> labels, std::size_t num_classes,
                              double test_fraction, std::uint64_t seed);

struct PipelineConfig {
    Variant variant = Variant::tmfr;
    TraceMode mode = TraceMode::bound;
    DecisionRule rule = DecisionRule::max;
    NormalizationScope scope = NormalizationScope::full;
    std::uint64_t seed = 42;
    double test_fraction = 0.2;
    int window = kDefaultWindow;
};

/// Everything one evaluation produced. Timing lives in BenchReport, not here.
struct EvalReport {
    std::string dataset_id;
    std::string model;
    PipelineConfig config;
    std::size_t num_features_raw = 0;
    std::size_t num_features_extracted = 0;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    double macro_f1 = 0.0;
    std::vector<std::string> class_names;
    std::vector<double> class_f1;
    std::vector<std::size_t> class_test_counts;
    std::vector<std::vector<std::size_t>> confusion;  // [actual][predicted]
    NormalizationStats input_stats;
    NormalizationStats feature_stats;
    std::vector<ClassPrototype> prototypes;
    std::vector<int> predictions;
    std::vector<int> test_labels;
    std::vector<std::pair<std::string, std::string>> extra;  // model-specific key/value notes
};

/// Maps a normalized sample (n values in [0,1]) to its extracted feature vector.
using FeatureMap = std::function<void(std::span<const double> normalized, std::span<double> out)>;

/// Normalize, extract, renormalize on train, build prototypes, classify test, score.
EvalReport evaluate_features(const Dataset& data, const SplitIndices& split,
                             const PipelineConfig& config, std::size_t features_per_sample,
                             const FeatureMap& feature_map, std::string model_name);

/// The full TM / TM-FR pipeline for config.variant.
EvalReport run_pipeline(const Dataset& data, const PipelineConfig& config = {});

}  // namespace autochaos
