#include "autochaos/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "autochaos/error.hpp"

namespace autochaos {

std::string_view to_string(NormalizationScope scope) {
    return scope == NormalizationScope::full ? "full" : "train";
}

std::string_view to_string(DecisionRule rule) {
    return rule == DecisionRule::max ? "max" : "min";
}

std::optional<NormalizationScope> parse_scope(std::string_view text) {
    if (text == "full")
        return NormalizationScope::full;
    if (text == "train")
        return NormalizationScope::train;
    return std::nullopt;
}

std::optional<DecisionRule> parse_rule(std::string_view text) {
    if (text == "max")
        return DecisionRule::max;
    if (text == "min")
        return DecisionRule::min;
    return std::nullopt;
}

void NormalizationStats::apply_in_place(std::span<double> row) const {
    if (row.size() != min.size())
        throw std::invalid_argument("row width does not match normalization statistics");
    for (std::size_t j = 0; j < row.size(); ++j) {
        const double range = max[j] - min[j];
        if (!(range > 0.0)) {
            row[j] = 0.0;
            continue;
        }
        row[j] = std::clamp((row[j] - min[j]) / range, 0.0, 1.0);
    }
}

std::vector<double> NormalizationStats::apply(std::span<const double> row) const {
    std::vector<double> out(row.begin(), row.end());
    apply_in_place(out);
    return out;
}

NormalizationStats fit_normalizer(const Matrix& data, std::span<const std::size_t> rows,
                                  NormalizationScope scope) {
    if (data.empty() || (rows.empty() && data.rows() == 0))
        throw std::invalid_argument("cannot fit a normalizer on zero rows");
    NormalizationStats stats;
    stats.scope = scope;
    const auto first = rows.empty() ? std::size_t{0} : rows.front();
    stats.min.assign(data.row(first).begin(), data.row(first).end());
    stats.max = stats.min;
    const auto visit = [&](std::size_t i) {
        const auto r = data.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) {
            stats.min[j] = std::min(stats.min[j], r[j]);
            stats.max[j] = std::max(stats.max[j], r[j]);
        }
    };
    if (rows.empty()) {
        for (std::size_t i = 0; i < data.rows(); ++i)
            visit(i);
    } else {
        for (auto i : rows)
            visit(i);
    }
    return stats;
}

std::vector<ClassPrototype> class_prototypes(const Matrix& features, std::span<const int> labels,
                                             std::size_t num_classes,
                                             std::span<const std::size_t> rows) {
    if (labels.size() != features.rows())
        throw std::invalid_argument("label count does not match feature rows");
    std::vector<ClassPrototype> protos(num_classes);
    std::vector<std::size_t> counts(num_classes, 0);
    for (std::size_t c = 0; c < num_classes; ++c) {
        protos[c].label = static_cast<int>(c);
        protos[c].mean.assign(features.cols(), 0.0);
    }
    const auto add = [&](std::size_t i) {
        const auto l = labels[i];
        if (l < 0 || static_cast<std::size_t>(l) >= num_classes)
            throw std::invalid_argument("label " + std::to_string(l) + " out of range");
        auto& mean = protos[static_cast<std::size_t>(l)].mean;
        const auto r = features.row(i);
        for (std::size_t j = 0; j < r.size(); ++j)
            mean[j] += r[j];
        ++counts[static_cast<std::size_t>(l)];
    };
    if (rows.empty()) {
        for (std::size_t i = 0; i < features.rows(); ++i)
            add(i);
    } else {
        for (auto i : rows)
            add(i);
    }
    for (std::size_t c = 0; c < num_classes; ++c) {
        if (counts[c] == 0)
            throw std::invalid_argument("class " + std::to_string(c) + " has no training samples");
        for (auto& v : protos[c].mean)
            v /= static_cast<double>(counts[c]);
    }
    return protos;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("cosine_similarity of vectors with different lengths");
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0)
        return 0.0;
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

int predict(std::span<const ClassPrototype> prototypes, std::span<const double> feature,
            DecisionRule rule) {
    if (prototypes.empty())
        throw std::invalid_argument("predict needs at least one prototype");
    int best = prototypes.front().label;
    double best_score = cosine_similarity(prototypes.front().mean, feature);
    for (std::size_t c = 1; c < prototypes.size(); ++c) {
        const double s = cosine_similarity(prototypes[c].mean, feature);
        const bool better = rule == DecisionRule::max ? s > best_score : s < best_score;
        if (better) {
            best_score = s;
            best = prototypes[c].label;
        }
    }
    return best;
}

std::vector<double> per_class_f1(std::span<const int> predicted, std::span<const int> actual,
                                 std::size_t num_classes) {
    if (predicted.size() != actual.size())
        throw std::invalid_argument("predicted and actual label lists differ in length");
    std::vector<std::size_t> tp(num_classes, 0), fp(num_classes, 0), fn(num_classes, 0);
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const auto p = static_cast<std::size_t>(predicted[i]);
        const auto a = static_cast<std::size_t>(actual[i]);
        if (p == a) {
            ++tp[p];
        } else {
            ++fp[p];
            ++fn[a];
        }
    }
    std::vector<double> f1(num_classes, 0.0);
    for (std::size_t c = 0; c < num_classes; ++c) {
        const double denom = 2.0 * static_cast<double>(tp[c]) + static_cast<double>(fp[c] + fn[c]);
        // 2PR/(P+R) reduces to 2TP/(2TP+FP+FN).
        f1[c] = denom > 0.0 ? 2.0 * static_cast<double>(tp[c]) / denom : 0.0;
    }
    return f1;
}

double macro_f1(std::span<const int> predicted, std::span<const int> actual) {
    if (predicted.size() != actual.size())
        throw std::invalid_argument("predicted and actual label lists differ in length");
    if (predicted.empty())
        throw std::invalid_argument("macro_f1 of empty label lists");
    std::set<int> present(predicted.begin(), predicted.end());
    present.insert(actual.begin(), actual.end());
    if (*present.begin() < 0)
        throw std::invalid_argument("negative class label");
    const auto k = static_cast<std::size_t>(*present.rbegin()) + 1;
    const auto f1 = per_class_f1(predicted, actual, k);
    double sum = 0.0;
    for (int c : present)
        sum += f1[static_cast<std::size_t>(c)];
    return sum / static_cast<double>(present.size());
}

SplitIndices stratified_split(std::span<const int> labels, std::size_t num_classes,
                              double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw ConfigError("split fraction must be in (0, 1), got " + std::to_string(test_fraction));
    std::vector<std::vector<std::size_t>> by_class(num_classes);
    for (std::size_t i = 0; i < labels.size(); ++i)
        by_class.at(static_cast<std::size_t>(labels[i])).push_back(i);

    std::mt19937_64 rng(seed);
    SplitIndices split;
    for (auto& members : by_class) {
        // std::shuffle is not specified across standard libraries; this is.
        for (std::size_t i = members.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(rng() % i);
            std::swap(members[i - 1], members[j]);
        }
        auto n_test = static_cast<std::size_t>(
            std::llround(static_cast<double>(members.size()) * test_fraction));
        if (members.size() > 0)
            n_test = std::min(n_test, members.size() - 1);
        split.test.insert(split.test.end(), members.begin(),
                          members.begin() + static_cast<std::ptrdiff_t>(n_test));
        split.train.insert(split.train.end(),
                           members.begin() + static_cast<std::ptrdiff_t>(n_test), members.end());
    }
    if (split.test.empty())
        throw ConfigError("split leaves no test rows");
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

EvalReport evaluate_features(const Dataset& data, const SplitIndices& split,
                             const PipelineConfig& config, std::size_t features_per_sample,
                             const FeatureMap& feature_map, std::string model_name) {
    data.validate();
    const std::size_t m = data.samples.rows();
    const std::size_t k = data.num_classes();
    if (split.train.empty() || split.test.empty())
        throw ConfigError("train and test sets must both be non-empty");

    EvalReport report;
    report.dataset_id = data.id;
    report.model = std::move(model_name);
    report.config = config;
    report.num_features_raw = data.samples.cols();
    report.num_features_extracted = features_per_sample;
    report.train_size = split.train.size();
    report.test_size = split.test.size();
    report.class_names = data.class_names;

    report.input_stats =
        config.scope == NormalizationScope::full
            ? fit_normalizer(data.samples, {}, NormalizationScope::full)
            : fit_normalizer(data.samples, split.train, NormalizationScope::train);

    Matrix features(m, features_per_sample);
    std::vector<double> normalized(data.samples.cols());
    for (std::size_t i = 0; i < m; ++i) {
        const auto raw = data.samples.row(i);
        std::copy(raw.begin(), raw.end(), normalized.begin());
        report.input_stats.apply_in_place(normalized);
        feature_map(normalized, features.row(i));
    }

    report.feature_stats = fit_normalizer(features, split.train, NormalizationScope::train);
    for (std::size_t i = 0; i < m; ++i)
        report.feature_stats.apply_in_place(features.row(i));

    report.prototypes = class_prototypes(features, data.labels, k, split.train);

    report.predictions.reserve(split.test.size());
    for (auto i : split.test) {
        report.predictions.push_back(predict(report.prototypes, features.row(i), config.rule));
        report.test_labels.push_back(data.labels[i]);
    }
    report.macro_f1 = macro_f1(report.predictions, report.test_labels);
    report.class_f1 = per_class_f1(report.predictions, report.test_labels, k);
    report.class_test_counts = class_counts(report.test_labels, k);
    report.confusion.assign(k, std::vector<std::size_t>(k, 0));
    for (std::size_t i = 0; i < report.predictions.size(); ++i)
        ++report.confusion[static_cast<std::size_t>(report.test_labels[i])]
                          [static_cast<std::size_t>(report.predictions[i])];
    return report;
}

EvalReport run_pipeline(const Dataset& data, const PipelineConfig& config) {
    const auto split = stratified_split(data.labels, data.num_classes(), config.test_fraction, config.seed);
    const FeatureExtractor extractor(config.mode, config.window);
    const auto p = feature_count(config.variant, data.samples.cols());
    return evaluate_features(
        data, split, config, p,
        [&](std::span<const double> z, std::span<double> out) {
            extractor.extract_into(z, config.variant, out);
        },
        std::string(to_string(config.variant)));
}

}  // namespace autochaos
