#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "autochaos/error.hpp"
#include "autochaos/pipeline.hpp"
#include "autochaos/report.hpp"
#include "test_support.hpp"

using namespace autochaos;

namespace {

Matrix column(std::initializer_list<double> values) {
    Matrix m;
    for (double v : values)
        m.append_row(std::vector<double>{v});
    return m;
}

}  // namespace

TEST_CASE("fit_normalizer") {
    const auto s = fit_normalizer(column({2, 4, 6}));
    CHECK(s.min[0] == 2);
    CHECK(s.max[0] == 6);

    const auto c = fit_normalizer(column({5, 5, 5}));
    CHECK(c.min[0] == 5);
    CHECK(c.max[0] == 5);
    CHECK(c.apply(std::vector<double>{5})[0] == 0.0);
    CHECK(c.apply(std::vector<double>{7})[0] == 0.0);

    CHECK_THROWS_AS(fit_normalizer(Matrix{}), std::invalid_argument);

    const std::vector<std::size_t> rows{0, 1};
    const auto partial = fit_normalizer(column({2, 4, 6}), rows, NormalizationScope::train);
    CHECK(partial.max[0] == 4);
    CHECK(partial.scope == NormalizationScope::train);
}

TEST_CASE("fit_normalizer on the iris sepal length column") {
    const auto data = test_support::load_builtin("iris");
    // Independent scan of the raw file.
    std::ifstream in(test_support::data_dir() / "iris.csv");
    std::string line;
    std::getline(in, line);
    double lo = 1e300, hi = -1e300;
    while (std::getline(in, line)) {
        const double v = std::stod(line.substr(0, line.find(',')));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const auto stats = fit_normalizer(data.samples);
    CHECK(stats.min[0] == lo);
    CHECK(stats.max[0] == hi);
    CHECK(lo == 4.3);
    CHECK(hi == 7.9);
}

TEST_CASE("apply_normalizer") {
    const auto s = fit_normalizer(column({2, 4, 6}));
    CHECK(apply_normalizer(s, std::vector<double>{2})[0] == 0.0);
    CHECK(apply_normalizer(s, std::vector<double>{6})[0] == 1.0);
    CHECK(apply_normalizer(s, std::vector<double>{4})[0] == 0.5);

    // Train-only fit, held-out row below the training minimum clamps to 0.
    const std::vector<std::size_t> train{1, 2};
    const auto t = fit_normalizer(column({2, 4, 6}), train, NormalizationScope::train);
    CHECK(t.apply(std::vector<double>{2})[0] == 0.0);
    CHECK(t.apply(std::vector<double>{9})[0] == 1.0);
    CHECK_THROWS(t.apply(std::vector<double>{1, 2}));
}

TEST_CASE("class_prototypes") {
    Matrix one;
    one.append_row(std::vector<double>{1, 2});
    one.append_row(std::vector<double>{3, 4});
    const std::vector<int> labels{0, 1};
    const auto p = class_prototypes(one, labels, 2);
    CHECK(p[0].mean == std::vector<double>{1, 2});
    CHECK(p[1].mean == std::vector<double>{3, 4});

    Matrix two;
    two.append_row(std::vector<double>{0, 1});
    two.append_row(std::vector<double>{1, 0});
    const std::vector<int> same{0, 0};
    CHECK(class_prototypes(two, same, 1)[0].mean == std::vector<double>{0.5, 0.5});
    CHECK_THROWS_AS(class_prototypes(two, same, 2), std::invalid_argument);
}

TEST_CASE("iris class 0 prototype equals an independent column average") {
    const auto data = test_support::load_builtin("iris");
    const auto split = stratified_split(data.labels, 3, 0.2, 7);
    const auto protos = class_prototypes(data.samples, data.labels, 3, split.train);
    std::vector<double> sum(4, 0.0);
    int count = 0;
    for (auto i : split.train) {
        if (data.labels[i] != 0)
            continue;
        ++count;
        for (std::size_t j = 0; j < 4; ++j)
            sum[j] += data.samples(i, j);
    }
    REQUIRE(count == 40);
    for (std::size_t j = 0; j < 4; ++j)
        CHECK(std::abs(protos[0].mean[j] - sum[j] / count) < 1e-12);
}

TEST_CASE("cosine_similarity") {
    const std::vector<double> a{0.3, 0.4, 1.2};
    CHECK(cosine_similarity(a, a) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cosine_similarity(std::vector<double>{1, 0}, std::vector<double>{0, 1}) == 0.0);
    CHECK(std::abs(cosine_similarity(std::vector<double>{1, 1}, std::vector<double>{1, 0}) -
                   0.7071067811865476) < 1e-13);
    CHECK(cosine_similarity(std::vector<double>{0, 0}, std::vector<double>{1, 0}) == 0.0);
    CHECK_THROWS(cosine_similarity(std::vector<double>{1}, std::vector<double>{1, 0}));
}

TEST_CASE("predict") {
    std::vector<ClassPrototype> protos{{0, {1, 0, 0}}, {1, {0, 1, 0}}, {2, {0, 0, 1}}};
    const std::vector<double> f{0, 0, 1};
    CHECK(predict(protos, f) == 2);
    CHECK(predict(protos, std::vector<double>{0, 0, 10}) == 2);
    // Equal similarity to classes 0 and 1.
    CHECK(predict(protos, std::vector<double>{1, 1, 0}) == 0);
    // Literal least-similarity rule; ties again go to the lowest index.
    CHECK(predict(protos, f, DecisionRule::min) == 0);
    CHECK(predict(protos, std::vector<double>{0.2, 1, 0.5}, DecisionRule::min) == 0);
}

TEST_CASE("macro_f1") {
    const std::vector<int> truth{0, 1, 0, 1};
    CHECK(macro_f1(truth, truth) == 1.0);

    // Per class: TP=1 FP=1 FN=1 TN=1, so P = R = F1 = 0.5.
    const std::vector<int> actual{0, 0, 1, 1};
    const std::vector<int> predicted{0, 1, 1, 0};
    CHECK(macro_f1(predicted, actual) == 0.5);

    // Everything predicted as class 0: F1_0 = 2/3, F1_1 = 0.
    const std::vector<int> all0{0, 0, 0, 0};
    CHECK(std::abs(macro_f1(all0, actual) - 1.0 / 3.0) < 1e-15);

    CHECK_THROWS_AS(macro_f1(all0, std::vector<int>{0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(macro_f1(std::vector<int>{}, std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("stratified_split") {
    std::vector<int> labels;
    for (int i = 0; i < 50; ++i)
        labels.push_back(i % 2);
    for (int i = 0; i < 10; ++i)
        labels.push_back(2);
    const auto s = stratified_split(labels, 3, 0.2, 42);
    CHECK(s.test.size() == 12);
    CHECK(s.train.size() == 48);
    const auto test_counts = [&] {
        std::vector<int> c(3, 0);
        for (auto i : s.test)
            ++c[static_cast<std::size_t>(labels[i])];
        return c;
    }();
    CHECK(test_counts == std::vector<int>{5, 5, 2});
    CHECK(stratified_split(labels, 3, 0.2, 42).test == s.test);
    CHECK(stratified_split(labels, 3, 0.2, 43).test != s.test);

    CHECK_THROWS_AS(stratified_split(labels, 3, 0.0, 1), ConfigError);
    CHECK_THROWS_AS(stratified_split(labels, 3, 1.0, 1), ConfigError);
    // Too few rows for any test sample.
    CHECK_THROWS_AS(stratified_split(std::vector<int>{0, 0, 1}, 2, 0.2, 1), ConfigError);
}

TEST_CASE("run_pipeline on a separable toy set") {
    const auto toy = test_support::separable_toy();
    for (auto variant : {Variant::tm, Variant::tmfr}) {
        PipelineConfig cfg;
        cfg.variant = variant;
        const auto r = run_pipeline(toy, cfg);
        CHECK(r.macro_f1 == 1.0);
        CHECK(r.test_size == 4);
        CHECK(r.num_features_extracted == feature_count(variant, 2));
    }
}

TEST_CASE("run_pipeline is reproducible and records its intermediates") {
    const auto data = test_support::load_builtin("iris");
    PipelineConfig cfg;
    const auto a = run_pipeline(data, cfg);
    const auto b = run_pipeline(data, cfg);
    CHECK(eval_to_json(a) == eval_to_json(b));
    CHECK(a.train_size + a.test_size == 150);
    CHECK(a.test_size == 30);
    CHECK(a.prototypes.size() == 3);
    CHECK(a.input_stats.min.size() == 4);
    CHECK(a.feature_stats.min.size() == 8);
    CHECK(a.predictions.size() == 30);
}

TEST_CASE("train-only scope and match mode run end to end") {
    const auto data = test_support::load_builtin("iris");
    PipelineConfig cfg;
    cfg.scope = NormalizationScope::train;
    cfg.mode = TraceMode::match;
    const auto r = run_pipeline(data, cfg);
    CHECK(r.input_stats.scope == NormalizationScope::train);
    CHECK(r.macro_f1 >= 0.0);
    CHECK(r.macro_f1 <= 1.0);
}

TEST_CASE("training order does not change prototypes or predictions") {
    const auto data = test_support::load_builtin("wine");
    PipelineConfig cfg;
    const auto split = stratified_split(data.labels, data.num_classes(), 0.2, 5);
    auto reversed = split;
    std::reverse(reversed.train.begin(), reversed.train.end());
    const FeatureExtractor fx;
    const auto map = [&](std::span<const double> z, std::span<double> out) {
        fx.extract_into(z, Variant::tmfr, out);
    };
    const auto a = evaluate_features(data, split, cfg, 26, map, "tmfr");
    const auto b = evaluate_features(data, reversed, cfg, 26, map, "tmfr");
    CHECK(a.predictions == b.predictions);
    for (std::size_t c = 0; c < a.prototypes.size(); ++c) {
        for (std::size_t j = 0; j < a.prototypes[c].mean.size(); ++j)
            CHECK(std::abs(a.prototypes[c].mean[j] - b.prototypes[c].mean[j]) < 1e-12);
    }
}
