#include "autochaos/chaosnet.hpp"

#include <cmath>
#include <string>

#include "autochaos/error.hpp"

namespace autochaos {

namespace {

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0)
        return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

bool open_unit(double v) { return v > 0.0 && v < 1.0; }

}  // namespace

void ChaosNetConfig::validate() const {
    if (!open_unit(initial))
        throw ConfigError("initial condition must be in (0, 1)");
    if (!open_unit(skew))
        throw ConfigError("skew must be in (0, 1)");
    if (!open_unit(threshold))
        throw ConfigError("discrimination threshold must be in (0, 1)");
    if (!(epsilon > 0.0))
        throw ConfigError("noise threshold must be positive");
    if (cap < 1)
        throw ConfigError("trace cap must be at least 1");
}

double skew_tent(double x, double skew) {
    return x < skew ? x / skew : (1.0 - x) / (1.0 - skew);
}

ChaosNetFeatures chaosnet_features(double stimulus, const ChaosNetConfig& cfg) {
    cfg.validate();
    if (!(stimulus >= 0.0 && stimulus <= 1.0))
        throw std::invalid_argument("stimulus must be in [0, 1]");
    ChaosNetFeatures f;
    double x = cfg.initial;
    std::size_t length = 0;
    std::size_t above = 0;
    double squares = 0.0;
    while (true) {
        ++length;
        squares += x * x;
        above += x > cfg.threshold ? 1 : 0;
        if (std::abs(x - stimulus) < cfg.epsilon)
            break;
        if (length == cfg.cap) {
            f.capped = true;
            break;
        }
        x = skew_tent(x, cfg.skew);
    }
    const auto n = static_cast<double>(length);
    f.firing_time = n;
    f.firing_rate = static_cast<double>(above) / n;
    f.energy = squares / n;
    f.entropy = binary_entropy(f.firing_rate);
    return f;
}

ChaosNetTrajectory::ChaosNetTrajectory(const ChaosNetConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    values_.reserve(cfg_.cap);
    square_sum_.reserve(cfg_.cap + 1);
    above_count_.reserve(cfg_.cap + 1);
    square_sum_.push_back(0.0);
    above_count_.push_back(0);
    double x = cfg_.initial;
    for (std::size_t t = 0; t < cfg_.cap; ++t) {
        values_.push_back(x);
        square_sum_.push_back(square_sum_.back() + x * x);
        above_count_.push_back(above_count_.back() + (x > cfg_.threshold ? 1 : 0));
        x = skew_tent(x, cfg_.skew);
    }
}

ChaosNetFeatures ChaosNetTrajectory::features(double stimulus) const {
    if (!(stimulus >= 0.0 && stimulus <= 1.0))
        throw std::invalid_argument("stimulus must be in [0, 1]");
    ChaosNetFeatures f;
    std::size_t length = values_.size();
    f.capped = true;
    for (std::size_t t = 0; t < values_.size(); ++t) {
        if (std::abs(values_[t] - stimulus) < cfg_.epsilon) {
            length = t + 1;
            f.capped = false;
            break;
        }
    }
    const auto n = static_cast<double>(length);
    f.firing_time = n;
    f.firing_rate = static_cast<double>(above_count_[length]) / n;
    f.energy = square_sum_[length] / n;
    f.entropy = binary_entropy(f.firing_rate);
    return f;
}

ChaosNetGrid ChaosNetGrid::defaults() {
    ChaosNetGrid grid;
    for (int i = 0; i < 15; ++i) {
        const double v = (1.0 + 7.0 * i) / 100.0;
        grid.initial.push_back(v);
        grid.skew.push_back(v);
    }
    grid.epsilon = {0.1, 0.01, 0.001};
    return grid;
}

std::vector<ChaosNetConfig> ChaosNetGrid::configs() const {
    std::vector<ChaosNetConfig> out;
    out.reserve(size());
    for (double q : initial) {
        for (double b : skew) {
            for (double e : epsilon)
                out.push_back({.initial = q, .skew = b, .epsilon = e, .threshold = b, .cap = cap});
        }
    }
    return out;
}

namespace {

struct CapCounter {
    std::size_t capped = 0;
    std::size_t total = 0;
};

EvalReport evaluate_trajectory(const Dataset& data, const ChaosNetTrajectory& trajectory,
                               const PipelineConfig& pipeline, const SplitIndices& split,
                               CapCounter* caps) {
    const std::size_t n = data.samples.cols();
    return evaluate_features(
        data, split, pipeline, kChaosNetFeaturesPerInput * n,
        [&](std::span<const double> z, std::span<double> out) {
            for (std::size_t j = 0; j < n; ++j) {
                const auto f = trajectory.features(z[j]);
                out[j] = f.firing_time;
                out[n + j] = f.firing_rate;
                out[2 * n + j] = f.energy;
                out[3 * n + j] = f.entropy;
                if (caps) {
                    caps->capped += f.capped ? 1 : 0;
                    ++caps->total;
                }
            }
        },
        "chaosnet");
}

void annotate(EvalReport& report, const ChaosNetConfig& cfg, const CapCounter& caps) {
    report.extra.emplace_back("chaosnet.initial", std::to_string(cfg.initial));
    report.extra.emplace_back("chaosnet.skew", std::to_string(cfg.skew));
    report.extra.emplace_back("chaosnet.epsilon", std::to_string(cfg.epsilon));
    report.extra.emplace_back("chaosnet.threshold", std::to_string(cfg.threshold));
    report.extra.emplace_back("chaosnet.cap", std::to_string(cfg.cap));
    report.extra.emplace_back("chaosnet.capped_traces",
                              std::to_string(caps.capped) + "/" + std::to_string(caps.total));
}

}  // namespace

EvalReport chaosnet_evaluate(const Dataset& data, const ChaosNetConfig& cfg,
                             const PipelineConfig& pipeline, const SplitIndices& split) {
    const ChaosNetTrajectory trajectory(cfg);
    CapCounter caps;
    auto report = evaluate_trajectory(data, trajectory, pipeline, split, &caps);
    annotate(report, cfg, caps);
    return report;
}

EvalReport chaosnet_pipeline(const Dataset& data, const ChaosNetConfig& cfg,
                             const PipelineConfig& pipeline) {
    const auto split =
        stratified_split(data.labels, data.num_classes(), pipeline.test_fraction, pipeline.seed);
    return chaosnet_evaluate(data, cfg, pipeline, split);
}

EvalReport chaosnet_grid_pipeline(const Dataset& data, const ChaosNetGrid& grid,
                                  const PipelineConfig& pipeline) {
    const auto configs = grid.configs();
    if (configs.empty())
        throw ConfigError("chaosnet grid is empty");
    const auto split =
        stratified_split(data.labels, data.num_classes(), pipeline.test_fraction, pipeline.seed);
    const SplitIndices resubstitution{split.train, split.train};

    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t c = 0; c < configs.size(); ++c) {
        const ChaosNetTrajectory trajectory(configs[c]);
        const auto r = evaluate_trajectory(data, trajectory, pipeline, resubstitution, nullptr);
        if (r.macro_f1 > best_score) {
            best_score = r.macro_f1;
            best = c;
        }
    }
    auto report = chaosnet_evaluate(data, configs[best], pipeline, split);
    report.extra.emplace_back("chaosnet.grid_size", std::to_string(configs.size()));
    report.extra.emplace_back("chaosnet.train_macro_f1", std::to_string(best_score));
    return report;
}

}  // namespace autochaos
