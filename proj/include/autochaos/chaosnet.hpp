#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "autochaos/dataset.hpp"
#include "autochaos/pipeline.hpp"

namespace autochaos {

/// Hyperparameters of the skew-tent-map comparator.
struct ChaosNetConfig {
    double initial = 0.34;        // q, start of every trace
    double skew = 0.499;          // b
    double epsilon = 0.01;        // halting radius around the stimulus
    double threshold = 0.499;     // firing-rate / entropy binning threshold
    std::size_t cap = 10000;      // maximum trace length

    /// Throws ConfigError unless q, b, threshold are in (0,1), epsilon > 0, cap >= 1.
    void validate() const;
};

/// x/b on [0, b), (1-x)/(1-b) on [b, 1].
double skew_tent(double x, double skew);

struct ChaosNetFeatures {
    double firing_time = 0.0;
    double firing_rate = 0.0;
    double energy = 0.0;
    double entropy = 0.0;
    bool capped = false;
};

/// Iterates the map from cfg.initial until |x - stimulus| < epsilon or cap values.
/// The trace includes the halting value; firing time is its length.
ChaosNetFeatures chaosnet_features(double stimulus, const ChaosNetConfig& cfg);

/// The trajectory from cfg.initial with prefix tables, so one config can be
/// applied to many stimuli without re-iterating the map.
class ChaosNetTrajectory {
public:
    explicit ChaosNetTrajectory(const ChaosNetConfig& cfg);

    ChaosNetFeatures features(double stimulus) const;
    const ChaosNetConfig& config() const noexcept { return cfg_; }
    std::span<const double> values() const noexcept { return values_; }

private:
    ChaosNetConfig cfg_;
    std::vector<double> values_;
    std::vector<double> square_sum_;        // prefix sums, index = length
    std::vector<std::size_t> above_count_;  // prefix counts, index = length
};

/// The feature-block layout [firing times | firing rates | energies | entropies].
inline constexpr std::size_t kChaosNetFeaturesPerInput = 4;

/// Grid for the hyperparameter search.
struct ChaosNetGrid {
    std::vector<double> initial;
    std::vector<double> skew;
    std::vector<double> epsilon;
    std::size_t cap = 10000;

    /// q and b in {0.01, 0.08, ..., 0.99}, epsilon in {0.1, 0.01, 0.001}.
    static ChaosNetGrid defaults();
    std::size_t size() const noexcept { return initial.size() * skew.size() * epsilon.size(); }
    /// Configs in q-major, then b, then epsilon order; threshold follows b.
    std::vector<ChaosNetConfig> configs() const;
};

/// One fixed configuration through the shared cosine pipeline.
EvalReport chaosnet_evaluate(const Dataset& data, const ChaosNetConfig& cfg,
                             const PipelineConfig& pipeline, const SplitIndices& split);

/// Single-config run with the pipeline's split.
EvalReport chaosnet_pipeline(const Dataset& data, const ChaosNetConfig& cfg,
                             const PipelineConfig& pipeline = {});

/// Grid search. Each config is scored by macro F1 on the training rows
/// (prototypes from train, predictions on train); the best one, first in grid
/// order on ties, is then evaluated on the test rows.
EvalReport chaosnet_grid_pipeline(const Dataset& data, const ChaosNetGrid& grid,
                                  const PipelineConfig& pipeline = {});

}  // namespace autochaos
