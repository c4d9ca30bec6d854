#include <doctest.h>

#include <cmath>
#include <vector>

#include "autochaos/chaosnet.hpp"
#include "autochaos/error.hpp"
#include "test_support.hpp"

using namespace autochaos;

namespace {

// Written out separately from the library loop.
struct Replay {
    std::vector<double> trace;
};

Replay replay(double q, double b, double eps, double s, std::size_t cap) {
    Replay r;
    double x = q;
    for (std::size_t t = 0; t < cap; ++t) {
        r.trace.push_back(x);
        if (std::fabs(x - s) < eps)
            break;
        x = x < b ? x / b : (1 - x) / (1 - b);
    }
    return r;
}

}  // namespace

TEST_CASE("skew_tent") {
    CHECK(skew_tent(0.25, 0.5) == 0.5);
    CHECK(skew_tent(0.75, 0.5) == 0.5);
    CHECK(skew_tent(0.5, 0.5) == 1.0);
    CHECK(skew_tent(0.0, 0.3) == 0.0);
    CHECK(skew_tent(1.0, 0.3) == 0.0);
    CHECK(std::abs(skew_tent(0.2, 0.499) - 0.2 / 0.499) < 1e-15);
}

TEST_CASE("trace that halts immediately") {
    ChaosNetConfig cfg;
    cfg.initial = 0.34;
    const auto f = chaosnet_features(0.345, cfg);
    CHECK(f.firing_time == 1.0);
    CHECK(f.firing_rate == 0.0);
    CHECK(f.energy == 0.34 * 0.34);
    CHECK(f.entropy == 0.0);
    CHECK_FALSE(f.capped);
}

TEST_CASE("oracle replay of a longer trace") {
    ChaosNetConfig cfg;
    cfg.initial = 0.01;
    cfg.skew = 0.499;
    cfg.epsilon = 0.01;
    cfg.threshold = 0.499;
    const double s = 0.7;
    const auto r = replay(0.01, 0.499, 0.01, s, cfg.cap);
    const auto f = chaosnet_features(s, cfg);

    const double n = static_cast<double>(r.trace.size());
    double squares = 0.0;
    std::size_t above = 0;
    for (double x : r.trace) {
        squares += x * x;
        above += x > 0.499 ? 1 : 0;
    }
    const double p = static_cast<double>(above) / n;
    const double h = (p == 0.0 || p == 1.0) ? 0.0 : -p * std::log2(p) - (1 - p) * std::log2(1 - p);
    CHECK(r.trace.size() > 1);
    CHECK(f.firing_time == n);
    CHECK(f.firing_rate == p);
    CHECK(std::abs(f.energy - squares / n) < 1e-12);
    CHECK(std::abs(f.entropy - h) < 1e-12);
}

TEST_CASE("trajectory tables reproduce the step-by-step features") {
    for (const auto& cfg : ChaosNetGrid::defaults().configs()) {
        if (cfg.epsilon != 0.01)
            continue;
        const ChaosNetTrajectory traj(cfg);
        for (double s : {0.0, 0.13, 0.5, 0.77, 1.0}) {
            const auto a = chaosnet_features(s, cfg);
            const auto b = traj.features(s);
            CHECK(a.firing_time == b.firing_time);
            CHECK(a.firing_rate == b.firing_rate);
            CHECK(a.energy == b.energy);
            CHECK(a.entropy == b.entropy);
            CHECK(a.capped == b.capped);
        }
    }
}

TEST_CASE("cap bounds the trace") {
    ChaosNetConfig cfg;
    cfg.cap = 1;
    cfg.initial = 0.9;
    cfg.threshold = 0.5;
    const auto f = chaosnet_features(0.1, cfg);
    CHECK(f.firing_time == 1.0);
    CHECK(f.firing_rate == 1.0);
    CHECK(f.entropy == 0.0);
    CHECK(f.capped);
}

TEST_CASE("config validation") {
    ChaosNetConfig cfg;
    cfg.skew = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.epsilon = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.cap = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_THROWS_AS(chaosnet_features(1.5, ChaosNetConfig{}), std::invalid_argument);
}

TEST_CASE("default grid") {
    const auto g = ChaosNetGrid::defaults();
    CHECK(g.size() == 675);
    CHECK(g.initial.front() == 0.01);
    CHECK(g.initial.back() == 0.99);
    const auto configs = g.configs();
    REQUIRE(configs.size() == 675);
    for (const auto& c : configs)
        CHECK(c.threshold == c.skew);
}

TEST_CASE("chaosnet pipelines on the separable toy set") {
    const auto toy = test_support::separable_toy();
    const auto fixed = chaosnet_pipeline(toy, ChaosNetConfig{});
    CHECK(fixed.num_features_extracted == 8);
    CHECK(fixed.model == "chaosnet");

    ChaosNetGrid small;
    small.initial = {0.34, 0.5};
    small.skew = {0.499};
    small.epsilon = {0.1, 0.01};
    const auto best = chaosnet_grid_pipeline(toy, small);
    CHECK(best.macro_f1 == 1.0);
    bool has_grid_size = false;
    for (const auto& [k, v] : best.extra)
        has_grid_size |= (k == "chaosnet.grid_size" && v == "4");
    CHECK(has_grid_size);

    ChaosNetGrid empty;
    CHECK_THROWS_AS(chaosnet_grid_pipeline(toy, empty), ConfigError);
}
