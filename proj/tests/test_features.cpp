#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "autochaos/features.hpp"
#include "oracle.hpp"

using namespace autochaos;

namespace {
const std::string kText = oracle::champernowne_text();
constexpr double kC = 0.123456789101112;
}  // namespace

TEST_CASE("firing_time_bound in bound mode") {
    const auto s = firing_time_bound(0.2505, TraceMode::bound);
    CHECK(s.pattern_number == 250);
    CHECK(s.firing_time_bound == 639);

    const auto zero = firing_time_bound(0.0, TraceMode::bound);
    CHECK(zero.pattern_number == 0);
    CHECK(zero.firing_time_bound == 1);

    const auto one = firing_time_bound(1.0, TraceMode::bound);
    CHECK(one.pattern_number == 999);
    CHECK(one.firing_time_bound == 1389);

    // 3 * 37 - 111 = 0 clamps up; 3 * 38 - 111 = 3 does not.
    CHECK(firing_time_bound(0.037, TraceMode::bound).firing_time_bound == 1);
    CHECK(firing_time_bound(0.038, TraceMode::bound).firing_time_bound == 3);
    // 3 * 500 - 111 = 1389 is the last unclamped value.
    CHECK(firing_time_bound(0.5, TraceMode::bound).firing_time_bound == 1389);
    CHECK(firing_time_bound(0.499, TraceMode::bound).firing_time_bound == 1386);

    CHECK_THROWS_AS(firing_time_bound(-0.01, TraceMode::bound), std::invalid_argument);
    CHECK_THROWS_AS(firing_time_bound(1.01, TraceMode::bound), std::invalid_argument);
    CHECK_THROWS_AS(firing_time_bound(std::numeric_limits<double>::quiet_NaN(), TraceMode::bound),
                    std::invalid_argument);
}

TEST_CASE("firing_time_bound in match mode") {
    // "123" opens the constant; the trace stops before the match but keeps one value.
    CHECK(firing_time_bound(0.123, TraceMode::match).firing_time_bound == 1);
    // "234" first appears after one shift.
    CHECK(firing_time_bound(0.234, TraceMode::match).firing_time_bound == 1);
    CHECK(firing_time_bound(0.345, TraceMode::match).firing_time_bound == 2);
    // "999" never appears in the truncated string.
    CHECK(firing_time_bound(0.9995, TraceMode::match).firing_time_bound == 1389);
    // "250": number of shifts until the pattern leads the orbit value.
    CHECK(firing_time_bound(0.25, TraceMode::match).firing_time_bound == kText.find("250"));
}

TEST_CASE("build_trace") {
    const auto& source = ChampernowneSource::instance();
    auto spec = firing_time_bound(0.0, TraceMode::bound);
    auto t1 = build_trace(source, spec);
    REQUIRE(t1.values.size() == 1);
    CHECK(t1.values[0] == kC);

    spec.firing_time_bound = 2;
    auto t2 = build_trace(source, spec);
    REQUIRE(t2.values.size() == 2);
    CHECK(t2.values[1] == 0.234567891011121);

    spec.firing_time_bound = 10;
    auto t10 = build_trace(source, spec);
    const int leading[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 1};
    for (int k = 0; k < 10; ++k)
        CHECK(static_cast<int>(t10.values[static_cast<std::size_t>(k)] * 10) == leading[k]);
}

TEST_CASE("trace_mean") {
    const auto& source = ChampernowneSource::instance();
    TraceSpec spec;
    spec.firing_time_bound = 1;
    CHECK(trace_mean(build_trace(source, spec)) == kC);

    spec.firing_time_bound = 2;
    const double expected = static_cast<double>(oracle::trace_mean(kText, 2).value());
    CHECK(std::abs(trace_mean(build_trace(source, spec)) - expected) < 1e-12);
    CHECK(std::abs(expected - (0.123456789101112 + 0.234567891011121) / 2) < 1e-15);

    // Past the truncation every window is exactly zero.
    for (std::size_t k = 1389; k < 1400; ++k)
        CHECK(source.orbit_value(k).value == 0.0);

    CHECK_THROWS_AS(trace_mean(std::span<const double>{}), std::invalid_argument);
}

TEST_CASE("firing_rate") {
    const auto& source = ChampernowneSource::instance();
    TraceSpec spec;
    spec.firing_time_bound = 10;
    const auto t10 = build_trace(source, spec);
    CHECK(t10.values[4] > 0.5);  // 0.56789...
    CHECK(firing_rate(t10) == 0.5);

    spec.firing_time_bound = 1;
    CHECK(firing_rate(build_trace(source, spec)) == 0.0);

    const std::vector<double> low{0.1, 0.2, 0.5, 0.49};
    CHECK(firing_rate(low) == 0.0);  // 0.5 itself does not exceed 0.5
    CHECK_THROWS_AS(firing_rate(std::span<const double>{}), std::invalid_argument);
}

TEST_CASE("extract layouts") {
    const std::vector<double> zeros{0.0, 0.0};
    const auto tm = extract(zeros, Variant::tm);
    REQUIRE(tm.size() == 2);
    CHECK(tm[0] == kC);
    CHECK(tm[1] == kC);

    const auto fr = extract(std::vector<double>{0.0}, Variant::tmfr);
    REQUIRE(fr.size() == 2);
    CHECK(fr[0] == kC);
    CHECK(fr[1] == 0.0);

    const auto q = extract(std::vector<double>{0.250}, Variant::tmfr);
    REQUIRE(q.size() == 2);
    CHECK(std::abs(q[0] - static_cast<double>(oracle::trace_mean(kText, 639).value())) < 1e-12);
    CHECK(q[1] == oracle::firing_rate(kText, 639));

    CHECK_THROWS_AS(extract(std::vector<double>{0.5, 1.5}, Variant::tm), std::invalid_argument);
}

TEST_CASE("tabulated extractor equals explicit traces for every length") {
    const auto& source = ChampernowneSource::instance();
    for (auto mode : {TraceMode::bound, TraceMode::match}) {
        const FeatureExtractor fx(mode);
        for (int p = 0; p < 1000; ++p) {
            const double stimulus = (p + 0.5) / 1000.0;
            const auto spec = firing_time_bound(stimulus, mode);
            REQUIRE(fx.trace_length(stimulus) == spec.firing_time_bound);
            const auto trace = build_trace(source, spec);
            CHECK(fx.trace_mean(stimulus) == trace_mean(trace));
            CHECK(fx.firing_rate(stimulus) == firing_rate(trace));
        }
    }
}

TEST_CASE("feature mean matches the exact oracle for every bound length") {
    const FeatureExtractor fx(TraceMode::bound);
    for (int p = 0; p < 1000; ++p) {
        const double stimulus = (p + 0.5) / 1000.0;
        const auto t = oracle::bound_length(stimulus);
        const auto exact = static_cast<double>(oracle::trace_mean(kText, t).value());
        CHECK(std::abs(fx.trace_mean(stimulus) - exact) < 1e-12);
        CHECK(fx.firing_rate(stimulus) == oracle::firing_rate(kText, t));
    }
}

TEST_CASE("parse helpers") {
    CHECK(parse_trace_mode("bound") == TraceMode::bound);
    CHECK(parse_trace_mode("match") == TraceMode::match);
    CHECK_FALSE(parse_trace_mode("halt").has_value());
    CHECK(parse_variant("tm") == Variant::tm);
    CHECK(parse_variant("tmfr") == Variant::tmfr);
    CHECK_FALSE(parse_variant("chaosnet").has_value());
}
