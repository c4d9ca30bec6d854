#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "autochaos/champernowne.hpp"

namespace autochaos {

/// How the trace length is chosen for a stimulus.
///   bound: the digit offset 3N' - 111 of N' in the source, clamped to [1, 1389].
///   match: the number of shifts until the orbit first shows the stimulus's
///          three leading decimals (1389 when they never appear).
enum class TraceMode { bound, match };

/// TM keeps only the trace mean; TM-FR adds the firing rate.
enum class Variant { tm, tmfr };

std::string_view to_string(TraceMode mode);
std::string_view to_string(Variant variant);
std::optional<TraceMode> parse_trace_mode(std::string_view text);
std::optional<Variant> parse_variant(std::string_view text);

inline constexpr double kFiringThreshold = 0.5;

struct TraceSpec {
    double stimulus = 0.0;
    int pattern_number = 0;  // first three decimals of the stimulus, 0..999
    std::size_t firing_time_bound = 1;
    TraceMode mode = TraceMode::bound;
};

struct Trace {
    std::vector<double> values;
    TraceSpec spec;
};

/// min(floor(stimulus * 1000), 999). Throws std::invalid_argument outside [0, 1].
int pattern_number(double stimulus);

TraceSpec firing_time_bound(double stimulus, TraceMode mode,
                            const ChampernowneSource& source = ChampernowneSource::instance());

/// The orbit {c, f(c), ..., f^(T-1)(c)} with T = spec.firing_time_bound.
Trace build_trace(const ChampernowneSource& source, const TraceSpec& spec,
                  int window = kDefaultWindow);

/// Left-to-right arithmetic mean. Throws std::invalid_argument on an empty trace.
double trace_mean(std::span<const double> values);
/// Fraction of values strictly above 0.5. Throws std::invalid_argument on an empty trace.
double firing_rate(std::span<const double> values);

inline double trace_mean(const Trace& trace) { return trace_mean(trace.values); }
inline double firing_rate(const Trace& trace) { return firing_rate(trace.values); }

inline std::size_t feature_count(Variant variant, std::size_t n_inputs) {
    return variant == Variant::tmfr ? 2 * n_inputs : n_inputs;
}

/// Computes TM / TM-FR features for whole samples.
///
/// Trace length takes at most 1389 distinct values, so the mean and firing
/// rate of every possible trace are tabulated once. The tables are built by
/// the same left-to-right summation as trace_mean(), so results are
/// bit-identical to building each trace explicitly.
class FeatureExtractor {
public:
    explicit FeatureExtractor(TraceMode mode = TraceMode::bound, int window = kDefaultWindow,
                              const ChampernowneSource& source = ChampernowneSource::instance());

    TraceMode mode() const noexcept { return mode_; }
    int window() const noexcept { return window_; }

    std::size_t trace_length(double stimulus) const;
    double trace_mean(double stimulus) const;
    double firing_rate(double stimulus) const;

    /// TM: n means. TM-FR: [mean_1..mean_n, rate_1..rate_n].
    std::vector<double> extract(std::span<const double> sample, Variant variant) const;
    void extract_into(std::span<const double> sample, Variant variant, std::span<double> out) const;

private:
    TraceMode mode_;
    int window_;
    std::vector<double> mean_by_length_;  // index T-1
    std::vector<double> rate_by_length_;
    std::array<std::size_t, 1000> match_length_{};
};

std::vector<double> extract(std::span<const double> sample, Variant variant,
                            TraceMode mode = TraceMode::bound);

}  // namespace autochaos
