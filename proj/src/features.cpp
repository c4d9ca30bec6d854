#include "autochaos/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace autochaos {

namespace {

std::size_t bound_length(int pattern) {
    const long raw = 3L * pattern - 111L;
    return static_cast<std::size_t>(std::clamp(raw, 1L, static_cast<long>(kSourceLength)));
}

std::size_t match_length(const ChampernowneSource& source, int pattern) {
    const auto offset = source.find_pattern(three_digit_pattern(pattern));
    if (!offset)
        return kSourceLength;
    // The trace stops just before the matching orbit value.
    return std::max<std::size_t>(*offset, 1);
}

}  // namespace

std::string_view to_string(TraceMode mode) {
    return mode == TraceMode::bound ? "bound" : "match";
}

std::string_view to_string(Variant variant) {
    return variant == Variant::tm ? "tm" : "tmfr";
}

std::optional<TraceMode> parse_trace_mode(std::string_view text) {
    if (text == "bound")
        return TraceMode::bound;
    if (text == "match")
        return TraceMode::match;
    return std::nullopt;
}

std::optional<Variant> parse_variant(std::string_view text) {
    if (text == "tm")
        return Variant::tm;
    if (text == "tmfr" || text == "tm-fr")
        return Variant::tmfr;
    return std::nullopt;
}

int pattern_number(double stimulus) {
    if (!(stimulus >= 0.0 && stimulus <= 1.0))
        throw std::invalid_argument("stimulus must be a normalized value in [0, 1], got " +
                                    std::to_string(stimulus));
    return std::min(static_cast<int>(std::floor(stimulus * 1000.0)), 999);
}

TraceSpec firing_time_bound(double stimulus, TraceMode mode, const ChampernowneSource& source) {
    TraceSpec spec;
    spec.stimulus = stimulus;
    spec.pattern_number = pattern_number(stimulus);
    spec.mode = mode;
    spec.firing_time_bound = mode == TraceMode::bound ? bound_length(spec.pattern_number)
                                                      : match_length(source, spec.pattern_number);
    return spec;
}

Trace build_trace(const ChampernowneSource& source, const TraceSpec& spec, int window) {
    Trace trace;
    trace.spec = spec;
    trace.values.reserve(spec.firing_time_bound);
    for (std::size_t k = 0; k < spec.firing_time_bound; ++k)
        trace.values.push_back(source.orbit_value(k, window).value);
    return trace;
}

double trace_mean(std::span<const double> values) {
    if (values.empty())
        throw std::invalid_argument("trace_mean of an empty trace");
    double sum = 0.0;
    for (double v : values)
        sum += v;
    return sum / static_cast<double>(values.size());
}

double firing_rate(std::span<const double> values) {
    if (values.empty())
        throw std::invalid_argument("firing_rate of an empty trace");
    const auto above = std::count_if(values.begin(), values.end(),
                                     [](double v) { return v > kFiringThreshold; });
    return static_cast<double>(above) / static_cast<double>(values.size());
}

FeatureExtractor::FeatureExtractor(TraceMode mode, int window, const ChampernowneSource& source)
    : mode_(mode), window_(window) {
    mean_by_length_.resize(kSourceLength);
    rate_by_length_.resize(kSourceLength);
    double sum = 0.0;
    std::size_t above = 0;
    for (std::size_t k = 0; k < kSourceLength; ++k) {
        const double v = source.orbit_value(k, window).value;
        sum += v;
        above += v > kFiringThreshold ? 1 : 0;
        const auto length = static_cast<double>(k + 1);
        mean_by_length_[k] = sum / length;
        rate_by_length_[k] = static_cast<double>(above) / length;
    }
    for (int p = 0; p < 1000; ++p)
        match_length_[static_cast<std::size_t>(p)] = match_length(source, p);
}

std::size_t FeatureExtractor::trace_length(double stimulus) const {
    const int p = pattern_number(stimulus);
    return mode_ == TraceMode::bound ? bound_length(p) : match_length_[static_cast<std::size_t>(p)];
}

double FeatureExtractor::trace_mean(double stimulus) const {
    return mean_by_length_[trace_length(stimulus) - 1];
}

double FeatureExtractor::firing_rate(double stimulus) const {
    return rate_by_length_[trace_length(stimulus) - 1];
}

void FeatureExtractor::extract_into(std::span<const double> sample, Variant variant,
                                    std::span<double> out) const {
    const std::size_t n = sample.size();
    if (out.size() != feature_count(variant, n))
        throw std::invalid_argument("feature buffer has the wrong size");
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t t = trace_length(sample[j]) - 1;
        out[j] = mean_by_length_[t];
        if (variant == Variant::tmfr)
            out[n + j] = rate_by_length_[t];
    }
}

std::vector<double> FeatureExtractor::extract(std::span<const double> sample,
                                              Variant variant) const {
    std::vector<double> out(feature_count(variant, sample.size()));
    extract_into(sample, variant, out);
    return out;
}

std::vector<double> extract(std::span<const double> sample, Variant variant, TraceMode mode) {
    static const FeatureExtractor bound_extractor(TraceMode::bound);
    static const FeatureExtractor match_extractor(TraceMode::match);
    return (mode == TraceMode::bound ? bound_extractor : match_extractor).extract(sample, variant);
}

}  // namespace autochaos
