#include "autochaos/champernowne.hpp"

#include <stdexcept>

namespace autochaos {

namespace {

constexpr std::uint64_t kPow10[] = {
    1ULL,
    10ULL,
    100ULL,
    1000ULL,
    10000ULL,
    100000ULL,
    1000000ULL,
    10000000ULL,
    100000000ULL,
    1000000000ULL,
    10000000000ULL,
    100000000000ULL,
    1000000000000ULL,
    10000000000000ULL,
    100000000000000ULL,
    1000000000000000ULL,
    10000000000000000ULL,
    100000000000000000ULL,
    1000000000000000000ULL,
};

void check_window(int window) {
    if (window < 1 || window > kMaxWindow)
        throw std::invalid_argument("window width must be in 1..18, got " + std::to_string(window));
}

}  // namespace

ChampernowneSource::ChampernowneSource() {
    digits_.reserve(kSourceLength);
    for (int n = 1; n <= kTruncationNumber; ++n) {
        for (char ch : std::to_string(n))
            digits_.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
}

const ChampernowneSource& ChampernowneSource::instance() {
    static const ChampernowneSource source;
    return source;
}

std::uint64_t ChampernowneSource::window_integer(std::size_t step, int window) const {
    check_window(window);
    std::uint64_t acc = 0;
    for (int i = 0; i < window; ++i)
        acc = acc * 10 + digit(step + static_cast<std::size_t>(i));
    return acc;
}

OrbitValue ChampernowneSource::orbit_value(std::size_t step, int window) const {
    // The integer is exact, so a single division gives the correctly rounded double.
    const auto numerator = window_integer(step, window);
    return {static_cast<double>(numerator) / static_cast<double>(kPow10[window]), step};
}

std::optional<std::size_t> ChampernowneSource::find_pattern(
    const std::array<std::uint8_t, 3>& pattern) const {
    for (std::size_t j = 0; j + 3 <= digits_.size(); ++j) {
        if (digits_[j] == pattern[0] && digits_[j + 1] == pattern[1] && digits_[j + 2] == pattern[2])
            return j;
    }
    return std::nullopt;
}

std::string ChampernowneSource::slice(std::size_t offset, std::size_t count) const {
    if (offset > digits_.size() || count > digits_.size() - offset) {
        throw std::out_of_range("digit slice [" + std::to_string(offset) + ", " +
                                std::to_string(offset + count) + ") exceeds the " +
                                std::to_string(kSourceLength) + "-digit source");
    }
    std::string out;
    out.reserve(count);
    for (std::size_t i = offset; i < offset + count; ++i)
        out.push_back(static_cast<char>('0' + digits_[i]));
    return out;
}

std::uint64_t position_of(std::uint64_t n) {
    if (n < 10)
        throw std::invalid_argument("position_of needs a number with at least two digits, got " +
                                    std::to_string(n));
    if (n >= kPow10[18])
        throw std::invalid_argument("position_of supports numbers below 10^18");
    std::uint64_t d = 0;
    for (auto v = n; v > 0; v /= 10)
        ++d;
    std::uint64_t powers = 0;
    for (std::uint64_t i = 1; i < d; ++i)
        powers += kPow10[i];
    return d * n - powers - 1;
}

std::array<std::uint8_t, 3> three_digit_pattern(int value) {
    if (value < 0 || value > 999)
        throw std::invalid_argument("pattern value must be in 0..999, got " + std::to_string(value));
    return {static_cast<std::uint8_t>(value / 100), static_cast<std::uint8_t>(value / 10 % 10),
            static_cast<std::uint8_t>(value % 10)};
}

}  // namespace autochaos
