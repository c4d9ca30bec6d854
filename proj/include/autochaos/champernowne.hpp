#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace autochaos {

/// Last natural number whose digits are kept in the truncated constant.
inline constexpr int kTruncationNumber = 499;
/// Digits after the decimal point of 0.123456789101112...498499.
inline constexpr std::size_t kSourceLength = 1389;
inline constexpr int kDefaultWindow = 15;
inline constexpr int kMaxWindow = 18;

/// One point of the decimal-shift-map orbit, read as a fixed-width digit window.
struct OrbitValue {
    double value = 0.0;
    std::size_t step = 0;
};

/// The truncated Champernowne constant held as a flat digit array.
///
/// Offsets are zero-based: digit(0) is the first digit after the decimal
/// point. Every digit past the truncation is 0, so the constant behaves as a
/// finite decimal under the shift map. Immutable after construction.
class ChampernowneSource {
public:
    ChampernowneSource();

    /// Shared instance; construction is cheap but the digits never change.
    static const ChampernowneSource& instance();

    std::span<const std::uint8_t> digits() const noexcept { return digits_; }
    std::size_t size() const noexcept { return digits_.size(); }

    /// Digit at a zero-based offset, 0 past the end.
    std::uint8_t digit(std::size_t offset) const noexcept {
        return offset < digits_.size() ? digits_[offset] : std::uint8_t{0};
    }

    /// f^(step)(c) truncated to `window` digits, i.e. 0.d_{step+1}...d_{step+window}.
    /// Throws std::invalid_argument unless 1 <= window <= 18.
    OrbitValue orbit_value(std::size_t step, int window = kDefaultWindow) const;

    /// The same window as an integer in [0, 10^window).
    std::uint64_t window_integer(std::size_t step, int window = kDefaultWindow) const;

    /// Smallest offset j with digits j, j+1, j+2 equal to `pattern`, if any.
    std::optional<std::size_t> find_pattern(const std::array<std::uint8_t, 3>& pattern) const;

    /// Digits [offset, offset+count) as text. Throws std::out_of_range past the end.
    std::string slice(std::size_t offset, std::size_t count) const;

private:
    std::vector<std::uint8_t> digits_;
};

inline ChampernowneSource build_source() { return ChampernowneSource{}; }

/// Number of digits that precede the first digit of `n` in 0.123456789101112...
///
/// For a d-digit n (d >= 2) this is d*n - (10 + 10^2 + ... + 10^(d-1)) - 1.
/// Throws std::invalid_argument for n < 10.
std::uint64_t position_of(std::uint64_t n);

/// Splits a value in 0..999 into its three zero-padded decimal digits.
std::array<std::uint8_t, 3> three_digit_pattern(int value);

}  // namespace autochaos
