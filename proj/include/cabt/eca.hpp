#pragma once

// Elementary (radius-1, two-state) cellular automata on a finite line with
// fixed white boundary cells, plus the exhaustive preimage enumerator.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cabt::eca {

/// Widest line that still has an integer encoding.
inline constexpr int kMaxEncodableWidth = 63;

/// Default cap for exhaustive enumeration (2^24 candidate configurations).
inline constexpr int kDefaultEnumerationCap = 24;

class RuleTable {
public:
    RuleTable() = default;

    int number() const noexcept { return number_; }

    /// Output bit for neighborhood (left, center, right).
    int output(int left, int center, int right) const noexcept {
        return outputs_[static_cast<std::size_t>(4 * left + 2 * center + right)];
    }

    /// Output bit by packed neighborhood value 4l + 2c + r.
    int output(int neighborhood) const noexcept {
        return outputs_[static_cast<std::size_t>(neighborhood)];
    }

private:
    friend RuleTable rule_table(int);
    int number_ = 0;
    std::array<std::uint8_t, 8> outputs_{};
};

/// A line of cells. Cell 1 (index 0 here) is the leftmost cell and the most
/// significant bit of the integer encoding.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::vector<std::uint8_t> cells);

    static Configuration zeros(int width);

    int width() const noexcept { return static_cast<int>(cells_.size()); }
    int cell(int i) const { return cells_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::uint8_t>& cells() const noexcept { return cells_; }
    bool all_white() const noexcept;

    /// '0'/'1' string, leftmost character = cell 1.
    std::string to_string() const;
    /// '.'/'#' rendering.
    std::string render() const;

    friend bool operator==(const Configuration&, const Configuration&) = default;

private:
    std::vector<std::uint8_t> cells_;
};

/// Decodes a Wolfram rule number. Throws DomainError outside [0, 255].
RuleTable rule_table(int rule_number);

/// Parses a '0'/'1' string. Throws ParseError carrying the 1-based
/// position of the first offending character.
Configuration parse_configuration(std::string_view text);

std::uint64_t encode(const Configuration& config);
Configuration decode(std::uint64_t index, int width);

Configuration step(const Configuration& config, const RuleTable& rule);
Configuration evolve(Configuration config, const RuleTable& rule, int steps);

/// One synchronous update on the bit-packed encoding (width <= 63).
std::uint64_t step_packed(std::uint64_t bits, int width, const RuleTable& rule) noexcept;
std::uint64_t evolve_packed(std::uint64_t bits, int width, const RuleTable& rule, int steps) noexcept;

struct PreimageOptions {
    int max_width = kDefaultEnumerationCap;
    /// Enumeration range is split into this many contiguous chunks, one per
    /// thread. The result does not depend on the value.
    int workers = 1;
};

/// Every configuration that evolves to `target` in exactly `steps` updates,
/// sorted by encoding. Plain exhaustive search over all 2^width candidates.
std::vector<Configuration> preimages(const Configuration& target, const RuleTable& rule, int steps,
                                     const PreimageOptions& options = {});

} // namespace cabt::eca
