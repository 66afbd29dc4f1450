#include "cabt/eca.hpp"

#include "cabt/errors.hpp"

#include <algorithm>
#include <thread>

namespace cabt::eca {

namespace {

void require_width(int width) {
    if (width <= 0) {
        throw DomainError("configuration width must be positive, got " + std::to_string(width));
    }
}

void require_steps(int steps) {
    if (steps < 0) {
        throw DomainError("step count must be non-negative, got " + std::to_string(steps));
    }
}

std::uint64_t width_mask(int width) noexcept {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

} // namespace

Configuration::Configuration(std::vector<std::uint8_t> cells) : cells_(std::move(cells)) {
    require_width(width());
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (cells_[i] > 1) {
            throw DomainError("cell " + std::to_string(i + 1) + " is not 0 or 1");
        }
    }
}

Configuration Configuration::zeros(int width) {
    require_width(width);
    return Configuration(std::vector<std::uint8_t>(static_cast<std::size_t>(width), 0));
}

bool Configuration::all_white() const noexcept {
    return std::all_of(cells_.begin(), cells_.end(), [](std::uint8_t c) { return c == 0; });
}

std::string Configuration::to_string() const {
    std::string out;
    out.reserve(cells_.size());
    for (auto c : cells_) out.push_back(c ? '1' : '0');
    return out;
}

std::string Configuration::render() const {
    std::string out;
    out.reserve(cells_.size());
    for (auto c : cells_) out.push_back(c ? '#' : '.');
    return out;
}

RuleTable rule_table(int rule_number) {
    if (rule_number < 0 || rule_number > 255) {
        throw DomainError("rule number must lie in [0, 255], got " + std::to_string(rule_number));
    }
    RuleTable table;
    table.number_ = rule_number;
    for (int nb = 0; nb < 8; ++nb) {
        table.outputs_[static_cast<std::size_t>(nb)] = static_cast<std::uint8_t>((rule_number >> nb) & 1);
    }
    return table;
}

Configuration parse_configuration(std::string_view text) {
    if (text.empty()) {
        throw ParseError("empty configuration string", 0);
    }
    std::vector<std::uint8_t> cells;
    cells.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch != '0' && ch != '1') {
            throw ParseError("invalid character '" + std::string(1, ch) + "' at position " +
                                 std::to_string(i + 1) + " (expected '0' or '1')",
                             i + 1);
        }
        cells.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return Configuration(std::move(cells));
}

std::uint64_t encode(const Configuration& config) {
    if (config.width() > kMaxEncodableWidth) {
        throw DomainError("width " + std::to_string(config.width()) + " exceeds the encodable maximum of " +
                          std::to_string(kMaxEncodableWidth));
    }
    std::uint64_t index = 0;
    for (auto c : config.cells()) index = (index << 1) | c;
    return index;
}

Configuration decode(std::uint64_t index, int width) {
    require_width(width);
    if (width > kMaxEncodableWidth) {
        throw DomainError("width " + std::to_string(width) + " exceeds the encodable maximum of " +
                          std::to_string(kMaxEncodableWidth));
    }
    if (index > width_mask(width)) {
        throw DomainError("index " + std::to_string(index) + " out of range for width " + std::to_string(width));
    }
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) {
        cells[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((index >> (width - 1 - i)) & 1);
    }
    return Configuration(std::move(cells));
}

Configuration step(const Configuration& config, const RuleTable& rule) {
    const int width = config.width();
    const auto& in = config.cells();
    std::vector<std::uint8_t> out(in.size());
    for (int i = 0; i < width; ++i) {
        const int left = i > 0 ? in[static_cast<std::size_t>(i - 1)] : 0;
        const int right = i + 1 < width ? in[static_cast<std::size_t>(i + 1)] : 0;
        out[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>(rule.output(left, in[static_cast<std::size_t>(i)], right));
    }
    return Configuration(std::move(out));
}

Configuration evolve(Configuration config, const RuleTable& rule, int steps) {
    require_steps(steps);
    for (int s = 0; s < steps; ++s) config = step(config, rule);
    return config;
}

std::uint64_t step_packed(std::uint64_t bits, int width, const RuleTable& rule) noexcept {
    const std::uint64_t mask = width_mask(width);
    // Bit p holds cell (width - p); its left neighbour sits at p + 1.
    const std::uint64_t left = bits >> 1;
    const std::uint64_t center = bits;
    const std::uint64_t right = (bits << 1) & mask;
    std::uint64_t out = 0;
    for (int nb = 0; nb < 8; ++nb) {
        if (!rule.output(nb)) continue;
        const std::uint64_t l = (nb & 4) ? left : ~left;
        const std::uint64_t c = (nb & 2) ? center : ~center;
        const std::uint64_t r = (nb & 1) ? right : ~right;
        out |= l & c & r;
    }
    return out & mask;
}

std::uint64_t evolve_packed(std::uint64_t bits, int width, const RuleTable& rule, int steps) noexcept {
    for (int s = 0; s < steps; ++s) bits = step_packed(bits, width, rule);
    return bits;
}

std::vector<Configuration> preimages(const Configuration& target, const RuleTable& rule, int steps,
                                     const PreimageOptions& options) {
    if (steps < 1) {
        throw DomainError("preimage search needs at least one step, got " + std::to_string(steps));
    }
    const int width = target.width();
    if (width > options.max_width || width > kMaxEncodableWidth) {
        throw ResourceError("width " + std::to_string(width) + " exceeds the exhaustive enumeration cap of " +
                            std::to_string(std::min(options.max_width, kMaxEncodableWidth)) + " cells");
    }
    const std::uint64_t goal = encode(target);
    const std::uint64_t total = std::uint64_t{1} << width;
    const auto workers = static_cast<std::uint64_t>(std::clamp(options.workers, 1, 64));
    const std::uint64_t chunk = (total + workers - 1) / workers;

    std::vector<std::vector<std::uint64_t>> found(workers);
    auto scan = [&](std::uint64_t w) {
        const std::uint64_t begin = w * chunk;
        const std::uint64_t end = std::min(total, begin + chunk);
        for (std::uint64_t k = begin; k < end; ++k) {
            if (evolve_packed(k, width, rule, steps) == goal) found[w].push_back(k);
        }
    };
    if (workers == 1) {
        scan(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    }

    std::vector<Configuration> result;
    for (const auto& part : found) {
        for (auto k : part) result.push_back(decode(k, width));
    }
    return result;
}

} // namespace cabt::eca
