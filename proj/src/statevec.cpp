#include "cabt/statevec.hpp"

#include "cabt/errors.hpp"
#include "cabt/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace cabt::statevec {

namespace {

// Probability below which a projected subspace counts as empty.
constexpr double kEmptySubspaceThreshold = 1e-24;

// In-place radix-2 DFT of length 2^n with exponent sign `sign`, unnormalised.
void fft_inplace(std::vector<Amplitude>& data, std::span<const Amplitude> twiddles) {
    const std::size_t size = data.size();
    for (std::size_t i = 1, j = 0; i < size; ++i) {
        std::size_t bit = size >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= size; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t twiddle_step = size / len;
        for (std::size_t start = 0; start < size; start += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const Amplitude w = twiddles[j * twiddle_step];
                const Amplitude u = data[start + j];
                const Amplitude v = data[start + j + half] * w;
                data[start + j] = u + v;
                data[start + j + half] = u - v;
            }
        }
    }
}

StateVector fourier_on_index(StateVector state, double sign) {
    const auto& layout = state.layout();
    const std::uint64_t dim = layout.index_dimension();
    const std::uint64_t stride = layout.index_stride();
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));

    std::vector<Amplitude> twiddles(std::max<std::uint64_t>(dim / 2, 1));
    for (std::uint64_t j = 0; j < twiddles.size(); ++j) {
        const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(dim);
        twiddles[j] = {std::cos(angle), std::sin(angle)};
    }

    auto amps = state.amplitudes();
    std::vector<Amplitude> column(dim);
    for (std::uint64_t low = 0; low < stride; ++low) {
        bool populated = false;
        for (std::uint64_t k = 0; k < dim; ++k) {
            column[k] = amps[k * stride + low];
            populated = populated || column[k] != Amplitude{};
        }
        if (!populated) continue;
        fft_inplace(column, twiddles);
        for (std::uint64_t k = 0; k < dim; ++k) amps[k * stride + low] = column[k] * scale;
    }
    return state;
}

} // namespace

const char* register_name(Register reg) noexcept {
    switch (reg) {
    case Register::Index: return "index";
    case Register::Flag: return "flag";
    case Register::Modexp: return "modexp";
    }
    return "unknown";
}

RegisterLayout::RegisterLayout(int index_width, int modexp_width, int cap)
    : index_width_(index_width), modexp_width_(modexp_width), cap_(cap) {
    if (index_width < 1) {
        throw DomainError("index register width must be positive, got " + std::to_string(index_width));
    }
    if (modexp_width < 0) {
        throw DomainError("modexp register width must be non-negative, got " + std::to_string(modexp_width));
    }
    if (cap < 1 || cap > 40) {
        throw DomainError("qubit cap must lie in [1, 40], got " + std::to_string(cap));
    }
    if (total() > cap) {
        throw ResourceError("register needs " + std::to_string(total()) + " qubits (" + std::to_string(index_width) +
                            " index + 1 flag + " + std::to_string(modexp_width) + " modexp), cap is " +
                            std::to_string(cap));
    }
}

StateVector::StateVector(RegisterLayout layout, std::vector<Amplitude> amplitudes)
    : layout_(layout), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != layout_.dimension()) {
        throw DomainError("amplitude count " + std::to_string(amplitudes_.size()) + " does not match 2^" +
                          std::to_string(layout_.total()));
    }
}

double StateVector::norm_squared() const noexcept {
    double sum = 0.0;
    for (const auto& a : amplitudes_) sum += std::norm(a);
    return sum;
}

double max_deviation(const StateVector& a, const StateVector& b) {
    if (!(a.layout() == b.layout())) {
        throw DomainError("cannot compare states with different layouts");
    }
    double worst = 0.0;
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
    return worst;
}

StateVector initial_state(const RegisterLayout& layout) {
    std::vector<Amplitude> amps(layout.dimension());
    const std::uint64_t modexp_start = layout.modexp_width() > 0 ? 1 : 0;
    amps[layout.pack(0, 0, modexp_start)] = 1.0;
    return StateVector(layout, std::move(amps));
}

StateVector apply_hadamard_layer(StateVector state) {
    const auto& layout = state.layout();
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    auto amps = state.amplitudes();
    const std::uint64_t dim = layout.dimension();
    for (int q = 0; q < layout.index_width(); ++q) {
        const std::uint64_t bit = std::uint64_t{1} << (q + 1 + layout.modexp_width());
        for (std::uint64_t base = 0; base < dim; base += 2 * bit) {
            for (std::uint64_t off = 0; off < bit; ++off) {
                const std::uint64_t i0 = base + off;
                const std::uint64_t i1 = i0 + bit;
                const Amplitude a = amps[i0];
                const Amplitude b = amps[i1];
                amps[i0] = (a + b) * inv_sqrt2;
                amps[i1] = (a - b) * inv_sqrt2;
            }
        }
    }
    return state;
}

StateVector apply_flag_oracle(StateVector state, const IndexPredicate& f) {
    const std::uint64_t dim = state.layout().index_dimension();
    std::vector<std::uint8_t> marks(dim);
    for (std::uint64_t k = 0; k < dim; ++k) {
        const int bit = f(k);
        if (bit != 0 && bit != 1) {
            throw ContractViolation("oracle returned " + std::to_string(bit) + " for index " + std::to_string(k) +
                                    "; expected 0 or 1");
        }
        marks[k] = static_cast<std::uint8_t>(bit);
    }
    return apply_flag_oracle(std::move(state), marks);
}

StateVector apply_flag_oracle(StateVector state, std::span<const std::uint8_t> marks) {
    const auto& layout = state.layout();
    if (marks.size() != layout.index_dimension()) {
        throw ContractViolation("oracle table has " + std::to_string(marks.size()) + " entries, index register has " +
                                std::to_string(layout.index_dimension()));
    }
    auto amps = state.amplitudes();
    for (std::uint64_t k = 0; k < marks.size(); ++k) {
        if (marks[k] > 1) {
            throw ContractViolation("oracle table entry " + std::to_string(k) + " is not 0 or 1");
        }
        if (!marks[k]) continue;
        for (std::uint64_t m = 0; m < layout.modexp_dimension(); ++m) {
            std::swap(amps[layout.pack(k, 0, m)], amps[layout.pack(k, 1, m)]);
        }
    }
    return state;
}

StateVector apply_modexp(StateVector state, std::int64_t base, std::int64_t modulus) {
    const auto& layout = state.layout();
    if (modulus < 2) {
        throw DomainError("modulus must be at least 2, got " + std::to_string(modulus));
    }
    if (static_cast<std::uint64_t>(modulus) > layout.modexp_dimension()) {
        throw PreconditionError("modulus " + std::to_string(modulus) + " does not fit a " +
                                std::to_string(layout.modexp_width()) + "-qubit modexp register");
    }
    if (numtheory::gcd(base, modulus) != 1) {
        throw PreconditionError("gcd(" + std::to_string(base) + ", " + std::to_string(modulus) + ") = " +
                                std::to_string(numtheory::gcd(base, modulus)) + ", expected 1");
    }

    const auto amps = state.amplitudes();
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        if (amps[b] != Amplitude{} && layout.modexp_of(b) != 1) {
            throw ContractViolation("modexp register holds " + std::to_string(layout.modexp_of(b)) +
                                    " on a populated basis state; expected 1");
        }
    }

    const auto m = static_cast<std::uint64_t>(modulus);
    const std::uint64_t a = static_cast<std::uint64_t>(((base % modulus) + modulus) % modulus);
    std::vector<Amplitude> out(amps.size());
    std::uint64_t power = 1;
    for (std::uint64_t k = 0; k < layout.index_dimension(); ++k) {
        for (int y = 0; y < 2; ++y) out[layout.pack(k, y, power)] = amps[layout.pack(k, y, 1)];
        power = (power * a) % m;
    }
    return StateVector(layout, std::move(out));
}

StateVector apply_iqft(StateVector state) {
    return fourier_on_index(std::move(state), -1.0);
}

StateVector apply_qft(StateVector state) {
    return fourier_on_index(std::move(state), +1.0);
}

std::vector<double> marginal(const StateVector& state, Register reg) {
    const auto& layout = state.layout();
    std::vector<double> probs;
    switch (reg) {
    case Register::Index: probs.resize(layout.index_dimension()); break;
    case Register::Flag: probs.resize(2); break;
    case Register::Modexp: probs.resize(layout.modexp_dimension()); break;
    }
    const auto amps = state.amplitudes();
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        const double p = std::norm(amps[b]);
        switch (reg) {
        case Register::Index: probs[layout.index_of(b)] += p; break;
        case Register::Flag: probs[static_cast<std::size_t>(layout.flag_of(b))] += p; break;
        case Register::Modexp: probs[layout.modexp_of(b)] += p; break;
        }
    }
    return probs;
}

PostSelection post_select(const StateVector& state, Register reg, int value) {
    if (reg != Register::Flag) {
        throw DomainError(std::string("post-selection is defined on the flag register, not ") + register_name(reg));
    }
    if (value != 0 && value != 1) {
        throw DomainError("flag value must be 0 or 1, got " + std::to_string(value));
    }
    const auto& layout = state.layout();
    std::vector<Amplitude> out(state.amplitudes().begin(), state.amplitudes().end());
    double acceptance = 0.0;
    for (std::uint64_t b = 0; b < out.size(); ++b) {
        if (layout.flag_of(b) == value) {
            acceptance += std::norm(out[b]);
        } else {
            out[b] = Amplitude{};
        }
    }
    if (acceptance <= kEmptySubspaceThreshold) {
        throw EmptySubspaceError("nothing in measurement: flag = " + std::to_string(value) +
                                 " has zero probability");
    }
    const double scale = 1.0 / std::sqrt(acceptance);
    for (auto& a : out) a *= scale;
    return {StateVector(layout, std::move(out)), acceptance};
}

Histogram sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) {
        throw DomainError("shot count must be positive");
    }
    const auto amps = state.amplitudes();
    std::vector<double> cumulative(amps.size());
    double running = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        running += std::norm(amps[i]);
        cumulative[i] = running;
    }
    if (!(running > 0.0)) {
        throw DomainError("cannot sample from a zero state");
    }
    std::mt19937_64 rng(seed);
    Histogram counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        // 53 random mantissa bits; avoids implementation-defined distributions.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * running;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) --it;
        ++counts[static_cast<std::uint64_t>(it - cumulative.begin())];
    }
    return counts;
}

Histogram project_histogram(const Histogram& outcomes, const RegisterLayout& layout, Register reg) {
    Histogram out;
    for (const auto& [basis, count] : outcomes) {
        std::uint64_t key = 0;
        switch (reg) {
        case Register::Index: key = layout.index_of(basis); break;
        case Register::Flag: key = static_cast<std::uint64_t>(layout.flag_of(basis)); break;
        case Register::Modexp: key = layout.modexp_of(basis); break;
        }
        out[key] += count;
    }
    return out;
}

} // namespace cabt::statevec
