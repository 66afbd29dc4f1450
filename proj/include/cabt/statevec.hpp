#pragma once

// Dense statevector over the composite register |index> (x) |flag> (x) |modexp>.
//
// Basis packing: basis = (index << (1 + t)) | (flag << t) | modexp, i.e. the
// index register occupies the most significant bits and the modexp register
// the least significant ones.

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace cabt::statevec {

using Amplitude = std::complex<double>;

inline constexpr int kDefaultQubitCap = 26;

enum class Register { Index, Flag, Modexp };

const char* register_name(Register reg) noexcept;

class RegisterLayout {
public:
    /// Throws DomainError for a non-positive index width or negative modexp
    /// width, ResourceError when n + 1 + t exceeds `cap`.
    RegisterLayout(int index_width, int modexp_width, int cap = kDefaultQubitCap);

    int index_width() const noexcept { return index_width_; }
    int flag_width() const noexcept { return 1; }
    int modexp_width() const noexcept { return modexp_width_; }
    int total() const noexcept { return index_width_ + 1 + modexp_width_; }
    int cap() const noexcept { return cap_; }

    std::uint64_t dimension() const noexcept { return std::uint64_t{1} << total(); }
    std::uint64_t index_dimension() const noexcept { return std::uint64_t{1} << index_width_; }
    std::uint64_t modexp_dimension() const noexcept { return std::uint64_t{1} << modexp_width_; }
    /// Distance between consecutive index values in the packed basis.
    std::uint64_t index_stride() const noexcept { return std::uint64_t{1} << (1 + modexp_width_); }

    std::uint64_t pack(std::uint64_t index, int flag, std::uint64_t modexp) const noexcept {
        return (index << (1 + modexp_width_)) | (static_cast<std::uint64_t>(flag) << modexp_width_) | modexp;
    }
    std::uint64_t index_of(std::uint64_t basis) const noexcept { return basis >> (1 + modexp_width_); }
    int flag_of(std::uint64_t basis) const noexcept { return static_cast<int>((basis >> modexp_width_) & 1); }
    std::uint64_t modexp_of(std::uint64_t basis) const noexcept { return basis & (modexp_dimension() - 1); }

    friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;

private:
    int index_width_;
    int modexp_width_;
    int cap_;
};

class StateVector {
public:
    StateVector(RegisterLayout layout, std::vector<Amplitude> amplitudes);

    const RegisterLayout& layout() const noexcept { return layout_; }
    std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
    std::span<Amplitude> amplitudes() noexcept { return amplitudes_; }
    const Amplitude& operator[](std::uint64_t basis) const { return amplitudes_[basis]; }
    Amplitude& operator[](std::uint64_t basis) { return amplitudes_[basis]; }

    /// Sum of squared magnitudes.
    double norm_squared() const noexcept;

private:
    RegisterLayout layout_;
    std::vector<Amplitude> amplitudes_;
};

/// Largest |a_j - b_j| over all basis states. Layouts must match.
double max_deviation(const StateVector& a, const StateVector& b);

/// Index register 0, flag 0, modexp register 1 (0 when the register is empty).
StateVector initial_state(const RegisterLayout& layout);

/// H on every index qubit.
StateVector apply_hadamard_layer(StateVector state);

using IndexPredicate = std::function<int(std::uint64_t)>;

/// |k>|y>|m> -> |k>|y xor f(k)>|m>. f is evaluated once per index value and
/// must return 0 or 1 (ContractViolation otherwise).
StateVector apply_flag_oracle(StateVector state, const IndexPredicate& f);
StateVector apply_flag_oracle(StateVector state, std::span<const std::uint8_t> marks);

/// |k>|y>|1> -> |k>|y>|base^k mod modulus>. Requires gcd(base, modulus) = 1,
/// modulus <= 2^t and every populated basis state to carry modexp value 1.
StateVector apply_modexp(StateVector state, std::int64_t base, std::int64_t modulus);

/// |k> -> 2^{-n/2} sum_i exp(-2 pi sqrt(-1) i k / 2^n) |i> on the index register.
StateVector apply_iqft(StateVector state);
/// Exact inverse of apply_iqft (positive exponent).
StateVector apply_qft(StateVector state);

/// Probabilities of each value of one register, other registers traced out.
std::vector<double> marginal(const StateVector& state, Register reg);

struct PostSelection {
    StateVector state;
    double acceptance;
};

/// Projects the flag register onto `value` and renormalises. Throws
/// EmptySubspaceError when the subspace carries no probability.
PostSelection post_select(const StateVector& state, Register reg, int value);

using Histogram = std::map<std::uint64_t, std::uint64_t>;

/// Draws `shots` basis outcomes with a seeded mt19937_64. Same seed, same
/// histogram.
Histogram sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed);

/// Collapses a basis-outcome histogram onto one register's values.
Histogram project_histogram(const Histogram& outcomes, const RegisterLayout& layout, Register reg);

} // namespace cabt::statevec
