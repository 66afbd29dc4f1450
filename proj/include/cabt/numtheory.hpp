#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cabt::numtheory {

/// Largest modulus accepted by order_brute_force.
inline constexpr std::int64_t kBruteForceModulusCap = std::int64_t{1} << 20;

struct OrderResult {
    std::int64_t base;
    std::int64_t modulus;
    std::int64_t order;
};

struct Convergent {
    std::int64_t numerator;
    std::int64_t denominator;

    friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// Non-negative gcd. Throws DomainError when both arguments are zero.
std::int64_t gcd(std::int64_t a, std::int64_t b);

/// base^exponent mod modulus by square-and-multiply, result in [0, modulus).
std::int64_t modpow(std::int64_t base, std::uint64_t exponent, std::int64_t modulus);

/// Least r >= 1 with base^r = 1 (mod modulus), found by walking the powers.
OrderResult order_brute_force(std::int64_t base, std::int64_t modulus);

/// Continued-fraction convergents of numerator/denominator, increasing
/// denominators.
std::vector<Convergent> convergents(std::uint64_t numerator, std::uint64_t denominator);

/// Smallest convergent denominator q of i / 2^n with q < modulus and
/// base^q = 1 (mod modulus). No retries on multiples of failed denominators.
std::optional<std::int64_t> extract_order(std::uint64_t i, int n, std::int64_t base, std::int64_t modulus);

/// Size of each residue class {k : k = x (mod r), 0 <= k < 2^n}, x = 0..r-1.
/// Entry x equals floor((2^n - 1 - x) / r) + 1.
std::vector<std::uint64_t> class_sizes(int n, std::uint64_t r);

/// [T] + [U] = [(T + U) mod r].
std::uint64_t class_add(std::uint64_t t, std::uint64_t u, std::uint64_t r);
/// [r - T] (mod r).
std::uint64_t class_inverse(std::uint64_t t, std::uint64_t r);

struct GroupAxiomReport {
    std::uint64_t r = 0;
    bool closure = true;
    bool associativity = true;
    bool commutativity = true;
    bool identity = true;
    bool inverses = true;
    bool exhaustive = true;
    std::uint64_t triples_checked = 0;
    std::string counterexample;

    bool all_hold() const noexcept { return closure && associativity && commutativity && identity && inverses; }
};

/// Checks the abelian-group axioms of class_add over labels 0..r-1:
/// exhaustively when r <= 512, otherwise on `random_triples` seeded triples.
GroupAxiomReport group_axiom_check(std::uint64_t r, std::uint64_t random_triples = 200000, std::uint64_t seed = 0);

/// ceil(log2(value)) for value >= 1.
int ceil_log2(std::uint64_t value);

} // namespace cabt::numtheory
