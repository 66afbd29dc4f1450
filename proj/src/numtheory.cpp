#include "cabt/numtheory.hpp"

#include "cabt/errors.hpp"

#include <random>

namespace cabt::numtheory {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t reduce(std::int64_t value, std::int64_t modulus) {
    const std::int64_t r = value % modulus;
    return static_cast<std::uint64_t>(r < 0 ? r + modulus : r);
}

} // namespace

std::int64_t gcd(std::int64_t a, std::int64_t b) {
    if (a == 0 && b == 0) {
        throw DomainError("gcd(0, 0) is undefined");
    }
    std::uint64_t x = a < 0 ? 0 - static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
    std::uint64_t y = b < 0 ? 0 - static_cast<std::uint64_t>(b) : static_cast<std::uint64_t>(b);
    while (y != 0) {
        const std::uint64_t t = x % y;
        x = y;
        y = t;
    }
    return static_cast<std::int64_t>(x);
}

std::int64_t modpow(std::int64_t base, std::uint64_t exponent, std::int64_t modulus) {
    if (modulus < 1) {
        throw DomainError("modulus must be positive, got " + std::to_string(modulus));
    }
    const auto m = static_cast<std::uint64_t>(modulus);
    std::uint64_t result = 1 % m;
    std::uint64_t square = reduce(base, modulus);
    while (exponent != 0) {
        if (exponent & 1) result = mulmod(result, square, m);
        square = mulmod(square, square, m);
        exponent >>= 1;
    }
    return static_cast<std::int64_t>(result);
}

OrderResult order_brute_force(std::int64_t base, std::int64_t modulus) {
    if (modulus < 1 || modulus > kBruteForceModulusCap) {
        throw DomainError("modulus must lie in [1, 2^20] for brute-force order finding, got " +
                          std::to_string(modulus));
    }
    if (gcd(base, modulus) != 1) {
        throw PreconditionError("gcd(" + std::to_string(base) + ", " + std::to_string(modulus) + ") = " +
                                std::to_string(gcd(base, modulus)) + ", order is undefined");
    }
    const auto m = static_cast<std::uint64_t>(modulus);
    const std::uint64_t a = reduce(base, modulus);
    std::uint64_t power = a % m;
    std::int64_t r = 1;
    while (power != 1 % m) {
        power = mulmod(power, a, m);
        ++r;
    }
    return {base, modulus, r};
}

std::vector<Convergent> convergents(std::uint64_t numerator, std::uint64_t denominator) {
    if (denominator == 0) {
        throw DomainError("continued fraction denominator must be positive");
    }
    if (numerator >= denominator) {
        throw DomainError("continued fraction expects numerator < denominator");
    }
    std::vector<Convergent> out;
    // p_{-2}/q_{-2} = 0/1, p_{-1}/q_{-1} = 1/0
    std::int64_t p_prev2 = 0, q_prev2 = 1;
    std::int64_t p_prev1 = 1, q_prev1 = 0;
    std::uint64_t num = numerator, den = denominator;
    while (den != 0) {
        const auto a = static_cast<std::int64_t>(num / den);
        const std::uint64_t rem = num % den;
        const std::int64_t p = a * p_prev1 + p_prev2;
        const std::int64_t q = a * q_prev1 + q_prev2;
        out.push_back({p, q});
        p_prev2 = p_prev1;
        q_prev2 = q_prev1;
        p_prev1 = p;
        q_prev1 = q;
        num = den;
        den = rem;
    }
    return out;
}

std::optional<std::int64_t> extract_order(std::uint64_t i, int n, std::int64_t base, std::int64_t modulus) {
    if (n < 1 || n > 62) {
        throw DomainError("register width must lie in [1, 62], got " + std::to_string(n));
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    if (i >= dim) {
        throw DomainError("outcome " + std::to_string(i) + " out of range for width " + std::to_string(n));
    }
    for (const auto& c : convergents(i, dim)) {
        if (c.denominator >= modulus) break;
        if (modpow(base, static_cast<std::uint64_t>(c.denominator), modulus) == 1 % modulus) {
            return c.denominator;
        }
    }
    return std::nullopt;
}

std::vector<std::uint64_t> class_sizes(int n, std::uint64_t r) {
    if (n < 0 || n > 62) {
        throw DomainError("register width must lie in [0, 62], got " + std::to_string(n));
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    if (r < 1 || r > dim) {
        throw DomainError("class count r = " + std::to_string(r) + " must lie in [1, 2^" + std::to_string(n) + "]");
    }
    std::vector<std::uint64_t> sizes(r);
    for (std::uint64_t x = 0; x < r; ++x) sizes[x] = (dim - 1 - x) / r + 1;
    return sizes;
}

std::uint64_t class_add(std::uint64_t t, std::uint64_t u, std::uint64_t r) {
    return (t % r + u % r) % r;
}

std::uint64_t class_inverse(std::uint64_t t, std::uint64_t r) {
    return (r - t % r) % r;
}

GroupAxiomReport group_axiom_check(std::uint64_t r, std::uint64_t random_triples, std::uint64_t seed) {
    if (r < 1) {
        throw DomainError("group order must be positive");
    }
    GroupAxiomReport report;
    report.r = r;
    report.exhaustive = r <= 512;

    auto fail = [&report](bool& axiom, std::string what) {
        if (axiom && report.counterexample.empty()) report.counterexample = std::move(what);
        axiom = false;
    };
    auto label = [](std::uint64_t v) { return "[" + std::to_string(v) + "]"; };

    auto check_single = [&](std::uint64_t t) {
        if (class_add(t, 0, r) != t || class_add(0, t, r) != t) {
            fail(report.identity, label(t) + " + [0] != " + label(t));
        }
        if (class_add(t, class_inverse(t, r), r) != 0) {
            fail(report.inverses, label(t) + " + " + label(class_inverse(t, r)) + " != [0]");
        }
    };
    auto check_pair = [&](std::uint64_t t, std::uint64_t u) {
        const std::uint64_t s = class_add(t, u, r);
        if (s >= r) fail(report.closure, label(t) + " + " + label(u) + " leaves the label set");
        if (s != class_add(u, t, r)) fail(report.commutativity, label(t) + " + " + label(u) + " is not symmetric");
    };
    auto check_triple = [&](std::uint64_t t, std::uint64_t u, std::uint64_t v) {
        if (class_add(class_add(t, u, r), v, r) != class_add(t, class_add(u, v, r), r)) {
            fail(report.associativity,
                 "(" + label(t) + " + " + label(u) + ") + " + label(v) + " differs from the right-nested sum");
        }
        ++report.triples_checked;
    };

    if (report.exhaustive) {
        for (std::uint64_t t = 0; t < r; ++t) {
            check_single(t);
            for (std::uint64_t u = 0; u < r; ++u) {
                check_pair(t, u);
                for (std::uint64_t v = 0; v < r; ++v) check_triple(t, u, v);
            }
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::uint64_t> pick(0, r - 1);
        for (std::uint64_t s = 0; s < random_triples; ++s) {
            const std::uint64_t t = pick(rng), u = pick(rng), v = pick(rng);
            check_single(t);
            check_pair(t, u);
            check_triple(t, u, v);
        }
    }
    return report;
}

int ceil_log2(std::uint64_t value) {
    if (value == 0) {
        throw DomainError("ceil_log2 of zero");
    }
    int bits = 0;
    while (bits < 64 && (std::uint64_t{1} << bits) < value) ++bits;
    return bits;
}

} // namespace cabt::numtheory
