#pragma once

// Integer primitives shared by every other module: sieves, deterministic
// primality, factorization, the classical multiplicative functions and the
// Kronecker symbol. Everything here is a pure function or an immutable value.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace koblitz {

/// Raised when an argument lies outside the mathematical domain of an operation.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when a request would exceed a configured memory or work budget.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Default ceiling on sieve length (bytes of flags).
inline constexpr std::uint64_t kDefaultSieveBudget = 1'000'000'000ULL;

class PrimeTable {
public:
    PrimeTable() = default;

    std::uint64_t limit() const noexcept { return limit_; }
    const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

    /// Primality of n for 0 <= n <= limit(); false outside that range.
    bool is_prime(std::uint64_t n) const noexcept {
        return n <= limit_ && flags_[n] != 0;
    }

    /// Number of primes <= n (n clamped to limit()).
    std::size_t count_upto(std::uint64_t n) const;

private:
    friend PrimeTable sieve(std::uint64_t, std::uint64_t);
    std::uint64_t limit_ = 0;
    std::vector<std::uint8_t> flags_;
    std::vector<std::uint32_t> primes_;
};

/// Sieve of Eratosthenes on [0, limit]. Throws CapacityError when limit exceeds budget.
PrimeTable sieve(std::uint64_t limit, std::uint64_t budget = kDefaultSieveBudget);

/// Primality flags for the window (lo, hi]; entry i describes lo + 1 + i.
/// Uses the base primes up to sqrt(hi), so it stays cheap for short windows
/// far from the origin.
std::vector<std::uint8_t> sieve_window(std::uint64_t lo, std::uint64_t hi,
                                       std::uint64_t budget = kDefaultSieveBudget);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

/// Kronecker symbol (a/n) for arbitrary integers, with the usual extension to
/// n = 0, n < 0 and even n.
int kronecker(std::int64_t a, std::int64_t n) noexcept;

struct Factorization {
    std::vector<std::pair<std::uint64_t, unsigned>> pairs;

    bool empty() const noexcept { return pairs.empty(); }
    std::uint64_t value() const;
    bool operator==(const Factorization&) const = default;
};

/// Complete factorization of 1 <= n < 2^64. Trial division by primes below
/// 10^6, then Pollard-Brent with fixed seeds for the cofactor.
Factorization factorize(std::uint64_t n);

std::uint64_t phi(std::uint64_t n);
int moebius(std::uint64_t n);
unsigned omega(std::uint64_t n);

/// Distinct prime divisors of |n| (empty for n = 0 or |n| = 1).
std::vector<std::uint64_t> prime_divisors(std::int64_t n);

/// All positive divisors of n in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

bool is_squarefree(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

/// Least non-negative residue of a modulo m > 0.
inline std::int64_t mod(std::int64_t a, std::int64_t m) noexcept {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace koblitz
