#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "koblitz/num_core.hpp"

using namespace koblitz;

namespace {

bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Kronecker symbol from Euler's criterion on each prime factor of n, with the
// (a/2) rule and the sign rule for n = -1.
int kronecker_by_euler(std::int64_t a, std::int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    std::uint64_t m = static_cast<std::uint64_t>(n);
    for (std::uint64_t p = 2; p * p <= m || m > 1; ++p) {
        if (p * p > m) p = m;
        while (m % p == 0) {
            m /= p;
            int s;
            if (p == 2) {
                const std::int64_t r = mod(a, 8);
                s = (r % 2 == 0) ? 0 : (r == 1 || r == 7) ? 1 : -1;
            } else {
                const std::uint64_t e = powmod(static_cast<std::uint64_t>(mod(a, p)), (p - 1) / 2, p);
                s = e == 0 ? 0 : e == 1 ? 1 : -1;
            }
            result *= s;
        }
    }
    return result;
}

}  // namespace

TEST_CASE("sieve lists the primes up to the limit") {
    CHECK(sieve(10).primes() == std::vector<std::uint32_t>{2, 3, 5, 7});
    CHECK(sieve(2).primes() == std::vector<std::uint32_t>{2});
    CHECK_THROWS_AS(sieve(1), DomainError);
    CHECK_THROWS_AS(sieve(100, 50), CapacityError);
}

TEST_CASE("sieve agrees with an independent trial-division count") {
    const PrimeTable t = sieve(1'000'000);
    CHECK(t.primes().size() == 78498);
    CHECK(t.count_upto(1000) == 168);
    std::size_t count = 0;
    for (std::uint64_t n = 0; n <= 100'000; ++n) {
        const bool p = trial_division_prime(n);
        count += p ? 1 : 0;
        REQUIRE(t.is_prime(n) == p);
    }
    CHECK(count == 9592);
}

TEST_CASE("sieve_window matches the full sieve") {
    const PrimeTable t = sieve(200'000);
    const auto flags = sieve_window(150'000, 200'000);
    for (std::uint64_t i = 0; i < flags.size(); ++i) REQUIRE((flags[i] != 0) == t.is_prime(150'001 + i));
}

TEST_CASE("Miller-Rabin against trial division") {
    CHECK(is_prime(2147483647ULL));
    CHECK(is_prime(2305843009213693951ULL));
    CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    std::mt19937_64 rng(20240601);
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t n = (rng() & ((1ULL << 40) - 1)) | 1ULL;
        REQUIRE(is_prime(n) == trial_division_prime(n));
    }
}

TEST_CASE("kronecker symbol values") {
    CHECK(kronecker(2, 7) == 1);
    CHECK(kronecker(5, 5) == 0);
    CHECK(kronecker(2, 15) == 1);
    CHECK(kronecker(-1, -1) == -1);
    CHECK(kronecker(3, 0) == 0);
    CHECK(kronecker(-1, 0) == 1);
    for (std::int64_t a = -60; a <= 60; ++a)
        for (std::int64_t n = -60; n <= 60; ++n) REQUIRE(kronecker(a, n) == kronecker_by_euler(a, n));
}

TEST_CASE("kronecker symbol is periodic of period 4n in a") {
    for (std::int64_t n = 1; n <= 200; ++n)
        for (std::int64_t a = -4 * n; a < 4 * n; ++a) REQUIRE(kronecker(a, n) == kronecker(a + 4 * n, n));
}

TEST_CASE("factorize") {
    CHECK(factorize(12).pairs == std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 1}});
    CHECK(factorize(1).empty());
    const auto m61 = factorize(2305843009213693951ULL);
    CHECK(m61.pairs == std::vector<std::pair<std::uint64_t, unsigned>>{{2305843009213693951ULL, 1}});
    const std::uint64_t semiprime = 1000000007ULL * 998244353ULL;
    CHECK(factorize(semiprime).pairs ==
          std::vector<std::pair<std::uint64_t, unsigned>>{{998244353ULL, 1}, {1000000007ULL, 1}});
    CHECK_THROWS_AS(factorize(0), DomainError);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const std::uint64_t n = rng() >> 4;
        const auto f = factorize(n);
        REQUIRE(f.value() == n);
        for (const auto& [p, e] : f.pairs) REQUIRE(is_prime(p));
    }
}

TEST_CASE("multiplicative functions") {
    CHECK(phi(12) == 4);
    CHECK(moebius(30) == -1);
    CHECK(moebius(12) == 0);
    CHECK(moebius(1) == 1);
    CHECK(omega(1) == 0);
    CHECK(omega(360) == 3);
    for (std::uint64_t n = 1; n <= 2000; ++n) {
        std::uint64_t coprime = 0;
        for (std::uint64_t k = 1; k <= n; ++k) coprime += std::gcd(k, n) == 1 ? 1 : 0;
        REQUIRE(phi(n) == coprime);
    }
}

TEST_CASE("divisor-sum identities") {
    for (std::uint64_t n = 1; n <= 10'000; ++n) {
        std::uint64_t phi_sum = 0;
        std::int64_t mu_sum = 0;
        for (auto d : divisors(n)) {
            phi_sum += phi(d);
            mu_sum += moebius(d);
        }
        REQUIRE(phi_sum == n);
        REQUIRE(mu_sum == (n == 1 ? 1 : 0));
        REQUIRE(is_squarefree(n) == (moebius(n) != 0));
    }
}

TEST_CASE("prime divisors of signed integers") {
    CHECK(prime_divisors(-12) == std::vector<std::uint64_t>{2, 3});
    CHECK(prime_divisors(0).empty());
    CHECK(prime_divisors(-1).empty());
    CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
}
