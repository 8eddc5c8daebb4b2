#include "koblitz/num_core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace koblitz {

namespace {

constexpr std::uint64_t kTrialLimit = 1'000'000;

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

const PrimeTable& small_primes() {
    static const PrimeTable table = sieve(kTrialLimit);
    return table;
}

std::uint64_t pollard_brent(std::uint64_t n, std::uint64_t seed) {
    if (n % 2 == 0) return 2;
    std::uint64_t y = seed % n, c = (seed * 7 + 1) % n, m = 128;
    std::uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) y = f(y);
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

void split_large(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = n;
    for (std::uint64_t seed = 2; d == n; ++seed) d = pollard_brent(n, seed);
    split_large(d, out);
    split_large(n / d, out);
}

}  // namespace

std::size_t PrimeTable::count_upto(std::uint64_t n) const {
    return static_cast<std::size_t>(
        std::upper_bound(primes_.begin(), primes_.end(), n) - primes_.begin());
}

PrimeTable sieve(std::uint64_t limit, std::uint64_t budget) {
    if (limit < 2) throw DomainError("sieve: limit must be at least 2");
    if (limit > budget) throw CapacityError("sieve: limit " + std::to_string(limit) +
                                            " exceeds budget " + std::to_string(budget));
    PrimeTable t;
    t.limit_ = limit;
    t.flags_.assign(limit + 1, 1);
    t.flags_[0] = t.flags_[1] = 0;
    for (std::uint64_t i = 2; i * i <= limit; ++i)
        if (t.flags_[i])
            for (std::uint64_t j = i * i; j <= limit; j += i) t.flags_[j] = 0;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (t.flags_[i]) t.primes_.push_back(static_cast<std::uint32_t>(i));
    return t;
}

std::vector<std::uint8_t> sieve_window(std::uint64_t lo, std::uint64_t hi, std::uint64_t budget) {
    if (hi < lo) throw DomainError("sieve_window: empty window");
    if (hi - lo > budget) throw CapacityError("sieve_window: window exceeds budget");
    std::vector<std::uint8_t> flags(hi - lo, 1);
    const std::uint64_t root = isqrt(hi);
    if (root >= 2) {
        const PrimeTable base = sieve(std::max<std::uint64_t>(root, 2));
        for (std::uint64_t p : base.primes()) {
            std::uint64_t start = std::max(p * p, ((lo + 1 + p - 1) / p) * p);
            for (std::uint64_t m = start; m <= hi; m += p) flags[m - lo - 1] = 0;
        }
    }
    for (std::uint64_t n = lo + 1; n <= std::min<std::uint64_t>(hi, 1); ++n) flags[n - lo - 1] = 0;
    return flags;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : kBases) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    const int s = std::countr_zero(d);
    d >>= s;
    for (std::uint64_t a : kBases) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

int kronecker(std::int64_t a, std::int64_t n) noexcept {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int result = 1;
    // (a/2) depends on a mod 8
    static constexpr int kTwo[8] = {0, 1, 0, -1, 0, -1, 0, 1};
    int v = 0;
    while ((n & 1) == 0) {
        n /= 2;
        ++v;
    }
    if (v & 1) result = kTwo[a & 7];
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    std::uint64_t m = static_cast<std::uint64_t>(n);
    std::uint64_t b = static_cast<std::uint64_t>(mod(a, n));
    while (b != 0) {
        while ((b & 1) == 0) {
            b >>= 1;
            if ((m & 7) == 3 || (m & 7) == 5) result = -result;
        }
        std::swap(b, m);
        if ((b & 3) == 3 && (m & 3) == 3) result = -result;
        b %= m;
    }
    return m == 1 ? result : 0;
}

std::uint64_t Factorization::value() const {
    std::uint64_t v = 1;
    for (auto [p, e] : pairs)
        for (unsigned i = 0; i < e; ++i) v *= p;
    return v;
}

Factorization factorize(std::uint64_t n) {
    if (n == 0) throw DomainError("factorize: n must be positive");
    Factorization f;
    for (std::uint32_t p : small_primes().primes()) {
        if (static_cast<std::uint64_t>(p) * p > n) break;
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.pairs.emplace_back(p, e);
    }
    if (n == 1) return f;
    if (n < kTrialLimit * kTrialLimit) {
        f.pairs.emplace_back(n, 1);
        return f;
    }
    std::vector<std::uint64_t> large;
    split_large(n, large);
    std::sort(large.begin(), large.end());
    for (std::uint64_t p : large) {
        if (!f.pairs.empty() && f.pairs.back().first == p)
            ++f.pairs.back().second;
        else
            f.pairs.emplace_back(p, 1);
    }
    return f;
}

std::uint64_t phi(std::uint64_t n) {
    std::uint64_t result = n;
    for (auto [p, e] : factorize(n).pairs) result = result / p * (p - 1);
    return result;
}

int moebius(std::uint64_t n) {
    int result = 1;
    for (auto [p, e] : factorize(n).pairs) {
        if (e > 1) return 0;
        result = -result;
    }
    return result;
}

unsigned omega(std::uint64_t n) {
    return static_cast<unsigned>(factorize(n).pairs.size());
}

std::vector<std::uint64_t> prime_divisors(std::int64_t n) {
    std::vector<std::uint64_t> out;
    if (n == 0) return out;
    const std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    for (auto [p, e] : factorize(m).pairs) out.push_back(p);
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    for (auto [p, e] : factorize(n).pairs) {
        const std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_squarefree(std::uint64_t n) {
    for (auto [p, e] : factorize(n).pairs)
        if (e > 1) return false;
    return true;
}

}  // namespace koblitz
