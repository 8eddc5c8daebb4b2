#include "koblitz/twin_series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <thread>

#include "koblitz/euler_product.hpp"

namespace koblitz {

namespace {

std::uint64_t abs_u(std::int64_t v) {
    return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
}

std::uint64_t residue(std::int64_t a, std::uint64_t q) {
    return static_cast<std::uint64_t>(mod(a, static_cast<std::int64_t>(q)));
}

// prod over odd l | n of (l-1)/(l-2)
double odd_divisor_factor(std::uint64_t n) {
    double f = 1.0;
    for (auto [l, e] : factorize(n).pairs)
        if (l != 2) f *= static_cast<double>(l - 1) / static_cast<double>(l - 2);
    return f;
}

}  // namespace

SingularSeriesValue twin_prime_constant(std::uint64_t L) {
    static std::mutex mu;
    static std::map<std::uint64_t, SingularSeriesValue> memo;
    std::lock_guard lock(mu);
    if (auto it = memo.find(L); it != memo.end()) return it->second;
    const auto prod = euler_product(
        L, 3, [](double l) { return std::log1p(-1.0 / ((l - 1.0) * (l - 1.0))); }, 1.0);
    SingularSeriesValue v{2.0 * prod.value, L, 2.0 * prod.tail_bound};
    memo.emplace(L, v);
    return v;
}

SingularSeriesValue singular_series(std::int64_t r, std::uint64_t L) {
    if (r == 0) throw DomainError("singular_series: r must be nonzero");
    if (r % 2 != 0) return {0.0, L, 0.0};
    const auto base = twin_prime_constant(L);
    const double f = odd_divisor_factor(abs_u(r));
    return {base.value * f, L, base.error_bound * f};
}

std::uint64_t rho(std::int64_t r, std::uint64_t q) {
    if (q == 0) throw DomainError("rho: q must be positive");
    std::uint64_t result = 1;
    for (auto [p, e] : factorize(q).pairs) {
        std::uint64_t pk1 = 1;
        for (unsigned i = 1; i < e; ++i) pk1 *= p;
        const bool divides = residue(r, p) == 0;
        result *= divides ? pk1 * p - pk1 : pk1 * p - 2 * pk1;
    }
    return result;
}

std::uint64_t rho_by_enumeration(std::int64_t r, std::uint64_t q) {
    if (q == 0) throw DomainError("rho: q must be positive");
    std::uint64_t n = 0;
    const std::uint64_t rr = residue(r, q);
    for (std::uint64_t a = 0; a < q; ++a)
        if (std::gcd(a, q) == 1 && std::gcd((a + q - rr) % q, q) == 1) ++n;
    return n;
}

namespace {

bool admissible_class(std::int64_t r, std::uint64_t q, std::int64_t a) {
    if (r % 2 != 0) return false;
    const std::uint64_t am = residue(a, q);
    return std::gcd(am, q) == 1 && std::gcd(residue(a - r, q), q) == 1;
}

}  // namespace

SingularSeriesValue singular_series_mod(std::int64_t r, std::uint64_t q, std::int64_t a, std::uint64_t L) {
    if (q == 0) throw DomainError("singular_series_mod: q must be positive");
    if (r == 0) throw DomainError("singular_series_mod: r must be nonzero");
    if (!admissible_class(r, q, a)) return {0.0, L, 0.0};
    const auto s = singular_series(r, L);
    const double den = static_cast<double>(rho(r, q));
    return {s.value / den, L, s.error_bound / den};
}

SingularSeriesValue singular_series_mod_via_product(std::int64_t r, std::uint64_t q, std::int64_t a,
                                                    std::uint64_t L) {
    if (q == 0) throw DomainError("singular_series_mod: q must be positive");
    if (r == 0) throw DomainError("singular_series_mod: r must be nonzero");
    if (!admissible_class(r, q, a)) return {0.0, L, 0.0};
    const auto s = singular_series(r * static_cast<std::int64_t>(q), L);
    const double den = static_cast<double>(phi(q));
    return {s.value / den, L, s.error_bound / den};
}

std::int64_t F_local(std::uint64_t p, std::int64_t r, std::uint64_t q, std::int64_t a) {
    const auto P = static_cast<std::int64_t>(p);
    if (q % p == 0) {
        // c = a (mod p) must also be a unit, so the inner sum is empty when p | a
        if (residue(a, p) == 0) return 0;
        return residue(a - r, p) == 0 ? P - 1 : -1;
    }
    return residue(r, p) == 0 ? 1 - P : 1;
}

std::int64_t F_mult(std::uint64_t s, std::int64_t r, std::uint64_t q, std::int64_t a) {
    if (s == 0) throw DomainError("F_mult: s must be positive");
    std::int64_t result = 1;
    for (auto [p, e] : factorize(s).pairs) {
        if (e > 1) throw DomainError("F_mult: s must be squarefree");
        result *= F_local(p, r, q, a);
    }
    return result;
}

std::int64_t F_exponential_sum(std::uint64_t s, std::int64_t r, std::uint64_t q, std::int64_t a) {
    if (s == 0) throw DomainError("F_exponential_sum: s must be positive");
    std::vector<std::complex<double>> unit(s);
    for (std::uint64_t k = 0; k < s; ++k)
        unit[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(s));
    const std::uint64_t g = std::gcd(q, s);
    const std::uint64_t am = residue(a, g);
    const std::uint64_t rm = residue(r, s);
    std::complex<double> total = 0.0;
    for (std::uint64_t b = 0; b < s; ++b) {
        if (std::gcd(b, s) != 1) continue;
        std::complex<double> inner = 0.0;
        for (std::uint64_t c = 0; c < s; ++c) {
            if (std::gcd(c, s) != 1 || c % g != am) continue;
            inner += unit[(b * c) % s];
        }
        total += unit[(s - b * rm % s) % s] * inner;
    }
    const double re = std::round(total.real());
    if (std::abs(total.real() - re) > 1e-6 || std::abs(total.imag()) > 1e-6)
        throw std::logic_error("F_exponential_sum: sum is not an integer");
    return static_cast<std::int64_t>(re);
}

// ---------------------------------------------------------------------------

TwinSieve::TwinSieve(std::uint64_t limit, std::uint64_t budget) : table_(sieve(std::max<std::uint64_t>(limit, 2), budget)) {}

namespace {

void require_window(const TwinWindow& w, std::int64_t r, const TwinSieve& sieve) {
    if (w.Y < 1) throw DomainError("twin window: Y must be at least 1");
    const std::uint64_t need = w.X + w.Y + (r < 0 ? abs_u(r) : 0);
    if (need > sieve.limit())
        throw CapacityError("twin window: sieve limit " + std::to_string(sieve.limit()) +
                            " does not cover " + std::to_string(need));
}

}  // namespace

double psi(const TwinWindow& w, std::int64_t r, std::uint64_t q, std::int64_t a, const TwinSieve& sieve) {
    if (q == 0) throw DomainError("psi: q must be positive");
    require_window(w, r, sieve);
    const auto& t = sieve.table();
    const std::uint64_t am = residue(a, q);
    double total = 0.0;
    const auto& primes = t.primes();
    auto it = std::upper_bound(primes.begin(), primes.end(), w.X);
    for (; it != primes.end() && *it <= w.X + w.Y; ++it) {
        const std::int64_t p = *it;
        if (static_cast<std::uint64_t>(p) % q != am) continue;
        const std::int64_t pp = p - r;
        if (pp < 2 || !t.is_prime(static_cast<std::uint64_t>(pp))) continue;
        total += std::log(static_cast<double>(p)) * std::log(static_cast<double>(pp));
    }
    return total;
}

double error_E(const TwinWindow& w, std::int64_t r, std::uint64_t q, std::int64_t a, const TwinSieve& sieve,
               std::uint64_t L) {
    return psi(w, r, q, a, sieve) - singular_series_mod(r, q, a, L).value * static_cast<double>(w.Y);
}

double single_class_statistic(const TwinWindow& w, std::int64_t R, std::uint64_t q, std::int64_t a,
                              const TwinSieve& sieve, std::uint64_t L) {
    double S = 0.0;
    for (std::int64_t r = 1; r <= R; ++r) {
        const double e = error_E(w, r, q, a, sieve, L);
        S += e * e;
    }
    return S;
}

BdhResult bdh_statistic(std::uint64_t x, std::int64_t R, std::uint64_t Q, const TwinWindow& w,
                        unsigned workers, bool keep_rows, std::uint64_t L) {
    if (R < 1 || Q < 1) throw DomainError("bdh_statistic: R and Q must be positive");
    if (w.Y < 1) throw DomainError("bdh_statistic: Y must be at least 1");
    if (w.X + w.Y > x) throw DomainError("bdh_statistic: window exceeds x");
    if (static_cast<std::uint64_t>(R) > x) throw DomainError("bdh_statistic: R exceeds x");
    const TwinSieve sv(x + static_cast<std::uint64_t>(R));
    const auto& t = sv.table();

    // psi for every (r, q, a): r-major blocks of Q(Q+1)/2 entries, q-th block at q(q-1)/2.
    const std::size_t block = Q * (Q + 1) / 2;
    const std::size_t nr = static_cast<std::size_t>(2 * R);
    std::vector<double> acc(nr * block, 0.0);
    auto r_of = [R](std::size_t i) { return static_cast<std::int64_t>(i) < R ? static_cast<std::int64_t>(i) - R
                                                                              : static_cast<std::int64_t>(i) - R + 1; };

    const auto& primes = t.primes();
    const auto first = std::upper_bound(primes.begin(), primes.end(), w.X);
    const auto last = std::upper_bound(primes.begin(), primes.end(), w.X + w.Y);

    auto run = [&](std::size_t lo, std::size_t hi) {
        for (auto it = first; it != last; ++it) {
            const std::int64_t p = *it;
            const double logp = std::log(static_cast<double>(p));
            for (std::size_t i = lo; i < hi; ++i) {
                const std::int64_t pp = p - r_of(i);
                if (pp < 2 || !t.is_prime(static_cast<std::uint64_t>(pp))) continue;
                const double wgt = logp * std::log(static_cast<double>(pp));
                double* row = &acc[i * block];
                for (std::uint64_t q = 1; q <= Q; ++q) row[q * (q - 1) / 2 + static_cast<std::uint64_t>(p) % q] += wgt;
            }
        }
    };
    workers = std::max(1u, workers);
    if (workers == 1) {
        run(0, nr);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (nr + workers - 1) / workers;
        for (std::size_t lo = 0; lo < nr; lo += chunk) pool.emplace_back(run, lo, std::min(nr, lo + chunk));
        for (auto& th : pool) th.join();
    }

    BdhResult out;
    out.x = x;
    out.R = R;
    out.Q = Q;
    out.window = w;
    out.per_q.assign(Q, 0.0);
    const double Y = static_cast<double>(w.Y);
    for (std::size_t i = 0; i < nr; ++i) {
        const std::int64_t r = r_of(i);
        const double sr = singular_series(r, L).value;
        for (std::uint64_t q = 1; q <= Q; ++q) {
            const double rq = sr == 0.0 ? 0.0 : static_cast<double>(rho(r, q));
            for (std::uint64_t a = 0; a < q; ++a) {
                const double ps = acc[i * block + q * (q - 1) / 2 + a];
                const double expected =
                    (sr != 0.0 && admissible_class(r, q, static_cast<std::int64_t>(a))) ? sr / rq * Y : 0.0;
                const double e = ps - expected;
                out.S += e * e;
                out.per_q[q - 1] += e * e;
                if (keep_rows) out.rows.push_back({r, q, a, ps, expected, e});
            }
        }
    }
    out.normalized = out.S / (static_cast<double>(R) * static_cast<double>(x) * static_cast<double>(x));
    return out;
}

}  // namespace koblitz
