#include "koblitz/euler_constants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "koblitz/euler_product.hpp"

namespace koblitz {

namespace {

std::int64_t ipow(std::int64_t base, unsigned e) {
    std::int64_t v = 1;
    while (e--) v *= base;
    return v;
}

std::uint64_t abs_u(std::int64_t v) {
    return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
}

void require_odd_prime(std::uint64_t ell, const char* who) {
    if (ell < 3 || !is_prime(ell)) throw DomainError(std::string(who) + ": l must be an odd prime");
}

void require_trace(std::int64_t r, const char* who) {
    if (r % 2 == 0 || r == 1) throw DomainError(std::string(who) + ": r must be odd and different from 1");
}

ConstantValue from_product(const EulerProduct& p, double scale, std::uint64_t L) {
    return {scale * p.value, L, scale * p.tail_bound};
}

}  // namespace

Rational local_factor(std::uint64_t ell) {
    const auto l = static_cast<std::int64_t>(ell);
    return Rational(1) - Rational(l * l - l - 1, ipow(l - 1, 3) * (l + 1));
}

LocalFactorLedger gl2_count(std::uint64_t ell) {
    if (ell > kMaxGl2Prime)
        throw CapacityError("gl2_count: l = " + std::to_string(ell) + " exceeds the enumeration cap " +
                            std::to_string(kMaxGl2Prime));
    require_odd_prime(ell, "gl2_count");
    const auto l = static_cast<std::int64_t>(ell);
    std::uint64_t invertible = 0, omega = 0;
    for (std::int64_t a = 0; a < l; ++a)
        for (std::int64_t b = 0; b < l; ++b)
            for (std::int64_t c = 0; c < l; ++c)
                for (std::int64_t d = 0; d < l; ++d) {
                    const std::int64_t det = mod(a * d - b * c, l);
                    if (det == 0) continue;
                    ++invertible;
                    if (mod(det + 1 - a - d, l) == 0) ++omega;
                }
    LocalFactorLedger out;
    out.ell = ell;
    out.omega_prime_count = omega;
    out.gl2_order = invertible;
    out.factor = local_factor(ell);
    out.enumerated = (Rational(1) - Rational(static_cast<std::int64_t>(omega), static_cast<std::int64_t>(invertible))) /
                     (Rational(1) - Rational(1, l));
    return out;
}

AverageConstantForms average_constant_forms(std::uint64_t L) {
    if (L < 1000) throw DomainError("average_constant: truncation limit must be at least 1000");
    const auto poly = euler_product(
        L, 3,
        [](double l) {
            const double num = l * (l * l * l - 2.0 * l * l - l + 3.0);
            const double den = (l - 1.0) * (l - 1.0) * (l - 1.0) * (l + 1.0);
            return std::log(num) - std::log(den);
        },
        1.0);
    const auto local = euler_product(
        L, 2,
        [](double l) { return std::log1p(-(l * l - l - 1.0) / ((l - 1.0) * (l - 1.0) * (l - 1.0) * (l + 1.0))); },
        1.0);
    return {from_product(poly, 2.0 / 3.0, L), from_product(local, 1.0, L)};
}

ConstantValue average_constant(std::uint64_t L) {
    static std::mutex mu;
    static std::map<std::uint64_t, ConstantValue> memo;
    std::lock_guard lock(mu);
    if (auto it = memo.find(L); it != memo.end()) return it->second;
    const ConstantValue v = average_constant_forms(L).local_factor;
    memo.emplace(L, v);
    return v;
}

// ---------------------------------------------------------------------------

namespace {

void require_c_args(std::uint64_t n, std::uint64_t f, std::int64_t r) {
    if (n == 0) throw DomainError("c_f_r: n must be positive");
    if (f == 0 || f % 2 == 0) throw DomainError("c_f_r: f must be a positive odd integer");
    require_trace(r, "c_f_r");
}

}  // namespace

std::int64_t c_f_r_bruteforce(std::uint64_t n, std::uint64_t f, std::int64_t r) {
    require_c_args(n, f, r);
    const auto N = static_cast<std::int64_t>(n);
    const auto F2 = static_cast<std::int64_t>(f * f);
    const std::uint64_t m = 4 * n * f * f;
    std::int64_t total = 0;
    for (std::int64_t a = 0; a < 4 * N; ++a) {
        if (std::gcd(static_cast<std::uint64_t>(a), 4 * n) != 1) continue;
        const std::int64_t x = r * r - a * F2;
        if (std::gcd(abs_u(x), m) != 4) continue;
        if (std::gcd(abs_u(x - 4 * (r - 1)), m) != 4) continue;
        total += kronecker(a, N);
    }
    return total;
}

std::int64_t c_f_r(std::uint64_t n, std::uint64_t f, std::int64_t r) {
    require_c_args(n, f, r);
    if (std::gcd(abs_u(r), f) != 1 || std::gcd(abs_u(r - 2), f) != 1) return 0;
    std::int64_t result = 1;
    for (auto [p, alpha] : factorize(n).pairs) {
        const auto l = static_cast<std::int64_t>(p);
        const std::int64_t scale = ipow(l, alpha - 1);
        const bool even = alpha % 2 == 0;
        std::int64_t local;
        if (l == 2) {
            local = even ? 1 : -1;
        } else if (f % p == 0) {
            local = even ? l - 1 : 0;
        } else {
            const std::int64_t rm = mod(r, l);
            const bool divides = rm == 0 || rm == 1 || rm == 2;  // l | r(r-1)(r-2)
            local = even ? (divides ? l - 2 : l - 3) : (divides ? -1 : -2);
        }
        result *= scale * local;
    }
    return result;
}

// ---------------------------------------------------------------------------

LocalClass local_class(std::uint64_t ell, std::int64_t r) {
    const std::int64_t rm = mod(r, static_cast<std::int64_t>(ell));
    if (rm == 1) return LocalClass::divides_r_minus_1;
    if (rm == 0 || rm == 2) return LocalClass::divides_r_r_minus_2;
    return LocalClass::coprime;
}

double a_coeff(std::uint64_t ell, unsigned alpha) {
    if (alpha == 0) return 1.0;
    if (alpha % 2 == 1) return 0.0;
    const double l = static_cast<double>(ell);
    return (l - 1.0) / std::pow(l, alpha + 1);
}

double b_coeff(std::uint64_t ell, unsigned alpha, std::int64_t r) {
    if (alpha == 0) return 1.0;
    const double l = static_cast<double>(ell);
    const double la = std::pow(l, alpha);
    const bool odd = alpha % 2 == 1;
    if (ell == 2) return (odd ? -1.0 : 1.0) / la;
    switch (local_class(ell, r)) {
        case LocalClass::coprime:
            return (odd ? -2.0 : l - 3.0) / (la * (l - 2.0));
        case LocalClass::divides_r_r_minus_2:
            return odd ? -1.0 / (la * (l - 2.0)) : 1.0 / la;
        case LocalClass::divides_r_minus_1:
            return (odd ? -1.0 : l - 2.0) / (la * (l - 1.0));
    }
    return 0.0;
}

namespace {

double series(const std::function<double(unsigned)>& term) {
    double s = 0.0;
    for (unsigned alpha = kLocalSeriesTerms + 1; alpha-- > 0;) s += term(alpha);  // small terms first
    return s;
}

}  // namespace

double c_coeff(std::uint64_t ell, unsigned alpha, std::int64_t r) {
    if (alpha == 0) return 1.0;
    const auto cls = local_class(ell, r);
    if (ell == 2 || cls == LocalClass::divides_r_r_minus_2)
        throw DomainError("c_coeff: l must not divide 2r(r-2)");
    const double A = series([&](unsigned a) { return a_coeff(ell, a); });
    const double B = series([&](unsigned a) { return b_coeff(ell, a, r); });
    const double l = static_cast<double>(ell);
    const double shift = cls == LocalClass::divides_r_minus_1 ? l - 1.0 : l - 2.0;
    return A / B / (std::pow(l, 3.0 * alpha - 1.0) * shift);
}

LocalSums local_sums(std::uint64_t ell, std::int64_t r) {
    require_odd_prime(ell, "local_sums");
    require_trace(r, "local_sums");
    const auto l = static_cast<std::int64_t>(ell);
    LocalSums s;
    s.ell = ell;
    s.r = r;
    s.cls = local_class(ell, r);
    s.A = Rational(l * l + l + 1, l * (l + 1));
    s.B1 = Rational(l * l * l - 2 * l * l - 2 * l - 1, (l - 2) * (l * l - 1));
    s.B2 = Rational(l * l * l - l * l - l - 1, (l - 1) * (l - 1) * (l + 1));
    s.B3 = Rational(l * (l * l - 2 * l - 1), (l - 2) * (l * l - 1));
    s.C1 = Rational(l * l * l - 2 * l * l - 2 * l, l * l * l - 2 * l * l - 2 * l - 1);
    s.C2 = Rational(l * (l * l - l - 1), l * l * l - l * l - l - 1);
    switch (s.cls) {
        case LocalClass::coprime: s.B = s.B1; s.C = s.C1; break;
        case LocalClass::divides_r_minus_1: s.B = s.B2; s.C = s.C2; break;
        case LocalClass::divides_r_r_minus_2: s.B = s.B3; s.C = Rational(1); break;
    }
    s.A_series = series([&](unsigned a) { return a_coeff(ell, a); });
    s.B_series = series([&](unsigned a) { return b_coeff(ell, a, r); });
    s.C_series = s.cls == LocalClass::divides_r_r_minus_2
                     ? 1.0
                     : series([&](unsigned a) { return c_coeff(ell, a, r); });
    return s;
}

Rational B_two() { return Rational(2, 3); }

double B_two_series() {
    return series([](unsigned a) { return b_coeff(2, a, 3); });
}

// ---------------------------------------------------------------------------

ConstantValue C_r_base_product(std::uint64_t L) {
    static std::mutex mu;
    static std::map<std::uint64_t, ConstantValue> memo;
    std::lock_guard lock(mu);
    if (auto it = memo.find(L); it != memo.end()) return it->second;
    // l^2(l^2-2l-2) / ((l-1)^3(l+1)) = 1 - (2l^2+2l-1)/((l-1)^3(l+1))
    const auto p = euler_product(
        L, 3,
        [](double l) {
            return std::log1p(-(2.0 * l * l + 2.0 * l - 1.0) / ((l - 1.0) * (l - 1.0) * (l - 1.0) * (l + 1.0)));
        },
        2.0);
    const ConstantValue v = from_product(p, 1.0, L);
    memo.emplace(L, v);
    return v;
}

double C_r_correction(std::int64_t r) {
    require_trace(r, "C_r");
    double c = 1.0;
    for (auto l : prime_divisors(r - 1)) {
        if (l == 2) continue;
        const double d = static_cast<double>(l);
        c *= 1.0 + (d + 1.0) / (d * d - 2.0 * d - 2.0);
    }
    auto around = prime_divisors(r);
    for (auto l : prime_divisors(r - 2)) around.push_back(l);
    std::sort(around.begin(), around.end());
    around.erase(std::unique(around.begin(), around.end()), around.end());
    for (auto l : around) {
        if (l == 2) continue;
        const double d = static_cast<double>(l);
        c *= 1.0 + 1.0 / (d * d - 2.0 * d - 2.0);
    }
    return c;
}

ConstantValue C_r(std::int64_t r, std::uint64_t L) {
    require_trace(r, "C_r");
    const auto base = C_r_base_product(L);
    const double scale = 4.0 / 3.0 * C_r_correction(r);
    return {scale * base.value, L, scale * base.tail_bound};
}

double C_r_oracle(std::int64_t r, std::uint64_t U, std::uint64_t V, std::uint64_t L) {
    if (U > kMaxOracleU || V > kMaxOracleV)
        throw CapacityError("C_r_oracle: U <= " + std::to_string(kMaxOracleU) + " and V <= " +
                            std::to_string(kMaxOracleV) + " required");
    if (U < 1 || V < 1) throw DomainError("C_r_oracle: U and V must be positive");
    if (r == 1) throw DomainError("C_r_oracle: r must differ from 1");
    if (r % 2 == 0) return 0.0;
    const double S = singular_series(r - 1, L).value;
    double total = 0.0;
    // Even f makes r^2 - a f^2 odd, so (r^2 - a f^2)/4 is never an integer.
    for (std::uint64_t f = 1; f <= V; f += 2) {
        const auto F2 = static_cast<std::int64_t>(f * f);
        for (std::uint64_t n = 1; n <= U; ++n) {
            const std::uint64_t q = n * f * f;
            const auto Q = static_cast<std::int64_t>(q);
            // S(r-1, q, b) is S(r-1)/rho(r-1, q) on admissible b; hoisted per modulus
            const double density = S / static_cast<double>(rho(r - 1, q));
            std::int64_t inner = 0;
            // a f^2 = r^2 (mod 4) forces a = 1 (mod 4)
            for (std::int64_t a = 1; a < static_cast<std::int64_t>(4 * n); a += 4) {
                const int k = kronecker(a, static_cast<std::int64_t>(n));
                if (k == 0) continue;
                const std::int64_t b = (r * r - a * F2) / 4;
                if (std::gcd(static_cast<std::uint64_t>(mod(b, Q)), q) != 1) continue;
                if (std::gcd(static_cast<std::uint64_t>(mod(b - (r - 1), Q)), q) != 1) continue;
                inner += k;
            }
            total += density * static_cast<double>(inner) / (static_cast<double>(n) * static_cast<double>(f));
        }
    }
    return total;
}

GallagherSum gallagher_sum(std::int64_t R, std::uint64_t L, unsigned workers) {
    if (R < 100) throw DomainError("gallagher_sum: R must be at least 100");
    std::vector<std::int64_t> rs;
    for (std::int64_t r = -R; r <= R; ++r)
        if (r % 2 != 0 && r != 1) rs.push_back(r);
    std::vector<double> corr(rs.size());
    auto run = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) corr[i] = C_r_correction(rs[i]);
    };
    workers = std::max(1u, workers);
    if (workers == 1) {
        run(0, rs.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (rs.size() + workers - 1) / workers;
        for (std::size_t lo = 0; lo < rs.size(); lo += chunk)
            pool.emplace_back(run, lo, std::min(rs.size(), lo + chunk));
        for (auto& th : pool) th.join();
    }
    const double scale = 4.0 / 3.0 * C_r_base_product(L).value;
    GallagherSum out;
    out.R = R;
    for (double c : corr) out.sum += scale * c;
    out.frak_C = average_constant(L).value;
    out.ratio = out.sum / (out.frak_C * static_cast<double>(R));
    return out;
}

std::vector<std::uint64_t> euler_identity_failures(std::uint64_t max_ell) {
    std::vector<std::uint64_t> bad;
    for (std::uint64_t p = 3; p <= max_ell; p += 2) {
        if (!is_prime(p)) continue;
        const auto l = static_cast<std::int64_t>(p);
        const std::int64_t q = l * l - 2 * l - 2;
        const Rational base(l * l * q, ipow(l - 1, 3) * (l + 1));
        const Rational averaged(l * l * l - 2 * l * l - l + 3, l * q);
        const Rational target(ipow(l, 4) - 2 * ipow(l, 3) - l * l + 3 * l, ipow(l - 1, 3) * (l + 1));
        if (base * averaged != target) bad.push_back(p);
    }
    return bad;
}

}  // namespace koblitz
