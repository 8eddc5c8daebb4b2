#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "koblitz/twin_series.hpp"

namespace koblitz {

namespace {

struct LocalFactor {
    std::uint64_t p = 0;
    unsigned k = 0;
    std::uint64_t pk = 1;
    // cyclic pieces of (Z/p^k)^*: (generator, order)
    std::vector<std::pair<std::uint64_t, std::uint64_t>> gens;
};

std::uint64_t primitive_root_prime_power(std::uint64_t p, unsigned k, std::uint64_t pk) {
    const std::uint64_t pm1 = p - 1;
    const auto divisors_of_pm1 = prime_divisors(static_cast<std::int64_t>(pm1));
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto d : divisors_of_pm1)
            if (powmod(g, pm1 / static_cast<std::uint64_t>(d), p) == 1) { ok = false; break; }
        if (!ok) continue;
        // a root mod p lifts unless g^(p-1) = 1 mod p^2; then g + p does
        if (k >= 2 && powmod(g, pm1, p * p) == 1) return (g + p) % pk;
        return g;
    }
    return 1;  // p = 2 only; callers never ask
}

std::uint64_t local_conductor(const LocalFactor& f, const std::vector<std::uint64_t>& idx) {
    if (f.p != 2) {
        const std::uint64_t j = idx[0];
        if (j == 0) return 1;
        std::uint64_t m = 1, pkm = f.pk / f.p;  // pkm = p^(k-m)
        while (j % pkm != 0) { ++m; pkm /= f.p; }
        std::uint64_t c = 1;
        for (std::uint64_t i = 0; i < m; ++i) c *= f.p;
        return c;
    }
    if (f.k == 1) return 1;
    if (f.k == 2) return idx[0] == 0 ? 1 : 4;
    const std::uint64_t s = idx[0], t = idx[1];
    if (t == 0) return s == 0 ? 1 : 4;
    unsigned m = 3;
    std::uint64_t pkm = f.pk >> 3;  // 2^(k-m)
    while (t % pkm != 0) { ++m; pkm >>= 1; }
    return std::uint64_t{1} << m;
}

}  // namespace

std::int32_t DirichletCharacter::exponent(std::int64_t a) const {
    if (modulus_ == 1) return 0;
    const auto& g = *group_;
    const std::size_t n = g.orders.size();
    const std::size_t row =
        static_cast<std::size_t>(mod(a, static_cast<std::int64_t>(modulus_))) * std::max<std::size_t>(n, 1);
    if (g.coords[row] < 0) return kZero;
    std::uint64_t e = 0;
    for (std::size_t i = 0; i < n; ++i)
        e += index_[i] * static_cast<std::uint64_t>(g.coords[row + i]) % g.orders[i] * (g.exponent / g.orders[i]);
    return static_cast<std::int32_t>(e % g.exponent);
}

std::complex<double> DirichletCharacter::operator()(std::int64_t a) const {
    const std::int32_t e = exponent(a);
    if (e == kZero) return 0.0;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(base_));
}

CharacterTable::CharacterTable(std::uint64_t q) : q_(q) {
    if (q == 0) throw DomainError("CharacterTable: modulus must be positive");
    if (q > kMaxModulus)
        throw CapacityError("CharacterTable: modulus " + std::to_string(q) + " exceeds " +
                            std::to_string(kMaxModulus));

    std::vector<LocalFactor> factors;
    for (auto [p, k] : factorize(q).pairs) {
        LocalFactor f;
        f.p = p;
        f.k = k;
        for (unsigned i = 0; i < k; ++i) f.pk *= p;
        if (p != 2) {
            f.gens.push_back({primitive_root_prime_power(p, k, f.pk), f.pk / p * (p - 1)});
        } else if (k == 2) {
            f.gens.push_back({3, 2});
        } else if (k >= 3) {
            f.gens.push_back({f.pk - 1, 2});
            f.gens.push_back({5, f.pk / 4});
        }
        factors.push_back(f);
    }

    auto group = std::make_shared<detail::UnitGroup>();
    group->q = q;
    for (const auto& f : factors)
        for (auto [g, ord] : f.gens) {
            group->orders.push_back(ord);
            group->exponent = std::lcm(group->exponent, ord);
        }
    const std::size_t n = group->orders.size();
    const std::size_t width = std::max<std::size_t>(n, 1);

    // discrete logs within each local factor, then spread over residues mod q by CRT
    std::vector<std::vector<std::int64_t>> local_logs;  // per factor: p^k rows of gens.size()
    for (const auto& f : factors) {
        const std::size_t m = f.gens.size();
        std::vector<std::int64_t> logs(f.pk * std::max<std::size_t>(m, 1), -1);
        if (m == 0) {
            logs[1 % f.pk] = 0;  // (Z/2)^*: only 1
        } else if (m == 1) {
            std::uint64_t x = 1;
            for (std::uint64_t e = 0; e < f.gens[0].second; ++e) {
                logs[x] = static_cast<std::int64_t>(e);
                x = x * f.gens[0].first % f.pk;
            }
        } else {
            std::uint64_t x = 1;
            for (std::uint64_t t = 0; t < f.gens[1].second; ++t) {
                logs[2 * x] = 0;
                logs[2 * x + 1] = static_cast<std::int64_t>(t);
                const std::uint64_t y = f.pk - x;
                logs[2 * y] = 1;
                logs[2 * y + 1] = static_cast<std::int64_t>(t);
                x = x * 5 % f.pk;
            }
        }
        local_logs.push_back(std::move(logs));
    }
    group->coords.assign(q * width, -1);
    for (std::uint64_t a = 0; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        std::size_t col = 0;
        for (std::size_t fi = 0; fi < factors.size(); ++fi) {
            const auto& f = factors[fi];
            const std::size_t m = f.gens.size();
            const std::size_t r = a % f.pk;
            for (std::size_t i = 0; i < m; ++i) group->coords[a * width + col + i] = local_logs[fi][r * m + i];
            col += m;
        }
        if (n == 0) group->coords[a * width] = 0;
    }

    // enumerate index tuples, first factor fastest
    const std::uint64_t count = phi(q);
    chars_.reserve(count);
    std::vector<std::uint64_t> idx(n, 0);
    for (std::uint64_t c = 0; c < count; ++c) {
        DirichletCharacter chi;
        chi.modulus_ = q;
        chi.base_ = group->exponent;
        chi.group_ = group;
        chi.index_ = idx;
        chi.principal_ = true;
        chi.order_ = 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (idx[i] != 0) chi.principal_ = false;
            chi.order_ = std::lcm(chi.order_, group->orders[i] / std::gcd(idx[i], group->orders[i]));
        }
        chi.conductor_ = 1;
        std::size_t col = 0;
        for (const auto& f : factors) {
            const std::vector<std::uint64_t> local(idx.begin() + static_cast<std::ptrdiff_t>(col),
                                                   idx.begin() + static_cast<std::ptrdiff_t>(col + f.gens.size()));
            chi.conductor_ *= local_conductor(f, local);
            col += f.gens.size();
        }
        chars_.push_back(std::move(chi));
        for (std::size_t i = 0; i < n; ++i) {
            if (++idx[i] < group->orders[i]) break;
            idx[i] = 0;
        }
    }
}

std::size_t CharacterTable::primitive_count() const {
    std::size_t n = 0;
    for (const auto& chi : chars_)
        if (chi.is_primitive()) ++n;
    return n;
}

std::uint64_t conductor_by_search(const DirichletCharacter& chi) {
    const std::uint64_t q = chi.modulus();
    for (std::uint64_t d = 1; d <= q; ++d) {
        if (q % d != 0) continue;
        bool trivial = true;
        for (std::uint64_t a = 1; a < q + 1 && trivial; a += d)
            if (std::gcd(a, q) == 1 && chi.exponent(static_cast<std::int64_t>(a)) != 0) trivial = false;
        if (trivial) return d;
    }
    return q;
}

std::complex<double> rho_chi(std::int64_t r, const DirichletCharacter& chi) {
    const auto q = static_cast<std::int64_t>(chi.modulus());
    std::complex<double> total = 0.0;
    for (std::int64_t b = 0; b < q; ++b)
        if (std::gcd(static_cast<std::uint64_t>(mod(b - r, q)), static_cast<std::uint64_t>(q)) == 1) total += chi(b);
    return total;
}

}  // namespace koblitz
