// Acceptance runner: one [PASS]/[FAIL] line per criterion. With no arguments
// every criterion runs; otherwise only the numbered ones given. Exit status is
// 0 when every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "koblitz/class_number.hpp"
#include "koblitz/ec_census.hpp"
#include "koblitz/euler_constants.hpp"
#include "koblitz/harness.hpp"
#include "koblitz/num_core.hpp"
#include "koblitz/twin_series.hpp"

using namespace koblitz;

namespace {

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            detail << " [violated: " << what << "]";
        }
    }
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// 1. Census N_r(p) = (p-1) H(r^2 - 4p) for 5 <= p <= 499, r^2 < 4p, p not dividing r.
Outcome deuring_exactness() {
    Outcome out;
    Stopwatch clock;
    const ClassNumberTable table(4 * 499);
    std::size_t primes = 0, rows = 0, ordinary_bad = 0, super_rows = 0, super_bad = 0;
    const PrimeTable table_p32 = sieve(499);
    for (auto p32 : table_p32.primes()) {
        const std::int64_t p = p32;
        if (p < 5) continue;
        ++primes;
        const auto rep = deuring_check(census(p), p, &table);
        rows += rep.rows.size();
        ordinary_bad += rep.ordinary_mismatches.size();
        super_bad += rep.supersingular_mismatches.size();
        for (const auto& row : rep.rows) super_rows += row.supersingular ? 1 : 0;
    }
    const double t = clock.seconds();
    out.detail << primes << " primes, " << rows << " rows, ordinary mismatches " << ordinary_bad
               << "; r=0 rows " << super_rows << ", r=0 mismatches " << super_bad << " (reported); " << fmt(t)
               << " s";
    out.require(ordinary_bad == 0, "ordinary rows exact");
    out.require(t < 60.0, "runtime < 60 s");
    return out;
}

// 2. (1 - |Omega'|/|GL2|)/(1 - 1/l) = 1 - (l^2-l-1)/((l-1)^3(l+1)) exactly.
Outcome gl2_local_factors() {
    Outcome out;
    Stopwatch clock;
    bool all = true;
    for (std::uint64_t l : {3, 5, 7, 11, 13}) {
        const auto g = gl2_count(l);
        const Rational direct = (Rational(1) - Rational(static_cast<std::int64_t>(g.omega_prime_count),
                                                        static_cast<std::int64_t>(g.gl2_order))) /
                                (Rational(1) - Rational(1, static_cast<std::int64_t>(l)));
        const bool ok = direct == local_factor(l) && g.identity_holds();
        all = all && ok;
        out.detail << "l=" << l << ":" << g.omega_prime_count << "/" << g.gl2_order << (ok ? " ok; " : " MISMATCH; ");
    }
    const auto omega3 = gl2_count(3).omega_prime_count;
    const double t = clock.seconds();
    out.detail << "|Omega'(3)|=" << omega3 << "; " << fmt(t) << " s";
    out.require(all, "exact identity for every l");
    out.require(omega3 == 21, "|Omega'(3)| = 21");
    out.require(t < 5.0, "runtime < 5 s");
    return out;
}

// 3. Two product forms agree within 1e-9 at L = 10^6; L = 10^5 -> 10^6 moves < 1e-7.
Outcome constant_consistency() {
    Outcome out;
    const auto forms = average_constant_forms(1'000'000);
    const double diff = std::abs(forms.polynomial.value - forms.local_factor.value);
    const double move = std::abs(average_constant_forms(100'000).local_factor.value - forms.local_factor.value);
    out.detail << "value " << fmt(forms.local_factor.value) << ", form difference " << fmt(diff)
               << ", L=1e5->1e6 change " << fmt(move);
    out.require(diff < 1e-9, "forms within 1e-9");
    out.require(move < 1e-7, "L stability < 1e-7");
    return out;
}

// 4. c_f^r grid, local sums vs series, F_mult vs exponential sums.
Outcome character_sums() {
    Outcome out;
    std::size_t c_bad = 0, c_total = 0;
    for (std::uint64_t f : {1, 3, 5, 7, 9})
        for (std::int64_t r = -9; r <= 9; r += 2) {
            if (r == 1) continue;
            for (std::uint64_t n = 1; n <= 200; ++n) {
                ++c_total;
                if (c_f_r_bruteforce(n, f, r) != c_f_r(n, f, r)) ++c_bad;
            }
        }
    double local_worst = 0.0;
    std::size_t local_cases = 0;
    const PrimeTable table_p = sieve(50);
    for (auto p : table_p.primes()) {
        if (p == 2) continue;
        const auto l = static_cast<std::int64_t>(p);
        std::vector<std::int64_t> rs = {2 * l + 1, l, l + 2};  // l | r-1, l | r, l | r-2
        if (l > 3) rs.push_back(l + 4);                       // l coprime to r(r-1)(r-2)
        for (auto r : rs) {
            const auto s = local_sums(p, r);
            ++local_cases;
            local_worst = std::max({local_worst, std::abs(s.A_series - boost::rational_cast<double>(s.A)),
                                    std::abs(s.B_series - boost::rational_cast<double>(s.B)),
                                    std::abs(s.C_series - boost::rational_cast<double>(s.C))});
        }
    }
    const double b2 = std::abs(B_two_series() - boost::rational_cast<double>(B_two()));
    std::size_t f_bad = 0, f_total = 0;
    for (std::uint64_t s = 1; s <= 100; ++s) {
        if (!is_squarefree(s)) continue;
        for (std::uint64_t q : {1, 2, 3, 4, 6, 12})
            for (std::int64_t r = -10; r <= 10; ++r)
                for (std::int64_t a = -10; a <= 10; ++a) {
                    ++f_total;
                    if (F_mult(s, r, q, a) != F_exponential_sum(s, r, q, a)) ++f_bad;
                }
    }
    out.detail << "c_f^r " << c_bad << "/" << c_total << " mismatches; local sums worst " << fmt(local_worst)
               << " over " << local_cases << " (l, r), B(2) error " << fmt(b2) << "; F " << f_bad << "/" << f_total
               << " mismatches";
    out.require(c_bad == 0, "c_f^r exact");
    out.require(local_worst < 1e-12 && b2 < 1e-12, "local sums within 1e-12");
    out.require(f_bad == 0, "F_mult exact");
    return out;
}

// 5. Singular-series routes, rho closed form, rho(r, chi) for primitive chi.
Outcome singular_series_identities() {
    Outcome out;
    double route_worst = 0.0;
    std::size_t route_zero_bad = 0;
    for (std::int64_t r = 2; r <= 100; r += 2)
        for (std::uint64_t q = 1; q <= 100; ++q)
            for (std::int64_t a = 0; a < static_cast<std::int64_t>(q); ++a) {
                const double x = singular_series_mod(r, q, a).value;
                const double y = singular_series_mod_via_product(r, q, a).value;
                if (x == 0.0 || y == 0.0) {
                    route_zero_bad += (x == y) ? 0 : 1;
                    continue;
                }
                route_worst = std::max(route_worst, std::abs(x - y) / std::abs(x));
            }
    std::size_t rho_bad = 0;
    for (std::uint64_t q = 1; q <= 500; ++q)
        for (std::int64_t r = -50; r <= 50; ++r)
            if (rho(r, q) != rho_by_enumeration(r, q)) ++rho_bad;
    double chi_worst = 0.0;
    std::size_t primitive = 0;
    for (std::uint64_t f = 1; f <= 200; ++f) {
        const CharacterTable table(f);
        for (const auto& chi : table.characters()) {
            if (!chi.is_primitive()) continue;
            ++primitive;
            for (std::int64_t r = -20; r <= 20; ++r)
                chi_worst = std::max(chi_worst, std::abs(rho_chi(r, chi) - static_cast<double>(moebius(f)) * chi(r)));
        }
    }
    out.detail << "route worst relative " << fmt(route_worst) << " (zero-pattern mismatches " << route_zero_bad
               << "); rho mismatches " << rho_bad << "; rho(r,chi) worst " << fmt(chi_worst) << " over " << primitive
               << " primitive characters";
    out.require(route_worst < 1e-10 && route_zero_bad == 0, "routes within 1e-10");
    out.require(rho_bad == 0, "rho exact");
    out.require(chi_worst < 1e-8, "rho(r,chi) within 1e-8");
    return out;
}

// 6. Sum of C_r over odd |r| <= R, r != 1, against frak_C * R.
Outcome gallagher_average() {
    Outcome out;
    Stopwatch clock;
    const auto small = gallagher_sum(1000);
    const auto large = gallagher_sum(10'000);
    const double t = clock.seconds();
    const double dev_small = std::abs(small.ratio - 1.0);
    const double dev_large = std::abs(large.ratio - 1.0);
    out.detail << "ratio to frak_C R: " << fmt(small.ratio) << " at R=1e3, " << fmt(large.ratio)
               << " at R=1e4 (ratio to 2 frak_C R: " << fmt(small.ratio / 2.0) << ", " << fmt(large.ratio / 2.0)
               << "); " << fmt(t) << " s";
    out.require(dev_large <= 0.02, "within 2% at R=1e4");
    out.require(dev_large < dev_small, "closer at R=1e4 than at R=1e3");
    out.require(t < 30.0, "runtime < 30 s");
    return out;
}

// 7. |C_r_oracle(r, U, 20) - C_r| shrinks (up to 1.5x) as U doubles over 250, 500, 1000.
Outcome oracle_convergence() {
    Outcome out;
    bool all = true;
    for (std::int64_t r : {3, 5, -3}) {
        const double c = C_r(r).value;
        std::vector<double> diffs;
        for (std::uint64_t U : {250, 500, 1000}) diffs.push_back(std::abs(C_r_oracle(r, U, 20) - c));
        const bool ok = diffs[1] <= 1.5 * diffs[0] && diffs[2] <= 1.5 * diffs[1];
        all = all && ok;
        out.detail << "r=" << r << ": " << fmt(diffs[0]) << ", " << fmt(diffs[1]) << ", " << fmt(diffs[2])
                   << (ok ? "; " : " (not shrinking); ");
    }
    out.require(all, "differences shrink for every r");
    return out;
}

// 8. Prime-order curve sums: class-number route = census at 3000; integral ratio in
//    [0.85, 1.2] at 10^4 and closer to 1 than at 10^3.
Outcome theorem2_desk_scale() {
    Outcome out;
    Stopwatch clock;
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    const auto exact = theorem2_numbers(3000, kDefaultSeriesLimit, workers, 3000);
    const auto small = theorem2_numbers(1000, kDefaultSeriesLimit, workers, 0);
    const auto large = theorem2_numbers(10'000, kDefaultSeriesLimit, workers, 0);
    const double t = clock.seconds();
    const bool routes = exact.census_route && *exact.census_route == exact.class_route;
    out.detail << "pmax=3000 class " << exact.class_route << " census "
               << (exact.census_route ? std::to_string(*exact.census_route) : std::string("n/a"))
               << "; integral ratio " << fmt(small.ratio_integral) << " at 1e3, " << fmt(large.ratio_integral)
               << " at 1e4 (cubic ratio " << fmt(large.ratio_cubic) << "); " << fmt(t) << " s";
    out.require(routes, "routes equal at pmax=3000");
    out.require(large.ratio_integral >= 0.85 && large.ratio_integral <= 1.2, "ratio in [0.85, 1.2]");
    out.require(std::abs(large.ratio_integral - 1.0) < std::abs(small.ratio_integral - 1.0), "improves from 1e3");
    out.require(t < 600.0, "runtime < 10 min");
    return out;
}

// 9. Dispersion at x = 2e5, R = 1e3, Q = 10: S/(R x^2) does not increase when Y
//    doubles, and the q = a = 1 statistic sum_r E^2/(R Y^2) decreases as Y grows.
Outcome theorem3_desk_scale() {
    Outcome out;
    const std::uint64_t x = 200'000;
    const std::int64_t R = 1000;
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    const auto half = bdh_statistic(x, R, 10, {0, 100'000}, workers, false);
    const auto full = bdh_statistic(x, R, 10, {0, 200'000}, workers, false);
    const TwinSieve sieve(x + static_cast<std::uint64_t>(R));
    std::vector<double> single;
    for (std::uint64_t Y : {50'000, 100'000, 200'000}) {
        const double y = static_cast<double>(Y);
        single.push_back(single_class_statistic({0, Y}, R, 1, 1, sieve) / (static_cast<double>(R) * y * y));
    }
    out.detail << "S/(R x^2): " << fmt(half.normalized) << " at Y=1e5, " << fmt(full.normalized)
               << " at Y=2e5; single class: " << fmt(single[0]) << ", " << fmt(single[1]) << ", " << fmt(single[2])
               << " at Y=5e4, 1e5, 2e5";
    out.require(full.normalized <= half.normalized, "normalized statistic does not increase");
    out.require(single[1] < single[0] && single[2] < single[1], "single-class statistic decreases");
    return out;
}

// 10. `verify all` twice with the same configuration gives identical reports.
Outcome determinism() {
    Outcome out;
    ExperimentConfig cfg;
    cfg.suite = "all";
    cfg.workers = std::max(1u, std::thread::hardware_concurrency());
    const Report first = run_verify(cfg);
    const Report second = run_verify(cfg);
    const std::string a = first.to_json().dump(2), b = second.to_json().dump(2);
    const bool same = a == b && first.to_csv() == second.to_csv();
    out.detail << a.size() << " bytes per report, " << (same ? "identical" : "DIFFERENT") << " (suite outcome "
               << (first.passed() ? "pass" : "fail") << ")";
    out.require(same, "byte-identical reports");
    return out;
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "Deuring exactness", deuring_exactness},
        {2, "GL2 local factors", gl2_local_factors},
        {3, "constant consistency", constant_consistency},
        {4, "character sums", character_sums},
        {5, "singular-series identities", singular_series_identities},
        {6, "Gallagher average", gallagher_average},
        {7, "C_r oracle convergence", oracle_convergence},
        {8, "prime-order sums at desk scale", theorem2_desk_scale},
        {9, "twin dispersion at desk scale", theorem3_desk_scale},
        {10, "determinism", determinism},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        char* end = nullptr;
        const long id = std::strtol(argv[i], &end, 10);
        if (*end != '\0' || id < 1 || id > static_cast<long>(criteria.size())) {
            std::cerr << "usage: acceptance [criterion 1-" << criteria.size() << "]...\n";
            return 2;
        }
        selected.push_back(static_cast<int>(id));
    }
    if (selected.empty())
        for (const auto& c : criteria) selected.push_back(c.id);

    bool all = true;
    for (int id : selected) {
        const auto& c = criteria[static_cast<std::size_t>(id - 1)];
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail << "exception: " << e.what();
        }
        all = all && o.passed;
        std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << ": " << o.detail.str() << '\n';
    }
    return all ? 0 : 1;
}
