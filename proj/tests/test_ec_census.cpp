#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "koblitz/class_number.hpp"
#include "koblitz/ec_census.hpp"
#include "koblitz/num_core.hpp"

using namespace koblitz;

namespace {

// #E(F_p) by pairing every x with every y, plus the point at infinity.
std::int64_t points_by_double_loop(std::int64_t p, std::int64_t a, std::int64_t b) {
    std::int64_t count = 1;
    for (std::int64_t x = 0; x < p; ++x) {
        const std::int64_t rhs = mod(mod(x * x % p * x + a * x + b, p), p);
        for (std::int64_t y = 0; y < p; ++y)
            if (y * y % p == rhs) ++count;
    }
    return count;
}

std::int64_t census_count(const std::vector<CensusRecord>& records, int r) {
    for (const auto& rec : records)
        if (rec.r == r) return rec.count;
    return 0;
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("koblitz_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("traces of small curves") {
    CHECK(trace(CurveModP(5, -1, 0)) == -2);
    CHECK(trace(CurveModP(5, 1, 1)) == -3);
    CHECK(points_by_double_loop(5, -1, 0) == 8);
    CHECK(points_by_double_loop(5, 1, 1) == 9);
    for (std::int64_t a = 0; a < 7; ++a)
        for (std::int64_t b = 0; b < 7; ++b) {
            if (is_singular_mod(7, a, b)) continue;
            REQUIRE(std::abs(trace(CurveModP(7, a, b))) <= 5);
        }
    CHECK_THROWS_AS(CurveModP(5, 0, 0), DomainError);
    CHECK_THROWS_AS(CurveModP(3, 1, 1), DomainError);
    CHECK_THROWS_AS(CurveModP(9, 1, 1), DomainError);
}

TEST_CASE("character-sum trace equals a direct point count") {
    const PrimeTable primes = sieve(200);
    std::vector<std::int64_t> ps;
    for (auto p : primes.primes())
        if (p > 3) ps.push_back(p);
    std::mt19937_64 rng(12345);
    int tested = 0;
    while (tested < 100) {
        const std::int64_t p = ps[rng() % ps.size()];
        const auto a = static_cast<std::int64_t>(rng() % p);
        const auto b = static_cast<std::int64_t>(rng() % p);
        if (is_singular_mod(p, a, b)) continue;
        const CurveModP e(p, a, b);
        INFO("p = " << p << " a = " << a << " b = " << b);
        REQUIRE(trace(e) == p + 1 - points_by_double_loop(p, a, b));
        REQUIRE(trace(e) == trace_by_point_count(e));
        ++tested;
    }
}

TEST_CASE("trace table agrees with the per-curve trace") {
    for (std::int64_t p : {5, 7, 11, 13, 31, 37, 101}) {
        const TraceTable table(p);
        for (std::int64_t a = 0; a < p; ++a)
            for (std::int64_t b = 0; b < p; ++b) {
                if (is_singular_mod(p, a, b)) {
                    REQUIRE(table.at(a, b) == TraceTable::kSingular);
                } else {
                    REQUIRE(table.at(a, b) == trace(CurveModP(p, a, b)));
                }
            }
        CHECK(table.at(-1, -1) == table.at(p - 1, p - 1));
    }
}

TEST_CASE("Hasse bound for every curve with p <= 2000") {
    const PrimeTable primes = sieve(2000);
    for (auto p32 : primes.primes()) {
        const std::int64_t p = p32;
        if (p < 5) continue;
        const auto records = census(p);
        for (const auto& rec : records) REQUIRE(static_cast<std::int64_t>(rec.r) * rec.r <= 4 * p);
    }
}

TEST_CASE("census totals and singular pairs") {
    const auto five = census(5);
    std::int64_t total = 0;
    for (const auto& rec : five) total += rec.count;
    CHECK(total == 20);
    CHECK(census_count(five, 0) == 4);
    CHECK(census_count(census(7), 5) == 1);
    const PrimeTable primes = sieve(400);
    for (auto p32 : primes.primes()) {
        const std::int64_t p = p32;
        if (p < 5) continue;
        std::int64_t singular = 0;
        for (std::int64_t a = 0; a < p; ++a)
            for (std::int64_t b = 0; b < p; ++b)
                if (mod(4 * a * a % p * a + 27 * b * b, p) == 0) ++singular;
        CHECK(count_singular_pairs(p) == singular);
        CHECK(TraceTable(p).singular_pairs() == singular);
        std::int64_t sum = 0;
        for (const auto& rec : census(p)) sum += rec.count;
        REQUIRE(sum == p * p - singular);
    }
}

TEST_CASE("Deuring counts for small primes") {
    for (std::int64_t p : {5, 7, 11}) {
        const auto rep = deuring_check(p);
        CHECK(rep.all_ok());
        for (const auto& row : rep.rows) {
            REQUIRE(row.expected.has_value());
            CHECK(*row.expected == row.census_count);
        }
    }
    const auto seven = deuring_check(7);
    bool saw = false;
    for (const auto& row : seven.rows)
        if (row.r == 5) {
            saw = true;
            CHECK(row.census_count == 1);
            CHECK(row.twelve_H == 2);
        }
    CHECK(saw);
    const auto eleven = census(11);
    CHECK(census_count(eleven, 0) * 12 == 10 * kronecker_H(-44).twelve_H);
}

TEST_CASE("prime-order curve counts") {
    CHECK(pi_star(5) == 7);
    std::int64_t brute = 0;
    for (std::int64_t a = 0; a < 7; ++a)
        for (std::int64_t b = 0; b < 7; ++b) {
            if (is_singular_mod(7, a, b)) continue;
            if (is_prime(static_cast<std::uint64_t>(points_by_double_loop(7, a, b)))) ++brute;
        }
    CHECK(pi_star(7) == brute);
    for (std::int64_t p : {11, 13, 101}) CHECK(pi_star(p) <= p * p - p);
}

TEST_CASE("twin counts of a fixed curve") {
    CHECK_THROWS_AS(pi_twin(0, 0, 100), DomainError);
    CHECK_THROWS_AS(pi_twin(-1, 0, 4), DomainError);
    std::int64_t brute = 0;
    for (std::int64_t p = 5; p <= 50; ++p) {
        if (!is_prime(static_cast<std::uint64_t>(p))) continue;
        if ((4 * -1 * 1 * 1) % p == 0) continue;
        if (is_prime(static_cast<std::uint64_t>(points_by_double_loop(p, -1, 0)))) ++brute;
    }
    CHECK(pi_twin(-1, 0, 50) == brute);
    std::int64_t previous = 0;
    for (std::int64_t x = 5; x <= 400; ++x) {
        const std::int64_t v = pi_twin(2, 3, x);
        REQUIRE(v >= previous);
        previous = v;
    }
}

TEST_CASE("box counts") {
    std::int64_t direct = 0;
    for (std::int64_t a = -2; a <= 2; ++a)
        for (std::int64_t b = -2; b <= 2; ++b)
            if (!is_singular_mod(5, a, b) && trace(CurveModP(5, a, b)) == -2) ++direct;
    CHECK(box_count(5, 2, 2, -2) == direct);
    CHECK(box_count(101, 30, 30, 21) == 0);
    CHECK(box_count(101, 30, 30, -23) == 0);
    CHECK_THROWS_AS(box_count(5, 0, 2, 0), DomainError);

    // A, B multiples of p: the box [-kp, kp] covers every residue 2k times,
    // and residue 0 once more.
    for (std::int64_t p : {5, 7, 13}) {
        const TraceTable table(p);
        const auto records = census(table);
        for (std::int64_t k : {1, 2, 3}) {
            const std::int64_t A = k * p, B = (k + 1) * p;
            for (const auto& rec : records) {
                std::int64_t expected = 0;
                for (std::int64_t a = 0; a < p; ++a)
                    for (std::int64_t b = 0; b < p; ++b) {
                        if (table.at(a, b) != rec.r) continue;
                        expected += (2 * k + (a == 0 ? 1 : 0)) * (2 * (k + 1) + (b == 0 ? 1 : 0));
                    }
                REQUIRE(box_count(p, A, B, rec.r) == expected);
                const std::int64_t tiled = (2 * A) * (2 * B) / (p * p) * rec.count;
                REQUIRE(std::abs(box_count(p, A, B, rec.r) - tiled) <= 2 * (A + B) + 1);
            }
        }
    }
}

TEST_CASE("census files round-trip") {
    const auto dir = scratch_dir("census_io");
    const auto records = census(97);
    write_census_file(dir / "97.csv", records);
    CHECK(read_census_file(dir / "97.csv") == records);

    {
        std::ofstream out(dir / "commented.csv");
        out << "# a comment\n5,-2,4\n\n5,0,4\n";
    }
    const auto parsed = read_census_file(dir / "commented.csv");
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0] == CensusRecord{5, -2, 4});
    CHECK(parsed[1] == CensusRecord{5, 0, 4});

    {
        std::ofstream out(dir / "bad.csv");
        out << "5,-2\n";
    }
    CHECK_THROWS(read_census_file(dir / "bad.csv"));
    {
        std::ofstream out(dir / "junk.csv");
        out << "5,x,4\n";
    }
    CHECK_THROWS(read_census_file(dir / "junk.csv"));
    CHECK_THROWS(read_census_file(dir / "missing.csv"));

    CensusCache cache(dir / "cache");
    CHECK_FALSE(cache.contains(101));
    const auto first = cache.get(101);
    CHECK(cache.contains(101));
    CHECK(cache.get(101) == first);
    CHECK(first == census(101));
    std::filesystem::remove_all(dir);
}
