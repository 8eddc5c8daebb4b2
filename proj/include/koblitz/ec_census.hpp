#pragma once

// Short Weierstrass curves y^2 = x^3 + ax + b over F_p, their Frobenius traces,
// full censuses over all (a, b) mod p, and the exact Deuring comparison.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <vector>

#include "koblitz/class_number.hpp"

namespace koblitz {

class CurveModP {
public:
    /// Throws DomainError unless p > 3 is prime and 4a^3 + 27b^2 != 0 mod p.
    CurveModP(std::int64_t p, std::int64_t a, std::int64_t b);

    std::int64_t p() const noexcept { return p_; }
    std::int64_t a() const noexcept { return a_; }
    std::int64_t b() const noexcept { return b_; }

private:
    std::int64_t p_, a_, b_;
};

/// 4a^3 + 27b^2 == 0 (mod p).
bool is_singular_mod(std::int64_t p, std::int64_t a, std::int64_t b);

/// a_p = -sum_x (x^3 + ax + b / p).
int trace(const CurveModP& curve);

/// p + 1 - #E(F_p) computed by listing affine points; slow reference route.
int trace_by_point_count(const CurveModP& curve);

struct CensusRecord {
    std::int64_t p = 0;
    int r = 0;
    std::int64_t count = 0;
    bool operator==(const CensusRecord&) const = default;
};

/// Traces of every pair (a, b) mod p, stored row-major by a.
class TraceTable {
public:
    static constexpr std::int16_t kSingular = INT16_MIN;

    explicit TraceTable(std::int64_t p);

    std::int64_t p() const noexcept { return p_; }
    /// Trace of (a mod p, b mod p), or kSingular.
    std::int16_t at(std::int64_t a, std::int64_t b) const noexcept {
        return traces_[static_cast<std::size_t>(mod_p(a) * p_ + mod_p(b))];
    }
    std::int64_t singular_pairs() const noexcept { return singular_; }

private:
    std::int64_t mod_p(std::int64_t v) const noexcept {
        const std::int64_t r = v % p_;
        return r < 0 ? r + p_ : r;
    }
    std::int64_t p_;
    std::int64_t singular_ = 0;
    std::vector<std::int16_t> traces_;
};

/// Number of (a, b) mod p with 4a^3 + 27b^2 == 0, by enumeration.
std::int64_t count_singular_pairs(std::int64_t p);

/// One record per trace with nonzero count, ascending r.
std::vector<CensusRecord> census(std::int64_t p);
std::vector<CensusRecord> census(const TraceTable& table);

struct DeuringRow {
    int r = 0;
    std::int64_t census_count = 0;
    std::int64_t twelve_H = 0;
    /// (p-1) * 12H / 12 when that division is exact.
    std::optional<std::int64_t> expected;
    bool match = false;
    bool supersingular = false;  // r == 0
};

struct DeuringReport {
    std::int64_t p = 0;
    std::vector<DeuringRow> rows;
    std::vector<int> ordinary_mismatches;
    std::vector<int> supersingular_mismatches;

    bool ordinary_ok() const noexcept { return ordinary_mismatches.empty(); }
    bool all_ok() const noexcept { return ordinary_ok() && supersingular_mismatches.empty(); }
};

/// Compare N_r(p) with (p-1)H(r^2-4p) for every r with r^2 < 4p.
DeuringReport deuring_check(std::int64_t p);
DeuringReport deuring_check(const std::vector<CensusRecord>& records, std::int64_t p,
                            const ClassNumberTable* table = nullptr);

/// Number of curves over F_p whose group order p + 1 - r is prime.
std::int64_t pi_star(std::int64_t p);
std::int64_t pi_star(const std::vector<CensusRecord>& records);

/// #{3 < p <= x : p does not divide 4a^3 + 27b^2, p + 1 - a_p prime}.
std::int64_t pi_twin(std::int64_t a, std::int64_t b, std::int64_t x);

/// #{|a| <= A, |b| <= B : (a,b) nonsingular mod p, a_p = r}.
std::int64_t box_count(std::int64_t p, std::int64_t A, std::int64_t B, int r);
std::int64_t box_count(const TraceTable& table, std::int64_t A, std::int64_t B, int r);

// Census cache: ASCII lines "p,r,count", sorted by (p, r); '#' starts a comment.
void write_census_file(const std::filesystem::path& path, const std::vector<CensusRecord>& records);
std::vector<CensusRecord> read_census_file(const std::filesystem::path& path);

/// Per-prime census files under a directory; computes and stores on miss.
class CensusCache {
public:
    explicit CensusCache(std::filesystem::path dir);

    std::vector<CensusRecord> get(std::int64_t p);
    std::filesystem::path file_for(std::int64_t p) const;
    bool contains(std::int64_t p) const;

private:
    std::filesystem::path dir_;
};

}  // namespace koblitz
