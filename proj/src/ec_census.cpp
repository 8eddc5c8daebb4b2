#include "koblitz/ec_census.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "koblitz/num_core.hpp"

namespace koblitz {

namespace {

std::vector<std::int8_t> legendre_table(std::int64_t p) {
    std::vector<std::int8_t> chi(static_cast<std::size_t>(p), -1);
    chi[0] = 0;
    for (std::int64_t x = 1; x < p; ++x) chi[static_cast<std::size_t>(x * x % p)] = 1;
    return chi;
}

std::vector<std::int64_t> cube_table(std::int64_t p) {
    std::vector<std::int64_t> cube(static_cast<std::size_t>(p));
    for (std::int64_t x = 0; x < p; ++x) cube[static_cast<std::size_t>(x)] = x * x % p * x % p;
    return cube;
}

// -sum_x chi(x^3 + ax + b) with a, b already reduced mod p.
int trace_with(std::int64_t p, std::int64_t a, std::int64_t b, const std::vector<std::int8_t>& chi,
               const std::vector<std::int64_t>& cube) {
    int s = 0;
    std::int64_t ax = 0;
    for (std::int64_t x = 0; x < p; ++x) {
        std::int64_t v = cube[static_cast<std::size_t>(x)] + ax + b;
        if (v >= p) v -= p;
        if (v >= p) v -= p;
        s += chi[static_cast<std::size_t>(v)];
        ax += a;
        if (ax >= p) ax -= p;
    }
    return -s;
}

void require_census_prime(std::int64_t p, const char* who) {
    if (p <= 3 || !is_prime(static_cast<std::uint64_t>(p)))
        throw DomainError(std::string(who) + ": p must be a prime greater than 3");
}

}  // namespace

bool is_singular_mod(std::int64_t p, std::int64_t a, std::int64_t b) {
    const std::int64_t am = mod(a, p), bm = mod(b, p);
    const auto disc = (4 * static_cast<__int128>(am) * am % p * am + 27 * static_cast<__int128>(bm) * bm) % p;
    return disc == 0;
}

CurveModP::CurveModP(std::int64_t p, std::int64_t a, std::int64_t b) : p_(p), a_(0), b_(0) {
    require_census_prime(p, "CurveModP");
    a_ = mod(a, p);
    b_ = mod(b, p);
    if (is_singular_mod(p, a_, b_)) throw DomainError("CurveModP: singular Weierstrass equation");
}

int trace(const CurveModP& curve) {
    const std::int64_t p = curve.p();
    return trace_with(p, curve.a(), curve.b(), legendre_table(p), cube_table(p));
}

int trace_by_point_count(const CurveModP& curve) {
    const std::int64_t p = curve.p();
    std::int64_t points = 1;  // point at infinity
    for (std::int64_t x = 0; x < p; ++x) {
        const std::int64_t rhs = mod(x * x % p * x + curve.a() * x + curve.b(), p);
        for (std::int64_t y = 0; y < p; ++y)
            if (y * y % p == rhs) ++points;
    }
    return static_cast<int>(p + 1 - points);
}

TraceTable::TraceTable(std::int64_t p) : p_(p) {
    require_census_prime(p, "TraceTable");
    constexpr std::int16_t kUnset = std::numeric_limits<std::int16_t>::max();
    const auto n = static_cast<std::size_t>(p);
    traces_.assign(n * n, kUnset);
    const auto chi = legendre_table(p);
    const auto cube = cube_table(p);
    // 4a^3 + 27b^2 = 0 mod p exactly for (a, b) = (-3t^2, 2t^3), t mod p
    for (std::int64_t t = 0; t < p; ++t) {
        const std::int64_t a = mod(-3 * (t * t % p), p);
        const std::int64_t b = 2 * (t * t % p) * t % p;
        traces_[static_cast<std::size_t>(a * p + b)] = kSingular;
        ++singular_;
    }
    // (u^2 a, u^3 b) is the quadratic twist of (a, b) by u, so its trace is
    // chi(u) times the trace of (a, b): one O(p) sum per twist orbit.
    for (std::int64_t a = 0; a < p; ++a) {
        for (std::int64_t b = 0; b < p; ++b) {
            auto& slot = traces_[static_cast<std::size_t>(a * p + b)];
            if (slot != kUnset) continue;
            const int t = trace_with(p, a, b, chi, cube);
            for (std::int64_t u = 1; u < p; ++u) {
                const std::int64_t u2 = u * u % p;
                const std::int64_t ua = u2 * a % p;
                const std::int64_t ub = u2 * u % p * b % p;
                traces_[static_cast<std::size_t>(ua * p + ub)] =
                    static_cast<std::int16_t>(chi[static_cast<std::size_t>(u)] * t);
            }
        }
    }
}

std::int64_t count_singular_pairs(std::int64_t p) {
    std::int64_t n = 0;
    for (std::int64_t a = 0; a < p; ++a)
        for (std::int64_t b = 0; b < p; ++b)
            if (is_singular_mod(p, a, b)) ++n;
    return n;
}

std::vector<CensusRecord> census(const TraceTable& table) {
    const std::int64_t p = table.p();
    const int bound = static_cast<int>(std::floor(2.0 * std::sqrt(static_cast<double>(p))));
    std::vector<std::int64_t> counts(static_cast<std::size_t>(2 * bound + 1), 0);
    for (std::int64_t a = 0; a < p; ++a)
        for (std::int64_t b = 0; b < p; ++b) {
            const std::int16_t t = table.at(a, b);
            if (t == TraceTable::kSingular) continue;
            ++counts[static_cast<std::size_t>(t + bound)];
        }
    std::vector<CensusRecord> out;
    for (int r = -bound; r <= bound; ++r) {
        const std::int64_t c = counts[static_cast<std::size_t>(r + bound)];
        if (c) out.push_back({p, r, c});
    }
    return out;
}

std::vector<CensusRecord> census(std::int64_t p) { return census(TraceTable(p)); }

DeuringReport deuring_check(const std::vector<CensusRecord>& records, std::int64_t p,
                            const ClassNumberTable* table) {
    require_census_prime(p, "deuring_check");
    std::map<int, std::int64_t> by_trace;
    for (const auto& rec : records)
        if (rec.p == p) by_trace[rec.r] += rec.count;

    DeuringReport report;
    report.p = p;
    int bound = 0;
    while (static_cast<std::int64_t>(bound + 1) * (bound + 1) < 4 * p) ++bound;
    for (int r = -bound; r <= bound; ++r) {
        DeuringRow row;
        row.r = r;
        row.supersingular = (r % p == 0);
        const std::int64_t D = static_cast<std::int64_t>(r) * r - 4 * p;
        row.twelve_H = table ? table->H(D).twelve_H : kronecker_H(D).twelve_H;
        const auto it = by_trace.find(r);
        row.census_count = it == by_trace.end() ? 0 : it->second;
        if ((p - 1) * row.twelve_H % 12 == 0) row.expected = (p - 1) * row.twelve_H / 12;
        row.match = row.expected && *row.expected == row.census_count;
        if (!row.match)
            (row.supersingular ? report.supersingular_mismatches : report.ordinary_mismatches).push_back(r);
        report.rows.push_back(row);
    }
    return report;
}

DeuringReport deuring_check(std::int64_t p) { return deuring_check(census(p), p); }

std::int64_t pi_star(const std::vector<CensusRecord>& records) {
    std::int64_t total = 0;
    for (const auto& rec : records) {
        const std::int64_t order = rec.p + 1 - rec.r;
        if (order > 1 && is_prime(static_cast<std::uint64_t>(order))) total += rec.count;
    }
    return total;
}

std::int64_t pi_star(std::int64_t p) { return pi_star(census(p)); }

std::int64_t pi_twin(std::int64_t a, std::int64_t b, std::int64_t x) {
    const __int128 disc = 4 * static_cast<__int128>(a) * a * a + 27 * static_cast<__int128>(b) * b;
    if (disc == 0) throw DomainError("pi_twin: 4a^3 + 27b^2 = 0, curve is singular over Q");
    if (x < 5) throw DomainError("pi_twin: x must be at least 5");
    std::int64_t count = 0;
    for (std::int64_t p = 5; p <= x; p += 2) {
        if (!is_prime(static_cast<std::uint64_t>(p))) continue;
        if (disc % p == 0) continue;
        const int t = trace(CurveModP(p, a, b));
        if (is_prime(static_cast<std::uint64_t>(p + 1 - t))) ++count;
    }
    return count;
}

std::int64_t box_count(const TraceTable& table, std::int64_t A, std::int64_t B, int r) {
    if (A < 0 || B < 0) throw DomainError("box_count: A and B must be non-negative");
    std::int64_t n = 0;
    for (std::int64_t a = -A; a <= A; ++a)
        for (std::int64_t b = -B; b <= B; ++b)
            if (table.at(a, b) == r) ++n;
    return n;
}

std::int64_t box_count(std::int64_t p, std::int64_t A, std::int64_t B, int r) {
    if (A < 1 || B < 1) throw DomainError("box_count: A and B must be at least 1");
    if (static_cast<std::int64_t>(r) * r > 4 * p) return 0;
    return box_count(TraceTable(p), A, B, r);
}

void write_census_file(const std::filesystem::path& path, const std::vector<CensusRecord>& records) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write census file " + path.string());
    for (const auto& rec : records) out << rec.p << ',' << rec.r << ',' << rec.count << '\n';
    if (!out) throw std::runtime_error("write failed for census file " + path.string());
}

std::vector<CensusRecord> read_census_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read census file " + path.string());
    std::vector<CensusRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        CensusRecord rec;
        char c1 = 0, c2 = 0;
        if (!(fields >> rec.p >> c1 >> rec.r >> c2 >> rec.count) || c1 != ',' || c2 != ',')
            throw std::runtime_error("malformed census line " + std::to_string(lineno) + " in " +
                                     path.string());
        out.push_back(rec);
    }
    return out;
}

CensusCache::CensusCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::filesystem::path CensusCache::file_for(std::int64_t p) const {
    return dir_ / ("census_" + std::to_string(p) + ".csv");
}

bool CensusCache::contains(std::int64_t p) const { return std::filesystem::exists(file_for(p)); }

std::vector<CensusRecord> CensusCache::get(std::int64_t p) {
    const auto path = file_for(p);
    if (std::filesystem::exists(path)) return read_census_file(path);
    auto records = census(p);
    // write-then-rename so a concurrent reader never sees a partial file
    auto tmp = path;
    tmp += ".tmp";
    write_census_file(tmp, records);
    std::filesystem::rename(tmp, path);
    return records;
}

}  // namespace koblitz
