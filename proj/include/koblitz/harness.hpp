#pragma once

// Experiment orchestration behind the command-line tool: each runner takes an
// ExperimentConfig and returns a Report that serializes to JSON (summary) and
// CSV (rows). Reports carry no timings, so equal configs give equal bytes.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace koblitz {

struct ExperimentConfig {
    std::optional<std::uint64_t> x, A, B, R, Q, X, Y, pmax, L, U, V;
    std::optional<std::int64_t> r;
    std::filesystem::path cache_dir;  // empty: no census cache
    std::filesystem::path out;        // empty: stdout only
    unsigned workers = 1;
    std::string suite;

    /// Throws DomainError unless every given range parameter is positive and X + Y <= x.
    void validate() const;
};

/// Cache directory from KOBLITZ_CACHE_DIR, or empty when unset.
std::filesystem::path default_cache_dir();
inline constexpr const char* kCacheEnv = "KOBLITZ_CACHE_DIR";

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Report {
    std::string experiment;
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<Check> checks;

    bool passed() const;
    nlohmann::ordered_json to_json() const;
    /// Header, one line per row, then a "# summary" comment line.
    std::string to_csv() const;
    /// Writes <out>.json always and <out>.csv when there are rows.
    void write(const std::filesystem::path& out) const;
};

Report run_constants(const ExperimentConfig& cfg);
Report run_census(const ExperimentConfig& cfg);
Report run_deuring(const ExperimentConfig& cfg);
Report run_theorem1(const ExperimentConfig& cfg);
Report run_theorem2(const ExperimentConfig& cfg);
Report run_bdh(const ExperimentConfig& cfg);
Report run_cr(const ExperimentConfig& cfg);

inline const std::vector<std::string> kSuites = {"deuring", "constants", "series", "characters", "all"};
/// Unknown suite names throw UsageError.
Report run_verify(const ExperimentConfig& cfg);

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numbers behind the desk-scale experiments, exposed for the acceptance tests.

struct Theorem2Numbers {
    std::uint64_t pmax = 0;
    std::int64_t class_route = 0;              // sum over p, r of (p-1) H(r^2-4p), p+1-r prime
    std::optional<std::int64_t> census_route;  // exact census sum when computed
    double integral_main = 0.0;                // frak_C * int_2^pmax u^2 / log^2 u du
    double cubic_main = 0.0;                   // frak_C * pmax^3 / (3 log^2 pmax)
    double ratio_integral = 0.0;
    double ratio_cubic = 0.0;
};

/// census_limit: compute the census route as well when pmax <= census_limit.
Theorem2Numbers theorem2_numbers(std::uint64_t pmax, std::uint64_t L, unsigned workers,
                                 std::uint64_t census_limit = 3000,
                                 const std::filesystem::path& cache_dir = {});

struct Theorem1Numbers {
    std::uint64_t x = 0;
    std::int64_t A = 0, B = 0;
    std::int64_t curves = 0;       // nonsingular curves in the box
    double average = 0.0;          // mean of pi_twin over the box
    double refined_main = 0.0;     // sum over p <= x, r with p+1-r prime of H(r^2-4p)/p
    double crude_main = 0.0;       // frak_C x / log^2 x
    double ratio_refined = 0.0;
    double ratio_crude = 0.0;
};

Theorem1Numbers theorem1_numbers(std::uint64_t x, std::int64_t A, std::int64_t B, std::uint64_t L,
                                 unsigned workers);

}  // namespace koblitz
