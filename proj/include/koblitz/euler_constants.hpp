#pragma once

// Local factors and Euler-product constants for primes p with p + 1 - a_p
// prime: the GL2 matrix count behind each local factor, the average constant,
// the per-trace constants C_r with the character sums that build them, and
// their average over r.

#include <boost/rational.hpp>
#include <cstdint>
#include <vector>

#include "koblitz/twin_series.hpp"

namespace koblitz {

using Rational = boost::rational<std::int64_t>;

inline constexpr std::uint64_t kMaxGl2Prime = 50;

struct LocalFactorLedger {
    std::uint64_t ell = 0;
    std::uint64_t omega_prime_count = 0;  // #{g in GL2(Z/l): det g + 1 - tr g = 0}
    std::uint64_t gl2_order = 0;
    Rational factor{1};                   // 1 - (l^2-l-1)/((l-1)^3 (l+1))
    Rational enumerated{1};               // (1 - omega/gl2) / (1 - 1/l) from the count
    bool identity_holds() const { return factor == enumerated; }
};

/// Exhaustive count over the l^4 matrices mod l. l must be an odd prime;
/// l > 50 is a capacity error.
LocalFactorLedger gl2_count(std::uint64_t ell);

/// 1 - (l^2-l-1)/((l-1)^3 (l+1)) as an exact rational (l = 2 gives 2/3).
Rational local_factor(std::uint64_t ell);

struct ConstantValue {
    double value = 0.0;
    std::uint64_t truncation_limit = 0;
    double tail_bound = 0.0;
};

struct AverageConstantForms {
    ConstantValue polynomial;    // (2/3) prod_{l odd} (l^4-2l^3-l^2+3l)/((l-1)^3(l+1))
    ConstantValue local_factor;  // prod_l (1 - (l^2-l-1)/((l-1)^3(l+1)))
};

/// Both displayed product forms of the average constant; L >= 1000.
AverageConstantForms average_constant_forms(std::uint64_t L = kDefaultSeriesLimit);
/// The average constant (local-factor form), memoized per L.
ConstantValue average_constant(std::uint64_t L = kDefaultSeriesLimit);

// ---------------------------------------------------------------------------
// Character sums c_f^r(n)

/// Sum over invertible a mod 4n with (r^2 - a f^2, 4nf^2) = 4 and
/// (r^2 - a f^2 - 4(r-1), 4nf^2) = 4 of the Kronecker symbol (a/n).
std::int64_t c_f_r_bruteforce(std::uint64_t n, std::uint64_t f, std::int64_t r);
/// The same value through multiplicativity and the prime-power formulas.
std::int64_t c_f_r(std::uint64_t n, std::uint64_t f, std::int64_t r);

// ---------------------------------------------------------------------------
// Local sums

/// Coefficients of the local series (odd l unless noted).
double a_coeff(std::uint64_t ell, unsigned alpha);
double b_coeff(std::uint64_t ell, unsigned alpha, std::int64_t r);  // l = 2 allowed
double c_coeff(std::uint64_t ell, unsigned alpha, std::int64_t r);  // l must not divide 2r(r-2)

enum class LocalClass { divides_r_minus_1, divides_r_r_minus_2, coprime };
LocalClass local_class(std::uint64_t ell, std::int64_t r);

struct LocalSums {
    std::uint64_t ell = 0;
    std::int64_t r = 0;
    LocalClass cls = LocalClass::coprime;
    Rational A, B1, B2, B3, C1, C2;
    Rational B;          // the B that applies to this (l, r)
    Rational C{1};       // C1 or C2 when l does not divide r(r-2); 1 otherwise
    double A_series = 0.0;
    double B_series = 0.0;
    double C_series = 0.0;
};

inline constexpr unsigned kLocalSeriesTerms = 60;

/// Closed forms for odd prime l alongside the series truncated at alpha = 60.
LocalSums local_sums(std::uint64_t ell, std::int64_t r);
/// B(2) = sum_alpha b_r(2^alpha) exactly (= 2/3), and its truncated series.
Rational B_two();
double B_two_series();

// ---------------------------------------------------------------------------
// C_r and its average

/// prod_{l odd} l^2 (l^2-2l-2) / ((l-1)^3 (l+1)), memoized per L.
ConstantValue C_r_base_product(std::uint64_t L = kDefaultSeriesLimit);
/// prod_{l | r-1, l odd} (1 + (l+1)/(l^2-2l-2)) * prod_{l | r(r-2), l odd} (1 + 1/(l^2-2l-2)).
double C_r_correction(std::int64_t r);
/// C_r = (4/3) * base * correction. Even r or r = 1 is a domain error.
ConstantValue C_r(std::int64_t r, std::uint64_t L = kDefaultSeriesLimit);

inline constexpr std::uint64_t kMaxOracleU = 10'000;
inline constexpr std::uint64_t kMaxOracleV = 50;

/// Truncated triple sum sum_{f <= V} sum_{n <= U} (1/nf) sum_{a mod 4n} (a/n)
/// S(r-1, nf^2, (r^2 - a f^2)/4). Zero for even r; capacity error past U, V limits.
double C_r_oracle(std::int64_t r, std::uint64_t U, std::uint64_t V, std::uint64_t L = kDefaultSeriesLimit);

struct GallagherSum {
    std::int64_t R = 0;
    double sum = 0.0;     // sum over odd |r| <= R, r != 1, of C_r
    double frak_C = 0.0;
    double ratio = 0.0;   // sum / (frak_C * R)
};

/// Closed-form C_r summed in ascending r; workers split the range, the
/// reduction order is fixed. R >= 100.
GallagherSum gallagher_sum(std::int64_t R, std::uint64_t L = kDefaultSeriesLimit, unsigned workers = 1);

/// The odd-l Euler factor of the averaged C_r equals that of the average
/// constant: l^2(l^2-2l-2)/((l-1)^3(l+1)) * (l^3-2l^2-l+3)/(l(l^2-2l-2)) =
/// (l^4-2l^3-l^2+3l)/((l-1)^3(l+1)), exactly. Returns primes l <= max_ell where it fails.
std::vector<std::uint64_t> euler_identity_failures(std::uint64_t max_ell);

}  // namespace koblitz
