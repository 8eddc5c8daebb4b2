#pragma once

// Hardy-Littlewood singular series for prime pairs, their refinement to residue
// classes, Dirichlet characters, and the empirical twin-prime sums that feed the
// Barban-Davenport-Halberstam style dispersion statistic.

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "koblitz/num_core.hpp"

namespace koblitz {

inline constexpr std::uint64_t kDefaultSeriesLimit = 1'000'000;

struct SingularSeriesValue {
    double value = 0.0;
    std::uint64_t truncation_limit = 0;
    double error_bound = 0.0;
};

/// 2 * prod_{2 < l <= L} l(l-2)/(l-1)^2 with an asymptotic correction for the
/// omitted primes. Memoized per L.
SingularSeriesValue twin_prime_constant(std::uint64_t L = kDefaultSeriesLimit);

/// S(r): 0 for odd r, else 2C2 * prod_{l | r, l odd} (l-1)/(l-2). r = 0 is a domain error.
SingularSeriesValue singular_series(std::int64_t r, std::uint64_t L = kDefaultSeriesLimit);

/// #{a mod q : (a,q) = (a-r,q) = 1}, by the multiplicative closed form.
std::uint64_t rho(std::int64_t r, std::uint64_t q);
/// Same count by enumerating residues.
std::uint64_t rho_by_enumeration(std::int64_t r, std::uint64_t q);

/// S(r,q,a) = S(r)/rho(r,q) when 2 | r and (a,q) = (a-r,q) = 1, else 0.
SingularSeriesValue singular_series_mod(std::int64_t r, std::uint64_t q, std::int64_t a,
                                        std::uint64_t L = kDefaultSeriesLimit);
/// The same value through S(rq)/phi(q).
SingularSeriesValue singular_series_mod_via_product(std::int64_t r, std::uint64_t q, std::int64_t a,
                                                    std::uint64_t L = kDefaultSeriesLimit);

// ---------------------------------------------------------------------------
// Dirichlet characters

namespace detail {
/// (Z/qZ)^* as a product of cyclic factors, with discrete-log coordinates of
/// every residue (-1 for non-units). Shared by all characters of one table.
struct UnitGroup {
    std::uint64_t q = 1;
    std::uint64_t exponent = 1;             // lcm of the factor orders
    std::vector<std::uint64_t> orders;      // one per cyclic factor
    std::vector<std::int64_t> coords;       // q rows of orders.size() entries
};
}  // namespace detail

/// One character mod q. Values are stored as exponents k with chi(a) =
/// exp(2 pi i k / order_lcm); non-invertible residues carry kZero.
class DirichletCharacter {
public:
    static constexpr std::int32_t kZero = -1;

    std::uint64_t modulus() const noexcept { return modulus_; }
    std::uint64_t conductor() const noexcept { return conductor_; }
    bool is_primitive() const noexcept { return conductor_ == modulus_; }
    bool is_principal() const noexcept { return principal_; }
    std::uint64_t order() const noexcept { return order_; }

    std::complex<double> operator()(std::int64_t a) const;
    /// Exponent of chi(a) over exponent_base(), or kZero.
    std::int32_t exponent(std::int64_t a) const;
    std::uint64_t exponent_base() const noexcept { return base_; }

private:
    friend class CharacterTable;
    std::uint64_t modulus_ = 1;
    std::uint64_t conductor_ = 1;
    std::uint64_t base_ = 1;
    std::uint64_t order_ = 1;
    bool principal_ = true;
    std::shared_ptr<const detail::UnitGroup> group_;
    std::vector<std::uint64_t> index_;  // one exponent per cyclic factor
};

class CharacterTable {
public:
    static constexpr std::uint64_t kMaxModulus = 10'000;

    /// All phi(q) characters mod q, principal first, ordered by factor exponents.
    /// Throws CapacityError for q > 10^4.
    explicit CharacterTable(std::uint64_t q);

    std::uint64_t modulus() const noexcept { return q_; }
    const std::vector<DirichletCharacter>& characters() const noexcept { return chars_; }
    std::size_t size() const noexcept { return chars_.size(); }
    const DirichletCharacter& operator[](std::size_t i) const { return chars_[i]; }
    std::size_t primitive_count() const;

private:
    std::uint64_t q_;
    std::vector<DirichletCharacter> chars_;
};

inline CharacterTable characters(std::uint64_t q) { return CharacterTable(q); }

/// Smallest d | q such that chi(a) = 1 for all invertible a = 1 mod d, by direct search.
std::uint64_t conductor_by_search(const DirichletCharacter& chi);

/// rho(r, chi) = sum_{b mod q, (b-r,q)=1} chi(b).
std::complex<double> rho_chi(std::int64_t r, const DirichletCharacter& chi);

// ---------------------------------------------------------------------------
// Local exponential sums

/// F(p; r; q, a) from the four-case table.
std::int64_t F_local(std::uint64_t p, std::int64_t r, std::uint64_t q, std::int64_t a);
/// Product of F_local over p | s; s must be squarefree.
std::int64_t F_mult(std::uint64_t s, std::int64_t r, std::uint64_t q, std::int64_t a);
/// sum_{(b,s)=1} sum_{(c,s)=1, (q,s) | c-a} e((bc - rb)/s), rounded to the nearest integer.
std::int64_t F_exponential_sum(std::uint64_t s, std::int64_t r, std::uint64_t q, std::int64_t a);

// ---------------------------------------------------------------------------
// Twin-prime sums over windows

struct TwinWindow {
    std::uint64_t X = 0;
    std::uint64_t Y = 1;
};

/// Primality oracle covering every p and p' = p - r a window computation needs.
class TwinSieve {
public:
    TwinSieve(std::uint64_t limit, std::uint64_t budget = kDefaultSieveBudget);
    explicit TwinSieve(PrimeTable table) : table_(std::move(table)) {}

    const PrimeTable& table() const noexcept { return table_; }
    std::uint64_t limit() const noexcept { return table_.limit(); }

private:
    PrimeTable table_;
};

/// psi = sum over X < p <= X+Y, p = a mod q, p' = p - r prime of log p log p'.
double psi(const TwinWindow& w, std::int64_t r, std::uint64_t q, std::int64_t a, const TwinSieve& sieve);
/// psi minus S(r,q,a) * Y.
double error_E(const TwinWindow& w, std::int64_t r, std::uint64_t q, std::int64_t a, const TwinSieve& sieve,
               std::uint64_t L = kDefaultSeriesLimit);

struct BdhRow {
    std::int64_t r = 0;
    std::uint64_t q = 0;
    std::uint64_t a = 0;
    double psi = 0.0;
    double expected = 0.0;
    double error = 0.0;
};

struct BdhResult {
    std::uint64_t x = 0;
    std::int64_t R = 0;
    std::uint64_t Q = 0;
    TwinWindow window;
    double S = 0.0;
    double normalized = 0.0;           // S / (R x^2)
    std::vector<double> per_q;         // per_q[q-1] = sum over r, a of E^2
    std::vector<BdhRow> rows;          // ascending (r, q, a); r skips 0
};

/// S = sum_{0<|r|<=R} sum_{q<=Q} sum_{a mod q} E(window; r, q, a)^2, computed
/// in one pass over the primes of the window. workers > 1 splits the r range.
BdhResult bdh_statistic(std::uint64_t x, std::int64_t R, std::uint64_t Q, const TwinWindow& w,
                        unsigned workers = 1, bool keep_rows = true,
                        std::uint64_t L = kDefaultSeriesLimit);

/// Single class (q, a): sum_{0<r<=R} E(window; r, q, a)^2.
double single_class_statistic(const TwinWindow& w, std::int64_t R, std::uint64_t q, std::int64_t a,
                              const TwinSieve& sieve, std::uint64_t L = kDefaultSeriesLimit);

}  // namespace koblitz
