#include "koblitz/euler_product.hpp"

#include <boost/math/special_functions/expint.hpp>
#include <cmath>

#include "koblitz/num_core.hpp"

namespace koblitz {

EulerProduct euler_product(std::uint64_t L, std::uint64_t first_prime,
                           const std::function<double(double)>& log_factor, double leading) {
    if (L < 3) throw DomainError("euler_product: truncation limit must be at least 3");
    const PrimeTable table = sieve(L);
    // Kahan summation keeps the 10^5 log terms from drifting
    double sum = 0.0, carry = 0.0;
    for (std::uint32_t l : table.primes()) {
        if (l < first_prime) continue;
        const double y = log_factor(static_cast<double>(l)) - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    const double logL = std::log(static_cast<double>(L));
    const double tail = -leading * boost::math::expint(1, logL);
    EulerProduct out;
    out.truncated = std::exp(sum);
    out.value = std::exp(sum + tail);
    out.tail_bound = out.value * std::expm1(4.0 * std::abs(leading) / (static_cast<double>(L) * logL));
    return out;
}

}  // namespace koblitz
