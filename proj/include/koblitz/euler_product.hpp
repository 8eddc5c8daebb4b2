#pragma once

#include <cstdint>
#include <functional>

namespace koblitz {

struct EulerProduct {
    double value = 0.0;      // truncated product times the tail correction
    double truncated = 0.0;  // plain product over first_prime <= l <= L
    double tail_bound = 0.0;
};

/// prod_{first_prime <= l <= L, l prime} factor(l), summed in log space.
///
/// `leading` is c in log factor(l) = -c / l^2 + O(1/l^3). The omitted primes
/// contribute about -c * sum_{l > L} 1/l^2, estimated by -c * E1(log L)
/// (the prime number theorem density), and folded into `value`. `tail_bound`
/// is value * (exp(4|c| / (L log L)) - 1), which dominates the whole omitted
/// tail and so also the residual of the corrected estimate.
EulerProduct euler_product(std::uint64_t L, std::uint64_t first_prime,
                           const std::function<double(double)>& log_factor, double leading);

}  // namespace koblitz
