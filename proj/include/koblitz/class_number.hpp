#pragma once

#include <cstdint>
#include <vector>

namespace koblitz {

/// Kronecker class number H(D) kept exactly as the integer 12*H(D).
struct ExactClassNumber {
    std::int64_t discriminant = 0;
    std::int64_t twelve_H = 0;

    double value() const noexcept { return static_cast<double>(twelve_H) / 12.0; }
    bool operator==(const ExactClassNumber&) const = default;
};

/// True for D < 0 with D = 0 or 1 (mod 4).
bool is_negative_discriminant(std::int64_t D) noexcept;

/// Number of primitive reduced forms (A,B,C) of discriminant D < 0:
/// |B| <= A <= C, gcd(A,B,C) = 1, and B >= 0 when |B| = A or A = C.
std::int64_t form_class_number(std::int64_t D);

/// Units of the quadratic order of discriminant D: 6 for -3, 4 for -4, 2 otherwise.
int unit_count(std::int64_t D);

/// H(D) = sum over f^2 | D with D/f^2 a discriminant of h(D/f^2)/w(D/f^2).
ExactClassNumber kronecker_H(std::int64_t D);

/// Precomputed h(D) for every discriminant -max_abs <= D < 0, filled by a
/// single sweep over reduced forms. Read-only after construction.
class ClassNumberTable {
public:
    explicit ClassNumberTable(std::int64_t max_abs);

    std::int64_t max_abs() const noexcept { return max_abs_; }
    std::int64_t h(std::int64_t D) const;
    ExactClassNumber H(std::int64_t D) const;

private:
    std::int64_t max_abs_;
    std::vector<std::int32_t> h_;  // indexed by |D|
};

struct HBoundReport {
    std::int64_t max_abs = 0;
    double max_ratio = 0.0;
    std::int64_t argmax = 0;  // |D| attaining the maximum
};

/// Largest value of H(-D) / (sqrt(D) log^2 D) over admissible 3 <= D <= max_abs.
HBoundReport H_bound_check(std::int64_t max_abs);

}  // namespace koblitz
