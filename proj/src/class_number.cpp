#include "koblitz/class_number.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "koblitz/num_core.hpp"

namespace koblitz {

namespace {

void require_discriminant(std::int64_t D, const char* who) {
    if (!is_negative_discriminant(D))
        throw DomainError(std::string(who) + ": " + std::to_string(D) +
                          " is not a negative discriminant");
}

// Sum of 12*h(D/f^2)/w(D/f^2) over admissible square divisors, with h supplied.
template <class ClassNumberFn>
std::int64_t twelve_H_from(std::int64_t D, ClassNumberFn&& h) {
    std::int64_t total = 0;
    const std::int64_t n = -D;
    for (std::int64_t f = 1; f * f <= n; ++f) {
        if (n % (f * f)) continue;
        const std::int64_t d = D / (f * f);
        if (!is_negative_discriminant(d)) continue;
        total += 12 * h(d) / unit_count(d);
    }
    return total;
}

}  // namespace

bool is_negative_discriminant(std::int64_t D) noexcept {
    if (D >= 0) return false;
    const std::int64_t r = mod(D, 4);
    return r == 0 || r == 1;
}

std::int64_t form_class_number(std::int64_t D) {
    require_discriminant(D, "form_class_number");
    const std::int64_t n = -D;
    std::int64_t count = 0;
    for (std::int64_t a = 1; 3 * a * a <= n; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if (((b - D) & 1) != 0) continue;
            const std::int64_t num = b * b - D;
            if (num % (4 * a)) continue;
            const std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            ++count;
        }
    }
    return count;
}

int unit_count(std::int64_t D) {
    require_discriminant(D, "unit_count");
    if (D == -3) return 6;
    if (D == -4) return 4;
    return 2;
}

ExactClassNumber kronecker_H(std::int64_t D) {
    require_discriminant(D, "kronecker_H");
    return {D, twelve_H_from(D, form_class_number)};
}

ClassNumberTable::ClassNumberTable(std::int64_t max_abs) : max_abs_(max_abs) {
    if (max_abs < 3) throw DomainError("ClassNumberTable: max_abs must be at least 3");
    if (max_abs > 2'000'000'000) throw CapacityError("ClassNumberTable: max_abs too large");
    h_.assign(static_cast<std::size_t>(max_abs) + 1, 0);
    // Reduced forms with 4ac - b^2 <= max_abs; b = 0 and the boundary cases
    // |b| = a, a = c are only counted once with b >= 0.
    for (std::int64_t a = 1; 3 * a * a <= max_abs; ++a) {
        for (std::int64_t b = 0; b <= a; ++b) {
            for (std::int64_t c = a;; ++c) {
                const std::int64_t n = 4 * a * c - b * b;
                if (n > max_abs) break;
                if (std::gcd(std::gcd(a, b), c) != 1) continue;
                const bool boundary = (b == 0 || b == a || a == c);
                h_[static_cast<std::size_t>(n)] += boundary ? 1 : 2;
            }
        }
    }
}

std::int64_t ClassNumberTable::h(std::int64_t D) const {
    require_discriminant(D, "ClassNumberTable::h");
    if (-D > max_abs_) throw CapacityError("ClassNumberTable: discriminant outside table");
    return h_[static_cast<std::size_t>(-D)];
}

ExactClassNumber ClassNumberTable::H(std::int64_t D) const {
    require_discriminant(D, "ClassNumberTable::H");
    if (-D > max_abs_) throw CapacityError("ClassNumberTable: discriminant outside table");
    return {D, twelve_H_from(D, [this](std::int64_t d) { return h_[static_cast<std::size_t>(-d)]; })};
}

HBoundReport H_bound_check(std::int64_t max_abs) {
    if (max_abs < 16) throw DomainError("H_bound_check: max_abs must be at least 16");
    const ClassNumberTable table(max_abs);
    HBoundReport report{max_abs, 0.0, 0};
    for (std::int64_t n = 3; n <= max_abs; ++n) {
        if (!is_negative_discriminant(-n)) continue;
        const double L = std::log(static_cast<double>(n));
        const double ratio = table.H(-n).value() / (std::sqrt(static_cast<double>(n)) * L * L);
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.argmax = n;
        }
    }
    return report;
}

}  // namespace koblitz
