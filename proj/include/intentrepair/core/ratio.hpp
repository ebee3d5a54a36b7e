#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

namespace intentrepair {

/// Exact non-negative fraction. Adversarial scores and thresholds are compared
/// with cross-multiplication so 1/3 never becomes 0.333.
struct Ratio {
    std::int64_t numerator = 0;
    std::int64_t denominator = 1;

    double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }

    Ratio reduced() const {
        const auto g = std::gcd(numerator, denominator);
        return g == 0 ? *this : Ratio{numerator / g, denominator / g};
    }

    friend bool operator==(const Ratio& a, const Ratio& b) {
        return a.numerator * b.denominator == b.numerator * a.denominator;
    }
    friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
        return a.numerator * b.denominator <=> b.numerator * a.denominator;
    }

    std::string str() const { return std::to_string(numerator) + "/" + std::to_string(denominator); }
};

}  // namespace intentrepair
