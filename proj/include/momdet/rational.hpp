#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace momdet {

// Small exact fraction used to decide boundary comparisons such as n <= 2*beta
// without floating-point misclassification.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;  // always > 0, gcd(num, den) == 1

    static Rational make(std::int64_t num, std::int64_t den);

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
};

// Best rational approximation p/q with q <= max_den by continued fractions; returns
// a value only when |x - p/q| <= rel_tol * max(1, |x|).
std::optional<Rational> rational_from_double(double x, std::int64_t max_den = 100000,
                                             double rel_tol = 1e-12);

// Parses "3", "0.25", "1/3". Throws ParameterError on malformed text.
double parse_real(const std::string& text);

}  // namespace momdet
