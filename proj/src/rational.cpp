#include "momdet/rational.hpp"

#include <cmath>
#include <numeric>

#include "momdet/errors.hpp"

namespace momdet {

Rational Rational::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw ParameterError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

std::string Rational::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational::make(a.num * b.num, a.den * b.den);
}

Rational operator/(const Rational& a, const Rational& b) {
    return Rational::make(a.num * b.den, a.den * b.num);
}

__extension__ typedef __int128 wide_int;

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const wide_int lhs = static_cast<wide_int>(a.num) * b.den;
    const wide_int rhs = static_cast<wide_int>(b.num) * a.den;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::optional<Rational> rational_from_double(double x, std::int64_t max_den, double rel_tol) {
    if (!std::isfinite(x) || std::abs(x) > 1e12) return std::nullopt;
    // continued-fraction convergents h/k
    std::int64_t h_prev = 1, h = static_cast<std::int64_t>(std::floor(x));
    std::int64_t k_prev = 0, k = 1;
    double frac = x - std::floor(x);
    const double tol = rel_tol * std::max(1.0, std::abs(x));
    for (int iter = 0; iter < 64; ++iter) {
        if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= tol) {
            return Rational::make(h, k);
        }
        if (frac < 1e-15) break;
        const double inv = 1.0 / frac;
        const auto a = static_cast<std::int64_t>(std::floor(inv));
        frac = inv - std::floor(inv);
        const std::int64_t h_next = a * h + h_prev;
        const std::int64_t k_next = a * k + k_prev;
        if (k_next > max_den) break;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    return std::nullopt;
}

double parse_real(const std::string& text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const double v = std::stod(text, &used);
            if (used != text.size()) throw ParameterError("trailing characters");
            return v;
        }
        const std::string lhs = text.substr(0, slash);
        const std::string rhs = text.substr(slash + 1);
        const double num = std::stod(lhs, &used);
        if (used != lhs.size()) throw ParameterError("trailing characters");
        const double den = std::stod(rhs, &used);
        if (used != rhs.size() || den == 0.0) throw ParameterError("bad denominator");
        return num / den;
    } catch (const std::exception&) {
        throw ParameterError("cannot parse real number '" + text + "'");
    }
}

}  // namespace momdet
