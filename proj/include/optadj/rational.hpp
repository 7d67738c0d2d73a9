#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "optadj/error.hpp"

namespace optadj {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in cost arithmetic");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in cost arithmetic");
    return r;
}

}  // namespace detail

/// Exact non-negative-denominator rational used for vertex costs.
/// Always kept in lowest terms with den > 0.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
        if (den_ == 0) throw Error("rational with zero denominator");
        normalize();
    }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    bool is_integer() const noexcept { return den_ == 1; }
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        std::int64_t g = std::gcd(a.den_, b.den_);
        std::int64_t l = detail::checked_mul(a.den_ / g, b.den_);
        std::int64_t n = detail::checked_add(detail::checked_mul(a.num_, l / a.den_),
                                             detail::checked_mul(b.num_, l / b.den_));
        return Rational(n, l);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 l = static_cast<__int128>(a.num_) * b.den_;
        __int128 r = static_cast<__int128>(b.num_) * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// Decimal text when the value terminates within 6 fractional digits,
    /// otherwise "num/den".
    std::string to_string() const {
        std::int64_t scale = 1;
        for (int digits = 0; digits <= 6; ++digits, scale *= 10) {
            if (scale % den_ != 0) continue;
            std::int64_t scaled = num_ * (scale / den_);
            std::string sign = scaled < 0 ? "-" : "";
            std::int64_t mag = scaled < 0 ? -scaled : scaled;
            std::string out = sign + std::to_string(mag / scale);
            if (digits > 0) {
                std::string frac = std::to_string(mag % scale);
                frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
                while (!frac.empty() && frac.back() == '0') frac.pop_back();
                if (!frac.empty()) out += "." + frac;
            }
            return out;
        }
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Parses a plain decimal such as "3", "2.5" or "0.125" (at most 6 fractional
/// digits, no sign, no exponent). Locale independent.
inline Rational parse_decimal(std::string_view text) {
    auto bad = [&] { return Error("invalid decimal '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    auto dot = text.find('.');
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (dot != std::string_view::npos && frac.empty()) throw bad();
    if (whole.empty() && frac.empty()) throw bad();
    if (frac.size() > 6) throw Error("cost '" + std::string(text) + "' has more than 6 fractional digits");
    auto digits_only = [](std::string_view s) {
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    if (!digits_only(whole) || !digits_only(frac)) throw bad();

    std::int64_t w = 0;
    if (!whole.empty()) {
        auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), w);
        if (ec != std::errc{} || p != whole.data() + whole.size()) throw bad();
    }
    std::int64_t f = 0;
    std::int64_t scale = 1;
    for (char c : frac) {
        f = f * 10 + (c - '0');
        scale *= 10;
    }
    return Rational(detail::checked_add(detail::checked_mul(w, scale), f), scale);
}

}  // namespace optadj
