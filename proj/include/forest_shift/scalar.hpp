#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fshift {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "7", "-3/4", "0.125", "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& q);
double to_double(const Rational& q);

/// A nonnegative quantity such as |lambda|^2, exact when every input was.
struct Magnitude {
    double value = 0.0;
    std::optional<Rational> exact = Rational(0);

    static Magnitude of(const Rational& q) { return {to_double(q), q}; }
    static Magnitude of(double x) { return {x, std::nullopt}; }

    bool is_exact() const { return exact.has_value(); }
    bool is_zero() const { return exact ? *exact == 0 : value == 0.0; }

    Magnitude& operator+=(const Magnitude& o)
    {
        value += o.value;
        if (exact && o.exact)
            *exact += *o.exact;
        else
            exact.reset();
        return *this;
    }
    friend Magnitude operator+(Magnitude a, const Magnitude& b) { return a += b; }
};

/// A complex weight, held as an exact pair of rationals when it came from
/// exact input and as a double-precision complex otherwise.
class Weight {
public:
    Weight() = default;

    static Weight exact(Rational re, Rational im = 0);
    static Weight approx(std::complex<double> z);

    bool is_exact() const { return exact_; }
    std::complex<double> value() const { return value_; }
    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }
    bool is_zero() const { return exact_ ? (re_ == 0 && im_ == 0) : value_ == std::complex<double>{}; }

    Weight conj() const;
    Magnitude norm_sq() const;

    friend Weight operator*(const Weight& a, const Weight& b);
    friend bool operator==(const Weight& a, const Weight& b);

    std::string to_string() const;

private:
    Rational re_ = 0;
    Rational im_ = 0;
    bool exact_ = true;
    std::complex<double> value_{};
};

} // namespace fshift
