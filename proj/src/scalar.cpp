#include "forest_shift/scalar.hpp"

#include <cctype>

#include "forest_shift/errors.hpp"

namespace fshift {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_digits(std::string_view s, std::string_view whole)
{
    if (s.empty())
        throw ParseError("malformed number '" + std::string(whole) + "'");
    cpp_int out = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("malformed number '" + std::string(whole) + "'");
        out = out * 10 + (c - '0');
    }
    return out;
}

cpp_int pow10(unsigned n)
{
    cpp_int out = 1;
    for (unsigned i = 0; i < n; ++i)
        out *= 10;
    return out;
}

Rational parse_decimal(std::string_view s, std::string_view whole)
{
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        auto exp_text = s.substr(e + 1);
        bool neg = false;
        if (!exp_text.empty() && (exp_text[0] == '+' || exp_text[0] == '-')) {
            neg = exp_text[0] == '-';
            exp_text.remove_prefix(1);
        }
        exponent = static_cast<long>(parse_digits(exp_text, whole));
        if (neg)
            exponent = -exponent;
        s = s.substr(0, e);
    }
    std::string digits;
    long scale = 0;
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
        scale = static_cast<long>(s.size() - dot - 1);
        if (digits.empty())
            throw ParseError("malformed number '" + std::string(whole) + "'");
    } else {
        digits = std::string(s);
    }
    Rational q(parse_digits(digits, whole));
    const long shift = exponent - scale;
    if (shift > 0)
        q *= Rational(pow10(static_cast<unsigned>(shift)));
    else if (shift < 0)
        q /= Rational(pow10(static_cast<unsigned>(-shift)));
    return q;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.remove_prefix(1);
    }
    Rational q;
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const Rational den = parse_decimal(s.substr(slash + 1), text);
        if (den == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        q = parse_decimal(s.substr(0, slash), text) / den;
    } else {
        q = parse_decimal(s, text);
    }
    return negative ? Rational(-q) : q;
}

std::string rational_to_string(const Rational& q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rational& q)
{
    return q.convert_to<double>();
}

Weight Weight::exact(Rational re, Rational im)
{
    Weight w;
    w.value_ = {to_double(re), to_double(im)};
    w.re_ = std::move(re);
    w.im_ = std::move(im);
    w.exact_ = true;
    return w;
}

Weight Weight::approx(std::complex<double> z)
{
    Weight w;
    w.exact_ = false;
    w.value_ = z;
    return w;
}

Weight Weight::conj() const
{
    return exact_ ? exact(re_, -im_) : approx(std::conj(value_));
}

Magnitude Weight::norm_sq() const
{
    if (exact_)
        return Magnitude::of(Rational(re_ * re_ + im_ * im_));
    return Magnitude::of(std::norm(value_));
}

Weight operator*(const Weight& a, const Weight& b)
{
    if (a.exact_ && b.exact_)
        return Weight::exact(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    return Weight::approx(a.value_ * b.value_);
}

bool operator==(const Weight& a, const Weight& b)
{
    if (a.exact_ && b.exact_)
        return a.re_ == b.re_ && a.im_ == b.im_;
    return a.value_ == b.value_;
}

std::string Weight::to_string() const
{
    if (!exact_) {
        std::string s = std::to_string(value_.real());
        if (value_.imag() != 0.0)
            s += (value_.imag() < 0 ? "" : "+") + std::to_string(value_.imag()) + "i";
        return s;
    }
    std::string s = rational_to_string(re_);
    if (im_ != 0)
        s += (im_ < 0 ? "" : "+") + rational_to_string(im_) + "i";
    return s;
}

} // namespace fshift
