#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <iosfwd>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mhcq::exactalg {

using Rat = boost::multiprecision::cpp_rational;

/// Exact Gaussian rational a + b*i.  Plain rationals are the b == 0 case;
/// conjugation restricts to the identity there.
struct Scalar {
    Rat re{0};
    Rat im{0};

    Scalar() = default;
    Scalar(long v) : re(v) {}
    Scalar(Rat r) : re(std::move(r)) {}
    Scalar(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    static Scalar iunit() { return Scalar(Rat(0), Rat(1)); }
    static Scalar frac(long n, long d) { return Scalar(Rat(n, d)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    Scalar conj() const { return Scalar(re, -im); }

    friend bool operator==(const Scalar&, const Scalar&) = default;

    Scalar operator-() const { return Scalar(-re, -im); }

    Scalar& operator+=(const Scalar& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        Rat r = re * o.re - im * o.im;
        Rat i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }

    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw std::domain_error("Scalar: division by zero");
        Rat n = b.re * b.re + b.im * b.im;
        return Scalar((a.re * b.re + a.im * b.im) / n,
                      (a.im * b.re - a.re * b.im) / n);
    }

    Scalar inv() const { return one() / *this; }
};

namespace detail {
inline void put_rat(std::ostream& os, const Rat& r) {
    os << numerator(r) << '/' << denominator(r);
}
} // namespace detail

/// Canonical form: "n/d" for real values, "n/d+m/ei" or "n/d-m/ei" otherwise.
/// Denominators are positive and fractions reduced (cpp_rational invariant),
/// so equal scalars always print identically.
inline std::string to_string(const Scalar& s) {
    std::ostringstream os;
    detail::put_rat(os, s.re);
    if (s.im != 0) {
        os << (s.im < 0 ? '-' : '+');
        detail::put_rat(os, abs(s.im));
        os << 'i';
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << to_string(s);
}

/// Parses the canonical form plus the obvious shorthands ("3", "-1/2", "2i",
/// "1+i").  Throws std::invalid_argument on garbage.
inline Scalar parse_scalar(const std::string& text) {
    auto bad = [&] { throw std::invalid_argument("bad scalar: '" + text + "'"); };
    std::size_t pos = 0;
    auto read_rat = [&]() -> Rat {
        bool neg = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            neg = text[pos] == '-';
            ++pos;
        }
        std::size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits) {
            // bare "i" has an implicit coefficient of 1
            if (pos < text.size() && text[pos] == 'i') return neg ? Rat(-1) : Rat(1);
            bad();
        }
        Rat num(text.substr(digits, pos - digits));
        if (neg) num = -num;
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            std::size_t dstart = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == dstart) bad();
            Rat den(text.substr(dstart, pos - dstart));
            if (den == 0) bad();
            return num / den;
        }
        return num;
    };

    Scalar out;
    Rat first = read_rat();
    if (pos < text.size() && text[pos] == 'i') {
        ++pos;
        out.im = first;
    } else {
        out.re = first;
        if (pos < text.size()) {
            if (text[pos] != '+' && text[pos] != '-') bad();
            Rat second = read_rat();
            if (pos >= text.size() || text[pos] != 'i') bad();
            ++pos;
            out.im = second;
        }
    }
    if (pos != text.size()) bad();
    return out;
}

} // namespace mhcq::exactalg
