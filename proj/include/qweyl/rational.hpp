// Gaussian rationals a + b*i with exact arbitrary-precision components.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qweyl {

struct GaussianRational {
    mpq_class re;
    mpq_class im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}
    GaussianRational(mpq_class r) : re(std::move(r)), im(0) { re.canonicalize(); }
    GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {
        // mpq_class(p, q) does not reduce the fraction on its own, and GMP
        // comparisons are only defined on canonical values.
        re.canonicalize();
        im.canonicalize();
    }

    static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
    GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianRational inverse() const {
        if (is_zero()) throw std::domain_error("GaussianRational: division by zero");
        mpq_class n = re * re + im * im;
        return {re / n, -im / n};
    }
    GaussianRational operator/(const GaussianRational& o) const { return *this * o.inverse(); }

    bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }
    bool operator<(const GaussianRational& o) const {
        if (re != o.re) return re < o.re;
        return im < o.im;
    }
};

inline std::string to_string(const mpq_class& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

// "p/q" or "p/q+r/s*i" (also "-r/s*i" alone); matches the JSON wire form.
inline std::string to_string(const GaussianRational& g) {
    if (g.im == 0) return to_string(g.re);
    std::string s;
    if (g.re != 0) {
        s = to_string(g.re);
        if (g.im > 0) s += "+";
    }
    s += to_string(g.im) + "*i";
    return s;
}

namespace detail {

inline std::optional<mpq_class> parse_rational(const std::string& s) {
    if (s.empty()) return std::nullopt;
    for (size_t k = 0; k < s.size(); ++k) {
        char c = s[k];
        bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && k == 0);
        if (!ok) return std::nullopt;
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) return std::nullopt;
    q.canonicalize();
    return q;
}

}  // namespace detail

// Accepts "p/q", "p/q+r/s*i", "p/q-r/s*i", "i", "-i", "r*i".
inline std::optional<GaussianRational> parse_gaussian(const std::string& in) {
    std::string s;
    for (char c : in)
        if (c != ' ') s += c;
    if (s.empty()) return std::nullopt;

    auto parse_im_part = [](std::string t) -> std::optional<mpq_class> {
        // t ends with "i"; strip "*i" or "i".
        if (t == "i") return mpq_class(1);
        if (t == "-i") return mpq_class(-1);
        if (t.size() >= 2 && t.substr(t.size() - 2) == "*i")
            return detail::parse_rational(t.substr(0, t.size() - 2));
        return std::nullopt;
    };

    if (!s.empty() && s.back() == 'i') {
        // Find split point: a '+' or '-' not at position 0 separating re and im.
        for (size_t k = s.size(); k-- > 1;) {
            if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/' && s[k - 1] != '+' && s[k - 1] != '-') {
                auto re = detail::parse_rational(s.substr(0, k));
                std::string imp = (s[k] == '+') ? s.substr(k + 1) : s.substr(k);
                auto im = parse_im_part(imp);
                if (re && im) return GaussianRational(*re, *im);
            }
        }
        auto im = parse_im_part(s);
        if (im) return GaussianRational(mpq_class(0), *im);
        return std::nullopt;
    }
    auto re = detail::parse_rational(s);
    if (re) return GaussianRational(*re);
    return std::nullopt;
}

}  // namespace qweyl
