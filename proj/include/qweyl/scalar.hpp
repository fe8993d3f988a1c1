// Exact arithmetic in multiquadratic extensions Q(i, sqrt(d1), ..., sqrt(dk)).
//
// A Scalar is a finite sum  sum_S c_S * prod_{d in S} sqrt(d)  where each S is a
// set of pairwise distinct square-free integers > 1 and c_S is a Gaussian
// rational. Keys are stored globally (not relative to a FieldSpec), so scalars
// from smaller fields embed into larger ones unchanged.
#pragma once

#include "rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace qweyl {

using Radicals = std::vector<long>;  // sorted, distinct, square-free, > 1

// Square-free part of a positive integer (trial division; radicands are small).
inline long square_free_part(long d, long* square_root_factor = nullptr) {
    if (d < 1) throw std::domain_error("square_free_part: d must be >= 1");
    long sq = 1, rest = 1;
    for (long p = 2; p * p <= d; ++p) {
        long e = 0;
        while (d % p == 0) {
            d /= p;
            ++e;
        }
        for (long k = 0; k < e / 2; ++k) sq *= p;
        if (e % 2) rest *= p;
    }
    rest *= d;
    if (square_root_factor) *square_root_factor = sq;
    return rest;
}

// Registry of adjoined square roots. i is always present.
struct FieldSpec {
    Radicals radicands;

    bool contains(long d) const {
        long sf = square_free_part(d);
        if (sf == 1) return true;
        return std::binary_search(radicands.begin(), radicands.end(), sf);
    }
};

// Adjoin sqrt(d); d is reduced to its square-free part first.
inline FieldSpec field_extend(const FieldSpec& spec, long d) {
    long sf = square_free_part(d);
    FieldSpec out = spec;
    if (sf == 1) return out;
    auto it = std::lower_bound(out.radicands.begin(), out.radicands.end(), sf);
    if (it == out.radicands.end() || *it != sf) out.radicands.insert(it, sf);
    return out;
}

class Scalar {
  public:
    // terms: radical monomial -> Gaussian rational coefficient; no zero coeffs.
    std::map<Radicals, GaussianRational> terms;

    Scalar() = default;
    Scalar(long v) {
        if (v != 0) terms[{}] = GaussianRational(v);
    }
    Scalar(GaussianRational g) {
        if (!g.is_zero()) terms[{}] = std::move(g);
    }
    Scalar(mpq_class q) : Scalar(GaussianRational(std::move(q))) {}

    static Scalar i() { return Scalar(GaussianRational::i()); }

    // sqrt(d) for square-free d; general d goes through sqrt_of_rational.
    static Scalar sqrt_radical(long d) {
        long sq = 1;
        long sf = square_free_part(d, &sq);
        Scalar s;
        if (sf == 1)
            s.terms[{}] = GaussianRational(sq);
        else
            s.terms[{sf}] = GaussianRational(sq);
        return s;
    }

    bool is_zero() const { return terms.empty(); }
    bool is_one() const { return terms.size() == 1 && terms.begin()->first.empty() && terms.begin()->second == GaussianRational(1); }

    // The rational (radical-free) coefficient, if the scalar is purely Gaussian.
    std::optional<GaussianRational> as_gaussian() const {
        if (terms.empty()) return GaussianRational();
        if (terms.size() == 1 && terms.begin()->first.empty()) return terms.begin()->second;
        return std::nullopt;
    }

    Scalar operator-() const {
        Scalar r;
        for (auto& [k, v] : terms) r.terms[k] = -v;
        return r;
    }

    Scalar& operator+=(const Scalar& o) {
        for (auto& [k, v] : o.terms) {
            auto it = terms.find(k);
            if (it == terms.end()) {
                terms.emplace(k, v);
            } else {
                it->second = it->second + v;
                if (it->second.is_zero()) terms.erase(it);
            }
        }
        return *this;
    }
    Scalar operator+(const Scalar& o) const {
        Scalar r = *this;
        r += o;
        return r;
    }
    Scalar operator-(const Scalar& o) const { return *this + (-o); }
    Scalar& operator-=(const Scalar& o) { return *this += -o; }

    Scalar operator*(const Scalar& o) const {
        Scalar r;
        for (auto& [ka, va] : terms)
            for (auto& [kb, vb] : o.terms) {
                // Monomial product: shared radicands square to integers, the
                // symmetric difference survives as the new monomial.
                Radicals sym;
                long intpart = 1;
                auto ia = ka.begin();
                auto ib = kb.begin();
                while (ia != ka.end() && ib != kb.end()) {
                    if (*ia == *ib) {
                        intpart *= *ia;
                        ++ia;
                        ++ib;
                    } else if (*ia < *ib) {
                        sym.push_back(*ia++);
                    } else {
                        sym.push_back(*ib++);
                    }
                }
                sym.insert(sym.end(), ia, ka.end());
                sym.insert(sym.end(), ib, kb.end());
                GaussianRational c = va * vb * GaussianRational(intpart);
                auto it = r.terms.find(sym);
                if (it == r.terms.end()) {
                    if (!c.is_zero()) r.terms.emplace(std::move(sym), c);
                } else {
                    it->second = it->second + c;
                    if (it->second.is_zero()) r.terms.erase(it);
                }
            }
        return r;
    }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    // Exact inverse by iterated rationalization over each radicand, then over i.
    Scalar inverse() const {
        if (is_zero()) throw std::domain_error("Scalar: division by zero");
        if (auto g = as_gaussian()) return Scalar(g->inverse());
        long d = first_radicand();
        Scalar a, b;  // *this = a + b*sqrt(d), with a, b free of d
        for (auto& [k, v] : terms) {
            if (std::binary_search(k.begin(), k.end(), d)) {
                Radicals k2;
                for (long x : k)
                    if (x != d) k2.push_back(x);
                b.terms[k2] = v;
            } else {
                a.terms[k] = v;
            }
        }
        Scalar conj = a - b * sqrt_radical(d);
        Scalar norm = a * a - b * b * Scalar(d);
        if (norm.is_zero()) throw std::logic_error("Scalar: degenerate radicand tower");
        return conj * norm.inverse();
    }
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    bool operator==(const Scalar& o) const { return terms == o.terms; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const { return terms < o.terms; }

  private:
    long first_radicand() const {
        for (auto& [k, v] : terms)
            if (!k.empty()) return k.front();
        throw std::logic_error("first_radicand on rational scalar");
    }
};

inline Scalar operator*(long a, const Scalar& s) { return Scalar(a) * s; }

// sqrt of an exact rational: sqrt(p/q) = sqrt(p*q)/q, negative goes through i.
inline Scalar sqrt_of_rational(const mpq_class& r, FieldSpec& spec) {
    if (r == 0) return Scalar();
    if (r < 0) return Scalar::i() * sqrt_of_rational(-r, spec);
    mpz_class pq_z = r.get_num() * r.get_den();
    if (!pq_z.fits_slong_p()) throw std::overflow_error("sqrt_of_rational: radicand too large");
    long pq = pq_z.get_si();
    long sq = 1;
    long sf = square_free_part(pq, &sq);
    spec = field_extend(spec, sf);
    Scalar root = Scalar(mpq_class(sq) / r.get_den());
    if (sf != 1) root *= Scalar::sqrt_radical(sf);
    return root;
}

// Square roots of the scalars this artifact actually produces: exact rationals
// and rational multiples of i. Anything else is reported as unrepresentable.
inline std::optional<Scalar> scalar_sqrt(const Scalar& s, FieldSpec& spec) {
    if (s.is_zero()) return Scalar();
    auto g = s.as_gaussian();
    if (!g) return std::nullopt;
    if (g->im == 0) return sqrt_of_rational(g->re, spec);
    if (g->re == 0) {
        // sqrt(r*i) = sqrt(r) * (1+i)/sqrt(2)
        spec = field_extend(spec, 2);
        Scalar half_sqrt2 = Scalar(mpq_class(1, 2)) * Scalar::sqrt_radical(2);
        return sqrt_of_rational(g->im, spec) * (Scalar(1) + Scalar::i()) * half_sqrt2;
    }
    return std::nullopt;
}

// "c + c*sqrt(d1)*sqrt(d2) + ..." with Gaussian coefficients.
inline std::string to_string(const Scalar& s) {
    if (s.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [k, v] : s.terms) {
        if (!first) out += " + ";
        first = false;
        std::string c = to_string(v);
        if (!v.is_real() || k.empty())
            out += (k.empty() ? c : "(" + c + ")");
        else
            out += c;
        for (long d : k) out += "*sqrt(" + std::to_string(d) + ")";
    }
    return out;
}

}  // namespace qweyl
