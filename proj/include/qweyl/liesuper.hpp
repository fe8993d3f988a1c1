// Lie superalgebras by graded structure constants; the queer algebra q(n),
// its root datum and triangular decomposition, presentation checking, and
// current superalgebras q(n) (x) A.
#pragma once

#include "coeff.hpp"
#include "superspace.hpp"

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace qweyl {

using WeightVector = std::vector<long long>;

inline WeightVector operator+(const WeightVector& a, const WeightVector& b) {
    WeightVector r(a.size());
    for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
    return r;
}
inline WeightVector operator-(const WeightVector& a, const WeightVector& b) {
    WeightVector r(a.size());
    for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
    return r;
}
inline bool is_zero(const WeightVector& w) {
    for (auto v : w)
        if (v) return false;
    return true;
}

// gl(n)-dominance: lambda_i - lambda_{i+1} >= 0.
inline bool is_dominant(const WeightVector& w) {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] < w[i + 1]) return false;
    return true;
}

// Lambda^+: additionally lambda_i = lambda_{i+1} forces both to vanish.
inline bool is_lambda_plus(const WeightVector& w) {
    if (!is_dominant(w)) return false;
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == w[i + 1] && w[i] != 0) return false;
    return true;
}

// mu in nu - Q^+ : nu - mu is a nonnegative integer combination of simple roots.
inline bool in_cone(const WeightVector& nu, const WeightVector& mu) {
    long long prefix = 0;
    for (size_t i = 0; i < nu.size(); ++i) {
        prefix += nu[i] - mu[i];
        if (prefix < 0) return false;
    }
    return prefix == 0;
}

// Total lowering depth of mu below lambda (sum of simple-root coefficients).
inline long long cone_depth(const WeightVector& lambda, const WeightVector& mu) {
    long long depth = 0, prefix = 0;
    for (size_t i = 0; i + 1 < lambda.size(); ++i) {
        prefix += lambda[i] - mu[i];
        depth += prefix;
    }
    return depth;
}

class LieSuperAlgebra {
  public:
    SuperSpace space;
    // structure[i][j] = [b_i, b_j] expanded in the basis; absent entry = 0.
    std::map<std::pair<int, int>, SVec> structure;

    int dim() const { return space.dim(); }
    Parity parity(int i) const { return space.parity[i]; }

    SVec bracket_basis(int i, int j) const {
        auto it = structure.find({i, j});
        return it == structure.end() ? SVec{} : it->second;
    }
    SVec bracket(const SVec& a, const SVec& b) const {
        SVec r;
        for (auto& [i, va] : a)
            for (auto& [j, vb] : b) svec_add_scaled(r, bracket_basis(i, j), va * vb);
        return r;
    }

    bool check_skew_supersymmetry() const {
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j) {
                // [a,b] + (-1)^{|a||b|}[b,a] must vanish
                SVec acc = bracket_basis(i, j);
                svec_add_scaled(acc, bracket_basis(j, i), Scalar(koszul_sign(parity(i), parity(j))));
                if (!acc.empty()) return false;
            }
        return true;
    }

    bool check_super_jacobi() const {
        for (int a = 0; a < dim(); ++a)
            for (int b = 0; b < dim(); ++b)
                for (int c = 0; c < dim(); ++c) {
                    SVec eb, ec;
                    eb[b] = Scalar(1);
                    ec[c] = Scalar(1);
                    SVec lhs = bracket({{a, Scalar(1)}}, bracket_basis(b, c));
                    SVec rhs = bracket(bracket_basis(a, b), ec);
                    svec_add_scaled(rhs, bracket(eb, bracket_basis(a, c)),
                                    Scalar(koszul_sign(parity(a), parity(b))));
                    svec_add_scaled(lhs, rhs, Scalar(-1));
                    if (!lhs.empty()) return false;
                }
        return true;
    }

    bool check_grading() const {
        for (auto& [ij, v] : structure) {
            Parity expect = parity(ij.first) + parity(ij.second);
            for (auto& [k, c] : v)
                if (parity(k) != expect) return false;
        }
        return true;
    }
};

// Per-basis-element metadata for q(n): position and block.
enum class Block { Negative, Cartan, Positive };

struct RootDatum {
    int n = 0;
    std::vector<WeightVector> positive_roots;  // eps_i - eps_j, i < j; sorted by (height, lex)

    // q(n) basis layout: e_{i,j} at i*n+j, e'_{i,j} at n*n + i*n + j (0-based).
    int even_label(int i, int j) const { return i * n + j; }
    int odd_label(int i, int j) const { return n * n + i * n + j; }
    bool is_odd_label(int b) const { return b >= n * n; }
    std::pair<int, int> position(int b) const {
        int m = b % (n * n);
        return {m / n, m % n};
    }

    int cartan_even(int i) const { return even_label(i, i); }  // k_i
    int cartan_odd(int i) const { return odd_label(i, i); }    // k_i'

    // Chevalley generators for simple root alpha_i (0-based i in 0..n-2).
    int e(int i) const { return even_label(i, i + 1); }
    int f(int i) const { return even_label(i + 1, i); }
    int e_odd(int i) const { return odd_label(i, i + 1); }
    int f_odd(int i) const { return odd_label(i + 1, i); }

    Block block(int b) const {
        auto [i, j] = position(b);
        if (i == j) return Block::Cartan;
        return i < j ? Block::Positive : Block::Negative;
    }
    WeightVector root_of(int b) const {
        auto [i, j] = position(b);
        WeightVector w(n, 0);
        if (i != j) {
            w[i] = 1;
            w[j] = -1;
        }
        return w;
    }
    int height(int b) const {
        auto [i, j] = position(b);
        return i < j ? j - i : i - j;
    }

    // For root eps_i - eps_j: even and odd root-space labels.
    std::pair<int, int> root_space(const WeightVector& alpha) const {
        int i = -1, j = -1;
        for (int k = 0; k < n; ++k) {
            if (alpha[k] == 1) i = k;
            if (alpha[k] == -1) j = k;
        }
        if (i < 0 || j < 0) throw std::invalid_argument("root_space: not a root");
        return {even_label(i, j), odd_label(i, j)};
    }
};

namespace detail {

// Dense 2n x 2n integer matrix helpers for the defining realization.
using IMat = std::vector<std::vector<long>>;

inline IMat imat(int m) { return IMat(m, std::vector<long>(m, 0)); }

inline IMat imul(const IMat& a, const IMat& b) {
    int m = (int)a.size();
    IMat c = imat(m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            if (a[i][k])
                for (int j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline IMat q_basis_matrix(const RootDatum& rd, int b) {
    int n = rd.n;
    IMat m = imat(2 * n);
    auto [i, j] = rd.position(b);
    if (!rd.is_odd_label(b)) {
        m[i][j] = 1;
        m[n + i][n + j] = 1;
    } else {
        m[i][n + j] = 1;
        m[n + i][j] = 1;
    }
    return m;
}

}  // namespace detail

struct QAlgebra {
    LieSuperAlgebra L;
    RootDatum rd;
};

// The queer Lie superalgebra q(n) from its matrix realization.
inline QAlgebra build_q(int n) {
    if (n < 2) throw std::invalid_argument("build_q: rank n >= 2 required");
    QAlgebra q;
    q.rd.n = n;
    for (int h = 1; h <= n - 1; ++h)
        for (int i = 0; i + h < n; ++i) {
            WeightVector w(n, 0);
            w[i] = 1;
            w[i + h] = -1;
            q.rd.positive_roots.push_back(w);
        }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            q.L.space.add("e_{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}", Parity::Even);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            q.L.space.add("e'_{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}", Parity::Odd);

    int dim = 2 * n * n;
    std::vector<detail::IMat> rep(dim);
    for (int b = 0; b < dim; ++b) rep[b] = detail::q_basis_matrix(q.rd, b);

    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            int sign = koszul_sign(q.L.parity(a), q.L.parity(b));
            detail::IMat xy = detail::imul(rep[a], rep[b]);
            detail::IMat yx = detail::imul(rep[b], rep[a]);
            SVec out;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    long even_c = xy[i][j] - sign * yx[i][j];
                    long odd_c = xy[i][n + j] - sign * yx[i][n + j];
                    if (even_c) out[q.rd.even_label(i, j)] = Scalar(even_c);
                    if (odd_c) out[q.rd.odd_label(i, j)] = Scalar(odd_c);
                }
            if (!out.empty()) q.L.structure[{a, b}] = std::move(out);
        }
    return q;
}

// Commutation test with the odd structure map P: X P - (-1)^{|X|} P X = 0.
inline bool check_p_commutation(const RootDatum& rd, int b) {
    int n = rd.n;
    detail::IMat p = detail::imat(2 * n);
    for (int i = 0; i < n; ++i) {
        p[i][n + i] = 1;
        p[n + i][i] = -1;
    }
    detail::IMat x = detail::q_basis_matrix(rd, b);
    detail::IMat xp = detail::imul(x, p);
    detail::IMat px = detail::imul(p, x);
    int sgn = rd.is_odd_label(b) ? -1 : 1;
    for (int i = 0; i < 2 * n; ++i)
        for (int j = 0; j < 2 * n; ++j)
            if (xp[i][j] != sgn * px[i][j]) return false;
    return true;
}

struct TriangularDecomposition {
    std::set<int> lower, cartan, upper;
};

inline TriangularDecomposition triangular_decomposition(const QAlgebra& q) {
    TriangularDecomposition t;
    for (int b = 0; b < q.L.dim(); ++b) {
        switch (q.rd.block(b)) {
            case Block::Negative: t.lower.insert(b); break;
            case Block::Cartan: t.cartan.insert(b); break;
            case Block::Positive: t.upper.insert(b); break;
        }
    }
    return t;
}

// Each part closed under bracket; [h0, h] = 0 and [h1, h1] in h0.
inline bool check_triangular_closure(const QAlgebra& q, const TriangularDecomposition& t) {
    auto closed = [&](const std::set<int>& part) {
        for (int a : part)
            for (int b : part)
                for (auto& [k, v] : q.L.bracket_basis(a, b))
                    if (!part.count(k)) return false;
        return true;
    };
    if (!closed(t.lower) || !closed(t.cartan) || !closed(t.upper)) return false;
    for (int a : t.cartan) {
        bool a_even = !q.rd.is_odd_label(a);
        for (int b : t.cartan) {
            SVec br = q.L.bracket_basis(a, b);
            if (a_even && !br.empty()) return false;  // [h0, h] = 0
            if (!a_even && q.rd.is_odd_label(b))
                for (auto& [k, v] : br)
                    if (q.rd.is_odd_label(k)) return false;  // [h1, h1] in h0
        }
    }
    return true;
}

struct RelationCheck {
    std::string relation;
    bool pass = true;
};

struct PresentationReport {
    std::vector<RelationCheck> checks;
    bool all_pass() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Evaluate the Chevalley-style presentation relations inside the matrix
// realization, one report entry per (relation, index tuple).
inline PresentationReport check_presentation(const QAlgebra& q) {
    PresentationReport rep;
    const auto& L = q.L;
    const auto& rd = q.rd;
    int n = rd.n;
    auto sv = [](std::initializer_list<std::pair<int, long>> items) {
        SVec v;
        for (auto& [k, c] : items)
            if (c) v[k] = Scalar(c);
        return v;
    };
    auto expect = [&](std::string name, const SVec& got, const SVec& want) {
        rep.checks.push_back({std::move(name), got == want});
    };
    auto br = [&](int a, int b) { return L.bracket_basis(a, b); };
    auto alpha = [&](int i, int l) -> long { return (l == i ? 1 : 0) - (l == i + 1 ? 1 : 0); };
    auto idx = [](std::initializer_list<int> is) {
        std::string s = "(";
        bool first = true;
        for (int i : is) {
            if (!first) s += ",";
            first = false;
            s += std::to_string(i + 1);
        }
        return s + ")";
    };

    for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) expect("[k,k]=0 " + idx({l, m}), br(rd.cartan_even(l), rd.cartan_even(m)), {});
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n - 1; ++i) {
            expect("[k,e]=a(k)e " + idx({l, i}), br(rd.cartan_even(l), rd.e(i)), sv({{rd.e(i), alpha(i, l)}}));
            expect("[k,e']=a(k)e' " + idx({l, i}), br(rd.cartan_even(l), rd.e_odd(i)), sv({{rd.e_odd(i), alpha(i, l)}}));
            expect("[k,f]=-a(k)f " + idx({l, i}), br(rd.cartan_even(l), rd.f(i)), sv({{rd.f(i), -alpha(i, l)}}));
            expect("[k,f']=-a(k)f' " + idx({l, i}), br(rd.cartan_even(l), rd.f_odd(i)), sv({{rd.f_odd(i), -alpha(i, l)}}));
            expect("[k',e]=a(k)e' " + idx({l, i}), br(rd.cartan_odd(l), rd.e(i)), sv({{rd.e_odd(i), alpha(i, l)}}));
            expect("[k',f]=-a(k)f' " + idx({l, i}), br(rd.cartan_odd(l), rd.f(i)), sv({{rd.f_odd(i), -alpha(i, l)}}));
            long ke = (l == i || l == i + 1) ? 1 : 0;
            expect("[k',e']=e|0 " + idx({l, i}), br(rd.cartan_odd(l), rd.e_odd(i)), sv({{rd.e(i), ke}}));
            expect("[k',f']=f|0 " + idx({l, i}), br(rd.cartan_odd(l), rd.f_odd(i)), sv({{rd.f(i), ke}}));
        }
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) {
            long d = (i == j) ? 1 : 0;
            expect("[e,f]=d(k-k) " + idx({i, j}), br(rd.e(i), rd.f(j)),
                   sv({{rd.cartan_even(i), d}, {rd.cartan_even(i + 1), -d}}));
            expect("[e,f']=d(k'-k') " + idx({i, j}), br(rd.e(i), rd.f_odd(j)),
                   sv({{rd.cartan_odd(i), d}, {rd.cartan_odd(i + 1), -d}}));
            expect("[e',f]=d(k'-k') " + idx({i, j}), br(rd.e_odd(i), rd.f(j)),
                   sv({{rd.cartan_odd(i), d}, {rd.cartan_odd(i + 1), -d}}));
            expect("[e',f']=d(k+k) " + idx({i, j}), br(rd.e_odd(i), rd.f_odd(j)),
                   sv({{rd.cartan_even(i), d}, {rd.cartan_even(i + 1), d}}));
            if (std::abs(i - j) != 1) {
                expect("[e,e']=0 " + idx({i, j}), br(rd.e(i), rd.e_odd(j)), {});
                expect("[e',e']=0 " + idx({i, j}), br(rd.e_odd(i), rd.e_odd(j)), {});
                expect("[f,f']=0 " + idx({i, j}), br(rd.f(i), rd.f_odd(j)), {});
                expect("[f',f']=0 " + idx({i, j}), br(rd.f_odd(i), rd.f_odd(j)), {});
            }
            if (std::abs(i - j) > 1) {
                expect("[e,e]=0 " + idx({i, j}), br(rd.e(i), rd.e(j)), {});
                expect("[f,f]=0 " + idx({i, j}), br(rd.f(i), rd.f(j)), {});
            }
        }
    for (int i = 0; i + 2 < n; ++i) {
        auto sub = [](SVec a, const SVec& b) {
            svec_add_scaled(a, b, Scalar(-1));
            return a;
        };
        expect("[e,e+1]=[e',e+1'] " + idx({i}), sub(br(rd.e(i), rd.e(i + 1)), br(rd.e_odd(i), rd.e_odd(i + 1))), {});
        expect("[e,e+1']=[e',e+1] " + idx({i}), sub(br(rd.e(i), rd.e_odd(i + 1)), br(rd.e_odd(i), rd.e(i + 1))), {});
        expect("[f+1,f]=[f+1',f'] " + idx({i}), sub(br(rd.f(i + 1), rd.f(i)), br(rd.f_odd(i + 1), rd.f_odd(i))), {});
        expect("[f+1,f']=[f+1',f] " + idx({i}), sub(br(rd.f(i + 1), rd.f_odd(i)), br(rd.f_odd(i + 1), rd.f(i))), {});
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            expect("[k',k']=d*2k " + idx({i, j}), br(rd.cartan_odd(i), rd.cartan_odd(j)),
                   sv({{rd.cartan_even(i), i == j ? 2 : 0}}));
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) {
            if (std::abs(i - j) != 1) continue;
            SVec eiej = br(rd.e(i), rd.e(j));
            SVec fifj = br(rd.f(i), rd.f(j));
            expect("serre [e,[e,e]]=0 " + idx({i, j}), L.bracket({{rd.e(i), Scalar(1)}}, eiej), {});
            expect("serre [e',[e,e]]=0 " + idx({i, j}), L.bracket({{rd.e_odd(i), Scalar(1)}}, eiej), {});
            expect("serre [f,[f,f]]=0 " + idx({i, j}), L.bracket({{rd.f(i), Scalar(1)}}, fifj), {});
            expect("serre [f',[f,f]]=0 " + idx({i, j}), L.bracket({{rd.f_odd(i), Scalar(1)}}, fifj), {});
        }
    return rep;
}

struct Sl2Triple {
    int x, y, h_pos, h_neg;  // [x,y] = k_{h_pos} - k_{h_neg}
};

// For a positive even root eps_i - eps_j: (e_{i,j}, e_{j,i}, k_i - k_j).
inline Sl2Triple sl2_triple(const QAlgebra& q, const WeightVector& alpha) {
    int i = -1, j = -1;
    for (int k = 0; k < q.rd.n; ++k) {
        if (alpha[k] == 1) i = k;
        if (alpha[k] == -1) j = k;
    }
    bool is_root = i >= 0 && j >= 0 && i < j;
    if (is_root)
        for (int k = 0; k < q.rd.n; ++k)
            if (k != i && k != j && alpha[k] != 0) is_root = false;
    if (!is_root) throw std::invalid_argument("sl2_triple: not a positive root");
    Sl2Triple t{q.rd.even_label(i, j), q.rd.even_label(j, i), q.rd.cartan_even(i), q.rd.cartan_even(j)};
    // verify the standard relations in the algebra
    SVec h = q.L.bracket_basis(t.x, t.y);
    SVec want;
    want[t.h_pos] = Scalar(1);
    want[t.h_neg] = Scalar(-1);
    if (h != want) throw std::logic_error("sl2_triple: [x,y] != h");
    SVec hx = q.L.bracket(h, {{t.x, Scalar(1)}});
    SVec hy = q.L.bracket(h, {{t.y, Scalar(1)}});
    if (hx != SVec{{t.x, Scalar(2)}} || hy != SVec{{t.y, Scalar(-2)}})
        throw std::logic_error("sl2_triple: [h,x] or [h,y] relation fails");
    return t;
}

// q (x) A with the bracket [x(x)a, y(x)b] = [x,y] (x) ab. Generators are
// indexed q-major: gen(b, a) = b * dim(A) + a.
struct CurrentAlgebra {
    LieSuperAlgebra L;
    RootDatum rd;
    int q_dim = 0;
    int a_dim = 0;
    CommAlgebra coeff;

    int gen(int q_idx, int a_idx) const { return q_idx * a_dim + a_idx; }
    int q_part(int g) const { return g / a_dim; }
    int a_part(int g) const { return g % a_dim; }

    Block block(int g) const { return rd.block(q_part(g)); }
    WeightVector root_of(int g) const { return rd.root_of(q_part(g)); }
    int height(int g) const { return rd.height(q_part(g)); }
    Parity parity(int g) const { return L.parity(g); }
};

inline CurrentAlgebra current_algebra(const QAlgebra& q, const CommAlgebra& a) {
    CurrentAlgebra c;
    c.rd = q.rd;
    c.q_dim = q.L.dim();
    c.a_dim = a.dim;
    c.coeff = a;
    for (int b = 0; b < c.q_dim; ++b)
        for (int j = 0; j < a.dim; ++j)
            c.L.space.add(q.L.space.labels[b] + "(x)" + a.labels[j], q.L.parity(b));
    for (auto& [bb, v] : q.L.structure) {
        for (int j = 0; j < a.dim; ++j)
            for (int l = 0; l < a.dim; ++l) {
                SVec out;
                for (auto& [k, coef] : v)
                    for (auto& [m, ac] : a.mult[j][l]) {
                        Scalar t = coef * ac;
                        if (t.is_zero()) continue;
                        auto it = out.find(c.gen(k, m));
                        if (it == out.end())
                            out[c.gen(k, m)] = t;
                        else {
                            it->second += t;
                            if (it->second.is_zero()) out.erase(it);
                        }
                    }
                if (!out.empty()) c.L.structure[{c.gen(bb.first, j), c.gen(bb.second, l)}] = std::move(out);
            }
    }
    return c;
}

}  // namespace qweyl
