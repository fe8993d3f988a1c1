#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coeff.hpp"
#include "liesuper.hpp"
#include "linalg.hpp"
#include "scalar.hpp"
#include "superspace.hpp"

namespace qweyl {

// Odd generator space with a symmetric bilinear form. form.at(i,j) is the
// polarized value f_pol(x_i, x_j); the diagonal holds the squares f(x,x).
struct QuadraticPair {
    SuperSpace space;
    Matrix form;
};

inline QuadraticPair quadratic_pair(int generators, Matrix form, const std::string& prefix = "t") {
    if (form.rows != generators || form.cols != generators)
        throw std::invalid_argument("quadratic_pair: form shape mismatch");
    if (!(form == form.transpose())) throw std::invalid_argument("quadratic_pair: form not symmetric");
    QuadraticPair p;
    p.form = std::move(form);
    for (int i = 0; i < generators; ++i) p.space.add(prefix + std::to_string(i + 1), Parity::Odd);
    return p;
}

// Basis: subsets of generators as bitmasks, word = generators of the subset in
// increasing order. Products straighten with x_i x_j = -x_j x_i + 2 f_pol(i,j)
// for i > j and x_i^2 = f(x_i, x_i).
class CliffordAlgebra {
  public:
    QuadraticPair pair;
    int r = 0;

    explicit CliffordAlgebra(QuadraticPair p) : pair(std::move(p)), r(pair.space.dim()) {
        if (r > 30) throw std::invalid_argument("CliffordAlgebra: too many generators");
    }

    long dim() const { return 1L << r; }
    Parity basis_parity(long mask) const { return (__builtin_popcountl(mask) % 2) ? Parity::Odd : Parity::Even; }

    // (word of mask) * x_g, mask entries ascending.
    SVec mul_mask_gen(long mask, int g) const {
        SVec out;
        if (mask == 0 || 63 - __builtin_clzl(mask) < g) {
            if (mask & (1L << g)) throw std::logic_error("mul_mask_gen: order violated");
            out[mask | (1L << g)] = Scalar(1);
            return out;
        }
        int h = 63 - __builtin_clzl(mask);
        long rest = mask & ~(1L << h);
        if (h == g) {
            Scalar sq = pair.form.at(g, g);
            if (!sq.is_zero()) out[rest] = sq;
            return out;
        }
        // x_rest x_h x_g = -x_rest x_g x_h + 2 f(h,g) x_rest
        SVec inner = mul_mask_gen(rest, g);
        for (auto& [m, c] : inner) {
            SVec lifted = mul_mask_gen(m, h);
            svec_add_scaled(out, lifted, -c);
        }
        Scalar f2 = Scalar(2) * pair.form.at(h, g);
        if (!f2.is_zero()) svec_add_scaled(out, SVec{{rest, Scalar(1)}}, f2);
        return out;
    }

    SVec multiply(const SVec& a, const SVec& b) const {
        SVec out;
        for (auto& [mb, cb] : b) {
            SVec cur;
            for (auto& [ma, ca] : a) cur[ma] = ca * cb;
            for (int g = 0; g < r; ++g) {
                if (!(mb & (1L << g))) continue;
                SVec next;
                for (auto& [m, c] : cur) svec_add_scaled(next, mul_mask_gen(m, g), c);
                cur = std::move(next);
            }
            for (auto& [m, c] : cur) svec_add_scaled(out, SVec{{m, c}}, Scalar(1));
        }
        return out;
    }

    SVec word(const std::vector<int>& gens) const {
        SVec cur{{0L, Scalar(1)}};
        for (int g : gens) {
            if (g < 0 || g >= r) throw std::invalid_argument("CliffordAlgebra::word: unknown generator");
            SVec next;
            for (auto& [m, c] : cur) svec_add_scaled(next, mul_mask_gen(m, g), c);
            cur = std::move(next);
        }
        return cur;
    }
};

inline CliffordAlgebra clifford_algebra(QuadraticPair p) { return CliffordAlgebra(std::move(p)); }

struct CliffordModule {
    SuperSpace space;
    std::vector<Matrix> action;  // one odd map per generator of the pair
};

inline bool check_clifford_relations(const CliffordModule& m, const Matrix& form) {
    int d = m.space.dim();
    for (int i = 0; i < (int)m.action.size(); ++i)
        for (int j = i; j < (int)m.action.size(); ++j) {
            Matrix anti = m.action[i] * m.action[j] + m.action[j] * m.action[i];
            if (!(anti == Matrix::identity(d) * (Scalar(2) * form.at(i, j)))) return false;
        }
    return true;
}

namespace detail {

// Congruence diagonalization: returns (P, d) with (P f P^T)_{kk} = d_k and all
// off-diagonal entries zero. Zero diagonal with a nonzero off-diagonal entry is
// repaired by mixing in a partner row first.
inline std::pair<Matrix, std::vector<Scalar>> congruence_diagonalize(Matrix f) {
    int n = f.rows;
    Matrix p = Matrix::identity(n);
    for (int k = 0; k < n; ++k) {
        if (f.at(k, k).is_zero()) {
            for (int j = k + 1; j < n; ++j) {
                if (f.at(k, j).is_zero()) continue;
                for (auto [c, v] : SVec(f.row[j])) {
                    f.set(k, c, f.at(k, c) + v);
                }
                for (int i = 0; i < n; ++i) f.set(i, k, f.at(i, k) + f.at(i, j));
                svec_add_scaled(p.row[k], p.row[j], Scalar(1));
                break;
            }
        }
        Scalar diag = f.at(k, k);
        if (diag.is_zero()) continue;
        Scalar inv = diag.inverse();
        for (int i = k + 1; i < n; ++i) {
            Scalar c = f.at(i, k);
            if (c.is_zero()) continue;
            Scalar factor = -(c * inv);
            for (auto [col, v] : SVec(f.row[k])) f.set(i, col, f.at(i, col) + factor * v);
            for (int row = 0; row < n; ++row) f.set(row, i, f.at(row, i) + factor * f.at(row, k));
            svec_add_scaled(p.row[i], p.row[k], factor);
        }
    }
    std::vector<Scalar> d(n);
    for (int k = 0; k < n; ++k) d[k] = f.at(k, k);
    return {p, d};
}

// Anticommuting odd involutions on (C^2)^{tensor m}: index bit j of a basis
// vector is the state of factor j, parity = popcount. Pauli letters per factor.
enum class Pauli { I, X, Y, Z };

inline Matrix pauli_word(const std::vector<Pauli>& letters) {
    int m = (int)letters.size();
    long dim = 1L << m;
    Matrix out(dim, dim);
    for (long col = 0; col < dim; ++col) {
        long row = col;
        Scalar c(1);
        for (int j = 0; j < m; ++j) {
            bool bit = (col >> j) & 1;
            switch (letters[j]) {
                case Pauli::I: break;
                case Pauli::X: row ^= (1L << j); break;
                case Pauli::Y:
                    row ^= (1L << j);
                    c *= bit ? -Scalar::i() : Scalar::i();
                    break;
                case Pauli::Z:
                    if (bit) c = -c;
                    break;
            }
        }
        out.set((int)row, (int)col, c);
    }
    return out;
}

inline std::vector<Matrix> gamma_generators(int r) {
    int m = (r + 1) / 2;
    std::vector<Matrix> gens;
    for (int k = 1; k <= r; ++k) {
        std::vector<Pauli> letters(m, Pauli::I);
        int j = (k + 1) / 2;  // tensor slot of generator k, 1-based
        for (int s = 0; s < j - 1; ++s) letters[s] = Pauli::Z;
        if (k == r && r % 2 == 1)
            letters[m - 1] = Pauli::X;
        else
            letters[j - 1] = (k % 2 == 1) ? Pauli::X : Pauli::Y;
        gens.push_back(pauli_word(letters));
    }
    return gens;
}

}  // namespace detail

// Irreducible supermodule of dimension 2^{ceil(r/2)}. The form is congruence
// diagonalized, square roots of the diagonal entries are adjoined to the field,
// and the normalized generators act through the gamma construction.
inline CliffordModule irreducible_module(const CliffordAlgebra& c, FieldSpec& spec) {
    int r = c.r;
    auto [p, d] = detail::congruence_diagonalize(c.pair.form);
    std::vector<Scalar> roots(r);
    for (int k = 0; k < r; ++k) {
        if (d[k].is_zero()) throw std::domain_error("irreducible_module: degenerate form");
        auto s = scalar_sqrt(d[k], spec);
        if (!s)
            throw std::domain_error("irreducible_module: square root of " + to_string(d[k]) +
                                    " is outside the supported field tower");
        roots[k] = *s;
    }
    auto pinv = inverse(p);
    if (!pinv) throw std::logic_error("irreducible_module: congruence matrix not invertible");

    CliffordModule mod;
    int m = (r + 1) / 2;
    long dim = 1L << m;
    for (long b = 0; b < dim; ++b)
        mod.space.add("v" + std::to_string(b), (__builtin_popcountl(b) % 2) ? Parity::Odd : Parity::Even);

    // u_k = sum_j p[k][j] x_j squares to d_k, so u_k acts as roots[k] * gamma_k
    // and x_i = sum_k pinv[i][k] u_k.
    std::vector<Matrix> gamma = detail::gamma_generators(r);
    for (int i = 0; i < r; ++i) {
        Matrix act((int)dim, (int)dim);
        for (auto& [k, v] : pinv->row[i]) act = act + gamma[k] * (v * roots[k]);
        mod.action.push_back(std::move(act));
    }
    if (!check_clifford_relations(mod, c.pair.form))
        throw std::logic_error("irreducible_module: relation check failed");
    return mod;
}

// Functional on the even Cartan of a current algebra: values.at(i, j) is the
// pairing with k_i tensor b_j; lambda is the restriction along b = 1.
struct MapWeight {
    Matrix values;
    WeightVector lambda;
};

inline MapWeight map_weight(Matrix values, const SVec& unit = SVec{{0, Scalar(1)}}) {
    MapWeight w;
    w.lambda.resize(values.rows);
    for (int i = 0; i < values.rows; ++i) {
        Scalar restr;
        for (auto& [j, c] : unit) restr += values.at(i, j) * c;
        auto g = restr.as_gaussian();
        if (!g || g->im != 0 || g->re.get_den() != 1)
            throw std::invalid_argument("map_weight: lambda coordinates must be integers");
        w.lambda[i] = (long long)g->re.get_num().get_si();
    }
    w.values = std::move(values);
    return w;
}

// psi supported on the first basis coordinate of A with psi(k_i tensor 1) = lambda_i;
// valid whenever basis vector 0 appears in the unit with coefficient 1.
inline MapWeight map_weight_from_lambda(const WeightVector& lambda, const SVec& unit, int a_dim) {
    Matrix values((int)lambda.size(), a_dim);
    for (int i = 0; i < (int)lambda.size(); ++i) values.set(i, 0, Scalar(lambda[i]));
    return map_weight(std::move(values), unit);
}
inline MapWeight map_weight_from_lambda(const WeightVector& lambda, int a_dim = 1) {
    return map_weight_from_lambda(lambda, SVec{{0, Scalar(1)}}, a_dim);
}

// H(psi): the irreducible Clifford module of (h_odd tensor A)/ker F_psi,
// together with the odd Cartan action matrices and the scalar even action.
struct HighestWeightSpace {
    MapWeight psi;
    SuperSpace space;
    std::vector<std::vector<Matrix>> odd_action;  // [i][j]: action of k_i' tensor b_j
    int rank = 0;                                 // rank of F_psi
    std::vector<SVec> kernel_basis;               // vectors acting as zero
};

inline Scalar psi_pairing(const MapWeight& psi, int i, const SVec& a_elem) {
    Scalar out;
    for (auto& [j, c] : a_elem) out += psi.values.at(i, j) * c;
    return out;
}

inline HighestWeightSpace build_H(const MapWeight& psi, const QAlgebra& q, const CommAlgebra& a,
                                  FieldSpec& spec) {
    int n = q.rd.n;
    int ad = a.dim;
    if (psi.values.rows != n || psi.values.cols != ad)
        throw std::invalid_argument("build_H: psi shape does not match q(n) and A");

    // F_psi on h_odd tensor A: generator (i, j) is k_i' tensor b_j,
    // F((i,j),(l,m)) = 2 delta_il psi(k_i tensor b_j b_m).
    int nv = n * ad;
    Matrix gram(nv, nv);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < ad; ++j)
            for (int m = 0; m < ad; ++m) {
                Scalar v = Scalar(2) * psi_pairing(psi, i, a.mult[j][m]);
                gram.set(i * ad + j, i * ad + m, v);
            }

    Subspace ker = Subspace::from_rows(kernel(gram));
    std::vector<int> rep = quotient_coords(ker);
    int r = (int)rep.size();

    // The form restricted to the coset representatives stays well defined; the
    // Clifford relation uv + vu = F_psi(u, v) makes the quadratic form F/2.
    Matrix restricted(r, r);
    for (int x = 0; x < r; ++x)
        for (int y = 0; y < r; ++y) {
            Scalar v = gram.at(rep[x], rep[y]) * Scalar(mpq_class(1, 2));
            restricted.set(x, y, v);
        }

    CliffordAlgebra cliff(quadratic_pair(r, restricted));
    CliffordModule mod = irreducible_module(cliff, spec);

    HighestWeightSpace h;
    h.psi = psi;
    h.space = mod.space;
    h.rank = r;
    for (int k = 0; k < ker.basis.rows; ++k) h.kernel_basis.push_back(ker.basis.row[k]);

    int hd = h.space.dim();
    h.odd_action.assign(n, std::vector<Matrix>(ad, Matrix(hd, hd)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < ad; ++j) {
            SVec e{{i * ad + j, Scalar(1)}};
            SVec red = ker.reduce(e);
            Matrix act(hd, hd);
            for (auto& [col, c] : red) {
                int x = (int)(std::lower_bound(rep.begin(), rep.end(), col) - rep.begin());
                if (x >= r || rep[x] != col) throw std::logic_error("build_H: reduction left a pivot coordinate");
                act = act + mod.action[x] * c;
            }
            h.odd_action[i][j] = std::move(act);
        }
    return h;
}

}  // namespace qweyl
