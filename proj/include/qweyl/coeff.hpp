// Finite-dimensional commutative associative unital coefficient algebras,
// their ideals, ideal arithmetic and comaximality.
#pragma once

#include "linalg.hpp"

#include <string>
#include <vector>

namespace qweyl {

class CommAlgebra {
  public:
    int dim = 0;
    std::vector<std::vector<SVec>> mult;  // mult[i][j] = b_i * b_j expanded in the basis
    SVec unit;
    std::vector<std::string> labels;

    SVec multiply(const SVec& a, const SVec& b) const {
        SVec r;
        for (auto& [i, va] : a)
            for (auto& [j, vb] : b) svec_add_scaled(r, mult[i][j], va * vb);
        return r;
    }

    void validate() const {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (mult[i][j] != mult[j][i]) throw std::invalid_argument("CommAlgebra: not commutative");
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k) {
                    SVec ej, ek;
                    ej[j] = Scalar(1);
                    ek[k] = Scalar(1);
                    SVec l = multiply(mult[i][j], ek);
                    SVec r = multiply({{i, Scalar(1)}}, mult[j][k]);
                    if (l != r) throw std::invalid_argument("CommAlgebra: not associative");
                }
        for (int i = 0; i < dim; ++i) {
            SVec ei;
            ei[i] = Scalar(1);
            if (multiply(unit, ei) != ei) throw std::invalid_argument("CommAlgebra: unit fails");
        }
    }
};

// C[t]/(t^N), basis 1, t, ..., t^{N-1}.
inline CommAlgebra truncated_poly(int n) {
    if (n < 1) throw std::invalid_argument("truncated_poly: N >= 1 required");
    CommAlgebra a;
    a.dim = n;
    a.mult.assign(n, std::vector<SVec>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j < n) a.mult[i][j][i + j] = Scalar(1);
    a.unit[0] = Scalar(1);
    for (int i = 0; i < n; ++i) a.labels.push_back(i == 0 ? "1" : (i == 1 ? "t" : "t^" + std::to_string(i)));
    return a;
}

inline CommAlgebra complex_field() { return truncated_poly(1); }

// Componentwise product on A (+) B.
inline CommAlgebra direct_sum(const CommAlgebra& a, const CommAlgebra& b) {
    CommAlgebra c;
    c.dim = a.dim + b.dim;
    c.mult.assign(c.dim, std::vector<SVec>(c.dim));
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) c.mult[i][j] = a.mult[i][j];
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j)
            for (auto& [k, v] : b.mult[i][j]) c.mult[a.dim + i][a.dim + j][a.dim + k] = v;
    for (auto& [k, v] : a.unit) c.unit[k] = v;
    for (auto& [k, v] : b.unit) c.unit[a.dim + k] = v;
    for (auto& l : a.labels) c.labels.push_back("(" + l + ",0)");
    for (auto& l : b.labels) c.labels.push_back("(0," + l + ")");
    return c;
}

inline CommAlgebra algebra_from_table(int dim, std::vector<std::vector<SVec>> mult, SVec unit) {
    CommAlgebra a;
    a.dim = dim;
    a.mult = std::move(mult);
    a.unit = std::move(unit);
    for (int i = 0; i < dim; ++i) a.labels.push_back("b" + std::to_string(i));
    a.validate();
    return a;
}

class IdealSubspace {
  public:
    const CommAlgebra* algebra = nullptr;
    Subspace space;

    IdealSubspace() = default;
    IdealSubspace(const CommAlgebra& a, Subspace s) : algebra(&a), space(std::move(s)) {
        if (!is_ideal()) throw std::invalid_argument("IdealSubspace: not multiplication-closed");
    }

    bool is_ideal() const {
        for (int i = 0; i < algebra->dim; ++i) {
            SVec ei;
            ei[i] = Scalar(1);
            for (int r = 0; r < space.basis.rows; ++r)
                if (!space.contains(algebra->multiply(ei, space.basis.row[r]))) return false;
        }
        return true;
    }

    int codim() const { return algebra->dim - space.dim(); }
};

inline IdealSubspace zero_ideal(const CommAlgebra& a) { return {a, Subspace(a.dim)}; }

inline IdealSubspace unit_ideal(const CommAlgebra& a) { return {a, Subspace::full(a.dim)}; }

inline void require_same_algebra(const IdealSubspace& i, const IdealSubspace& j) {
    if (i.algebra != j.algebra) throw std::invalid_argument("ideal op: algebra mismatch");
}

inline IdealSubspace ideal_sum(const IdealSubspace& i, const IdealSubspace& j) {
    require_same_algebra(i, j);
    return {*i.algebra, subspace_sum(i.space, j.space)};
}

inline IdealSubspace ideal_intersect(const IdealSubspace& i, const IdealSubspace& j) {
    require_same_algebra(i, j);
    return {*i.algebra, subspace_intersect(i.space, j.space)};
}

inline IdealSubspace ideal_product(const IdealSubspace& i, const IdealSubspace& j) {
    require_same_algebra(i, j);
    const CommAlgebra& a = *i.algebra;
    Matrix rows(0, a.dim);
    for (int r = 0; r < i.space.basis.rows; ++r)
        for (int s = 0; s < j.space.basis.rows; ++s) {
            rows.row.push_back(a.multiply(i.space.basis.row[r], j.space.basis.row[s]));
            ++rows.rows;
        }
    return {a, Subspace::from_rows(rows)};
}

inline IdealSubspace ideal_power(const IdealSubspace& i, int k) {
    if (k < 1) throw std::invalid_argument("ideal_power: k >= 1");
    IdealSubspace p = i;
    for (int s = 1; s < k; ++s) p = ideal_product(p, i);
    return p;
}

// I + J = A; the linear-algebra surrogate for disjoint supports.
inline bool is_comaximal(const IdealSubspace& i, const IdealSubspace& j) {
    return ideal_sum(i, j).space.dim() == i.algebra->dim;
}

// Largest ideal of A contained in the subspace S: shrink S by
// I <- {a in I : a*A <= I} until stable.
inline IdealSubspace largest_ideal_inside(const Subspace& s, const CommAlgebra& a) {
    Subspace cur = s;
    for (;;) {
        // x in next iff x in cur and b_i * x in cur for all i; each condition
        // says a reduction mod cur vanishes, so collect them and take a kernel.
        std::vector<SVec> cond_rows;
        const Subspace& curq = cur;
        for (int i = 0; i < a.dim; ++i) {
            Matrix red(a.dim, a.dim);  // red[., col] = reduce(b_i * e_col)
            for (int col = 0; col < a.dim; ++col) {
                SVec prod;
                for (auto& [k, v] : a.mult[i][col]) prod[k] = v;
                SVec r = curq.reduce(prod);
                for (auto& [k, v] : r) red.row[k][col] = v;
            }
            for (int k = 0; k < a.dim; ++k)
                if (!red.row[k].empty()) cond_rows.push_back(red.row[k]);
        }
        // Also require x in cur itself: reduce(e_col) conditions.
        {
            Matrix red(a.dim, a.dim);
            for (int col = 0; col < a.dim; ++col) {
                SVec e;
                e[col] = Scalar(1);
                SVec r = curq.reduce(e);
                for (auto& [k, v] : r) red.row[k][col] = v;
            }
            for (int k = 0; k < a.dim; ++k)
                if (!red.row[k].empty()) cond_rows.push_back(red.row[k]);
        }
        Matrix cm((int)cond_rows.size(), a.dim);
        for (size_t k = 0; k < cond_rows.size(); ++k) cm.row[k] = cond_rows[k];
        Subspace next = Subspace::from_rows(kernel(cm));
        if (next == cur) break;
        cur = next;
    }
    return {a, cur};
}

}  // namespace qweyl
