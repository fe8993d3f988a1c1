// Exact sparse linear algebra over the scalar field: RREF, kernel, solve, and
// subspace lattice operations. Pivoting is positional (first nonzero in the
// leftmost unresolved column) so results are deterministic.
#pragma once

#include "scalar.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qweyl {

using SVec = std::map<int, Scalar>;  // sparse vector, no zero entries

inline void svec_add_scaled(SVec& dst, const SVec& src, const Scalar& c) {
    if (c.is_zero()) return;
    for (auto& [j, v] : src) {
        Scalar t = v * c;
        auto it = dst.find(j);
        if (it == dst.end()) {
            if (!t.is_zero()) dst.emplace(j, std::move(t));
        } else {
            it->second += t;
            if (it->second.is_zero()) dst.erase(it);
        }
    }
}

class Matrix {
  public:
    int rows = 0, cols = 0;
    std::vector<SVec> row;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), row(r) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.row[i][i] = Scalar(1);
        return m;
    }

    Scalar at(int i, int j) const {
        auto it = row[i].find(j);
        return it == row[i].end() ? Scalar() : it->second;
    }
    void set(int i, int j, Scalar v) {
        if (i < 0 || i >= rows || j < 0 || j >= cols) throw std::out_of_range("Matrix::set");
        if (v.is_zero())
            row[i].erase(j);
        else
            row[i][j] = std::move(v);
    }

    bool is_zero() const {
        for (auto& r : row)
            if (!r.empty()) return false;
        return true;
    }

    Matrix operator+(const Matrix& o) const {
        if (rows != o.rows || cols != o.cols) throw std::invalid_argument("Matrix+: shape mismatch");
        Matrix m = *this;
        for (int i = 0; i < rows; ++i) svec_add_scaled(m.row[i], o.row[i], Scalar(1));
        return m;
    }
    Matrix operator-(const Matrix& o) const {
        if (rows != o.rows || cols != o.cols) throw std::invalid_argument("Matrix-: shape mismatch");
        Matrix m = *this;
        for (int i = 0; i < rows; ++i) svec_add_scaled(m.row[i], o.row[i], Scalar(-1));
        return m;
    }
    Matrix operator*(const Scalar& c) const {
        Matrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (auto& [j, v] : row[i]) {
                Scalar t = v * c;
                if (!t.is_zero()) m.row[i][j] = t;
            }
        return m;
    }
    Matrix operator*(const Matrix& o) const {
        if (cols != o.rows) throw std::invalid_argument("Matrix*: shape mismatch");
        Matrix m(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (auto& [k, v] : row[i]) svec_add_scaled(m.row[i], o.row[k], v);
        return m;
    }
    SVec apply(const SVec& x) const {
        // y = M x (x indexed by columns)
        SVec y;
        for (int i = 0; i < rows; ++i) {
            Scalar acc;
            for (auto& [j, v] : row[i]) {
                auto it = x.find(j);
                if (it != x.end()) acc += v * it->second;
            }
            if (!acc.is_zero()) y[i] = acc;
        }
        return y;
    }

    Matrix transpose() const {
        Matrix m(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (auto& [j, v] : row[i]) m.row[j][i] = v;
        return m;
    }

    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && row == o.row; }
};

inline Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows) throw std::invalid_argument("hstack: row mismatch");
    Matrix m(a.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; ++i) {
        m.row[i] = a.row[i];
        for (auto& [j, v] : b.row[i]) m.row[i][j + a.cols] = v;
    }
    return m;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols != b.cols) throw std::invalid_argument("vstack: col mismatch");
    Matrix m(a.rows + b.rows, a.cols);
    for (int i = 0; i < a.rows; ++i) m.row[i] = a.row[i];
    for (int i = 0; i < b.rows; ++i) m.row[a.rows + i] = b.row[i];
    return m;
}

struct RrefResult {
    Matrix mat;
    std::vector<int> pivots;  // pivot column of row k
};

inline RrefResult rref(Matrix m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i) {
            auto it = m.row[i].find(c);
            if (it != m.row[i].end()) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        std::swap(m.row[r], m.row[p]);
        Scalar inv = m.row[r].at(c).inverse();
        if (!inv.is_one()) {
            SVec scaled;
            for (auto& [j, v] : m.row[r]) scaled[j] = v * inv;
            m.row[r] = std::move(scaled);
        }
        for (int i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            auto it = m.row[i].find(c);
            if (it == m.row[i].end()) continue;
            Scalar f = -it->second;
            svec_add_scaled(m.row[i], m.row[r], f);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

inline int rank(const Matrix& m) { return (int)rref(m).pivots.size(); }

// Kernel of m (right null space), rows of the result span {x : m x = 0}.
inline Matrix kernel(const Matrix& m) {
    auto [R, piv] = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix K((int)free_cols.size(), m.cols);
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        K.row[k][fc] = Scalar(1);
        for (size_t r = 0; r < piv.size(); ++r) {
            Scalar v = R.at((int)r, fc);
            if (!v.is_zero()) K.row[k][piv[r]] = -v;
        }
    }
    return K;
}

// One solution x of A x = b, if consistent.
inline std::optional<SVec> solve(const Matrix& a, const SVec& b) {
    Matrix aug = a;
    aug.cols = a.cols + 1;
    for (auto& [i, v] : b) aug.row[i][a.cols] = v;
    auto [R, piv] = rref(aug);
    for (size_t r = 0; r < piv.size(); ++r)
        if (piv[r] == a.cols) return std::nullopt;  // inconsistent
    SVec x;
    for (size_t r = 0; r < piv.size(); ++r) {
        Scalar v = R.at((int)r, a.cols);
        if (!v.is_zero()) x[piv[r]] = v;
    }
    return x;
}

// Row space of a matrix in reduced echelon form.
inline std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("inverse: not square");
    RrefResult rr = rref(hstack(m, Matrix::identity(m.rows)));
    if ((int)rr.pivots.size() != m.rows || (m.rows && rr.pivots.back() >= m.rows)) return std::nullopt;
    Matrix inv(m.rows, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (auto& [j, v] : rr.mat.row[i])
            if (j >= m.rows) inv.row[i][j - m.rows] = v;
    return inv;
}

class Subspace {
  public:
    int ambient_dim = 0;
    Matrix basis;  // rref, no zero rows
    std::vector<int> pivots;

    Subspace() = default;
    explicit Subspace(int ambient) : ambient_dim(ambient), basis(0, ambient) {}

    static Subspace from_rows(const Matrix& rows) {
        Subspace s;
        s.ambient_dim = rows.cols;
        auto [R, piv] = rref(rows);
        s.basis = Matrix((int)piv.size(), rows.cols);
        for (size_t i = 0; i < piv.size(); ++i) s.basis.row[i] = R.row[i];
        s.pivots = piv;
        return s;
    }
    static Subspace full(int ambient) { return from_rows(Matrix::identity(ambient)); }

    int dim() const { return basis.rows; }
    bool is_zero() const { return basis.rows == 0; }

    bool contains(const SVec& v) const {
        SVec r = v;
        for (int i = 0; i < basis.rows; ++i) {
            auto it = r.find(pivots[i]);
            if (it == r.end()) continue;
            Scalar f = -it->second;
            svec_add_scaled(r, basis.row[i], f);
        }
        return r.empty();
    }
    bool contains(const Subspace& o) const {
        for (int i = 0; i < o.basis.rows; ++i)
            if (!contains(o.basis.row[i])) return false;
        return true;
    }
    SVec reduce(const SVec& v) const {
        // canonical coset representative of v modulo this subspace
        SVec r = v;
        for (int i = 0; i < basis.rows; ++i) {
            auto it = r.find(pivots[i]);
            if (it == r.end()) continue;
            Scalar f = -it->second;
            svec_add_scaled(r, basis.row[i], f);
        }
        return r;
    }

    bool operator==(const Subspace& o) const { return ambient_dim == o.ambient_dim && basis == o.basis; }
};

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim != b.ambient_dim) throw std::invalid_argument("subspace_sum: ambient mismatch");
    return Subspace::from_rows(vstack(a.basis, b.basis));
}

// Zassenhaus: rref of [A|A ; B|0], rows with zero left half give intersection.
inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim != b.ambient_dim) throw std::invalid_argument("subspace_intersect: ambient mismatch");
    int n = a.ambient_dim;
    Matrix top = hstack(a.basis, a.basis);
    Matrix bot = hstack(b.basis, Matrix(b.basis.rows, n));
    auto [R, piv] = rref(vstack(top, bot));
    Matrix inter(0, n);
    for (int i = 0; i < R.rows; ++i) {
        bool left_zero = R.row[i].empty() || R.row[i].begin()->first >= n;
        if (!left_zero || R.row[i].empty()) continue;
        SVec right;
        for (auto& [j, v] : R.row[i]) right[j - n] = v;
        inter.row.push_back(std::move(right));
        ++inter.rows;
    }
    return Subspace::from_rows(inter);
}

// Coordinates (ambient basis indices) of coset representatives for ambient/b.
inline std::vector<int> quotient_coords(const Subspace& b) {
    std::vector<bool> is_pivot(b.ambient_dim, false);
    for (int c : b.pivots) is_pivot[c] = true;
    std::vector<int> out;
    for (int c = 0; c < b.ambient_dim; ++c)
        if (!is_pivot[c]) out.push_back(c);
    return out;
}

}  // namespace qweyl
