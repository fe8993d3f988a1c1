// Supervector spaces: parity bookkeeping, the parity-change functor, and
// Koszul-signed tensor products.
#pragma once

#include "linalg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qweyl {

enum class Parity : int { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return Parity((int(a) + int(b)) % 2);
}
inline Parity flip(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }

struct SuperSpace {
    std::vector<std::string> labels;
    std::vector<Parity> parity;  // parallel to labels

    int dim() const { return (int)labels.size(); }
    int even_dim() const {
        int c = 0;
        for (auto p : parity) c += (p == Parity::Even);
        return c;
    }
    int odd_dim() const { return dim() - even_dim(); }

    void add(std::string label, Parity p) {
        labels.push_back(std::move(label));
        parity.push_back(p);
    }
};

inline SuperSpace parity_shift(SuperSpace v) {
    for (auto& p : v.parity) p = flip(p);
    return v;
}

// Koszul sign picked up when an operator of parity px passes a factor of parity pm.
inline int koszul_sign(Parity px, Parity pm) {
    return (px == Parity::Odd && pm == Parity::Odd) ? -1 : 1;
}

// Basis of v (x) w: pairs (i, j) in row-major order, parities add.
struct TensorSpace {
    SuperSpace space;
    int left_dim = 0, right_dim = 0;

    int index(int i, int j) const { return i * right_dim + j; }
    std::pair<int, int> factors(int k) const { return {k / right_dim, k % right_dim}; }
};

inline TensorSpace tensor_space(const SuperSpace& v, const SuperSpace& w) {
    TensorSpace t;
    t.left_dim = v.dim();
    t.right_dim = w.dim();
    for (int i = 0; i < v.dim(); ++i)
        for (int j = 0; j < w.dim(); ++j)
            t.space.add(v.labels[i] + "(x)" + w.labels[j], v.parity[i] + w.parity[j]);
    return t;
}

// Homogeneous linear map between superspaces.
struct GradedMap {
    Matrix matrix;  // target_dim x source_dim
    Parity degree = Parity::Even;

    // Entries must connect parities differing exactly by `degree`.
    bool respects_grading(const SuperSpace& source, const SuperSpace& target) const {
        for (int i = 0; i < matrix.rows; ++i)
            for (auto& [j, v] : matrix.row[i])
                if (target.parity[i] != source.parity[j] + degree) return false;
        return true;
    }
};

}  // namespace qweyl
