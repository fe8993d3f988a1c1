#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qweyl/linalg.hpp"

#include <random>

using namespace qweyl;

TEST_CASE("rref identity and zero") {
    Matrix id = Matrix::identity(3);
    auto r = rref(id);
    CHECK(r.mat == id);
    CHECK(r.pivots == std::vector<int>({0, 1, 2}));

    Matrix z(2, 3);
    auto rz = rref(z);
    CHECK(rz.mat.is_zero());
    CHECK(rz.pivots.empty());
}

TEST_CASE("rref with radical dependence") {
    // [[1, sqrt2], [sqrt2, 2]] has rank 1: row2 = sqrt2 * row1
    Scalar r2 = Scalar::sqrt_radical(2);
    Matrix m(2, 2);
    m.set(0, 0, Scalar(1));
    m.set(0, 1, r2);
    m.set(1, 0, r2);
    m.set(1, 1, Scalar(2));
    auto r = rref(m);
    CHECK(r.pivots == std::vector<int>({0}));
    CHECK(r.mat.at(0, 0) == Scalar(1));
    CHECK(r.mat.at(0, 1) == r2);
    CHECK(r.mat.row[1].empty());
    // second row really is sqrt2 x first
    CHECK(m.at(1, 0) == r2 * m.at(0, 0));
    CHECK(m.at(1, 1) == r2 * m.at(0, 1));
}

TEST_CASE("rref is idempotent") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int iter = 0; iter < 20; ++iter) {
        Matrix m(4, 5);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 5; ++j) m.set(i, j, Scalar(d(rng)));
        auto r1 = rref(m);
        auto r2 = rref(r1.mat);
        CHECK(r1.mat == r2.mat);
    }
}

TEST_CASE("kernel and solve verified by substitution") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int iter = 0; iter < 25; ++iter) {
        Matrix a(3, 5);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 5; ++j) a.set(i, j, Scalar(d(rng)));
        Matrix k = kernel(a);
        CHECK(k.rows + rank(a) == 5);
        for (int r = 0; r < k.rows; ++r) {
            SVec x;
            for (auto& [j, v] : k.row[r]) x[j] = v;
            CHECK(a.apply(x).empty());
        }
        // consistent rhs: b = A * x0
        SVec x0;
        for (int j = 0; j < 5; ++j) {
            Scalar v(d(rng));
            if (!v.is_zero()) x0[j] = v;
        }
        SVec b = a.apply(x0);
        auto sol = solve(a, b);
        REQUIRE(sol);
        CHECK(a.apply(*sol) == b);
    }
}

TEST_CASE("solve reports inconsistency") {
    Matrix a(2, 1);
    a.set(0, 0, Scalar(1));
    a.set(1, 0, Scalar(1));
    SVec b;
    b[0] = Scalar(1);
    b[1] = Scalar(2);
    CHECK_FALSE(solve(a, b));
}

namespace {

Subspace random_subspace(std::mt19937& rng, int ambient, int gens) {
    std::uniform_int_distribution<int> d(-2, 2);
    Matrix m(gens, ambient);
    for (int i = 0; i < gens; ++i)
        for (int j = 0; j < ambient; ++j) m.set(i, j, Scalar(d(rng)));
    return Subspace::from_rows(m);
}

}  // namespace

TEST_CASE("subspace lattice") {
    Matrix e1(1, 2), e2(1, 2);
    e1.set(0, 0, Scalar(1));
    e2.set(0, 1, Scalar(1));
    Subspace s1 = Subspace::from_rows(e1), s2 = Subspace::from_rows(e2);
    CHECK(subspace_intersect(s1, s2).is_zero());
    CHECK(subspace_sum(s1, s2).dim() == 2);
    CHECK_THROWS_AS(subspace_sum(s1, random_subspace(*(new std::mt19937(1)), 3, 1)), std::invalid_argument);

    // modular law of dimensions on random subspaces
    std::mt19937 rng(23);
    for (int iter = 0; iter < 20; ++iter) {
        Subspace a = random_subspace(rng, 6, 3), b = random_subspace(rng, 6, 3);
        CHECK(subspace_intersect(a, b).dim() + subspace_sum(a, b).dim() == a.dim() + b.dim());
        CHECK(subspace_sum(a, b).contains(a));
        CHECK(a.contains(subspace_intersect(a, b)));
    }
}

TEST_CASE("quotient coordinates") {
    Matrix m(1, 3);
    m.set(0, 1, Scalar(1));  // span e2
    Subspace b = Subspace::from_rows(m);
    CHECK(quotient_coords(b) == std::vector<int>({0, 2}));
}
