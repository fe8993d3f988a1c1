#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qweyl/liesuper.hpp"

using namespace qweyl;

TEST_CASE("build_q dimensions and P-commutation") {
    CHECK_THROWS_AS(build_q(1), std::invalid_argument);
    QAlgebra q = build_q(2);
    CHECK(q.L.space.even_dim() == 4);
    CHECK(q.L.space.odd_dim() == 4);
    for (int b = 0; b < q.L.dim(); ++b) CHECK(check_p_commutation(q.rd, b));
}

TEST_CASE("q(n) satisfies the Lie superalgebra axioms") {
    for (int n : {2, 3}) {
        QAlgebra q = build_q(n);
        CHECK(q.L.check_grading());
        CHECK(q.L.check_skew_supersymmetry());
        CHECK(q.L.check_super_jacobi());
    }
}

TEST_CASE("chevalley brackets in q(2)") {
    QAlgebra q = build_q(2);
    const auto& rd = q.rd;
    // [e1, f1] = k1 - k2
    SVec h = q.L.bracket_basis(rd.e(0), rd.f(0));
    CHECK(h == SVec({{rd.cartan_even(0), Scalar(1)}, {rd.cartan_even(1), Scalar(-1)}}));
    // [k1', k1'] = 2 k1
    CHECK(q.L.bracket_basis(rd.cartan_odd(0), rd.cartan_odd(0)) == SVec({{rd.cartan_even(0), Scalar(2)}}));
}

TEST_CASE("root datum") {
    for (int n : {2, 3, 4}) {
        QAlgebra q = build_q(n);
        CHECK((int)q.rd.positive_roots.size() == n * (n - 1) / 2);
        // every root space is (1|1) and root vectors are eigenvectors of h0
        for (auto& alpha : q.rd.positive_roots) {
            auto [ev, od] = q.rd.root_space(alpha);
            CHECK_FALSE(q.rd.is_odd_label(ev));
            CHECK(q.rd.is_odd_label(od));
            for (int l = 0; l < n; ++l) {
                for (int v : {ev, od}) {
                    SVec br = q.L.bracket_basis(q.rd.cartan_even(l), v);
                    SVec want;
                    if (alpha[l] != 0) want[v] = Scalar(alpha[l]);
                    CHECK(br == want);
                }
            }
        }
        // Phi is S_n-stable: swapping two coordinates of a root gives a root
        auto is_root = [&](const WeightVector& w) {
            for (auto& r : q.rd.positive_roots)
                if (r == w) return true;
            for (auto& r : q.rd.positive_roots) {
                WeightVector neg(n, 0);
                for (int k = 0; k < n; ++k) neg[k] = -r[k];
                if (neg == w) return true;
            }
            return false;
        };
        for (auto& r : q.rd.positive_roots)
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    WeightVector w = r;
                    std::swap(w[i], w[j]);
                    if (!is_zero(w)) CHECK(is_root(w));
                }
    }
}

TEST_CASE("triangular decomposition") {
    QAlgebra q = build_q(2);
    auto t = triangular_decomposition(q);
    CHECK(t.upper == std::set<int>({q.rd.e(0), q.rd.e_odd(0)}));
    CHECK((int)t.cartan.size() == 4);  // dim (2|2)
    CHECK(t.lower.size() + t.cartan.size() + t.upper.size() == (size_t)q.L.dim());
    CHECK(check_triangular_closure(q, t));

    QAlgebra q3 = build_q(3);
    CHECK(check_triangular_closure(q3, triangular_decomposition(q3)));
}

TEST_CASE("presentation relations hold in the matrix realization") {
    for (int n : {2, 3, 4}) {
        QAlgebra q = build_q(n);
        auto rep = check_presentation(q);
        for (auto& c : rep.checks) {
            INFO(c.relation);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("sl2 triples") {
    QAlgebra q = build_q(3);
    WeightVector a13{1, 0, -1};
    auto t = sl2_triple(q, a13);
    CHECK(t.x == q.rd.even_label(0, 2));
    CHECK(t.y == q.rd.even_label(2, 0));
    CHECK(t.h_pos == q.rd.cartan_even(0));
    CHECK(t.h_neg == q.rd.cartan_even(2));
    CHECK_THROWS_AS(sl2_triple(q, WeightVector{1, 1, -2}), std::invalid_argument);
}

TEST_CASE("current algebra") {
    QAlgebra q = build_q(2);
    CommAlgebra a3 = truncated_poly(3);
    CurrentAlgebra c = current_algebra(q, a3);
    CHECK(c.L.dim() == 24);
    CHECK(c.L.space.even_dim() == 12);
    CHECK(c.L.check_skew_supersymmetry());
    CHECK(c.L.check_super_jacobi());

    // [e1(x)t, f1(x)t] = (k1 - k2)(x)t^2 in q(2)(x)C[t]/(t^3)
    SVec br = c.L.bracket_basis(c.gen(q.rd.e(0), 1), c.gen(q.rd.f(0), 1));
    SVec want;
    want[c.gen(q.rd.cartan_even(0), 2)] = Scalar(1);
    want[c.gen(q.rd.cartan_even(1), 2)] = Scalar(-1);
    CHECK(br == want);

    // ... and = 0 in q(2)(x)C[t]/(t^2)
    CurrentAlgebra c2 = current_algebra(q, truncated_poly(2));
    CHECK(c2.L.dim() == 16);
    CHECK(c2.L.bracket_basis(c2.gen(q.rd.e(0), 1), c2.gen(q.rd.f(0), 1)).empty());

    // q embeds via x -> x(x)1
    for (int i = 0; i < q.L.dim(); ++i)
        for (int j = 0; j < q.L.dim(); ++j) {
            SVec qbr = q.L.bracket_basis(i, j);
            SVec cbr = c2.L.bracket_basis(c2.gen(i, 0), c2.gen(j, 0));
            SVec lifted;
            for (auto& [k, v] : qbr) lifted[c2.gen(k, 0)] = v;
            CHECK(cbr == lifted);
        }
}

TEST_CASE("weight vector predicates") {
    CHECK(is_lambda_plus(WeightVector{1, 0}));
    CHECK(is_lambda_plus(WeightVector{0, 0}));
    CHECK_FALSE(is_lambda_plus(WeightVector{1, 1}));
    CHECK_FALSE(is_lambda_plus(WeightVector{0, 1}));
    CHECK(is_dominant(WeightVector{1, 1}));
    CHECK(in_cone(WeightVector{1, 0}, WeightVector{0, 1}));
    CHECK_FALSE(in_cone(WeightVector{1, 0}, WeightVector{2, -1}));
    CHECK(cone_depth(WeightVector{1, 0}, WeightVector{0, 1}) == 1);
    CHECK(cone_depth(WeightVector{2, 0, 0}, WeightVector{0, 0, 2}) == 4);
}
