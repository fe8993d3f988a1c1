#pragma once

#include <random>
#include <string>
#include <vector>

#include "tensor.hpp"
#include "weylmod.hpp"

namespace qweyl {

// q(n) acting on its defining space: column vectors with the first n
// coordinates even and the last n odd, coordinate i of weight eps_{i mod n}.
// Built directly from the matrix realization; serves as an independent
// oracle for the induced-module pipeline. Requires the base field as A.
inline WeightModule defining_module(const ModuleContext& ctx) {
    if (ctx.a.dim != 1) throw std::invalid_argument("defining_module: coefficient algebra must be the base field");
    const RootDatum& rd = ctx.q.rd;
    int n = rd.n;
    WeightModule m;
    m.ctx = &ctx;
    m.lambda = WeightVector(n, 0);
    m.lambda[0] = 1;
    for (int i = 0; i < n; ++i) {
        WeightVector w(n, 0);
        w[i] = 1;
        m.windex[w] = i;
        m.weights.push_back(w);
        m.parities.push_back({Parity::Even, Parity::Odd});
    }
    m.top = 0;
    m.depth_cap = n - 1;
    m.action.assign(ctx.ca.q_dim * ctx.ca.a_dim, {});
    for (int b = 0; b < ctx.ca.q_dim; ++b) {
        detail::IMat mat = detail::q_basis_matrix(rd, b);
        int g = ctx.ca.gen(b, 0);
        for (int wi = 0; wi < n; ++wi) {
            WeightVector target = m.weights[wi] + rd.root_of(b);
            int wj = m.weight_index(target);
            if (wj < 0) continue;
            Matrix blk(2, 2);
            // rows/cols 0 = even coordinate, 1 = odd coordinate of the space
            blk.set(0, 0, Scalar(mat[wj][wi]));
            blk.set(0, 1, Scalar(mat[wj][wi + n]));
            blk.set(1, 0, Scalar(mat[wj + n][wi]));
            blk.set(1, 1, Scalar(mat[wj + n][wi + n]));
            if (!blk.is_zero()) m.action[g][wi] = std::move(blk);
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Acceptance checks: one self-contained verification per structural property,
// each returning a pass flag and a human-readable detail line.
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

// Left ideal of the Clifford regular representation generated by v.
inline Subspace clifford_left_ideal(const CliffordAlgebra& c, const SVec& v) {
    Matrix seed(1, (int)c.dim());
    seed.row[0] = v;
    Subspace cur = Subspace::from_rows(seed);
    for (;;) {
        Matrix rows = cur.basis;
        for (int g = 0; g < c.r; ++g)
            for (int i = 0; i < cur.basis.rows; ++i) {
                rows.row.push_back(c.multiply(SVec{{1 << g, Scalar(1)}}, cur.basis.row[i]));
                ++rows.rows;
            }
        Subspace next = Subspace::from_rows(rows);
        if (next.dim() == cur.dim()) return next;
        cur = next;
    }
}

}  // namespace detail

// Skew-supersymmetry, super Jacobi, grading, and the full presentation
// relation list in the matrix realization, for n = 2..4.
inline CheckResult check_algebra_construction() {
    CheckResult r{"algebra construction and presentation relations (n = 2..4)"};
    for (int n : {2, 3, 4}) {
        QAlgebra q = build_q(n);
        if (!q.L.check_grading() || !q.L.check_skew_supersymmetry() || !q.L.check_super_jacobi()) {
            r.detail = "superalgebra axioms fail for n = " + std::to_string(n);
            return r;
        }
        PresentationReport rep = check_presentation(q);
        for (auto& c : rep.checks)
            if (!c.pass) {
                r.detail = "n = " + std::to_string(n) + ": relation failed: " + c.relation;
                return r;
            }
    }
    r.pass = true;
    r.detail = "all axioms and presentation relations hold";
    return r;
}

// Root count, (1|1) root spaces with correct Cartan eigenvalues, symmetric
// group stability, and the simple-root sum property (each simple root plus
// some positive root is again a root), for n = 2..4.
inline CheckResult check_root_data() {
    CheckResult r{"root data (n = 2..4)"};
    std::string sum_note;
    bool all = true;
    for (int n : {2, 3, 4}) {
        QAlgebra q = build_q(n);
        const RootDatum& rd = q.rd;
        if ((int)rd.positive_roots.size() != n * (n - 1) / 2) {
            r.detail = "positive root count wrong for n = " + std::to_string(n);
            return r;
        }
        std::vector<WeightVector> all_roots = rd.positive_roots;
        for (auto& a : rd.positive_roots) {
            WeightVector neg(n, 0);
            for (int k = 0; k < n; ++k) neg[k] = -a[k];
            all_roots.push_back(neg);
        }
        auto is_root = [&](const WeightVector& w) {
            for (auto& a : all_roots)
                if (a == w) return true;
            return false;
        };
        for (auto& alpha : rd.positive_roots) {
            auto [ev, od] = rd.root_space(alpha);
            if (rd.is_odd_label(ev) || !rd.is_odd_label(od)) {
                r.detail = "root space parities wrong for n = " + std::to_string(n);
                return r;
            }
            for (int l = 0; l < n; ++l)
                for (int v : {ev, od}) {
                    SVec br = q.L.bracket_basis(rd.cartan_even(l), v);
                    SVec want;
                    if (alpha[l] != 0) want[v] = Scalar(alpha[l]);
                    if (!(br == want)) {
                        r.detail = "Cartan eigenvalue wrong for n = " + std::to_string(n);
                        return r;
                    }
                }
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    WeightVector w = alpha;
                    std::swap(w[i], w[j]);
                    if (!is_zero(w) && !is_root(w)) {
                        r.detail = "root set not stable under coordinate swaps, n = " + std::to_string(n);
                        return r;
                    }
                }
        }
        // simple-root sum property: alpha simple, exists positive alpha' with
        // alpha + alpha' again a root
        bool holds = true;
        for (int i = 0; i + 1 < n && holds; ++i) {
            WeightVector alpha(n, 0);
            alpha[i] = 1;
            alpha[i + 1] = -1;
            bool found = false;
            for (auto& ap : rd.positive_roots)
                if (is_root(alpha + ap)) found = true;
            holds = found;
        }
        if (!sum_note.empty()) sum_note += ", ";
        sum_note += "n=" + std::to_string(n) + (holds ? " holds" : " fails");
        if (!holds) all = false;
    }
    r.pass = all;
    r.detail = "simple-root sum property: " + sum_note;
    return r;
}

// e1 f1^k = f1^k e1 + k f1^{k-1} (h1 - (k-1)) by straightening for k = 1..5,
// plus two-strategy confluence on 100 seeded random words.
inline CheckResult check_pbw_identities(unsigned seed = 20240817) {
    CheckResult r{"PBW straightening identities and confluence"};
    QAlgebra q = build_q(2);
    CurrentAlgebra ca = current_algebra(q, complex_field());
    PBWContext pbw(ca);
    int e1 = ca.gen(q.rd.e(0), 0), f1 = ca.gen(q.rd.f(0), 0);
    int k1 = ca.gen(q.rd.cartan_even(0), 0), k2 = ca.gen(q.rd.cartan_even(1), 0);
    for (long k = 1; k <= 5; ++k) {
        UWord w{e1};
        w.insert(w.end(), k, f1);
        UElement got = pbw.straighten(w);
        UWord fke((size_t)k, f1);
        fke.push_back(e1);
        UWord fk1((size_t)(k - 1), f1), fk2 = fk1;
        fk1.push_back(k1);
        fk2.push_back(k2);
        UElement want{{fke, Scalar(1)}, {fk1, Scalar(k)}, {fk2, Scalar(-k)}};
        if (k > 1) want[UWord((size_t)(k - 1), f1)] = Scalar(-k * (k - 1));
        if (!(got == want)) {
            r.detail = "commutation identity fails at k = " + std::to_string(k);
            return r;
        }
    }
    CurrentAlgebra ca2 = current_algebra(q, truncated_poly(2));
    PBWContext pbw2(ca2);
    int total = ca2.q_dim * ca2.a_dim;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> len(1, 6), pick(0, total - 1);
    for (int trial = 0; trial < 100; ++trial) {
        UWord w;
        int l = len(rng);
        for (int i = 0; i < l; ++i) w.push_back(pick(rng));
        UElement a = pbw2.straighten(w, Scalar(1), Strategy::LeftmostInnermost);
        UElement b = pbw2.straighten(w, Scalar(1), Strategy::RightmostOutermost);
        if (!(a == b)) {
            r.detail = "strategies disagree on trial " + std::to_string(trial);
            return r;
        }
        for (auto& [nw, c] : a)
            if (pbw2.defect(nw, Strategy::LeftmostInnermost) != -1) {
                r.detail = "non-normal output on trial " + std::to_string(trial);
                return r;
            }
    }
    r.pass = true;
    r.detail = "identities for k = 1..5 and 100-word confluence (seed " + std::to_string(seed) + ")";
    return r;
}

// Divided-power lowering identity lands in the right ideal of the raising
// currents for r = 1, 2, 3 with a = t over C[t]/(t^4).
inline CheckResult check_garland_membership() {
    CheckResult r{"lowering-current membership identity (r = 1..3 over C[t]/(t^4))"};
    ModuleContext ctx(2, truncated_poly(4));
    SVec t{{1, Scalar(1)}};
    for (int k = 1; k <= 3; ++k)
        if (!garland_check(ctx, {0, 1}, t, k)) {
            r.detail = "membership fails at r = " + std::to_string(k);
            return r;
        }
    r.pass = true;
    r.detail = "membership holds for r = 1, 2, 3";
    return r;
}

// Irreducible Clifford module dimensions against the regular-representation
// oracle for r = 0..4, and the zero-coordinate Cartan currents acting as zero
// on the highest weight space for lambda = (1,0).
inline CheckResult check_clifford_layer() {
    CheckResult r{"Clifford modules and highest weight spaces"};
    for (int rr = 0; rr <= 4; ++rr) {
        CliffordAlgebra c(quadratic_pair(rr, Matrix::identity(rr)));
        SVec v{{0, Scalar(1)}};
        for (int j = 0; 2 * j + 1 < rr; ++j) {
            SVec factor{{0, Scalar(1)}};
            svec_add_scaled(factor, c.word({2 * j, 2 * j + 1}), Scalar::i());
            v = c.multiply(v, factor);
        }
        long expected = 1L << ((rr + 1) / 2);
        if (detail::clifford_left_ideal(c, v).dim() != expected) {
            r.detail = "regular representation oracle disagrees at r = " + std::to_string(rr);
            return r;
        }
        FieldSpec spec;
        CliffordModule m = irreducible_module(c, spec);
        if (m.space.dim() != expected || !check_clifford_relations(m, c.pair.form)) {
            r.detail = "irreducible module wrong at r = " + std::to_string(rr);
            return r;
        }
    }
    ModuleContext ctx(2, complex_field());
    HighestWeightSpace h = build_H(map_weight_from_lambda({1, 0}), ctx.q, ctx.a, ctx.field);
    if (h.space.dim() != 2 || !h.odd_action[1][0].is_zero()) {
        r.detail = "zero-coordinate odd Cartan does not act as zero on H for lambda = (1,0)";
        return r;
    }
    r.pass = true;
    r.detail = "dimensions 2^ceil(r/2) for r = 0..4; zero-coordinate current kills H((1,0))";
    return r;
}

// f_i^{lambda(h_i)+1} annihilates the top space of the irreducible quotient
// for lambda in {(1,0), (2,0), (2,1)} over q(2).
inline CheckResult check_top_annihilation() {
    CheckResult r{"lowering powers annihilate irreducible tops"};
    ModuleContext ctx(2, complex_field());
    for (WeightVector lam : {WeightVector{1, 0}, WeightVector{2, 0}, WeightVector{2, 1}}) {
        WeightModule irr = irreducible_quotient(bar_L(ctx, lam));
        int f1 = ctx.ca.gen(ctx.q.rd.f(0), 0);
        long long power = lam[0] - lam[1] + 1;
        for (int t = 0; t < irr.dim_at(irr.top); ++t) {
            int wi = irr.top;
            SVec cur{{t, Scalar(1)}};
            for (long long s = 0; s < power && wi >= 0; ++s) std::tie(wi, cur) = apply_gen(irr, f1, wi, cur);
            if (wi >= 0) {
                r.detail = "survives for lambda = (" + std::to_string(lam[0]) + "," + std::to_string(lam[1]) + ")";
                return r;
            }
        }
    }
    r.pass = true;
    r.detail = "f^{lambda(h)+1} kills the top for all three weights";
    return r;
}

// The irreducible quotient of the (1,0) module matches the explicit matrix
// module on C^{2|2} up to parity change.
inline CheckResult check_defining_module_iso() {
    CheckResult r{"irreducible (1,0) quotient matches the matrix module"};
    ModuleContext ctx(2, complex_field());
    WeightModule irr = irreducible_quotient(bar_L(ctx, {1, 0}));
    WeightModule d = defining_module(ctx);
    if (d.total_dim() != 4 || irr.total_dim() != 4) {
        r.detail = "dimension mismatch: irr " + std::to_string(irr.total_dim());
        return r;
    }
    IsoReport iso = is_isomorphic_up_to_parity(irr, d);
    if (iso.kind == IsoKind::NotIso) {
        r.detail = "no isomorphism found";
        return r;
    }
    r.pass = true;
    r.detail = std::string("isomorphic (") +
               (iso.kind == IsoKind::Iso ? "plain" : "after parity change") + "), witness on " +
               std::to_string(iso.witness.size()) + " weight spaces";
    return r;
}

// Local Weyl module over C[t]/(t^2) for lambda = (1,0) with the nilpotent
// part of psi zero: stabilization, support, symmetric character, regression
// dimensions, and full annihilation by the computed ideal power.
inline CheckResult check_local_weyl_finiteness() {
    CheckResult r{"local Weyl module over C[t]/(t^2) stabilizes"};
    ModuleContext ctx(2, truncated_poly(2));
    Matrix values(2, 2);
    values.set(0, 0, Scalar(1));
    MapWeight psi = map_weight(values, ctx.a.unit);
    WeightModule w = local_weyl(ctx, psi);
    if (w.truncated) {
        r.detail = "no stabilization certificate";
        return r;
    }
    Character ch = w.character();
    for (auto& [wt, d] : ch.dims) {
        if (!(wt == WeightVector{1, 0} || wt == WeightVector{0, 1})) {
            r.detail = "support escapes {(1,0),(0,1)}";
            return r;
        }
        if (!(ch.dims.at(WeightVector{wt[1], wt[0]}) == d)) {
            r.detail = "character not symmetric under coordinate swap";
            return r;
        }
    }
    if (!(ch.dims.at({1, 0}) == std::pair<int, int>{1, 1}) ||
        !(ch.dims.at({0, 1}) == std::pair<int, int>{1, 1})) {
        r.detail = "regression dimensions changed";
        return r;
    }
    IPsiResult ip = compute_I_psi(w, psi, ctx);
    if (ip.ideal.space.dim() != 1 || !ip.full_annihilation) {
        r.detail = "annihilating ideal or its power is wrong";
        return r;
    }
    r.pass = true;
    r.detail = "total dim 4, ideal dim 1, power " + std::to_string(ip.n_psi) + " annihilates fully";
    return r;
}

// Over the base field the one-variable and general local Weyl constructions
// agree up to parity change on characters.
inline CheckResult check_base_field_consistency() {
    CheckResult r{"base-field local Weyl characters agree"};
    ModuleContext ctx(2, complex_field());
    for (WeightVector lam : {WeightVector{1, 0}, WeightVector{2, 0}, WeightVector{2, 1}}) {
        Character a = local_weyl(ctx, map_weight_from_lambda(lam, 1)).character();
        Character b = bar_L(ctx, lam).character();
        if (!equal_up_to_parity(a, b)) {
            r.detail = "characters differ for lambda = (" + std::to_string(lam[0]) + "," +
                       std::to_string(lam[1]) + ")";
            return r;
        }
    }
    r.pass = true;
    r.detail = "characters equal for (1,0), (2,0), (2,1)";
    return r;
}

// Tensor factorization over C (+) C with comaximal annihilators, plus the
// non-comaximal negative control.
inline CheckResult check_tensor_factorization() {
    CheckResult r{"tensor factorization over a direct sum"};
    ModuleContext ctx(2, direct_sum(complex_field(), complex_field()));
    Matrix v1(2, 2), v2(2, 2);
    v1.set(0, 0, Scalar(1));
    v2.set(0, 1, Scalar(1));
    TensorReport rep;
    try {
        rep = verify_tensor_theorem(ctx, map_weight(v1, ctx.a.unit), map_weight(v2, ctx.a.unit));
    } catch (const std::exception& e) {
        r.detail = std::string("factorization failed: ") + e.what();
        return r;
    }
    ModuleContext ctx2(2, truncated_poly(2));
    MapWeight same = map_weight_from_lambda({1, 0}, ctx2.a.unit, 2);
    bool rejected = false;
    try {
        verify_tensor_theorem(ctx2, same, same);
    } catch (const std::domain_error&) {
        rejected = true;
    }
    if (!rejected) {
        r.detail = "non-comaximal annihilators were not rejected";
        return r;
    }
    r.pass = true;
    const char* branch = rep.branch == TensorBranch::Single     ? "one copy"
                         : rep.branch == TensorBranch::Double   ? "two copies"
                                                                : "two copies, one parity-flipped";
    r.detail = std::string("branch: ") + branch + "; tensor dim " +
               std::to_string(rep.tensor_character.total()) + ", target dim " +
               std::to_string(rep.weyl_character.total()) + "; negative control rejected";
    return r;
}

// Cone truncation is idempotent and its support stays inside the cone, on
// representatives of the module families used above.
inline CheckResult check_cone_truncation() {
    CheckResult r{"cone truncation idempotence and support"};
    ModuleContext cc(2, complex_field());
    ModuleContext cp(2, truncated_poly(2));
    Matrix values(2, 2);
    values.set(0, 0, Scalar(1));
    ModuleContext cs(2, direct_sum(complex_field(), complex_field()));
    Matrix s1(2, 2), s2(2, 2);
    s1.set(0, 0, Scalar(1));
    s2.set(0, 1, Scalar(1));

    std::vector<WeightModule> mods;
    mods.push_back(defining_module(cc));
    mods.push_back(local_weyl(cp, map_weight(values, cp.a.unit)));
    mods.push_back(module_tensor(local_weyl(cs, map_weight(s1, cs.a.unit)),
                                 local_weyl(cs, map_weight(s2, cs.a.unit))));
    for (size_t k = 0; k < mods.size(); ++k) {
        const WeightModule& m = mods[k];
        WeightVector nu = m.lambda;
        WeightModule c1 = truncate_to_cone(m, nu);
        WeightModule c2 = truncate_to_cone(c1, nu);
        if (!(c1.character() == c2.character())) {
            r.detail = "not idempotent on module " + std::to_string(k);
            return r;
        }
        for (int wi = 0; wi < (int)c1.weights.size(); ++wi)
            if (c1.dim_at(wi) > 0 && !in_cone(nu, c1.weights[wi])) {
                r.detail = "support escapes the cone on module " + std::to_string(k);
                return r;
            }
        for (int g = 0; g < (int)c1.action.size(); ++g)
            if (!(c1.action[g] == c2.action[g])) {
                r.detail = "action changed under repeated truncation on module " + std::to_string(k);
                return r;
            }
    }
    r.pass = true;
    r.detail = "idempotent with in-cone support on all three module families";
    return r;
}

// Named groups of checks for the command line; "all" is the acceptance gate.
inline std::vector<CheckResult> run_suite(const std::string& suite, unsigned seed = 20240817) {
    std::vector<CheckResult> out;
    auto want = [&](const char* s) { return suite == s || suite == "all"; };
    if (want("presentation")) {
        out.push_back(check_algebra_construction());
        out.push_back(check_root_data());
    }
    if (want("garland")) {
        out.push_back(check_pbw_identities(seed));
        out.push_back(check_garland_membership());
    }
    if (want("clifford")) out.push_back(check_clifford_layer());
    if (want("prop4a")) out.push_back(check_top_annihilation());
    if (suite == "all") {
        out.push_back(check_defining_module_iso());
        out.push_back(check_local_weyl_finiteness());
        out.push_back(check_base_field_consistency());
    }
    if (want("tensor")) out.push_back(check_tensor_factorization());
    if (suite == "all") out.push_back(check_cone_truncation());
    if (out.empty()) throw std::invalid_argument("unknown suite: " + suite);
    return out;
}

}  // namespace qweyl
