#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "weylmod.hpp"

namespace qweyl {

inline void require_same_context(const WeightModule& a, const WeightModule& b) {
    if (a.ctx != b.ctx) throw std::invalid_argument("modules live over different algebras");
}

inline Parity parity_sum(Parity a, Parity b) { return a == b ? Parity::Even : Parity::Odd; }

// Same action, parities reversed. The left-module axioms do not involve the
// parity of the vector, so the action matrices carry over unchanged.
inline WeightModule parity_flip(const WeightModule& m) {
    WeightModule r = m;
    for (auto& pv : r.parities)
        for (auto& p : pv) p = p == Parity::Even ? Parity::Odd : Parity::Even;
    return r;
}

// Koszul-signed tensor product: x(m (x) n) = xm (x) n + (-1)^{|x||m|} m (x) xn.
// Basis at a weight: pair blocks (wa, wb) with weights adding up, each block
// row-major over (vector of a, vector of b).
inline WeightModule module_tensor(const WeightModule& a, const WeightModule& b) {
    require_same_context(a, b);
    const ModuleContext& ctx = *a.ctx;

    WeightModule t;
    t.ctx = a.ctx;
    t.lambda = a.lambda + b.lambda;
    t.depth_cap = a.depth_cap + b.depth_cap;
    t.truncated = a.truncated || b.truncated;

    std::map<WeightVector, std::vector<std::pair<int, int>>> pairs;
    for (int pa = 0; pa < (int)a.weights.size(); ++pa)
        for (int pb = 0; pb < (int)b.weights.size(); ++pb)
            pairs[a.weights[pa] + b.weights[pb]].push_back({pa, pb});

    std::map<std::pair<int, int>, int> offset;  // pair block -> offset in its weight space
    for (auto& [wt, plist] : pairs) {
        int wi = (int)t.weights.size();
        t.weights.push_back(wt);
        t.windex[wt] = wi;
        std::vector<Parity> ps;
        for (auto& [pa, pb] : plist) {
            offset[{pa, pb}] = (int)ps.size();
            for (Parity qa : a.parities[pa])
                for (Parity qb : b.parities[pb]) ps.push_back(parity_sum(qa, qb));
        }
        t.parities.push_back(std::move(ps));
    }

    int total_gens = ctx.ca.q_dim * ctx.ca.a_dim;
    t.action.assign(total_gens, {});
    for (int g = 0; g < total_gens; ++g) {
        WeightVector root = ctx.ca.root_of(g);
        Parity pg = ctx.ca.parity(g);
        for (int wi = 0; wi < (int)t.weights.size(); ++wi) {
            auto& plist = pairs[t.weights[wi]];
            int wj = t.weight_index(t.weights[wi] + root);
            if (wj < 0) continue;
            Matrix blk((int)t.parities[wj].size(), (int)t.parities[wi].size());
            bool nonzero = false;
            for (auto& [pa, pb] : plist) {
                int src = offset.at({pa, pb});
                int da = a.dim_at(pa), db = b.dim_at(pb);
                if (const Matrix* A = a.block(g, pa)) {
                    int pa2 = a.weight_index(a.weights[pa] + root);
                    int dst = offset.at({pa2, pb});
                    for (int ra = 0; ra < A->rows; ++ra)
                        for (auto& [ia, v] : A->row[ra])
                            for (int ib = 0; ib < db; ++ib) {
                                blk.row[dst + ra * db + ib][src + ia * db + ib] += v;
                                nonzero = true;
                            }
                }
                if (const Matrix* B = b.block(g, pb)) {
                    int pb2 = b.weight_index(b.weights[pb] + root);
                    int dst = offset.at({pa, pb2});
                    int db2 = b.dim_at(pb2);
                    for (int ia = 0; ia < da; ++ia) {
                        Scalar sign(koszul_sign(pg, a.parities[pa][ia]));
                        for (int rb = 0; rb < B->rows; ++rb)
                            for (auto& [ib, v] : B->row[rb]) {
                                blk.row[dst + ia * db2 + rb][src + ia * db + ib] += v * sign;
                                nonzero = true;
                            }
                    }
                }
            }
            if (nonzero) {
                for (auto& r : blk.row)
                    for (auto it = r.begin(); it != r.end();)
                        it = it->second.is_zero() ? r.erase(it) : std::next(it);
                t.action[g].emplace(wi, std::move(blk));
            }
        }
    }
    t.top = t.weight_index(t.lambda);
    return t;
}

// External direct sum: first summand's basis first in every weight space.
inline WeightModule direct_sum_modules(const WeightModule& a, const WeightModule& b) {
    require_same_context(a, b);
    const ModuleContext& ctx = *a.ctx;

    WeightModule t;
    t.ctx = a.ctx;
    t.lambda = a.lambda;
    t.depth_cap = std::max(a.depth_cap, b.depth_cap);
    t.truncated = a.truncated || b.truncated;

    std::map<WeightVector, std::pair<int, int>> members;  // weight -> (a index or -1, b index)
    for (int pa = 0; pa < (int)a.weights.size(); ++pa) members[a.weights[pa]] = {pa, -1};
    for (int pb = 0; pb < (int)b.weights.size(); ++pb) {
        auto it = members.find(b.weights[pb]);
        if (it == members.end())
            members[b.weights[pb]] = {-1, pb};
        else
            it->second.second = pb;
    }
    std::vector<std::pair<int, int>> src;  // per new weight index
    for (auto& [wt, ab] : members) {
        int wi = (int)t.weights.size();
        t.weights.push_back(wt);
        t.windex[wt] = wi;
        src.push_back(ab);
        std::vector<Parity> ps;
        if (ab.first >= 0) ps.insert(ps.end(), a.parities[ab.first].begin(), a.parities[ab.first].end());
        if (ab.second >= 0) ps.insert(ps.end(), b.parities[ab.second].begin(), b.parities[ab.second].end());
        t.parities.push_back(std::move(ps));
    }

    int total_gens = ctx.ca.q_dim * ctx.ca.a_dim;
    t.action.assign(total_gens, {});
    auto place = [&](const WeightModule& part, int which, int g, int wi) {
        int pi = which == 0 ? src[wi].first : src[wi].second;
        if (pi < 0) return;
        const Matrix* blk = part.block(g, pi);
        if (!blk) return;
        int wj = t.weight_index(part.weights[pi] + ctx.ca.root_of(g));
        int roff = which == 0 || src[wj].first < 0 ? 0 : a.dim_at(src[wj].first);
        int coff = which == 0 || src[wi].first < 0 ? 0 : a.dim_at(src[wi].first);
        Matrix& out = t.action[g]
                          .try_emplace(wi, (int)t.parities[wj].size(), (int)t.parities[wi].size())
                          .first->second;
        for (int r = 0; r < blk->rows; ++r)
            for (auto& [c, v] : blk->row[r]) out.row[roff + r][coff + c] = v;
    };
    for (int g = 0; g < total_gens; ++g)
        for (int wi = 0; wi < (int)t.weights.size(); ++wi) {
            place(a, 0, g, wi);
            place(b, 1, g, wi);
        }
    t.top = t.weight_index(t.lambda);
    return t;
}

// Basis of graded maps phi_mu : a_mu -> b_mu of the given degree that
// super-commute with every generator: phi x = (-1)^{deg |x|} x phi.
inline std::vector<std::map<WeightVector, Matrix>> intertwiners(const WeightModule& a, const WeightModule& b,
                                                                Parity deg) {
    require_same_context(a, b);
    const ModuleContext& ctx = *a.ctx;

    // unknowns: entries phi_mu(r, c) of the admitted parity pattern, for
    // weights present in both modules
    std::map<std::tuple<int, int, int>, int> uid;  // (a weight index, row in b, col in a)
    std::vector<std::tuple<int, int, int>> unknowns;
    auto bw = [&](int pa) { return b.weight_index(a.weights[pa]); };
    for (int pa = 0; pa < (int)a.weights.size(); ++pa) {
        int pb = bw(pa);
        if (pb < 0) continue;
        for (int r = 0; r < b.dim_at(pb); ++r)
            for (int c = 0; c < a.dim_at(pa); ++c)
                if (parity_sum(b.parities[pb][r], a.parities[pa][c]) == deg) {
                    uid[{pa, r, c}] = (int)unknowns.size();
                    unknowns.push_back({pa, r, c});
                }
    }
    auto var = [&](int pa, int r, int c) -> int {
        auto it = uid.find({pa, r, c});
        return it == uid.end() ? -1 : it->second;
    };

    Matrix eqs(0, (int)unknowns.size());
    int total_gens = ctx.ca.q_dim * ctx.ca.a_dim;
    for (int g = 0; g < total_gens; ++g) {
        Scalar eps(koszul_sign(ctx.ca.parity(g), deg));
        WeightVector root = ctx.ca.root_of(g);
        for (int pa = 0; pa < (int)a.weights.size(); ++pa) {
            int pa2 = a.weight_index(a.weights[pa] + root);
            int pb = bw(pa);
            int pb2 = b.weight_index(a.weights[pa] + root);
            if (pb2 < 0) continue;
            const Matrix* A = a.block(g, pa);
            const Matrix* B = pb < 0 ? nullptr : b.block(g, pb);
            if (!A && !B) continue;
            for (int rb = 0; rb < b.dim_at(pb2); ++rb)
                for (int c = 0; c < a.dim_at(pa); ++c) {
                    SVec row;
                    if (A && pa2 >= 0)
                        for (int k = 0; k < A->rows; ++k) {
                            Scalar av = A->at(k, c);
                            if (av.is_zero()) continue;
                            int u = var(pa2, rb, k);
                            if (u >= 0) row[u] += av;
                        }
                    if (B)
                        for (auto& [k, bv] : B->row[rb]) {
                            int u = var(pa, k, c);
                            if (u >= 0) row[u] -= eps * bv;
                        }
                    if (!row.empty()) {
                        for (auto it = row.begin(); it != row.end();)
                            it = it->second.is_zero() ? row.erase(it) : std::next(it);
                        if (!row.empty()) {
                            eqs.row.push_back(std::move(row));
                            ++eqs.rows;
                        }
                    }
                }
        }
    }

    std::vector<std::map<WeightVector, Matrix>> out;
    Matrix ker = kernel(eqs);
    for (int s = 0; s < ker.rows; ++s) {
        std::map<WeightVector, Matrix> phi;
        for (auto& [u, v] : ker.row[s]) {
            auto [pa, r, c] = unknowns[u];
            int pb = bw(pa);
            auto it = phi.find(a.weights[pa]);
            if (it == phi.end()) it = phi.emplace(a.weights[pa], Matrix(b.dim_at(pb), a.dim_at(pa))).first;
            it->second.row[r][c] = v;
        }
        out.push_back(std::move(phi));
    }
    return out;
}

struct OddEndomorphism {
    std::map<WeightVector, Matrix> blocks;     // per weight, square
    std::optional<Scalar> square_scalar;       // c with phi^2 = c id, when scalar
};

// Odd maps commuting with the whole action in the super sense; for each basis
// solution, the square is checked for being a scalar multiple of the identity.
inline std::vector<OddEndomorphism> odd_endomorphisms(const WeightModule& m) {
    std::vector<OddEndomorphism> out;
    for (auto& phi : intertwiners(m, m, Parity::Odd)) {
        OddEndomorphism e{phi, std::nullopt};
        std::optional<Scalar> c;
        bool scalar = true;
        for (int wi = 0; wi < (int)m.weights.size() && scalar; ++wi) {
            int d = m.dim_at(wi);
            if (d == 0) continue;
            auto it = phi.find(m.weights[wi]);
            Matrix sq = it == phi.end() ? Matrix(d, d) : it->second * it->second;
            for (int r = 0; r < d && scalar; ++r)
                for (int cc = 0; cc < d && scalar; ++cc) {
                    Scalar v = sq.at(r, cc);
                    if (r != cc) {
                        if (!v.is_zero()) scalar = false;
                    } else if (!c) {
                        c = v;
                    } else if (!(*c == v)) {
                        scalar = false;
                    }
                }
        }
        if (scalar && c) e.square_scalar = *c;
        out.push_back(std::move(e));
    }
    return out;
}

namespace detail {

// Restrict a module to per-weight invariant subspaces given by homogeneous
// (parity-pure) basis rows. Throws if the action leaves the subspace.
inline WeightModule restrict_module(const WeightModule& m, const std::vector<Matrix>& bases,
                                    const std::vector<std::vector<Parity>>& bparities) {
    const ModuleContext& ctx = *m.ctx;
    WeightModule t;
    t.ctx = m.ctx;
    t.lambda = m.lambda;
    t.depth_cap = m.depth_cap;
    t.truncated = m.truncated;
    t.weights = m.weights;
    t.windex = m.windex;
    t.parities = bparities;

    int total_gens = ctx.ca.q_dim * ctx.ca.a_dim;
    t.action.assign(total_gens, {});
    for (int g = 0; g < total_gens; ++g)
        for (auto& [wi, blk] : m.action[g]) {
            int wj = m.weight_index(m.weights[wi] + ctx.ca.root_of(g));
            int ds = bases[wi].rows, dt = bases[wj].rows;
            if (ds == 0) continue;
            Matrix tgt = bases[wj].transpose();
            Matrix nb(dt, ds);
            bool nonzero = false;
            for (int c = 0; c < ds; ++c) {
                SVec img = blk.apply(bases[wi].row[c]);
                if (img.empty()) continue;
                auto coords = solve(tgt, img);
                if (!coords) throw std::logic_error("restrict_module: subspace is not invariant");
                for (auto& [r, v] : *coords) {
                    nb.row[r][c] = v;
                    nonzero = true;
                }
            }
            if (nonzero) t.action[g].emplace(wi, std::move(nb));
        }
    t.top = t.weight_index(t.lambda);
    return t;
}

// Split a subspace into parity-pure rref bases; verifies the space is graded.
inline std::pair<Matrix, std::vector<Parity>> homogeneous_basis(const Subspace& s,
                                                                const std::vector<Parity>& ambient) {
    int n = s.ambient_dim;
    Matrix even_rows(0, n), odd_rows(0, n);
    for (Parity want : {Parity::Even, Parity::Odd}) {
        Matrix coords(0, n);
        for (int j = 0; j < n; ++j)
            if (ambient[j] == want) {
                coords.row.push_back(SVec{{j, Scalar(1)}});
                ++coords.rows;
            }
        Subspace part = subspace_intersect(s, Subspace::from_rows(coords));
        (want == Parity::Even ? even_rows : odd_rows) = part.basis;
    }
    if (even_rows.rows + odd_rows.rows != s.dim())
        throw std::logic_error("homogeneous_basis: subspace is not graded");
    Matrix basis = vstack(even_rows, odd_rows);
    std::vector<Parity> par(even_rows.rows, Parity::Even);
    par.insert(par.end(), odd_rows.rows, Parity::Odd);
    return {std::move(basis), std::move(par)};
}

}  // namespace detail

// Half of the tensor product of two modules carrying odd endomorphisms with
// scalar square: normalize both squares to -1 (extending the field as
// needed), form the even involution tilde(phi1) (x) phi2, and return its +1
// eigenspace. When either factor has no odd endomorphism the whole product
// is returned.
inline WeightModule hat_tensor(const WeightModule& a, const WeightModule& b) {
    require_same_context(a, b);
    const ModuleContext& ctx = *a.ctx;
    WeightModule t = module_tensor(a, b);

    auto ea = odd_endomorphisms(a), eb = odd_endomorphisms(b);
    if (ea.empty() || eb.empty()) return t;

    auto normalize = [&](OddEndomorphism& e) {
        if (!e.square_scalar) throw std::domain_error("hat_tensor: odd endomorphism square is not scalar");
        if (e.square_scalar->is_zero()) throw std::domain_error("hat_tensor: odd endomorphism is not invertible");
        auto s = scalar_sqrt(Scalar(-1) * e.square_scalar->inverse(), ctx.field);
        if (!s) throw std::domain_error("hat_tensor: square root of normalization scalar unavailable");
        for (auto& [w, blk] : e.blocks) blk = blk * *s;
        e.square_scalar = Scalar(-1);
    };
    normalize(ea.front());
    normalize(eb.front());

    // tilde(phi1) = i phi1, so the Koszul-signed tensor map squares to +1
    std::map<WeightVector, Matrix> p1 = ea.front().blocks;
    for (auto& [w, blk] : p1) blk = blk * Scalar::i();
    const std::map<WeightVector, Matrix>& p2 = eb.front().blocks;

    // theta(m (x) n) = (-1)^{|m|} tilde(phi1) m (x) phi2 n, blockwise per pair
    std::map<WeightVector, std::vector<std::pair<int, int>>> pairs;
    for (int pa = 0; pa < (int)a.weights.size(); ++pa)
        for (int pb = 0; pb < (int)b.weights.size(); ++pb)
            pairs[a.weights[pa] + b.weights[pb]].push_back({pa, pb});

    std::vector<Matrix> bases(t.weights.size());
    std::vector<std::vector<Parity>> bpar(t.weights.size());
    for (int wi = 0; wi < (int)t.weights.size(); ++wi) {
        int d = t.dim_at(wi);
        Matrix theta(d, d);
        int off = 0;
        for (auto& [pa, pb] : pairs[t.weights[wi]]) {
            int da = a.dim_at(pa), db = b.dim_at(pb);
            auto i1 = p1.find(a.weights[pa]);
            auto i2 = p2.find(b.weights[pb]);
            if (i1 != p1.end() && i2 != p2.end())
                for (int ra = 0; ra < da; ++ra)
                    for (auto& [ia, v1] : i1->second.row[ra]) {
                        Scalar sign(a.parities[pa][ia] == Parity::Odd ? -1 : 1);
                        for (int rb = 0; rb < db; ++rb)
                            for (auto& [ib, v2] : i2->second.row[rb])
                                theta.row[off + ra * db + rb][off + ia * db + ib] += v1 * v2 * sign;
                    }
            off += da * db;
        }
        Matrix sq = theta * theta;
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                if (!(sq.at(r, c) == (r == c ? Scalar(1) : Scalar())))
                    throw std::logic_error("hat_tensor: normalized tensor map is not an involution");
        Matrix shifted = theta;
        for (int r = 0; r < d; ++r) shifted.row[r][r] -= Scalar(1);
        Subspace eig = Subspace::from_rows(kernel(shifted));
        auto [hb, hp] = detail::homogeneous_basis(eig, t.parities[wi]);
        bases[wi] = std::move(hb);
        bpar[wi] = std::move(hp);
    }
    return detail::restrict_module(t, bases, bpar);
}

enum class IsoKind { Iso, IsoAfterParity, NotIso };

struct IsoReport {
    IsoKind kind = IsoKind::NotIso;
    std::map<WeightVector, Matrix> witness;  // per-weight blocks of the isomorphism
};

namespace detail {

// Even intertwiner that is invertible on every weight space, if one exists.
// A generic combination of the solution basis works whenever any does; a few
// deterministic evaluation points cover the degree of the determinant.
inline std::optional<std::map<WeightVector, Matrix>> find_isomorphism(const WeightModule& a,
                                                                      const WeightModule& b) {
    if (!(a.character() == b.character())) return std::nullopt;
    if (a.character().total() == 0) return std::map<WeightVector, Matrix>{};
    auto basis = intertwiners(a, b, Parity::Even);
    if (basis.empty()) return std::nullopt;

    long long maxdim = 0;
    for (auto& p : a.parities) maxdim = std::max<long long>(maxdim, (long long)p.size());
    int attempts = (int)basis.size() * (int)maxdim + 2;
    for (int t = 1; t <= attempts; ++t) {
        std::map<WeightVector, Matrix> combo;
        Scalar coeff(1);
        for (auto& sol : basis) {
            for (auto& [w, blk] : sol) {
                auto it = combo.find(w);
                if (it == combo.end())
                    combo.emplace(w, blk * coeff);
                else
                    it->second = it->second + blk * coeff;
            }
            coeff *= Scalar(t);
        }
        bool ok = true;
        for (auto& [w, d] : a.character().dims) {
            auto it = combo.find(w);
            if (it == combo.end() || !inverse(it->second)) {
                ok = false;
                break;
            }
        }
        if (ok) return combo;
    }
    return std::nullopt;
}

}  // namespace detail

inline IsoReport is_isomorphic_up_to_parity(const WeightModule& a, const WeightModule& b) {
    require_same_context(a, b);
    if (auto w = detail::find_isomorphism(a, b)) return {IsoKind::Iso, std::move(*w)};
    if (auto w = detail::find_isomorphism(a, parity_flip(b))) return {IsoKind::IsoAfterParity, std::move(*w)};
    return {};
}

enum class TensorBranch { Single, Double, DoubleFlipped };

struct TensorReport {
    TensorBranch branch = TensorBranch::Single;
    IsoKind kind = IsoKind::NotIso;  // how the matched branch matched (plain or after parity flip)
    Character tensor_character;
    Character weyl_character;
    std::map<WeightVector, Matrix> witness;
    IPsiResult left_ideal, right_ideal;
};

// Local Weyl modules with comaximal annihilating ideal powers tensor to the
// local Weyl module of the sum weight, or to two copies of it (possibly with
// a parity flip on one copy). Throws when the comaximality hypothesis fails.
inline TensorReport verify_tensor_theorem(const ModuleContext& ctx, const MapWeight& psi1,
                                          const MapWeight& psi2) {
    WeightModule w1 = local_weyl(ctx, psi1);
    WeightModule w2 = local_weyl(ctx, psi2);
    TensorReport rep;
    rep.left_ideal = compute_I_psi(w1, psi1, ctx);
    rep.right_ideal = compute_I_psi(w2, psi2, ctx);
    if (!is_comaximal(ideal_power(rep.left_ideal.ideal, rep.left_ideal.n_psi),
                      ideal_power(rep.right_ideal.ideal, rep.right_ideal.n_psi)))
        throw std::domain_error("verify_tensor_theorem: annihilating ideal powers are not comaximal");

    WeightModule t = module_tensor(w1, w2);
    MapWeight psi_sum = map_weight(psi1.values + psi2.values, ctx.a.unit);
    WeightModule w = local_weyl(ctx, psi_sum);
    rep.tensor_character = t.character();
    rep.weyl_character = w.character();

    auto attempt = [&](const WeightModule& cand, TensorBranch branch) {
        IsoReport r = is_isomorphic_up_to_parity(t, cand);
        if (r.kind == IsoKind::NotIso) return false;
        rep.branch = branch;
        rep.kind = r.kind;
        rep.witness = std::move(r.witness);
        return true;
    };
    if (attempt(w, TensorBranch::Single)) return rep;
    if (attempt(direct_sum_modules(w, w), TensorBranch::Double)) return rep;
    if (attempt(direct_sum_modules(w, parity_flip(w)), TensorBranch::DoubleFlipped)) return rep;
    throw std::logic_error("verify_tensor_theorem: no permitted branch matched");
}

}  // namespace qweyl
