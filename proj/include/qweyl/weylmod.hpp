#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clifford.hpp"
#include "coeff.hpp"
#include "pbw.hpp"

namespace qweyl {

// Everything needed to build modules over q(n) tensor A. PBWContext keeps a
// pointer into the current algebra, so the bundle is pinned in place.
struct ModuleContext {
    QAlgebra q;
    CommAlgebra a;
    CurrentAlgebra ca;
    PBWContext pbw;
    mutable FieldSpec field;  // grows on demand when Clifford diagonals need square roots

    ModuleContext(int n, CommAlgebra alg)
        : q(build_q(n)), a(std::move(alg)), ca(current_algebra(q, a)), pbw(ca) {}
    ModuleContext(const ModuleContext&) = delete;
    ModuleContext& operator=(const ModuleContext&) = delete;
};

struct Character {
    std::map<WeightVector, std::pair<int, int>> dims;  // weight -> (even, odd)

    long long total() const {
        long long t = 0;
        for (auto& [w, d] : dims) t += d.first + d.second;
        return t;
    }
    Character parity_flip() const {
        Character c;
        for (auto& [w, d] : dims) c.dims[w] = {d.second, d.first};
        return c;
    }
    bool operator==(const Character& o) const { return dims == o.dims; }
};

inline bool equal_up_to_parity(const Character& a, const Character& b) {
    return a == b || a == b.parity_flip();
}

struct WeightModule {
    const ModuleContext* ctx = nullptr;
    WeightVector lambda;
    long long depth_cap = 0;
    bool truncated = false;  // nonzero components beyond the cap were dropped
    int top = -1;

    std::vector<WeightVector> weights;
    std::map<WeightVector, int> windex;
    std::vector<std::vector<Parity>> parities;  // [weight][basis vector]
    std::vector<std::map<int, Matrix>> action;  // [generator][source weight]

    // induced-module bookkeeping (empty on quotients)
    std::vector<std::vector<UWord>> words;
    int dim_h = 0;

    int dim_at(int wi) const { return (int)parities[wi].size(); }
    long long total_dim() const {
        long long t = 0;
        for (auto& p : parities) t += (long long)p.size();
        return t;
    }
    int weight_index(const WeightVector& w) const {
        auto it = windex.find(w);
        return it == windex.end() ? -1 : it->second;
    }
    const Matrix* block(int g, int wi) const {
        auto it = action[g].find(wi);
        return it == action[g].end() ? nullptr : &it->second;
    }
    Character character() const {
        Character c;
        for (int wi = 0; wi < (int)weights.size(); ++wi) {
            int e = 0, o = 0;
            for (Parity p : parities[wi]) (p == Parity::Even ? e : o)++;
            if (e + o) c.dims[weights[wi]] = {e, o};
        }
        return c;
    }
};

// Image of v sitting in weight space wi under generator g. Returns target
// weight index -1 when the image is zero or leaves the module.
inline std::pair<int, SVec> apply_gen(const WeightModule& m, int g, int wi, const SVec& v) {
    const Matrix* b = m.block(g, wi);
    if (!b) return {-1, {}};
    SVec u = b->apply(v);
    if (u.empty()) return {-1, {}};
    int wj = m.weight_index(m.weights[wi] + m.ctx->ca.root_of(g));
    if (wj < 0) throw std::logic_error("apply_gen: stored block without a target space");
    return {wj, std::move(u)};
}

// Image under a linear combination of generators sharing one root.
inline std::pair<int, SVec> apply_combo(const WeightModule& m, const std::vector<std::pair<int, Scalar>>& gens,
                                        int wi, const SVec& v) {
    SVec acc;
    int wj = -1;
    for (auto& [g, c] : gens) {
        auto [t, u] = apply_gen(m, g, wi, v);
        if (t < 0) continue;
        if (wj >= 0 && t != wj) throw std::invalid_argument("apply_combo: mixed roots");
        wj = t;
        svec_add_scaled(acc, u, c);
    }
    if (acc.empty()) return {-1, {}};
    return {wj, std::move(acc)};
}

namespace detail {

// All normal-order words over the given generators (sorted by PBW rank) whose
// total height fits the budget; odd generators appear at most once in a row.
inline void enum_words_rec(const CurrentAlgebra& ca, const std::vector<int>& gens, size_t start,
                           long long budget, UWord& cur, std::vector<UWord>& out) {
    out.push_back(cur);
    for (size_t i = start; i < gens.size(); ++i) {
        long long h = ca.height(gens[i]);
        if (h > budget) continue;
        cur.push_back(gens[i]);
        enum_words_rec(ca, gens, ca.parity(gens[i]) == Parity::Odd ? i + 1 : i, budget - h, cur, out);
        cur.pop_back();
    }
}

inline std::vector<int> block_generators(const PBWContext& pbw, Block blk) {
    std::vector<int> gens;
    int total = pbw.ca->q_dim * pbw.ca->a_dim;
    for (int g = 0; g < total; ++g)
        if (pbw.ca->block(g) == blk) gens.push_back(g);
    std::sort(gens.begin(), gens.end(), [&](int a, int b) { return pbw.rank[a] < pbw.rank[b]; });
    return gens;
}

// Cartan word acting on a vector of H(psi), rightmost factor first. Even
// factors act by the scalar psi value, odd factors by the Clifford matrices.
inline SVec act_cartan(const HighestWeightSpace& h, const CurrentAlgebra& ca, const UWord& cartan,
                       const SVec& v0) {
    SVec v = v0;
    Scalar scale(1);
    for (auto it = cartan.rbegin(); it != cartan.rend(); ++it) {
        int b = ca.q_part(*it), j = ca.a_part(*it);
        int i = ca.rd.position(b).first;
        if (ca.parity(*it) == Parity::Even)
            scale *= h.psi.values.at(i, j);
        else
            v = h.odd_action[i][j].apply(v);
        if (scale.is_zero() || v.empty()) return {};
    }
    if (!scale.is_one()) {
        SVec scaled;
        svec_add_scaled(scaled, v, scale);
        return scaled;
    }
    return v;
}

}  // namespace detail

// Depth-truncated induced module: U(n^- tensor A) up to the depth cap, freely
// over H(psi). Components straightening past the cap are dropped and flagged.
inline WeightModule verma_truncated(const ModuleContext& ctx, const MapWeight& psi, long long depth) {
    if (!is_dominant(psi.lambda)) throw std::domain_error("verma_truncated: weight not dominant");
    if (depth < 0) throw std::invalid_argument("verma_truncated: negative depth");

    HighestWeightSpace h = build_H(psi, ctx.q, ctx.a, ctx.field);
    const CurrentAlgebra& ca = ctx.ca;
    int n = ca.rd.n;
    int dim_h = h.space.dim();

    WeightModule m;
    m.ctx = &ctx;
    m.lambda = psi.lambda;
    m.depth_cap = depth;
    m.dim_h = dim_h;

    std::vector<int> neg = detail::block_generators(ctx.pbw, Block::Negative);
    std::vector<UWord> all;
    UWord cur;
    detail::enum_words_rec(ca, neg, 0, depth, cur, all);

    std::map<WeightVector, std::vector<UWord>> by_weight;
    for (auto& w : all) by_weight[psi.lambda + ctx.pbw.weight_of(w)].push_back(w);
    for (auto& [wt, ws] : by_weight) {
        std::sort(ws.begin(), ws.end());
        int wi = (int)m.weights.size();
        m.weights.push_back(wt);
        m.windex[wt] = wi;
        m.words.push_back(ws);
        std::vector<Parity> par;
        for (auto& w : ws) {
            Parity pw = ctx.pbw.parity_of(w);
            for (int t = 0; t < dim_h; ++t) par.push_back(pw + h.space.parity[t]);
        }
        m.parities.push_back(std::move(par));
    }
    m.top = m.weight_index(psi.lambda);

    auto word_pos = [&](int wi, const UWord& w) {
        auto& ws = m.words[wi];
        auto it = std::lower_bound(ws.begin(), ws.end(), w);
        if (it == ws.end() || *it != w) throw std::logic_error("verma_truncated: missing basis word");
        return (int)(it - ws.begin());
    };

    int total = ca.q_dim * ca.a_dim;
    m.action.assign(total, {});
    for (int g = 0; g < total; ++g) {
        WeightVector root = ca.root_of(g);
        for (int wi = 0; wi < (int)m.weights.size(); ++wi) {
            WeightVector target = m.weights[wi] + root;
            long long tdepth = cone_depth(psi.lambda, target);
            int wj = m.weight_index(target);
            Matrix blockm(wj >= 0 ? m.dim_at(wj) : 0, m.dim_at(wi));
            bool nonzero = false;
            for (int col = 0; col < (int)m.words[wi].size(); ++col) {
                const UWord& w = m.words[wi][col];
                UWord gw;
                gw.reserve(w.size() + 1);
                gw.push_back(g);
                gw.insert(gw.end(), w.begin(), w.end());
                UElement nf = ctx.pbw.straighten(gw);
                for (auto& [nw, c] : nf) {
                    auto parts = ctx.pbw.split(nw);
                    if (!parts.positive.empty()) continue;
                    for (int hi = 0; hi < dim_h; ++hi) {
                        SVec u = detail::act_cartan(h, ca, parts.cartan, SVec{{hi, Scalar(1)}});
                        if (u.empty()) continue;
                        if (wj < 0 || tdepth > depth) {
                            m.truncated = true;
                            continue;
                        }
                        int rowbase = word_pos(wj, parts.negative) * dim_h;
                        for (auto& [t, uc] : u) {
                            Scalar add = c * uc;
                            if (add.is_zero()) continue;
                            blockm.set(rowbase + t, col * dim_h + hi, blockm.at(rowbase + t, col * dim_h + hi) + add);
                            nonzero = true;
                        }
                    }
                }
            }
            if (nonzero) m.action[g][wi] = std::move(blockm);
        }
    }
    return m;
}

// Smallest graded subspace containing the seeds and closed under every
// generator, inside the module's weight window.
inline std::vector<Subspace> submodule_generated(const WeightModule& m,
                                                 const std::vector<std::pair<int, SVec>>& seeds) {
    std::vector<Subspace> sub;
    for (int wi = 0; wi < (int)m.weights.size(); ++wi) sub.emplace_back(m.dim_at(wi));
    std::vector<std::pair<int, SVec>> work;
    auto insert = [&](int wi, const SVec& v) {
        if (v.empty() || sub[wi].contains(v)) return;
        Matrix rows = sub[wi].basis;
        rows.row.push_back(v);
        ++rows.rows;
        sub[wi] = Subspace::from_rows(rows);
        work.push_back({wi, v});
    };
    for (auto& [wi, v] : seeds) insert(wi, v);
    int total = (int)m.action.size();
    while (!work.empty()) {
        auto [wi, v] = std::move(work.back());
        work.pop_back();
        for (int g = 0; g < total; ++g) {
            auto [wj, u] = apply_gen(m, g, wi, v);
            if (wj >= 0) insert(wj, u);
        }
    }
    return sub;
}

// Quotient by a generator-invariant graded subspace; zero weight spaces drop.
inline WeightModule quotient_module(const WeightModule& m, const std::vector<Subspace>& sub) {
    WeightModule r;
    r.ctx = m.ctx;
    r.lambda = m.lambda;
    r.depth_cap = m.depth_cap;
    r.truncated = m.truncated;

    std::vector<int> newindex(m.weights.size(), -1);
    std::vector<std::vector<int>> reps(m.weights.size());
    std::vector<Matrix> proj(m.weights.size()), inj(m.weights.size());
    for (int wi = 0; wi < (int)m.weights.size(); ++wi) {
        reps[wi] = quotient_coords(sub[wi]);
        if (reps[wi].empty()) continue;
        int nd = (int)reps[wi].size(), od = m.dim_at(wi);
        Matrix p(nd, od), in(od, nd);
        for (int c = 0; c < od; ++c) {
            SVec red = sub[wi].reduce(SVec{{c, Scalar(1)}});
            for (auto& [col, v] : red) {
                int pos = (int)(std::lower_bound(reps[wi].begin(), reps[wi].end(), col) - reps[wi].begin());
                if (pos >= nd || reps[wi][pos] != col)
                    throw std::logic_error("quotient_module: reduction left a pivot coordinate");
                p.set(pos, c, v);
            }
        }
        for (int k = 0; k < nd; ++k) in.set(reps[wi][k], k, Scalar(1));
        newindex[wi] = (int)r.weights.size();
        r.weights.push_back(m.weights[wi]);
        r.windex[m.weights[wi]] = newindex[wi];
        std::vector<Parity> par;
        for (int c : reps[wi]) par.push_back(m.parities[wi][c]);
        r.parities.push_back(std::move(par));
        proj[wi] = std::move(p);
        inj[wi] = std::move(in);
    }
    if (m.top >= 0) r.top = newindex[m.top];

    r.action.assign(m.action.size(), {});
    for (int g = 0; g < (int)m.action.size(); ++g)
        for (auto& [wi, blk] : m.action[g]) {
            if (newindex[wi] < 0) continue;
            int wj = m.weight_index(m.weights[wi] + m.ctx->ca.root_of(g));
            if (wj < 0 || newindex[wj] < 0) {
                // image must die in the quotient
                Matrix probe = blk * inj[wi];
                if (wj >= 0) {
                    for (int c = 0; c < probe.cols; ++c) {
                        SVec colv;
                        for (int rr = 0; rr < probe.rows; ++rr) {
                            Scalar v = probe.at(rr, c);
                            if (!v.is_zero()) colv[rr] = v;
                        }
                        if (!sub[wj].contains(colv))
                            throw std::logic_error("quotient_module: subspace not invariant");
                    }
                }
                continue;
            }
            Matrix nb = proj[wj] * blk * inj[wi];
            if (!nb.is_zero()) r.action[g][newindex[wi]] = std::move(nb);
        }
    return r;
}

// Defining module axiom on every basis triple. For truncated modules the check
// is restricted to sources whose intermediate images stay inside the window.
inline std::optional<std::string> check_module_axioms(const WeightModule& m, bool guard_window = false) {
    const CurrentAlgebra& ca = m.ctx->ca;
    int total = (int)m.action.size();
    auto hinc = [&](int g) -> long long {
        switch (ca.block(g)) {
            case Block::Negative: return ca.height(g);
            case Block::Positive: return -(long long)ca.height(g);
            default: return 0;
        }
    };
    auto block_or_zero = [&](int g, int wi, int rows, int cols) {
        const Matrix* b = m.block(g, wi);
        return b ? *b : Matrix(rows, cols);
    };
    for (int x = 0; x < total; ++x)
        for (int y = 0; y < total; ++y) {
            SVec br = ca.L.bracket_basis(x, y);
            int sign = koszul_sign(ca.parity(x), ca.parity(y));
            for (int wi = 0; wi < (int)m.weights.size(); ++wi) {
                if (m.dim_at(wi) == 0) continue;
                long long d = cone_depth(m.lambda, m.weights[wi]);
                if (guard_window) {
                    long long hx = hinc(x), hy = hinc(y);
                    if ((hx > 0 && d + hx > m.depth_cap) || (hy > 0 && d + hy > m.depth_cap) ||
                        d + hx + hy > m.depth_cap)
                        continue;
                }
                int cols = m.dim_at(wi);
                WeightVector wxy = m.weights[wi] + ca.root_of(x) + ca.root_of(y);
                int wt = m.weight_index(wxy);
                int rows = wt >= 0 ? m.dim_at(wt) : 0;

                auto compose = [&](int first, int second) {
                    WeightVector mid = m.weights[wi] + ca.root_of(first);
                    int wm = m.weight_index(mid);
                    if (wm < 0) return Matrix(rows, cols);
                    return block_or_zero(second, wm, rows, m.dim_at(wm)) *
                           block_or_zero(first, wi, m.dim_at(wm), cols);
                };
                Matrix rhs = compose(y, x) - compose(x, y) * Scalar(sign);
                Matrix lhs(rows, cols);
                for (auto& [k, v] : br) lhs = lhs + block_or_zero(k, wi, rows, cols) * v;
                if (!(lhs == rhs))
                    return "module axiom fails for generators (" + std::to_string(x) + ", " +
                           std::to_string(y) + ") at weight index " + std::to_string(wi);
            }
        }
    return std::nullopt;
}

// Generators of a root map weight spaces along that root; Cartan acts by the
// weight itself on the even part.
inline std::optional<std::string> check_weight_compatibility(const WeightModule& m) {
    const CurrentAlgebra& ca = m.ctx->ca;
    for (int g = 0; g < (int)m.action.size(); ++g)
        for (auto& [wi, blk] : m.action[g]) {
            int wj = m.weight_index(m.weights[wi] + ca.root_of(g));
            if (wj < 0 || blk.rows != m.dim_at(wj) || blk.cols != m.dim_at(wi))
                return "generator " + std::to_string(g) + " block shape mismatch at weight index " +
                       std::to_string(wi);
        }
    for (int i = 0; i < ca.rd.n; ++i) {
        std::vector<std::pair<int, Scalar>> ki;
        for (auto& [j, c] : m.ctx->a.unit) ki.push_back({ca.gen(ca.rd.cartan_even(i), j), c});
        for (int wi = 0; wi < (int)m.weights.size(); ++wi)
            for (int col = 0; col < m.dim_at(wi); ++col) {
                auto [wj, u] = apply_combo(m, ki, wi, SVec{{col, Scalar(1)}});
                SVec want;
                if (m.weights[wi][i] != 0) want[col] = Scalar(m.weights[wi][i]);
                if ((wj >= 0 ? u : SVec{}) != want)
                    return "k_" + std::to_string(i + 1) + " does not act by the weight at index " +
                           std::to_string(wi);
            }
    }
    return std::nullopt;
}

inline bool generated_by_top(const WeightModule& m) {
    if (m.top < 0) return false;
    std::vector<std::pair<int, SVec>> seeds;
    for (int c = 0; c < m.dim_at(m.top); ++c) seeds.push_back({m.top, SVec{{c, Scalar(1)}}});
    auto sub = submodule_generated(m, seeds);
    for (int wi = 0; wi < (int)m.weights.size(); ++wi)
        if (sub[wi].dim() != m.dim_at(wi)) return false;
    return true;
}

// Sorted coordinates of mu dominance-below lambda with equal sum.
inline bool in_dominance_hull(const WeightVector& lambda, const WeightVector& mu) {
    WeightVector s = mu;
    std::sort(s.begin(), s.end(), std::greater<long long>());
    long long pl = 0, pm = 0;
    for (size_t i = 0; i < lambda.size(); ++i) {
        pl += lambda[i];
        pm += s[i];
        if (pm > pl) return false;
    }
    return pl == pm;
}

// Local Weyl module: quotient of the truncated induced module by the closure
// of the f_i^{lambda(h_i)+1} seeds, with the depth grown until an empty band
// of width n-1 certifies that nothing was cut off.
inline WeightModule local_weyl(const ModuleContext& ctx, const MapWeight& psi, long long depth_limit = 64) {
    const WeightVector& lam = psi.lambda;
    int n = ctx.q.rd.n;
    if ((int)lam.size() != n) throw std::invalid_argument("local_weyl: weight size mismatch");
    if (!is_lambda_plus(lam)) throw std::domain_error("local_weyl: weight not admissible");

    long long band = n - 1;
    long long depth = std::max<long long>((lam.front() - lam.back()) * n, band);
    for (int i = 0; i + 1 < n; ++i) depth = std::max(depth, lam[i] - lam[i + 1] + 1);

    for (;; depth *= 2) {
        if (depth > depth_limit)
            throw std::runtime_error("local_weyl: depth cap " + std::to_string(depth_limit) +
                                     " exceeded before stabilization");
        WeightModule v = verma_truncated(ctx, psi, depth);
        std::vector<std::pair<int, SVec>> seeds;
        for (int i = 0; i + 1 < n; ++i) {
            // f_i tensor the unit of A (not the first basis element)
            std::vector<std::pair<int, Scalar>> combo;
            for (auto& [j, c] : ctx.a.unit) combo.push_back({ctx.ca.gen(ctx.q.rd.f(i), j), c});
            long long power = lam[i] - lam[i + 1] + 1;
            for (int t = 0; t < v.dim_at(v.top); ++t) {
                int wi = v.top;
                SVec cur{{t, Scalar(1)}};
                for (long long s = 0; s < power && wi >= 0; ++s) std::tie(wi, cur) = apply_combo(v, combo, wi, cur);
                if (wi >= 0) seeds.push_back({wi, std::move(cur)});
            }
        }
        WeightModule w = quotient_module(v, submodule_generated(v, seeds));
        bool stable = true;
        for (int wi = 0; wi < (int)w.weights.size() && stable; ++wi) {
            long long d = cone_depth(lam, w.weights[wi]);
            if (d > depth - band && d <= depth && w.dim_at(wi) > 0) stable = false;
        }
        if (!stable) continue;
        for (auto& wt : w.weights)
            if (!in_dominance_hull(lam, wt))
                throw std::logic_error("local_weyl: support escapes the dominance hull");
        w.truncated = false;
        return w;
    }
}

inline WeightModule bar_L(const ModuleContext& ctx, const WeightVector& lambda, long long depth_limit = 64) {
    if (ctx.a.dim != 1) throw std::invalid_argument("bar_L: coefficient algebra must be the base field");
    return local_weyl(ctx, map_weight_from_lambda(lambda, 1), depth_limit);
}

namespace detail {

// Normal-order words over positive generators of exact total root delta.
inline void enum_pos_words_rec(const CurrentAlgebra& ca, const std::vector<int>& gens, size_t start,
                               const WeightVector& remaining, UWord& cur, std::vector<UWord>& out) {
    if (is_zero(remaining)) {
        out.push_back(cur);
        return;
    }
    WeightVector zero(remaining.size(), 0);
    for (size_t i = start; i < gens.size(); ++i) {
        WeightVector rem = remaining - ca.root_of(gens[i]);
        if (!in_cone(rem, zero)) continue;
        cur.push_back(gens[i]);
        enum_pos_words_rec(ca, gens, ca.parity(gens[i]) == Parity::Odd ? i + 1 : i, rem, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

// Maximal submodule as the joint kernel of all raising monomials into the top
// space; the quotient is the irreducible highest weight module.
inline std::vector<Subspace> maximal_submodule(const WeightModule& m) {
    if (!generated_by_top(m)) throw std::invalid_argument("maximal_submodule: not generated by the top space");
    const CurrentAlgebra& ca = m.ctx->ca;
    std::vector<int> pos = detail::block_generators(m.ctx->pbw, Block::Positive);
    std::vector<Subspace> sub;
    for (int wi = 0; wi < (int)m.weights.size(); ++wi) {
        WeightVector delta = m.lambda - m.weights[wi];
        std::vector<UWord> wordsup;
        UWord cur;
        detail::enum_pos_words_rec(ca, pos, 0, delta, cur, wordsup);
        Matrix stacked(0, m.dim_at(wi));
        for (auto& w : wordsup) {
            Matrix comp = Matrix::identity(m.dim_at(wi));
            int at = wi;
            bool dead = false;
            for (auto it = w.rbegin(); it != w.rend() && !dead; ++it) {
                const Matrix* b = m.block(*it, at);
                if (!b) {
                    dead = true;
                    break;
                }
                comp = *b * comp;
                at = m.weight_index(m.weights[at] + ca.root_of(*it));
            }
            if (dead || at != m.top) continue;
            stacked = vstack(stacked, comp);
        }
        sub.push_back(Subspace::from_rows(kernel(stacked)));
    }
    return sub;
}

inline WeightModule irreducible_quotient(const WeightModule& m) {
    return quotient_module(m, maximal_submodule(m));
}

struct IPsiResult {
    IdealSubspace ideal;
    int n_psi = 0;
    bool full_annihilation = false;  // (q tensor I^{n_psi}) kills the top space
};

// I_psi: largest ideal of A whose even Cartan current kills the top space,
// and the least power whose lowering current kills it too.
inline IPsiResult compute_I_psi(const WeightModule& w, const MapWeight& psi, const ModuleContext& ctx) {
    const CurrentAlgebra& ca = ctx.ca;
    int n = ca.rd.n, ad = ctx.a.dim;
    if (w.top < 0) throw std::invalid_argument("compute_I_psi: module has no top space");

    // conditions on a = sum c_j b_j: entries of sum_j c_j (k_i tensor b_j) on the top space
    Matrix cond(0, ad);
    for (int i = 0; i < n; ++i) {
        std::vector<const Matrix*> blocks(ad, nullptr);
        for (int j = 0; j < ad; ++j) blocks[j] = w.block(ca.gen(ca.rd.cartan_even(i), j), w.top);
        int d = w.dim_at(w.top);
        for (int rr = 0; rr < d; ++rr)
            for (int cc = 0; cc < d; ++cc) {
                SVec rowc;
                for (int j = 0; j < ad; ++j)
                    if (blocks[j]) {
                        Scalar v = blocks[j]->at(rr, cc);
                        if (!v.is_zero()) rowc[j] = v;
                    }
                if (!rowc.empty()) {
                    cond.row.push_back(std::move(rowc));
                    ++cond.rows;
                }
            }
    }
    Subspace s = Subspace::from_rows(kernel(cond));
    IPsiResult res{largest_ideal_inside(s, ctx.a), 0, false};

    auto current_kills_top = [&](int qgen, const SVec& a_elem) {
        std::vector<std::pair<int, Scalar>> combo;
        for (auto& [j, c] : a_elem) combo.push_back({ca.gen(qgen, j), c});
        for (int t = 0; t < w.dim_at(w.top); ++t) {
            auto [wj, u] = apply_combo(w, combo, w.top, SVec{{t, Scalar(1)}});
            if (wj >= 0) return false;
        }
        return true;
    };
    std::vector<int> neg_q, all_q;
    for (int b = 0; b < ca.q_dim; ++b) {
        if (ca.rd.block(b) == Block::Negative) neg_q.push_back(b);
        all_q.push_back(b);
    }
    IdealSubspace power = res.ideal;
    for (int p = 1; p <= ad + 1; ++p) {
        bool killed = true;
        for (int b : neg_q)
            for (int r = 0; r < power.space.dim() && killed; ++r)
                if (!current_kills_top(b, power.space.basis.row[r])) killed = false;
        if (killed) {
            res.n_psi = p;
            res.full_annihilation = true;
            for (int b : all_q)
                for (int r = 0; r < power.space.dim() && res.full_annihilation; ++r)
                    if (!current_kills_top(b, power.space.basis.row[r])) res.full_annihilation = false;
            return res;
        }
        power = ideal_product(power, res.ideal);
    }
    throw std::logic_error("compute_I_psi: no annihilating power found");
}

namespace detail {

inline UElement uelem_scale(UElement e, const Scalar& c) {
    if (c.is_zero()) return {};
    for (auto& [w, v] : e) v *= c;
    return e;
}
inline void uelem_add(UElement& dst, const UElement& src, const Scalar& c = Scalar(1)) {
    for (auto& [w, v] : src) {
        auto it = dst.find(w);
        if (it == dst.end()) {
            Scalar t = v * c;
            if (!t.is_zero()) dst.emplace(w, std::move(t));
        } else {
            it->second += v * c;
            if (it->second.is_zero()) dst.erase(it);
        }
    }
}

}  // namespace detail

// Coefficients p^0..p^r of exp(-sum_{s>=1} (h_alpha tensor a^s)/s u^s) inside
// U(h_even tensor A); the Cartan currents commute, so the series is honest.
inline std::vector<UElement> garland_series(const ModuleContext& ctx, std::pair<int, int> alpha,
                                            const SVec& a_elem, int r) {
    auto [i, j] = alpha;
    const CurrentAlgebra& ca = ctx.ca;
    std::vector<SVec> apow(r + 1);
    apow[0] = ctx.a.unit;
    for (int s = 1; s <= r; ++s) apow[s] = ctx.a.multiply(apow[s - 1], a_elem);

    auto h_tensor = [&](const SVec& b) {
        UElement e;
        for (auto& [m, c] : b) {
            detail::uelem_add(e, UElement{{{ca.gen(ca.rd.cartan_even(i), m)}, c}});
            detail::uelem_add(e, UElement{{{ca.gen(ca.rd.cartan_even(j), m)}, -c}});
        }
        return e;
    };

    std::vector<UElement> c(r + 1);  // c[s] = -(h_alpha tensor a^s)/s
    for (int s = 1; s <= r; ++s)
        c[s] = detail::uelem_scale(h_tensor(apow[s]), Scalar(mpq_class(-1, s)));

    std::vector<UElement> p(r + 1);
    p[0] = UElement{{UWord{}, Scalar(1)}};
    for (int k = 1; k <= r; ++k) {
        UElement acc;
        for (int s = 1; s <= k; ++s)
            detail::uelem_add(acc, ctx.pbw.multiply(c[s], p[k - s]), Scalar(s));
        p[k] = detail::uelem_scale(std::move(acc), Scalar(mpq_class(1, k)));
    }
    return p;
}

// Divided powers (x_alpha tensor a)^{(r)} (y_alpha tensor 1)^{(r+1)} = (-1)^r
// sum_i (y_alpha tensor a^{r-i}) p^i modulo the right ideal generated by the
// raising current. The divided-power normalization x^{(r)} = x^r/r! is the one
// under which the identity closes; with plain powers a remainder survives.
inline bool garland_check(const ModuleContext& ctx, std::pair<int, int> alpha, const SVec& a_elem, int r) {
    auto [i, j] = alpha;
    if (!(0 <= i && i < j && j < ctx.q.rd.n)) throw std::invalid_argument("garland_check: not a positive root");
    if (r < 1) throw std::invalid_argument("garland_check: r >= 1 required");
    const CurrentAlgebra& ca = ctx.ca;

    auto tensor_letter = [&](int qb, const SVec& b) {
        UElement e;
        for (auto& [m, c] : b) detail::uelem_add(e, UElement{{{ca.gen(qb, m)}, c}});
        return e;
    };
    UElement x = tensor_letter(ctx.q.rd.even_label(i, j), a_elem);
    UElement y1 = tensor_letter(ctx.q.rd.even_label(j, i), ctx.a.unit);

    mpq_class fact(1);
    for (int s = 2; s <= r; ++s) fact *= s;
    mpq_class fact1 = fact * (r + 1);
    UElement lhs{{UWord{}, Scalar(GaussianRational(mpq_class(1) / (fact * fact1)))}};
    for (int s = 0; s < r; ++s) lhs = ctx.pbw.multiply(lhs, x);
    for (int s = 0; s < r + 1; ++s) lhs = ctx.pbw.multiply(lhs, y1);

    std::vector<SVec> apow(r + 1);
    apow[0] = ctx.a.unit;
    for (int s = 1; s <= r; ++s) apow[s] = ctx.a.multiply(apow[s - 1], a_elem);
    std::vector<UElement> p = garland_series(ctx, alpha, a_elem, r);

    UElement rhs;
    for (int k = 0; k <= r; ++k)
        detail::uelem_add(rhs, ctx.pbw.multiply(tensor_letter(ctx.q.rd.even_label(j, i), apow[r - k]), p[k]));

    UElement diff = lhs;
    detail::uelem_add(diff, rhs, Scalar(r % 2 ? 1 : -1));
    return ctx.pbw.lies_in_positive_right_ideal(diff);
}

// Largest quotient whose weights lie in nu - Q^+.
inline WeightModule truncate_to_cone(const WeightModule& m, const WeightVector& nu) {
    std::vector<std::pair<int, SVec>> seeds;
    for (int wi = 0; wi < (int)m.weights.size(); ++wi) {
        if (in_cone(nu, m.weights[wi])) continue;
        for (int c = 0; c < m.dim_at(wi); ++c) seeds.push_back({wi, SVec{{c, Scalar(1)}}});
    }
    return quotient_module(m, submodule_generated(m, seeds));
}

struct RelationReport {
    bool pass = true;
    std::string witness;
};

// The three defining relations of a global highest weight quotient, checked on
// every top-space basis vector.
inline RelationReport check_global_relations(const WeightModule& w, const WeightVector& lambda) {
    const CurrentAlgebra& ca = w.ctx->ca;
    RelationReport rep;
    auto fail = [&](std::string why) {
        rep.pass = false;
        if (rep.witness.empty()) rep.witness = std::move(why);
    };
    if (w.top < 0) {
        fail("no top space");
        return rep;
    }
    int total = ca.q_dim * ca.a_dim;
    for (int g = 0; g < total; ++g) {
        if (ca.block(g) != Block::Positive) continue;
        if (w.block(g, w.top)) fail("(n+ tensor A) does not kill the top space: generator " + std::to_string(g));
    }
    for (int i = 0; i < ca.rd.n; ++i) {
        std::vector<std::pair<int, Scalar>> ki;
        for (auto& [m, c] : w.ctx->a.unit) ki.push_back({ca.gen(ca.rd.cartan_even(i), m), c});
        for (int t = 0; t < w.dim_at(w.top); ++t) {
            auto [wj, u] = apply_combo(w, ki, w.top, SVec{{t, Scalar(1)}});
            SVec want;
            if (lambda[i] != 0) want[t] = Scalar(lambda[i]);
            if ((wj >= 0 ? u : SVec{}) != want)
                fail("k_" + std::to_string(i + 1) + " does not act by lambda on top vector " + std::to_string(t));
        }
    }
    for (int i = 0; i + 1 < ca.rd.n; ++i) {
        std::vector<std::pair<int, Scalar>> fi;
        for (auto& [m, c] : w.ctx->a.unit) fi.push_back({ca.gen(ca.rd.f(i), m), c});
        long long power = lambda[i] - lambda[i + 1] + 1;
        for (int t = 0; t < w.dim_at(w.top); ++t) {
            int wi = w.top;
            SVec cur{{t, Scalar(1)}};
            for (long long s = 0; s < power && wi >= 0; ++s) std::tie(wi, cur) = apply_combo(w, fi, wi, cur);
            if (wi >= 0)
                fail("f_" + std::to_string(i + 1) + "^" + std::to_string(power) +
                     " does not kill top vector " + std::to_string(t));
        }
    }
    return rep;
}

}  // namespace qweyl
