#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "liesuper.hpp"

namespace qweyl {

// Normal-order word in U(q tensor A): generator indices, nondecreasing in the
// fixed generator order, odd generators never repeated adjacently.
using UWord = std::vector<int>;
using UElement = std::map<UWord, Scalar>;

struct PBWMonomial {
    std::vector<std::pair<int, int>> factors;  // (generator, exponent)
    WeightVector weight;
    Parity parity = Parity::Even;
};

enum class Strategy { LeftmostInnermost, RightmostOutermost };

// Fixed total order: negative even, negative odd, k_i, k_i', positive even,
// positive odd; root blocks by (height, lexicographic root, coefficient index),
// Cartan generators by (row, coefficient index).
class PBWContext {
  public:
    const CurrentAlgebra* ca = nullptr;
    std::vector<int> rank;  // generator -> position in the order

    explicit PBWContext(const CurrentAlgebra& c) : ca(&c) {
        int total = c.q_dim * c.a_dim;
        std::vector<int> gens(total);
        for (int g = 0; g < total; ++g) gens[g] = g;
        auto key = [&](int g) {
            int b = c.q_part(g);
            Block blk = c.rd.block(b);
            int odd = c.parity(g) == Parity::Odd ? 1 : 0;
            int major = blk == Block::Negative ? odd : blk == Block::Cartan ? 2 + odd : 4 + odd;
            long h = 0, lex = 0;
            if (blk == Block::Cartan) {
                h = c.rd.position(b).first;
            } else {
                h = c.rd.height(b);
                auto [i, j] = c.rd.position(b);
                lex = (long)i * c.rd.n + j;
            }
            return std::make_tuple(major, h, lex, c.a_part(g));
        };
        std::sort(gens.begin(), gens.end(), [&](int a, int b) { return key(a) < key(b); });
        rank.assign(total, 0);
        for (int pos = 0; pos < total; ++pos) rank[gens[pos]] = pos;
    }

  private:
    mutable std::map<UWord, UElement> memo_li, memo_ro;

    // Rewrites one word to normal form, caching the result per strategy. Map
    // node stability keeps the returned reference valid across recursive
    // insertions. Each rewrite step either shortens the word or removes an
    // adjacent inversion, so the recursion terminates.
    const UElement& straighten_cached(const UWord& start, Strategy s) const {
        auto& memo = s == Strategy::LeftmostInnermost ? memo_li : memo_ro;
        auto hit = memo.find(start);
        if (hit != memo.end()) return hit->second;
        UElement out;
        const UWord& w = start;
        int i = defect(w, s);
        auto add = [&](const UWord& nw, const Scalar& c) {
            if (c.is_zero()) return;
            for (auto& [rw, rc] : straighten_cached(nw, s)) {
                auto it = out.find(rw);
                if (it == out.end()) {
                    out.emplace(rw, rc * c);
                } else {
                    it->second += rc * c;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
        };
        auto contracted = [&](int k) {
            UWord nw;
            nw.reserve(w.size() - 1);
            nw.insert(nw.end(), w.begin(), w.begin() + i);
            nw.push_back(k);
            nw.insert(nw.end(), w.begin() + i + 2, w.end());
            return nw;
        };
        if (i < 0) {
            out.emplace(w, Scalar(1));
        } else if (w[i] == w[i + 1]) {
            // odd square: x'x' = [x', x']/2
            for (auto& [k, v] : ca->L.bracket_basis(w[i], w[i]))
                add(contracted(k), v * Scalar(mpq_class(1, 2)));
        } else {
            UWord sw = w;
            std::swap(sw[i], sw[i + 1]);
            add(sw, Scalar(koszul_sign(ca->parity(w[i]), ca->parity(w[i + 1]))));
            for (auto& [k, v] : ca->L.bracket_basis(w[i], w[i + 1])) add(contracted(k), Scalar(v));
        }
        return memo.emplace(start, std::move(out)).first->second;
    }

  public:
    int defect(const UWord& w, Strategy s) const {
        int found = -1;
        for (int i = 0; i + 1 < (int)w.size(); ++i) {
            bool bad = rank[w[i]] > rank[w[i + 1]] ||
                       (w[i] == w[i + 1] && ca->parity(w[i]) == Parity::Odd);
            if (!bad) continue;
            if (s == Strategy::LeftmostInnermost) return i;
            found = i;
        }
        return found;
    }

    UElement straighten(const UWord& start, const Scalar& coeff = Scalar(1),
                        Strategy s = Strategy::LeftmostInnermost) const {
        for (int g : start)
            if (g < 0 || g >= (int)rank.size()) throw std::invalid_argument("straighten: unknown generator");
        UElement out;
        if (coeff.is_zero()) return out;
        for (auto& [w, c] : straighten_cached(start, s)) out.emplace(w, c * coeff);
        return out;
    }

    UElement straighten_element(const UElement& e, Strategy s = Strategy::LeftmostInnermost) const {
        UElement out;
        for (auto& [w, c] : e)
            for (auto& [nw, nc] : straighten(w, c, s)) {
                auto it = out.find(nw);
                if (it == out.end()) {
                    out.emplace(nw, nc);
                } else {
                    it->second += nc;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
        return out;
    }

    UElement multiply(const UElement& a, const UElement& b, Strategy s = Strategy::LeftmostInnermost) const {
        UElement prod;
        for (auto& [wa, ca_] : a)
            for (auto& [wb, cb] : b) {
                UWord w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                Scalar c = ca_ * cb;
                auto it = prod.find(w);
                if (it == prod.end()) {
                    prod.emplace(std::move(w), std::move(c));
                } else {
                    it->second += c;
                    if (it->second.is_zero()) prod.erase(it);
                }
            }
        return straighten_element(prod, s);
    }

    PBWMonomial to_monomial(const UWord& w) const {
        PBWMonomial m;
        m.weight = WeightVector(ca->rd.n, 0);
        for (int g : w) {
            if (!m.factors.empty() && m.factors.back().first == g)
                ++m.factors.back().second;
            else
                m.factors.push_back({g, 1});
            m.weight = m.weight + ca->root_of(g);
            m.parity = m.parity + ca->parity(g);
        }
        return m;
    }

    WeightVector weight_of(const UWord& w) const {
        WeightVector acc(ca->rd.n, 0);
        for (int g : w) acc = acc + ca->root_of(g);
        return acc;
    }
    Parity parity_of(const UWord& w) const {
        Parity p = Parity::Even;
        for (int g : w) p = p + ca->parity(g);
        return p;
    }

    // In normal order the positive block sits at the end of the word.
    bool has_positive_factor(const UWord& w) const {
        return !w.empty() && ca->block(w.back()) == Block::Positive;
    }
    bool lies_in_positive_right_ideal(const UElement& e) const {
        for (auto& [w, c] : e)
            if (!has_positive_factor(w)) return false;
        return true;
    }

    // Normal words split into contiguous negative, Cartan, positive runs.
    struct SplitWord {
        UWord negative, cartan, positive;
    };
    SplitWord split(const UWord& w) const {
        SplitWord s;
        for (int g : w) switch (ca->block(g)) {
                case Block::Negative: s.negative.push_back(g); break;
                case Block::Cartan: s.cartan.push_back(g); break;
                case Block::Positive: s.positive.push_back(g); break;
            }
        return s;
    }
};

}  // namespace qweyl
