#pragma once

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tensor.hpp"
#include "weylmod.hpp"

namespace qweyl {

using json = nlohmann::json;

// --------------------------------------------------------------------------
// Parsing
// --------------------------------------------------------------------------

// Gaussian rational from strings like "2", "-3/4", "i", "-i", "3/2*i",
// "1/2+3*i", "2-i". Whitespace is ignored.
inline Scalar parse_scalar(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace((unsigned char)c)) s += c;
    if (s.empty()) throw std::invalid_argument("parse_scalar: empty input");

    mpq_class re(0), im(0);
    size_t pos = 0;
    bool any = false;
    while (pos < s.size()) {
        int sign = 1;
        while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') sign = -sign;
            ++pos;
        }
        size_t start = pos;
        while (pos < s.size() && (std::isdigit((unsigned char)s[pos]) || s[pos] == '/')) ++pos;
        std::string num = s.substr(start, pos - start);
        bool imaginary = false;
        if (pos < s.size() && (s[pos] == '*' || s[pos] == 'i')) {
            if (s[pos] == '*') ++pos;
            if (pos >= s.size() || s[pos] != 'i') throw std::invalid_argument("parse_scalar: bad term in " + text);
            ++pos;
            imaginary = true;
        }
        if (num.empty() && !imaginary) throw std::invalid_argument("parse_scalar: bad term in " + text);
        mpq_class v(1);
        if (!num.empty()) {
            if (v.set_str(num, 10) != 0) throw std::invalid_argument("parse_scalar: bad number in " + text);
            v.canonicalize();
        }
        v *= sign;
        (imaginary ? im : re) += v;
        any = true;
    }
    if (!any) throw std::invalid_argument("parse_scalar: nothing to parse in " + text);
    return Scalar(GaussianRational(re, im));
}

inline WeightVector parse_weight(const std::string& text) {
    WeightVector w;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        size_t used = 0;
        long v = std::stol(part, &used);
        while (used < part.size() && std::isspace((unsigned char)part[used])) ++used;
        if (used != part.size()) throw std::invalid_argument("parse_weight: bad entry '" + part + "'");
        w.push_back(v);
    }
    if (w.empty()) throw std::invalid_argument("parse_weight: empty weight");
    return w;
}

// --------------------------------------------------------------------------
// JSON output
// --------------------------------------------------------------------------

inline json character_json(const Character& c) {
    json arr = json::array();
    for (auto& [w, d] : c.dims)
        arr.push_back({{"weight", w}, {"even", d.first}, {"odd", d.second}});
    return arr;
}

inline std::string character_csv(const Character& c) {
    std::string out = "weight,even,odd\n";
    for (auto& [w, d] : c.dims) {
        out += "\"";
        for (size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w[i]);
        out += "\"," + std::to_string(d.first) + "," + std::to_string(d.second) + "\n";
    }
    return out;
}

inline json matrix_json(const Matrix& m) {
    json entries = json::array();
    for (int r = 0; r < m.rows; ++r)
        for (auto& [c, v] : m.row[r]) entries.push_back({{"row", r}, {"col", c}, {"value", to_string(v)}});
    return {{"rows", m.rows}, {"cols", m.cols}, {"entries", entries}};
}

inline json algebra_json(const QAlgebra& q) {
    json basis = json::array();
    for (int b = 0; b < q.L.dim(); ++b)
        basis.push_back({{"label", q.L.space.labels[b]},
                         {"parity", q.L.parity(b) == Parity::Even ? "even" : "odd"}});
    json structure = json::array();
    for (auto& [pair, out] : q.L.structure) {
        json terms = json::array();
        for (auto& [k, v] : out) terms.push_back({{"basis", k}, {"value", to_string(v)}});
        structure.push_back({{"left", pair.first}, {"right", pair.second}, {"bracket", terms}});
    }
    return {{"n", q.rd.n},
            {"dims", {{"even", q.L.space.even_dim()}, {"odd", q.L.space.odd_dim()}}},
            {"basis", basis},
            {"structure", structure}};
}

inline json coeff_algebra_json(const CommAlgebra& a) {
    json table = json::array();
    for (int i = 0; i < a.dim; ++i) {
        json row = json::array();
        for (int j = 0; j < a.dim; ++j) {
            json terms = json::array();
            for (auto& [k, v] : a.mult[i][j]) terms.push_back({{"basis", k}, {"value", to_string(v)}});
            row.push_back(terms);
        }
        table.push_back(row);
    }
    json unit = json::array();
    for (auto& [k, v] : a.unit) unit.push_back({{"basis", k}, {"value", to_string(v)}});
    return {{"dim", a.dim}, {"mult", table}, {"unit", unit}};
}

inline json module_json(const WeightModule& m) {
    json weights = json::array();
    for (int wi = 0; wi < (int)m.weights.size(); ++wi) {
        int e = 0, o = 0;
        for (Parity p : m.parities[wi]) (p == Parity::Even ? e : o)++;
        weights.push_back({{"weight", m.weights[wi]}, {"even", e}, {"odd", o}});
    }
    json action = json::array();
    for (int g = 0; g < (int)m.action.size(); ++g)
        for (auto& [wi, blk] : m.action[g])
            action.push_back({{"generator", g}, {"source", wi}, {"matrix", matrix_json(blk)}});
    return {{"lambda", m.lambda},
            {"total_dim", m.total_dim()},
            {"truncated", m.truncated},
            {"weights", weights},
            {"character", character_json(m.character())},
            {"action", action}};
}

inline json tensor_report_json(const TensorReport& rep) {
    const char* branch = rep.branch == TensorBranch::Single     ? "single"
                         : rep.branch == TensorBranch::Double   ? "double"
                                                                : "double-parity-flipped";
    const char* kind = rep.kind == IsoKind::Iso              ? "iso"
                       : rep.kind == IsoKind::IsoAfterParity ? "iso-after-parity"
                                                             : "not-iso";
    json witness = json::array();
    for (auto& [w, blk] : rep.witness)
        witness.push_back({{"weight", w}, {"rows", blk.rows}, {"cols", blk.cols}});
    return {{"branch", branch},
            {"match", kind},
            {"tensor_character", character_json(rep.tensor_character)},
            {"target_character", character_json(rep.weyl_character)},
            {"witness_blocks", witness}};
}

}  // namespace qweyl
