// Command-line frontend: build algebras, compute local Weyl modules and
// characters, run verification suites, and emit JSON or CSV.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qweyl/serialize.hpp"
#include "qweyl/verify.hpp"

using namespace qweyl;

namespace {

// --coeff C | poly:N | sum:C,C,... (direct sum of the listed algebras)
CommAlgebra parse_coeff(const std::string& spec) {
    if (spec == "C") return complex_field();
    if (spec.rfind("poly:", 0) == 0) {
        int n = std::stoi(spec.substr(5));
        if (n < 1) throw std::invalid_argument("--coeff poly:N needs N >= 1");
        return truncated_poly(n);
    }
    if (spec.rfind("sum:", 0) == 0) {
        std::stringstream ss(spec.substr(4));
        std::string part;
        std::optional<CommAlgebra> acc;
        while (std::getline(ss, part, ','))
            acc = acc ? direct_sum(*acc, parse_coeff(part)) : parse_coeff(part);
        if (!acc) throw std::invalid_argument("--coeff sum: needs at least one summand");
        return *acc;
    }
    throw std::invalid_argument("unknown --coeff spec: " + spec);
}

// psi file: JSON array of n rows, each a row of scalar strings over the
// declared coefficient basis (column for the unit coordinate first).
MapWeight load_psi(const std::string& path, int n, const CommAlgebra& a) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open --psi file: " + path);
    json j = json::parse(in);
    if (!j.is_array() || (int)j.size() != n)
        throw std::invalid_argument("--psi file must hold " + std::to_string(n) + " rows");
    Matrix values(n, a.dim);
    for (int i = 0; i < n; ++i) {
        if (!j[i].is_array() || (int)j[i].size() != a.dim)
            throw std::invalid_argument("--psi row " + std::to_string(i) + " must have " +
                                        std::to_string(a.dim) + " entries");
        for (int c = 0; c < a.dim; ++c) values.set(i, c, parse_scalar(j[i][c].get<std::string>()));
    }
    return map_weight(values, a.unit);
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open --out file: " + out_path);
        out << text << "\n";
    }
}

json error_json(const std::string& what) { return {{"error", what}}; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with queer Lie superalgebras and their current algebras"};
    app.require_subcommand(1);

    int n = 2;
    std::string coeff = "C", lambda_str, psi_path, out_path, format = "json", suite = "all";
    long long depth_cap = 64;
    unsigned seed = 20240817;

    auto add_common = [&](CLI::App* cmd, bool needs_weight) {
        cmd->add_option("--n", n, "rank (n >= 2)")->check(CLI::Range(2, 16));
        cmd->add_option("--coeff", coeff, "coefficient algebra: C | poly:N | sum:A,B,...");
        cmd->add_option("--out", out_path, "output file (default stdout)");
        cmd->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
        if (needs_weight) {
            cmd->add_option("--lambda", lambda_str, "integer weight, e.g. 1,0");
            cmd->add_option("--psi", psi_path, "JSON file with an n x dim(A) matrix of scalar strings");
            cmd->add_option("--depth-cap", depth_cap, "stabilization depth limit")->check(CLI::PositiveNumber);
        }
    };

    CLI::App* build = app.add_subcommand("build-algebra", "dump the superalgebra and coefficient algebra");
    add_common(build, false);
    CLI::App* weyl = app.add_subcommand("local-weyl", "character and module dump of a local Weyl module");
    add_common(weyl, true);
    CLI::App* irr = app.add_subcommand("irreducible", "character of the irreducible quotient");
    add_common(irr, true);
    CLI::App* tens = app.add_subcommand("tensor-check", "tensor factorization report for two weights");
    add_common(tens, true);
    std::string psi2_path;
    tens->add_option("--psi2", psi2_path, "JSON file for the second weight")->required();
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "presentation | garland | clifford | prop4a | tensor | all")
        ->check(CLI::IsMember({"presentation", "garland", "clifford", "prop4a", "tensor", "all"}));
    verify->add_option("--seed", seed, "seed for randomized word sampling");
    verify->add_option("--n", n, "unused compatibility flag");
    verify->add_option("--out", out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            bool all = true;
            std::string lines;
            json results = json::array();
            for (const CheckResult& r : run_suite(suite, seed)) {
                results.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
                lines += std::string(r.pass ? "PASS" : "FAIL") + "  " + r.name + "  " + r.detail + "\n";
                if (!r.pass) all = false;
            }
            emit(out_path, json{{"suite", suite}, {"all_pass", all}, {"results", results}}.dump(2));
            std::cerr << lines;
            return all ? 0 : 1;
        }

        CommAlgebra a = parse_coeff(coeff);
        if (build->parsed()) {
            QAlgebra q = build_q(n);
            emit(out_path, json{{"algebra", algebra_json(q)}, {"coefficients", coeff_algebra_json(a)}}.dump(2));
            return 0;
        }

        ModuleContext ctx(n, a);
        auto get_psi = [&](const std::string& path) {
            if (!path.empty()) return load_psi(path, n, ctx.a);
            if (lambda_str.empty()) throw std::invalid_argument("need --lambda or --psi");
            WeightVector lam = parse_weight(lambda_str);
            if ((int)lam.size() != n) throw std::invalid_argument("--lambda must have n entries");
            return map_weight_from_lambda(lam, ctx.a.unit, ctx.a.dim);
        };

        if (tens->parsed()) {
            if (psi_path.empty()) throw std::invalid_argument("tensor-check needs --psi");
            TensorReport rep = verify_tensor_theorem(ctx, load_psi(psi_path, n, ctx.a),
                                                     load_psi(psi2_path, n, ctx.a));
            emit(out_path, tensor_report_json(rep).dump(2));
            return 0;
        }

        MapWeight psi = get_psi(psi_path);
        WeightModule w = local_weyl(ctx, psi, depth_cap);
        if (irr->parsed()) w = irreducible_quotient(w);
        if (format == "csv") {
            emit(out_path, character_csv(w.character()));
        } else if (irr->parsed()) {
            emit(out_path, json{{"character", character_json(w.character())},
                                {"total_dim", w.total_dim()}}
                               .dump(2));
        } else {
            emit(out_path, module_json(w).dump(2));
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << error_json(e.what()).dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << error_json(e.what()).dump() << "\n";
        return 1;
    }
}
