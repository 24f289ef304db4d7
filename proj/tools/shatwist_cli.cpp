// Command-line front end: human tables by default, --json for machine output, --csv for sweeps.

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

#include "shatwist/cassels.hpp"
#include "shatwist/distribution.hpp"
#include "shatwist/genus.hpp"
#include "shatwist/selmer.hpp"
#include "shatwist/torsion.hpp"

using namespace shatwist;
using nlohmann::json;

namespace {

constexpr i64 kOracleBound = 10'000'000;
constexpr std::size_t kBruteforcePrimeLimit = 12;

struct Globals {
    bool json = false;
    bool csv = false;
    std::uint64_t seed = 0;
    int jobs = 1;
};

std::vector<std::string> split(const std::string& s, const std::string& seps) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (seps.find(ch) != std::string::npos) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

i64 parse_int(const std::string& s) {
    std::size_t pos = 0;
    i64 v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw contract_violation("not an integer: '" + s + "'");
    }
    if (pos != s.size()) throw contract_violation("not an integer: '" + s + "'");
    return v;
}

TwistTriple parse_triple(const std::string& s) {
    auto parts = split(s, ",");
    require(parts.size() == 3, "triple must be written a,b,c");
    return TwistTriple(parse_int(parts[0]), parse_int(parts[1]), parse_int(parts[2]));
}

BitMatrix parse_matrix(const std::string& s) {
    auto rows = split(s, ",;/");
    const std::size_t k = rows.size();
    BitMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        require(rows[i].size() == k, "matrix must be square, rows given as bit strings");
        for (std::size_t j = 0; j < k; ++j) {
            require(rows[i][j] == '0' || rows[i][j] == '1', "matrix entries must be 0 or 1");
            m.set(i, j, rows[i][j] == '1');
        }
    }
    return m;
}

json element_json(const SelmerElement& e) { return json::array({e.d1, e.d2, e.d3}); }

std::string rational_string(const cpp_rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

void emit(const Globals& g, const json& j, const std::vector<std::pair<std::string, std::string>>& table) {
    if (g.json) {
        std::cout << j.dump() << "\n";
        return;
    }
    std::size_t w = 0;
    for (const auto& [k, v] : table) w = std::max(w, k.size());
    for (const auto& [k, v] : table) std::cout << std::left << std::setw(static_cast<int>(w) + 2) << k << v << "\n";
}

std::string opt_string(const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; }
std::string opt_string(const std::optional<i64>& v) { return v ? std::to_string(*v) : "-"; }
template <class T>
json opt_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

// ---------------------------------------------------------------- commands

void cmd_triple(const Globals& g, i64 k) {
    TwistTriple t = triple_from_k(k);
    emit(g, {{"k", k}, {"a", t.a}, {"b", t.b}, {"c", t.c}}, {{"triple", t.to_string()}});
}

void cmd_base_selmer(const Globals& g, const std::string& ts) {
    TwistTriple t = parse_triple(ts);
    std::size_t dim = base_selmer_dim(t);
    emit(g, {{"triple", t.to_string()}, {"kprime", t.kprime}, {"dim", dim}},
         {{"triple", t.to_string()}, {"k'", std::to_string(t.kprime)}, {"dim Sel_2(E)", std::to_string(dim)}});
}

void cmd_genus(const Globals& g, i64 nv) {
    FactoredSquarefree n(nv);
    require(nv > 1 && nv % 2 == 1, "n must be odd and greater than 1");
    std::size_t H2 = h2(n), H4 = h4(n);
    std::optional<int> H8;
    std::optional<i64> d0;
    if (H4 == 0) H8 = 0;
    if (H4 == 1) {
        d0 = distinguished_divisor(n);
        if (nv % 4 == 1) H8 = h8_indicator(n, {g.seed});
    }
    json j{{"n", nv}, {"h2", H2}, {"h4", H4}, {"h8", opt_json(H8)}, {"d0", opt_json(d0)}};
    std::vector<std::pair<std::string, std::string>> table{{"n", std::to_string(nv)},
                                                           {"h2", std::to_string(H2)},
                                                           {"h4", std::to_string(H4)},
                                                           {"h8", opt_string(H8)},
                                                           {"d0", opt_string(d0)}};
    if (nv <= kOracleBound) {
        ClassGroupRanks o = classgroup_oracle(nv, kOracleBound);
        bool agrees = o.h2 == H2 && o.h4 == H4 && (!H8 || static_cast<std::size_t>(*H8) == o.h8);
        j["oracle_agrees"] = agrees;
        j["oracle"] = {{"class_number", o.class_number}, {"h2", o.h2}, {"h4", o.h4}, {"h8", o.h8}};
        table.push_back({"class number", std::to_string(o.class_number)});
        table.push_back({"oracle (h2,h4,h8)",
                         "(" + std::to_string(o.h2) + "," + std::to_string(o.h4) + "," + std::to_string(o.h8) + ")"});
        table.push_back({"oracle agrees", agrees ? "yes" : "NO"});
    } else {
        j["oracle_agrees"] = "skipped";
        j["oracle"] = "skipped";
        table.push_back({"oracle", "skipped (n > 1e7)"});
    }
    emit(g, j, table);
}

void cmd_selmer(const Globals& g, const std::string& ts, i64 nv, bool oracle) {
    TwistTriple t = parse_triple(ts);
    FactoredSquarefree n(nv);
    auto sel = selmer_group(t, n);
    json elems = json::array();
    std::string listing;
    for (const auto& e : sel) {
        elems.push_back(element_json(e));
        listing += (listing.empty() ? "" : " ") + e.to_string();
    }
    json j{{"triple", t.to_string()}, {"n", nv}, {"s2", s2(t, n)}, {"elements", elems}};
    std::vector<std::pair<std::string, std::string>> table{
        {"triple", t.to_string()}, {"n", std::to_string(nv)}, {"s2", std::to_string(s2(t, n))}, {"Sel'_2", listing}};
    if (oracle) {
        if (n.k() + t.kprime <= kBruteforcePrimeLimit) {
            auto bf = selmer_bruteforce(t, nv);
            bool agrees = bf == sel;
            j["oracle"] = {{"agrees", agrees}, {"size", bf.size()}};
            table.push_back({"oracle agrees", agrees ? "yes" : "NO"});
        } else {
            j["oracle"] = "skipped";
            table.push_back({"oracle", "skipped (too many primes)"});
        }
    }
    emit(g, j, table);
}

void cmd_cassels(const Globals& g, const std::string& ts, i64 nv, int theorem) {
    TwistTriple t = parse_triple(ts);
    FactoredSquarefree n(nv);
    require(theorem == 1 || theorem == 2, "theorem must be 1 or 2");
    Generators gen = theorem == 1 ? generators_t1(t, n) : generators_t2(t, n);
    PairingOutcome p = theorem == 1 ? pairing_t1(t, n, {g.seed}) : pairing_t2(t, n, {g.seed});
    const NormSolution& w = p.witness;
    json j{{"triple", t.to_string()},
           {"n", nv},
           {"theorem", theorem},
           {"value", p.value},
           {"branch", to_string(p.branch)},
           {"d", p.d},
           {"generators", {{"lambda", element_json(gen.lambda)}, {"lambda_prime", element_json(gen.lambda_prime)}}},
           {"witness", {{"d", w.d}, {"dprime", w.dprime}, {"r", w.r}, {"alpha", w.alpha}, {"beta", w.beta}, {"gamma", w.gamma}}}};
    std::ostringstream eq;
    eq << w.d << "*" << w.alpha << "^2 + " << w.dprime << "*" << w.beta << "^2 = " << (1 << w.r) << "*" << w.gamma << "^2";
    emit(g, j,
         {{"branch", to_string(p.branch)},
          {"d", std::to_string(p.d)},
          {"Lambda", gen.lambda.to_string()},
          {"Lambda'", gen.lambda_prime.to_string()},
          {"witness", eq.str()},
          {"pairing", std::to_string(p.value) + (p.value == -1 ? " (non-degenerate)" : " (degenerate)")}});
}

void cmd_sha(const Globals& g, const std::string& ts, i64 nv, int theorem) {
    TwistTriple t = parse_triple(ts);
    FactoredSquarefree n(nv);
    ShaReport r = sha_report(t, n, theorem, {g.seed});
    json j{{"triple", t.to_string()}, {"n", nv},           {"theorem", theorem}, {"predicate", r.predicate},
           {"h4", r.h4},              {"h8", opt_json(r.h8)}, {"d", opt_json(r.d)}, {"trace", r.trace}};
    emit(g, j,
         {{"predicate", r.predicate ? "true" : "false"},
          {"h4", std::to_string(r.h4)},
          {"h8", opt_string(r.h8)},
          {"d", opt_string(r.d)},
          {"trace", r.trace}});
}

void cmd_torsion(const Globals& g, const std::string& ts, i64 nv) {
    TwistTriple t = parse_triple(ts);
    require(nv >= 1 && is_squarefree(nv), "n must be positive and square-free");
    const i64 a = checked_mul(t.A(), nv), b = checked_mul(t.B(), nv);
    TorsionShape s = torsion_oracle(t, nv);
    bool o4 = ono_order4(a, b), o3 = ono_order3(a, b);
    json j{{"triple", t.to_string()}, {"n", nv}, {"shape", s.to_string()}, {"m", s.m}, {"ono_order4", o4}, {"ono_order3", o3}};
    emit(g, j,
         {{"curve", "y^2 = x(x - " + std::to_string(a) + ")(x + " + std::to_string(b) + ")"},
          {"torsion", s.to_string()},
          {"order-4 criterion", o4 ? "true" : "false"},
          {"order-3 criterion", o3 ? "true" : "false"}});
}

void cmd_density(const Globals& g, const std::string& ts, int k, i64 x, int theorem) {
    TwistTriple t = parse_triple(ts);
    SweepOptions opt;
    opt.jobs = g.jobs;
    opt.seed = g.seed;
    opt.collect_rows = g.csv;
    SweepRecord r = sweep(t, x, k, theorem, opt);
    const std::string caveat =
        "asymptotic density; convergence is governed by log log x = " + std::to_string(std::log(std::log(static_cast<double>(x))));
    if (g.csv) {
        std::cout << "# triple=" << t.to_string() << ",x=" << x << ",k=" << k << ",theorem=" << theorem << "\n";
        std::cout << "n,k,admissible,s2,h4,h8,d,pairing,sha_predicate\n";
        for (const auto& row : r.rows)
            std::cout << row.n << "," << row.k << "," << (row.admissible ? 1 : 0) << "," << row.s2 << "," << row.h4 << ","
                      << (row.h8 ? std::to_string(*row.h8) : "") << "," << (row.d ? std::to_string(*row.d) : "") << ","
                      << (row.pairing ? std::to_string(*row.pairing) : "") << "," << (row.sha_predicate ? 1 : 0) << "\n";
        return;
    }
    json j{{"params", {{"triple", t.to_string()}, {"x", x}, {"k", k}, {"theorem", theorem}}},
           {"C", r.C_count},
           {"Q", r.Q_count},
           {"P", r.P_count},
           {"ratio", r.ratio},
           {"predicted", rational_string(r.predicted)},
           {"predicted_value", r.predicted.convert_to<double>()},
           {"caveat", caveat}};
    emit(g, j,
         {{"parameters", "triple=" + t.to_string() + " x=" + std::to_string(x) + " k=" + std::to_string(k) +
                             " theorem=" + std::to_string(theorem)},
          {"#C_k(x)", std::to_string(r.C_count)},
          {"#Q_k(x)", std::to_string(r.Q_count)},
          {"#P_k(x)", std::to_string(r.P_count)},
          {"#P/#C", std::to_string(r.ratio)},
          {"predicted", rational_string(r.predicted) + " = " + std::to_string(r.predicted.convert_to<double>())},
          {"note", caveat}});
}

void cmd_count_matrices(const Globals& g, int k) {
    require(k >= 0 && k <= 60, "k must lie in [0, 60]");
    json rows = json::array();
    std::vector<std::pair<std::string, std::string>> table;
    for (int r = 0; r <= k; ++r) {
        cpp_int f = count_symmetric_rank(k, r);
        json row{{"r", r}, {"formula", f.str()}};
        std::string line = f.str();
        if (k <= 5) {
            cpp_int b = count_symmetric_rank_bruteforce(k, r);
            row["bruteforce"] = b.str();
            line += "  (brute force " + b.str() + ")";
        }
        rows.push_back(row);
        table.push_back({"rank " + std::to_string(r), line});
    }
    emit(g, {{"k", k}, {"counts", rows}}, table);
}

void cmd_ck_set(const Globals& g, const std::string& ts, const std::string& alpha_s, const std::string& matrix_s, i64 x) {
    TwistTriple t = parse_triple(ts);
    std::vector<int> alpha;
    for (const auto& a : split(alpha_s, ",")) alpha.push_back(static_cast<int>(parse_int(a)));
    BitMatrix B = parse_matrix(matrix_s);
    require(B.rows() == alpha.size(), "alpha and matrix sizes differ");
    CkResult r = enumerate_Ck_alpha_B(t, x, alpha, B, g.jobs);
    json j{{"triple", t.to_string()},
           {"x", x},
           {"count", r.count},
           {"C", r.C_count},
           {"ratio", r.ratio},
           {"predicted_statement", rational_string(r.predicted_statement)},
           {"predicted_proof", rational_string(r.predicted_proof)}};
    emit(g, j,
         {{"#C_k(x, alpha, B)", std::to_string(r.count)},
          {"#C_k(x)", std::to_string(r.C_count)},
          {"ratio", std::to_string(r.ratio)},
          {"constant 3k+k'+1+C(k,2)", rational_string(r.predicted_statement)},
          {"constant k'k+3k+1+C(k,2)", rational_string(r.predicted_proof)}});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-descent, genus theory and Cassels pairings for twists of y^2 = x(x - a^2)(x + b^2)"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json, "emit JSON");
    app.add_flag("--csv", g.csv, "emit CSV rows (density sweeps)");
    app.add_option("--seed", g.seed, "seed for randomized norm-equation search order (0 = first solution)");
    app.add_option("--jobs", g.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);

    i64 k = 0, n = 0, x = 0;
    int theorem = 2, kk = 1;
    bool oracle = false;
    std::string triple = "1,1,1", alpha, matrix;
    std::function<void()> action;

    auto* c_triple = app.add_subcommand("triple", "generating triple for parameter k");
    c_triple->add_option("--k", k)->required();
    c_triple->callback([&] { action = [&] { cmd_triple(g, k); }; });

    auto* c_base = app.add_subcommand("base-selmer", "2-Selmer dimension of the base curve");
    c_base->add_option("--triple", triple)->required();
    c_base->callback([&] { action = [&] { cmd_base_selmer(g, triple); }; });

    auto* c_genus = app.add_subcommand("genus", "h2, h4, h8 and d0 of Q(sqrt(-n))");
    c_genus->add_option("--n", n)->required();
    c_genus->callback([&] { action = [&] { cmd_genus(g, n); }; });

    auto* c_selmer = app.add_subcommand("selmer", "pure 2-Selmer group of the twist by n");
    c_selmer->add_option("--triple", triple)->required();
    c_selmer->add_option("--n", n)->required();
    c_selmer->add_flag("--oracle", oracle, "cross-check against local solvability search");
    c_selmer->callback([&] { action = [&] { cmd_selmer(g, triple, n, oracle); }; });

    auto* c_cassels = app.add_subcommand("cassels", "closed-form Cassels pairing value");
    c_cassels->add_option("--triple", triple)->required();
    c_cassels->add_option("--n", n)->required();
    c_cassels->add_option("--theorem", theorem)->required()->check(CLI::IsMember({1, 2}));
    c_cassels->callback([&] { action = [&] { cmd_cassels(g, triple, n, theorem); }; });

    auto* c_sha = app.add_subcommand("sha", "whether E^(n)(Q) and Sha[2^inf] are both (Z/2)^2");
    c_sha->add_option("--triple", triple)->required();
    c_sha->add_option("--n", n)->required();
    c_sha->add_option("--theorem", theorem)->required()->check(CLI::IsMember({1, 2}));
    c_sha->callback([&] { action = [&] { cmd_sha(g, triple, n, theorem); }; });

    auto* c_torsion = app.add_subcommand("torsion", "rational torsion of the twist by n");
    c_torsion->add_option("--triple", triple)->required();
    c_torsion->add_option("--n", n)->required();
    c_torsion->callback([&] { action = [&] { cmd_torsion(g, triple, n); }; });

    auto* c_density = app.add_subcommand("density", "empirical density sweep");
    c_density->add_option("--triple", triple)->required();
    c_density->add_option("--k", kk)->required();
    c_density->add_option("--x", x)->required();
    c_density->add_option("--theorem", theorem)->check(CLI::IsMember({1, 2}));
    c_density->callback([&] { action = [&] { cmd_density(g, triple, kk, x, theorem); }; });

    auto* c_count = app.add_subcommand("count-matrices", "symmetric F2 matrices by rank");
    c_count->add_option("--k", kk)->required();
    c_count->callback([&] { action = [&] { cmd_count_matrices(g, kk); }; });

    auto* c_ck = app.add_subcommand("ck-set", "enumerate C_k(x, alpha, B)");
    c_ck->add_option("--triple", triple);
    c_ck->add_option("--alpha", alpha, "residues mod 16, comma separated")->required();
    c_ck->add_option("--matrix", matrix, "rows as bit strings separated by ';' or ','")->required();
    c_ck->add_option("--x", x)->required();
    c_ck->callback([&] { action = [&] { cmd_ck_set(g, triple, alpha, matrix, x); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        action();
    } catch (const resource_exhausted& e) {
        std::cerr << "resource exhausted: " << e.what() << "\n";
        return 1;
    } catch (const contract_violation& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return 2;
    } catch (const undefined_symbol& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
