#include "tautdr/cli.hpp"

#include "tautdr/bipartite.hpp"
#include "tautdr/cohft.hpp"
#include "tautdr/intersection.hpp"
#include "tautdr/json_io.hpp"
#include "tautdr/localization.hpp"
#include "tautdr/pixton.hpp"
#include "tautdr/stable_graph.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

namespace tautdr {

namespace {

using json_io::Json;

struct RunConfig {
    std::string format = "text";
    std::string out_path;
    int genus = 0;
    int legs = 0;
    std::string a_vector;
    std::string mu_vector;
    std::string psi_vector;
    int degree = 0;
    int r_start = 0;
    std::string bounds;
    int k = 0;
    std::uint64_t seed = 1;
    int count = 20;
    std::string denominator_set = "node";
    std::string sigma_set = "node";
};

std::vector<int> parse_int_list(const std::string& text, const char* what)
{
    std::vector<int> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidInput(std::string("cannot parse ") + what + " entry '" + item + "'");
        }
    }
    return out;
}

RootSet parse_root_set(const std::string& s)
{
    if (s == "node") return RootSet::NodeRoots;
    if (s == "all") return RootSet::AllInfinityRoots;
    throw InvalidInput("root set must be 'node' or 'all'");
}

std::string csv_quote(const std::string& s)
{
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

// ---- commands; each writes to `out` and returns an exit code ----

int cmd_stable_graphs(const RunConfig& cfg, std::ostream& out)
{
    EnumerationOptions opt;
    if (!cfg.bounds.empty()) opt.max_dimension = parse_int_list(cfg.bounds, "bounds").at(0);
    const auto& graphs = enumerate_stable_graphs(cfg.genus, cfg.legs, opt);
    if (cfg.format == "json") {
        Json list = Json::array();
        for (const auto& G : graphs) {
            auto j = json_io::to_json(G);
            j["automorphisms"] = automorphism_count(G);
            list.push_back(j);
        }
        out << Json{{"g", cfg.genus}, {"n", cfg.legs}, {"count", graphs.size()}, {"graphs", list}}.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "index,graph,edges,automorphisms\n";
        for (std::size_t i = 0; i < graphs.size(); ++i)
            out << i << "," << csv_quote(graphs[i].to_string()) << "," << graphs[i].num_edges() << ","
                << automorphism_count(graphs[i]) << "\n";
    } else {
        out << "count " << graphs.size() << "\n";
        for (const auto& G : graphs) out << G.to_string() << "  |Aut| = " << automorphism_count(G) << "\n";
    }
    return kExitOk;
}

int cmd_intersect(const RunConfig& cfg, std::ostream& out)
{
    const auto d = parse_int_list(cfg.psi_vector, "psi");
    const auto value = psi_integral(cfg.genus, d);
    if (cfg.format == "json")
        out << Json{{"g", cfg.genus}, {"psi", d}, {"value", to_string(value)}}.dump(2) << "\n";
    else
        out << to_string(value) << "\n";
    return kExitOk;
}

int cmd_dr(const RunConfig& cfg, std::ostream& out)
{
    DRProblem p{cfg.genus, parse_int_list(cfg.a_vector, "a"), cfg.degree};
    p.validate();
    RPolynomialOptions opt;
    opt.first_r = cfg.r_start;

    Json j;
    std::string verdict = "not-applicable";
    int code = kExitOk;
    RPolynomialClass poly;
    TautClass constant;
    std::vector<std::pair<DecoratedStratum, Rational>> pairings;
    try {
        if (p.d > p.g) {
            auto rep = vanishing_check(p, opt);
            poly = rep.poly;
            constant = rep.constant;
            pairings = rep.pairings;
            verdict = to_string(rep.verdict);
            if (rep.verdict == Verdict::Fail) code = kExitVerdictFailure;
        } else {
            poly = r_polynomial(p, opt);
            constant = constant_term(poly);
        }
    } catch (const PolynomialityError& e) {
        if (cfg.format == "json")
            out << Json{{"problem", {{"g", p.g}, {"A", p.a}, {"d", p.d}}}, {"verdict", "FAIL"}, {"error", e.what()}}.dump(2)
                << "\n";
        else
            out << "verdict FAIL\nerror " << e.what() << "\n";
        return kExitVerdictFailure;
    }
    const auto integral = integrate(constant);

    if (cfg.format == "json") {
        j = json_io::to_json(poly, p);
        j["constant_term"] = json_io::to_json(constant);
        j["constant_term_integral"] = to_string(integral);
        Json pj = Json::array();
        for (const auto& [s, v] : pairings) pj.push_back({s.to_string(), to_string(v)});
        j["pairings"] = pj;
        j["verdict"] = verdict;
        out << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "stratum,coefficient_r,constant\n";
        for (const auto& [s, c] : poly.cls.terms())
            out << csv_quote(s.to_string()) << "," << csv_quote(c.to_string()) << "," << to_string(c.constant_term())
                << "\n";
        out << "constant_term_integral,," << to_string(integral) << "\n";
        out << "verdict,," << verdict << "\n";
    } else {
        out << "problem g=" << p.g << " A=(";
        for (std::size_t i = 0; i < p.a.size(); ++i) out << (i ? "," : "") << p.a[i];
        out << ") d=" << p.d << "\n";
        out << "samples";
        for (int r : poly.samples) out << " " << r;
        out << "\nheld-out";
        for (int r : poly.held_out) out << " " << r;
        out << "\nclass " << poly.cls.to_string() << "\n";
        out << "constant_term " << constant.to_string() << "\n";
        out << "constant_term_integral " << to_string(integral) << "\n";
        for (const auto& [s, v] : pairings) out << "pairing " << s.to_string() << " " << to_string(v) << "\n";
        out << "verdict " << verdict << "\n";
    }
    return code;
}

int cmd_bipartite(const RunConfig& cfg, std::ostream& out)
{
    BipartiteType type{cfg.genus, cfg.legs, cfg.degree, parse_int_list(cfg.mu_vector, "mu")};
    BipartiteBounds bounds;
    if (!cfg.bounds.empty()) {
        auto b = parse_int_list(cfg.bounds, "bounds");
        if (b.size() != 3) throw InvalidInput("bounds are max-0-side,max-infinity-side,max-edges");
        bounds = {b[0], b[1], b[2]};
    }
    Type0Options opt{parse_root_set(cfg.denominator_set), parse_root_set(cfg.sigma_set)};
    const auto graphs = enumerate_bipartite(type, bounds);
    if (cfg.format == "json") {
        Json list = Json::array();
        for (const auto& [G, aut] : graphs)
            list.push_back({{"graph", json_io::to_json(G)},
                            {"automorphisms", aut},
                            {"t0", json_io::to_json(assemble_t0(G, opt))}});
        out << Json{{"type", {{"g", type.g}, {"n", type.n}, {"beta", type.beta}, {"rho", type.rho()}, {"mu", type.mu}}},
                    {"root_sets", {{"denominator", to_string(opt.denominator)}, {"sigma", to_string(opt.sigma)}}},
                    {"count", graphs.size()},
                    {"graphs", list}}
                       .dump(2)
            << "\n";
    } else if (cfg.format == "csv") {
        out << "index,graph,automorphisms,t0\n";
        for (std::size_t i = 0; i < graphs.size(); ++i)
            out << i << "," << csv_quote(graphs[i].graph.to_string()) << "," << graphs[i].automorphisms << ","
                << csv_quote(assemble_t0(graphs[i].graph, opt).to_string()) << "\n";
    } else {
        out << "root sets: denominator=" << to_string(opt.denominator) << " sigma=" << to_string(opt.sigma) << "\n";
        out << "count " << graphs.size() << "\n";
        for (const auto& [G, aut] : graphs)
            out << G.to_string() << "  |Aut| = " << aut << "  t0 = " << assemble_t0(G, opt).to_string() << "\n";
    }
    return kExitOk;
}

int cmd_omega_examples(const RunConfig& cfg, std::ostream& out)
{
    auto orders = cfg.a_vector.empty() ? std::vector<int>{1, -1, 5, -5, 17, -17} : parse_int_list(cfg.a_vector, "a");
    const auto ex = example_omega_values();
    if (cfg.format == "json") {
        Json o = Json::array();
        for (int i : orders) o.push_back({{"i", i}, {"value", to_string(ex.omega_033(i))}});
        out << Json{{"omega_113", to_string(ex.omega_113)}, {"omega_033", o}}.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "name,i,value\nomega_113,," << to_string(ex.omega_113) << "\n";
        for (int i : orders) out << "omega_033," << i << "," << to_string(ex.omega_033(i)) << "\n";
    } else {
        out << "omega_113 " << to_string(ex.omega_113) << "\n";
        for (int i : orders) out << "omega_033(" << i << ") " << to_string(ex.omega_033(i)) << "\n";
    }
    return kExitOk;
}

int cmd_loop_demo(const RunConfig& cfg, std::ostream& out)
{
    int K = cfg.k;
    if (K == 0 && !cfg.bounds.empty()) K = parse_int_list(cfg.bounds, "bounds").at(0);
    if (K < 1) throw InvalidInput("loop-demo needs K >= 1");
    std::vector<LoopDemo> rows;
    for (int k = 1; k <= K; ++k) rows.push_back(loop_axiom_demo(k));
    if (cfg.format == "json") {
        Json list = Json::array();
        for (const auto& r : rows)
            list.push_back({{"K", r.K}, {"lhs", to_string(r.lhs)}, {"partial_rhs", to_string(r.partial_rhs)}});
        out << Json{{"rows", list}}.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "K,lhs,partial_rhs\n";
        for (const auto& r : rows) out << r.K << "," << to_string(r.lhs) << "," << to_string(r.partial_rhs) << "\n";
    } else {
        out << "K lhs partial_rhs\n";
        for (const auto& r : rows) out << r.K << " " << to_string(r.lhs) << " " << to_string(r.partial_rhs) << "\n";
    }
    return kExitOk;
}

// Random polynomiality checks: every drawn problem must pass its held-out test.
int cmd_property(const RunConfig& cfg, std::ostream& out)
{
    if (cfg.count < 1) throw InvalidInput("--count must be positive");
    std::mt19937_64 rng(cfg.seed);
    const std::vector<std::pair<int, int>> ambient{{0, 3}, {0, 4}, {0, 5}, {0, 6}, {1, 1}, {1, 2}, {1, 3}, {2, 0}};
    int failures = 0;
    Json list = Json::array();
    for (int i = 0; i < cfg.count; ++i) {
        auto [g, n] = ambient[std::uniform_int_distribution<std::size_t>(0, ambient.size() - 1)(rng)];
        DRProblem p{g, std::vector<int>(static_cast<std::size_t>(n), 0),
                    std::uniform_int_distribution<int>(0, 3)(rng)};
        // draw a with sum 0 by fixing the last entry
        for (int tries = 0; tries < 100 && n > 0; ++tries) {
            int s = 0;
            for (int j = 0; j + 1 < n; ++j) s += p.a[static_cast<std::size_t>(j)] = std::uniform_int_distribution<int>(-3, 3)(rng);
            if (std::abs(s) <= 3) {
                p.a.back() = -s;
                break;
            }
        }
        if (std::accumulate(p.a.begin(), p.a.end(), 0) != 0) std::fill(p.a.begin(), p.a.end(), 0);
        std::string status = "pass";
        try {
            r_polynomial(p);
        } catch (const PolynomialityError& e) {
            status = "FAIL";
            ++failures;
        }
        std::ostringstream a;
        for (std::size_t j = 0; j < p.a.size(); ++j) a << (j ? "," : "") << p.a[j];
        if (cfg.format == "json")
            list.push_back({{"g", p.g}, {"A", p.a}, {"d", p.d}, {"status", status}});
        else
            out << "g=" << p.g << " A=(" << a.str() << ") d=" << p.d << " " << status << "\n";
    }
    if (cfg.format == "json")
        out << Json{{"seed", cfg.seed}, {"checks", list}, {"failures", failures}}.dump(2) << "\n";
    else
        out << "failures " << failures << "\n";
    return failures ? kExitVerdictFailure : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Exact tautological-class engine: stable graphs, Pixton/DR classes, bipartite graph sums"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--out", cfg.out_path, "write the report to this file");
        sub->add_option("--seed", cfg.seed, "seed for randomized suites");
    };

    auto* sg = app.add_subcommand("stable-graphs", "enumerate stable graphs of M̄_{g,n}");
    sg->add_option("--genus", cfg.genus)->required();
    sg->add_option("--legs", cfg.legs)->required();
    sg->add_option("--bounds", cfg.bounds, "maximal dimension 3g-3+n");
    common(sg);

    auto* is = app.add_subcommand("intersect", "psi intersection number <tau_d1 ... tau_dn>_g");
    is->add_option("--genus", cfg.genus)->required();
    is->add_option("--psi", cfg.psi_vector, "comma list of exponents")->required();
    common(is);

    auto* dr = app.add_subcommand("dr", "Pixton class, r-polynomial, constant term, vanishing check");
    dr->add_option("--genus", cfg.genus)->required();
    dr->add_option("--a", cfg.a_vector, "comma list, negatives allowed (--a=-1,1)")->required()->allow_extra_args(false);
    dr->add_option("--degree", cfg.degree)->required();
    dr->add_option("--r-samples", cfg.r_start, "first sampled r (default: smallest admissible)");
    common(dr);

    auto* bp = app.add_subcommand("bipartite", "admissible bipartite graphs and their t^0 classes");
    bp->add_option("--genus", cfg.genus)->required();
    bp->add_option("--legs", cfg.legs)->required();
    bp->add_option("--degree", cfg.degree, "beta")->required();
    bp->add_option("--mu", cfg.mu_vector, "contact orders, comma list");
    bp->add_option("--bounds", cfg.bounds, "max-0-side,max-infinity-side,max-edges");
    bp->add_option("--denominator-set", cfg.denominator_set, "node | all");
    bp->add_option("--sigma-set", cfg.sigma_set, "node | all");
    common(bp);

    auto* om = app.add_subcommand("omega-examples", "the degree-0 relative classes of (P^1, pt)");
    om->add_option("--a", cfg.a_vector, "contact orders i for omega_033(i)");
    common(om);

    auto* ld = app.add_subcommand("loop-demo", "partial sums of the loop-axiom right-hand side");
    ld->add_option("--bounds", cfg.bounds, "K");
    ld->add_option("--k", cfg.k, "K");
    common(ld);

    auto* pr = app.add_subcommand("property", "randomized polynomiality checks");
    pr->add_option("--count", cfg.count);
    common(pr);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    const char* cache = std::getenv("TAUTDR_CACHE");
    if (cache && *cache) integral_cache::load(cache);

    std::ostringstream buffer;
    int code = kExitOk;
    try {
        if (sg->parsed()) code = cmd_stable_graphs(cfg, buffer);
        else if (is->parsed()) code = cmd_intersect(cfg, buffer);
        else if (dr->parsed()) code = cmd_dr(cfg, buffer);
        else if (bp->parsed()) code = cmd_bipartite(cfg, buffer);
        else if (om->parsed()) code = cmd_omega_examples(cfg, buffer);
        else if (ld->parsed()) code = cmd_loop_demo(cfg, buffer);
        else if (pr->parsed()) code = cmd_property(cfg, buffer);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CapabilityError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const TruncationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitVerdictFailure;
    }

    if (cfg.out_path.empty()) {
        out << buffer.str();
    } else {
        std::ofstream f(cfg.out_path);
        if (!f) {
            err << "error: cannot write " << cfg.out_path << "\n";
            return kExitUsage;
        }
        f << buffer.str();
    }
    if (cache && *cache) integral_cache::save(cache);
    return code;
}

}  // namespace tautdr
