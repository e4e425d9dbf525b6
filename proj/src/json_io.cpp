#include "tautdr/json_io.hpp"

namespace tautdr::json_io {

namespace {

Json problem_json(const DRProblem& p)
{
    return {{"g", p.g}, {"A", p.a}, {"d", p.d}};
}

Json stratum_fields(const DecoratedStratum& s)
{
    Json t;
    t["graph"] = to_json(s.graph);
    t["psi"] = s.psi;
    t["kappa"] = s.kappa;
    return t;
}

Json poly_json(const RPolynomial& p)
{
    Json arr = Json::array();
    for (const auto& c : p.coefficients()) arr.push_back(to_string(c));
    if (arr.empty()) arr.push_back("0");
    return {{"poly_r", arr}};
}

const char* side_name(Side s)
{
    return s == Side::Zero ? "0" : "inf";
}

}  // namespace

Json to_json(const StableGraph& g)
{
    Json j;
    Json vertices = Json::array();
    for (int v = 0; v < g.num_vertices(); ++v) vertices.push_back({{"id", v}, {"genus", g.genus(v)}});
    j["vertices"] = vertices;
    Json half_edges = Json::array();
    Json vertex_of = Json::object();
    for (int h = 0; h < g.num_half_edges(); ++h) {
        half_edges.push_back(h);
        vertex_of[std::to_string(h)] = g.vertex_of(h);
    }
    j["half_edges"] = half_edges;
    j["vertex_of"] = vertex_of;
    Json pairs = Json::array();
    for (auto [a, b] : g.edges()) pairs.push_back({a, b});
    j["involution_pairs"] = pairs;
    j["legs"] = g.legs();
    return j;
}

StableGraph stable_graph_from_json(const Json& j)
{
    try {
        const auto& vs = j.at("vertices");
        std::vector<int> genus(vs.size(), -1);
        for (const auto& v : vs) genus.at(v.at("id").get<std::size_t>()) = v.at("genus").get<int>();
        const auto hs = j.at("half_edges").get<std::vector<int>>();
        std::vector<int> vertex_of(hs.size()), involution(hs.size());
        for (std::size_t h = 0; h < hs.size(); ++h) {
            if (hs[h] != static_cast<int>(h)) throw InvalidInput("half_edges must be 0..H-1");
            vertex_of[h] = j.at("vertex_of").at(std::to_string(h)).get<int>();
            involution[h] = static_cast<int>(h);
        }
        for (const auto& p : j.at("involution_pairs")) {
            const int a = p.at(0).get<int>(), b = p.at(1).get<int>();
            involution.at(static_cast<std::size_t>(a)) = b;
            involution.at(static_cast<std::size_t>(b)) = a;
        }
        StableGraph g(genus, vertex_of, involution, j.at("legs").get<std::vector<int>>());
        g.validate();
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed stable graph JSON: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw InvalidInput(std::string("malformed stable graph JSON: ") + e.what());
    }
}

Json to_json(const TautClass& x)
{
    Json terms = Json::array();
    for (const auto& [s, c] : x.terms()) {
        auto t = stratum_fields(s);
        t["coeff"] = to_string(c);
        terms.push_back(t);
    }
    return {{"ambient", {x.genus(), x.num_legs()}}, {"terms", terms}};
}

Json to_json(const RTautClass& x)
{
    Json terms = Json::array();
    for (const auto& [s, c] : x.terms()) {
        auto t = stratum_fields(s);
        t["coeff"] = poly_json(c);
        terms.push_back(t);
    }
    return {{"ambient", {x.genus(), x.num_legs()}}, {"terms", terms}};
}

Json to_json(const RPolynomialClass& c, const DRProblem& p)
{
    Json j;
    j["problem"] = problem_json(p);
    j["samples"] = c.samples;
    j["held_out"] = c.held_out;
    j["degree_bound"] = c.degree_bound;
    j["class"] = to_json(c.cls);
    return j;
}

Json to_json(const VanishingReport& r)
{
    Json j = to_json(r.poly, r.problem);
    j["constant_term"] = to_json(r.constant);
    Json pairings = Json::array();
    for (const auto& [s, v] : r.pairings) pairings.push_back({s.to_string(), to_string(v)});
    j["pairings"] = pairings;
    j["complete"] = r.complete;
    j["verdict"] = to_string(r.verdict);
    return j;
}

Json to_json(const BipartiteGraph& G)
{
    Json j;
    Json s0 = Json::array(), ginf = Json::array(), vertices = Json::array();
    for (int v = 0; v < G.num_vertices(); ++v) {
        const auto& vx = G.vertices[static_cast<std::size_t>(v)];
        vertices.push_back({{"id", v}, {"side", side_name(vx.side)}, {"genus", vx.genus}, {"degree", vx.degree}});
        (vx.side == Side::Zero ? s0 : ginf).push_back(v);
    }
    j["vertices"] = vertices;
    j["S0"] = s0;
    j["Ginf"] = ginf;
    Json hs = Json::array();
    for (std::size_t h = 0; h < G.half_edges.size(); ++h) {
        const auto& he = G.half_edges[h];
        hs.push_back({{"id", h}, {"vertex", he.vertex}, {"kind", to_string(he.kind)}, {"weight", he.weight}});
    }
    j["half_edges"] = hs;
    Json edges = Json::array();
    for (int e = 0; e < G.num_edges(); ++e) {
        auto [a, b] = G.edge(e);
        edges.push_back({a, b});
    }
    j["E"] = edges;
    Json labels = Json::array();
    for (int h = 0; h < G.num_labeled(); ++h) labels.push_back(h);
    j["I"] = labels;  // label i+1 -> half-edge labels[i]
    j["num_legs"] = G.num_legs;
    j["genus"] = genus_of(G);
    return j;
}

Json to_json(const SymbolPolynomial& p)
{
    Json monomials = Json::array();
    for (const auto& [m, c] : p.terms()) {
        Json t;
        int psi = 0;
        Json psi_inf = Json::object(), psibar = Json::object(), evd = Json::object();
        for (const auto& [s, k] : m) {
            const auto key = std::to_string(s.index);
            switch (s.kind) {
            case Symbol::Kind::Psi: psi += k; break;
            case Symbol::Kind::PsiInf: psi_inf[key] = k; break;
            case Symbol::Kind::PsiBar: psibar[key] = k; break;
            case Symbol::Kind::EvD: evd[key] = k; break;
            }
        }
        t["Psi"] = psi;
        t["Psi_inf"] = psi_inf;
        t["psibar"] = psibar;
        t["evD"] = evd;
        t["coeff"] = to_string(c);
        monomials.push_back(t);
    }
    return {{"monomials", monomials}};
}

}  // namespace tautdr::json_io
