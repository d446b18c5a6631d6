#include "floq/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace floq::io {

namespace {

Shift shift_from_json(const json& j, int dimension) {
    if (!j.is_array() || static_cast<int>(j.size()) != dimension)
        throw std::invalid_argument("shift must be an array of length 'dimension'");
    Shift s;
    for (const auto& x : j) s.push_back(x.get<int>());
    return s;
}

Rational rational_from_json(const json& j) {
    if (j.is_string()) return rational_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number_float()) return rationalize(j.get<double>());
    throw std::invalid_argument("expected a rational (string or number)");
}

GaussianRational gaussian_from_json(const json& j) {
    if (j.is_string()) return gaussian_from_string(j.get<std::string>());
    if (j.is_number_integer()) return GaussianRational(Rational(j.get<long>()));
    if (j.is_number_float()) return GaussianRational(rationalize(j.get<double>()));
    throw std::invalid_argument("expected a scalar (string or number)");
}

}  // namespace

json operator_to_json(const PeriodicOperatorQ& op) {
    json j;
    j["dimension"] = op.dimension();
    j["vertices"] = op.graph.vertices;
    json terms = json::array();
    for (const Term<GaussianRational>& t : op.terms) {
        json jt;
        jt["u"] = op.graph.vertices[static_cast<std::size_t>(t.u)];
        jt["v"] = op.graph.vertices[static_cast<std::size_t>(t.v)];
        jt["shift"] = t.shift;
        jt["coeff"] = gaussian_to_string(t.coeff);
        terms.push_back(jt);
    }
    j["terms"] = terms;
    if (!op.graph.positions.empty()) {
        json pos;
        for (const auto& [v, p] : op.graph.positions) {
            json coords = json::array();
            for (const Rational& c : p) coords.push_back(rational_to_string(c));
            pos[op.graph.vertices[static_cast<std::size_t>(v)]] = coords;
        }
        j["positions"] = pos;
    }
    if (!op.graph.edges.empty()) {
        json edges = json::array();
        for (const Edge& e : op.graph.edges) {
            json je;
            je["u"] = op.graph.vertices[static_cast<std::size_t>(e.u)];
            je["v"] = op.graph.vertices[static_cast<std::size_t>(e.v)];
            je["shift"] = e.shift;
            edges.push_back(je);
        }
        j["edges"] = edges;
    }
    return j;
}

PeriodicOperatorQ operator_from_json(const json& j, bool auto_symmetrize) {
    PeriodicOperatorQ op;
    op.graph.dimension = j.at("dimension").get<int>();
    if (op.graph.dimension < 1) throw std::invalid_argument("dimension must be positive");
    op.graph.vertices = j.at("vertices").get<std::vector<std::string>>();
    if (op.graph.vertices.empty()) throw std::invalid_argument("vertex list is empty");

    for (const auto& jt : j.at("terms")) {
        Term<GaussianRational> t;
        t.u = op.graph.vertex_index(jt.at("u").get<std::string>());
        t.v = op.graph.vertex_index(jt.at("v").get<std::string>());
        t.shift = shift_from_json(jt.at("shift"), op.graph.dimension);
        t.coeff = gaussian_from_json(jt.at("coeff"));
        if (!t.coeff.is_zero()) op.terms.push_back(std::move(t));
    }
    if (j.contains("positions")) {
        for (const auto& [label, coords] : j.at("positions").items()) {
            int v = op.graph.vertex_index(label);
            std::vector<Rational> pos;
            for (const auto& c : coords) pos.push_back(rational_from_json(c));
            if (static_cast<int>(pos.size()) != op.graph.dimension)
                throw std::invalid_argument("position dimension mismatch for vertex " + label);
            op.graph.positions[v] = std::move(pos);
        }
    }
    if (j.contains("edges")) {
        for (const auto& je : j.at("edges")) {
            Edge e;
            e.u = op.graph.vertex_index(je.at("u").get<std::string>());
            e.v = op.graph.vertex_index(je.at("v").get<std::string>());
            e.shift = shift_from_json(je.at("shift"), op.graph.dimension);
            op.graph.edges.push_back(std::move(e));
        }
    }

    if (auto_symmetrize) {
        // Replace the term list by its Hermitian part, emitting mirrors that
        // were absent from the input.
        std::map<std::tuple<int, int, Shift>, GaussianRational> net;
        for (const Term<GaussianRational>& t : op.terms)
            net[{t.u, t.v, t.shift}] += t.coeff;
        std::set<std::tuple<int, int, Shift>> keys;
        for (const auto& [key, c] : net) {
            keys.insert(key);
            const auto& [u, v, g] = key;
            keys.insert({v, u, shift_neg(g)});
        }
        std::vector<Term<GaussianRational>> fixed;
        GaussianRational half(Rational(1, 2));
        for (const auto& key : keys) {
            const auto& [u, v, g] = key;
            auto fwd = net.find(key);
            auto mirror = net.find({v, u, shift_neg(g)});
            GaussianRational c = fwd == net.end() ? GaussianRational() : fwd->second;
            GaussianRational mc = mirror == net.end() ? GaussianRational() : mirror->second;
            GaussianRational sym = (c + mc.conj()) * half;
            if (!sym.is_zero()) fixed.push_back({u, v, g, sym});
        }
        op.terms = std::move(fixed);
    }
    ValidationReport report = validate(op);
    if (!report.ok())
        throw std::invalid_argument("invalid operator: " + report.violations.front() +
                                    (auto_symmetrize ? "" : " (use --symmetrize to repair)"));
    return op;
}

json function_to_json(const PeriodicGraph& graph, const LatticeFunctionQ& f) {
    json values = json::array();
    for (const auto& [site, v] : f.values) {
        json jv;
        jv["vertex"] = graph.vertices[static_cast<std::size_t>(site.vertex)];
        jv["cell"] = site.cell;
        jv["value"] = gaussian_to_string(v);
        values.push_back(jv);
    }
    json j;
    j["values"] = values;
    return j;
}

LatticeFunctionQ function_from_json(const PeriodicGraph& graph, const json& j) {
    LatticeFunctionQ f;
    f.dimension = graph.dimension;
    for (const auto& jv : j.at("values")) {
        VertexSite s;
        s.vertex = graph.vertex_index(jv.at("vertex").get<std::string>());
        s.cell = shift_from_json(jv.at("cell"), graph.dimension);
        f.add(s, gaussian_from_json(jv.at("value")));
    }
    return f;
}

json perturbation_to_json(const PeriodicGraph& graph, const LocalPerturbationQ& b) {
    json sites = json::array();
    for (const VertexSite& s : b.sites) {
        json js;
        js["vertex"] = graph.vertices[static_cast<std::size_t>(s.vertex)];
        js["cell"] = s.cell;
        sites.push_back(js);
    }
    json matrix = json::array();
    for (const auto& row : b.matrix) {
        json jr = json::array();
        for (const GaussianRational& c : row) jr.push_back(gaussian_to_string(c));
        matrix.push_back(jr);
    }
    json j;
    j["sites"] = sites;
    j["matrix"] = matrix;
    return j;
}

LocalPerturbationQ perturbation_from_json(const PeriodicGraph& graph, const json& j) {
    LocalPerturbationQ b;
    b.dimension = graph.dimension;
    for (const auto& js : j.at("sites")) {
        VertexSite s;
        s.vertex = graph.vertex_index(js.at("vertex").get<std::string>());
        s.cell = shift_from_json(js.at("cell"), graph.dimension);
        b.sites.push_back(std::move(s));
    }
    for (const auto& jr : j.at("matrix")) {
        std::vector<GaussianRational> row;
        for (const auto& c : jr) row.push_back(gaussian_from_json(c));
        b.matrix.push_back(std::move(row));
    }
    b.check();
    return b;
}

json metric_graph_to_json(const MetricGraph& g) {
    json j;
    j["dimension"] = g.dimension;
    j["vertices"] = g.vertices;
    json edges = json::array();
    for (const MetricEdge& e : g.edges) {
        json je;
        je["u"] = g.vertices[static_cast<std::size_t>(e.u)];
        je["v"] = g.vertices[static_cast<std::size_t>(e.v)];
        je["shift"] = e.shift;
        je["length"] = rational_to_string(e.length);
        json pot = json::array();
        for (const PotentialSegment& s : e.potential) {
            json js;
            js["length"] = rational_to_string(s.length);
            js["value"] = rational_to_string(s.value);
            pot.push_back(js);
        }
        je["potential"] = pot;
        edges.push_back(je);
    }
    j["edges"] = edges;
    return j;
}

MetricGraph metric_graph_from_json(const json& j) {
    MetricGraph g;
    g.dimension = j.at("dimension").get<int>();
    g.vertices = j.at("vertices").get<std::vector<std::string>>();
    for (const auto& je : j.at("edges")) {
        MetricEdge e;
        auto index_of = [&](const std::string& label) {
            for (std::size_t i = 0; i < g.vertices.size(); ++i)
                if (g.vertices[i] == label) return static_cast<int>(i);
            throw std::invalid_argument("unknown vertex label: " + label);
        };
        e.u = index_of(je.at("u").get<std::string>());
        e.v = index_of(je.at("v").get<std::string>());
        e.shift = shift_from_json(je.at("shift"), g.dimension);
        e.length = rational_from_json(je.at("length"));
        if (je.contains("potential")) {
            for (const auto& js : je.at("potential")) {
                PotentialSegment s;
                if (js.is_array()) {
                    s.length = rational_from_json(js.at(0));
                    s.value = rational_from_json(js.at(1));
                } else {
                    s.length = rational_from_json(js.at("length"));
                    s.value = rational_from_json(js.at("value"));
                }
                e.potential.push_back(std::move(s));
            }
        }
        g.edges.push_back(std::move(e));
    }
    g.check();
    return g;
}

PeriodicOperatorQ rationalize_operator(const PeriodicOperatorX& op, std::uint64_t max_denominator) {
    PeriodicOperatorQ out;
    out.graph = op.graph;
    for (const Term<Cx>& t : op.terms) {
        GaussianRational c(rationalize(t.coeff.real(), max_denominator),
                           rationalize(t.coeff.imag(), max_denominator));
        if (!c.is_zero()) out.terms.push_back({t.u, t.v, t.shift, c});
    }
    // Exact symmetrization: numeric noise may break the Hermitian pairing.
    std::map<std::tuple<int, int, Shift>, GaussianRational> net;
    for (const Term<GaussianRational>& t : out.terms) net[{t.u, t.v, t.shift}] += t.coeff;
    std::vector<Term<GaussianRational>> fixed;
    GaussianRational half(Rational(1, 2));
    for (const auto& [key, c] : net) {
        const auto& [u, v, g] = key;
        auto mirror = net.find({v, u, shift_neg(g)});
        GaussianRational mc = mirror == net.end() ? GaussianRational() : mirror->second;
        GaussianRational sym = (c + mc.conj()) * half;
        if (!sym.is_zero()) fixed.push_back({u, v, g, sym});
    }
    out.terms = std::move(fixed);
    return out;
}

LocalPerturbationQ rationalize_perturbation(const LocalPerturbationX& b,
                                            std::uint64_t max_denominator) {
    LocalPerturbationQ out;
    out.dimension = b.dimension;
    out.sites = b.sites;
    for (const auto& row : b.matrix) {
        std::vector<GaussianRational> qrow;
        for (const Cx& c : row)
            qrow.emplace_back(rationalize(c.real(), max_denominator),
                              rationalize(c.imag(), max_denominator));
        out.matrix.push_back(std::move(qrow));
    }
    // Hermitian part, exactly.
    for (int i = 0; i < out.size(); ++i)
        for (int j = i; j < out.size(); ++j) {
            GaussianRational sym =
                (out.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                 out.matrix[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].conj()) *
                GaussianRational(Rational(1, 2));
            out.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sym;
            out.matrix[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = sym.conj();
        }
    out.check();
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
    out << content;
}

std::string format_sig12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace floq::io
