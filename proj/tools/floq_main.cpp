#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "floq/io.hpp"
#include "floq/perturb.hpp"

using namespace floq;
using io::json;

namespace {

// exit codes: 0 success / positive result, 1 negative result, 2 invalid
// input, 3 degenerate (flat band / Dirichlet collision)
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInvalid = 2;
constexpr int kDegenerate = 3;

struct Output {
    std::string path;    // empty: stdout
    std::string format;  // "text", "csv" or "json"

    void emit(const std::string& text) const {
        if (path.empty())
            std::cout << text;
        else
            io::write_text_file(path, text);
    }
};

std::string wrap_json(const std::string& command, const json& result) {
    json j;
    j["version"] = 1;
    j["command"] = command;
    j["result"] = result;
    return j.dump(2) + "\n";
}

// "p/q" is exact; a decimal is rationalized with a warning.
GaussianRational parse_lambda(const std::string& text) {
    if (text.find('.') == std::string::npos && text.find('e') == std::string::npos &&
        text.find('E') == std::string::npos)
        return gaussian_from_string(text);
    double value = std::stod(text);
    Rational approx = rationalize(value);
    std::cerr << "warning: lambda " << text << " is not exact; using "
              << rational_to_string(approx) << " (continued fractions, denominator <= 10^6)\n";
    return GaussianRational(approx);
}

std::vector<long> parse_direction(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(std::stol(part));
    return out;
}

int cmd_symbol(const std::string& operator_path, bool symmetrize, const Output& out) {
    PeriodicOperatorQ op = io::operator_from_json(io::load_json_file(operator_path), symmetrize);
    PolyMatrixQ sym = symbol(op);
    if (out.format == "json") {
        json rows = json::array();
        for (int i = 0; i < sym.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < sym.cols(); ++j) row.push_back(poly_to_string(sym.at(i, j)));
            rows.push_back(row);
        }
        json result;
        result["vertices"] = op.graph.vertices;
        result["matrix"] = rows;
        out.emit(wrap_json("symbol", result));
    } else {
        std::ostringstream text;
        for (int i = 0; i < sym.rows(); ++i)
            for (int j = 0; j < sym.cols(); ++j)
                text << op.graph.vertices[static_cast<std::size_t>(i)] << " "
                     << op.graph.vertices[static_cast<std::size_t>(j)] << " : "
                     << poly_to_string(sym.at(i, j)) << "\n";
        out.emit(text.str());
    }
    return kOk;
}

int cmd_bands(const std::string& operator_path, int resolution, bool symmetrize,
              const Output& out) {
    PeriodicOperatorQ op = io::operator_from_json(io::load_json_file(operator_path), symmetrize);
    if (out.format == "json") {
        BandList bl = bands(op, resolution);
        json jb = json::array();
        for (const Band& b : bl.bands) {
            json one;
            one["lo"] = io::format_sig12(b.lo);
            one["hi"] = io::format_sig12(b.hi);
            jb.push_back(one);
        }
        json result;
        result["bands"] = jb;
        out.emit(wrap_json("bands", result));
        return kOk;
    }
    DispersionGrid grid = dispersion(op, resolution);
    std::ostringstream csv;
    for (int d = 0; d < op.dimension(); ++d) csv << "k" << (d + 1) << ",";
    for (int j = 0; j < op.vertex_count(); ++j)
        csv << "lambda" << (j + 1) << (j + 1 < op.vertex_count() ? "," : "");
    csv << "\n";
    for (const auto& [idx, ev] : grid.samples) {
        for (int v : idx) csv << v << ",";
        for (std::size_t j = 0; j < ev.size(); ++j)
            csv << io::format_sig12(ev[j]) << (j + 1 < ev.size() ? "," : "");
        csv << "\n";
    }
    out.emit(csv.str());
    return kOk;
}

int cmd_fermi(const std::string& operator_path, const std::string& lambda_text, int grid_points,
              bool symmetrize, const Output& out) {
    PeriodicOperatorQ op = io::operator_from_json(io::load_json_file(operator_path), symmetrize);
    double lambda = std::stod(lambda_text);
    FermiSampleSet set = fermi_samples(op, lambda, grid_points);
    if (out.format == "json") {
        json pts = json::array();
        for (const auto& pt : set.points) {
            json one = json::array();
            for (const Cx& z : pt) {
                one.push_back(io::format_sig12(z.real()));
                one.push_back(io::format_sig12(z.imag()));
            }
            pts.push_back(one);
        }
        json result;
        result["energy"] = io::format_sig12(lambda);
        result["points"] = pts;
        out.emit(wrap_json("fermi", result));
    } else {
        std::ostringstream csv;
        for (int d = 0; d < op.dimension(); ++d)
            csv << "re_z" << (d + 1) << ",im_z" << (d + 1)
                << (d + 1 < op.dimension() ? "," : "");
        csv << "\n";
        for (const auto& pt : set.points) {
            for (std::size_t d = 0; d < pt.size(); ++d)
                csv << io::format_sig12(pt[d].real()) << "," << io::format_sig12(pt[d].imag())
                    << (d + 1 < pt.size() ? "," : "");
            csv << "\n";
        }
        out.emit(csv.str());
    }
    return set.points.empty() ? kNegative : kOk;
}

int cmd_solve(const std::string& operator_path, const std::string& rhs_path,
              const std::string& lambda_text, bool symmetrize, const Output& out) {
    PeriodicOperatorQ op = io::operator_from_json(io::load_json_file(operator_path), symmetrize);
    LatticeFunctionQ psi = io::function_from_json(op.graph, io::load_json_file(rhs_path));
    GaussianRational lambda = parse_lambda(lambda_text);
    SolveReport rep = solve(op, lambda, psi);

    auto status_text = [&] {
        switch (rep.outcome) {
            case SolveOutcome::Solution: return "solution";
            case SolveOutcome::NoCompactSolution: return "no-compact-solution";
            default: return "flat-band-degenerate";
        }
    };
    auto irr_text = [&] {
        switch (rep.irreducibility) {
            case Irreducibility::Irreducible: return "irreducible";
            case Irreducibility::Reducible: return "reducible";
            default: return "unknown";
        }
    };
    json result;
    result["status"] = status_text();
    result["certified_bound"] = rep.certified_bound;
    result["irreducibility"] = irr_text();
    if (rep.outcome == SolveOutcome::Solution) {
        result["achieved_radius"] = *rep.achieved_radius;
        result["solution"] = io::function_to_json(op.graph, rep.solution);
    }
    if (out.format == "json")
        out.emit(wrap_json("solve", result));
    else if (rep.outcome == SolveOutcome::Solution)
        out.emit(io::function_to_json(op.graph, rep.solution).dump(2) + "\n");
    else
        out.emit(std::string(status_text()) + "\n");

    switch (rep.outcome) {
        case SolveOutcome::Solution: return kOk;
        case SolveOutcome::NoCompactSolution: return kNegative;
        default: return kDegenerate;
    }
}

int cmd_plant(const std::string& operator_path, const std::string& function_path,
              const std::string& lambda_text, bool symmetrize, const Output& out) {
    PeriodicOperatorQ op = io::operator_from_json(io::load_json_file(operator_path), symmetrize);
    LatticeFunctionQ f = io::function_from_json(op.graph, io::load_json_file(function_path));
    GaussianRational lambda = parse_lambda(lambda_text);
    LocalPerturbationQ b = plant_embedded(op, f, lambda);
    json artifact = io::perturbation_to_json(op.graph, b);
    out.emit(out.format == "json" ? wrap_json("plant", artifact) : artifact.dump(2) + "\n");
    return kOk;
}

int cmd_find_embedded(const std::string& operator_path, const std::string& perturbation_path,
                      const std::string& lambda_text, int resolution, bool symmetrize,
                      const Output& out) {
    PeriodicOperatorQ op = io::operator_from_json(io::load_json_file(operator_path), symmetrize);
    LocalPerturbationQ b =
        io::perturbation_from_json(op.graph, io::load_json_file(perturbation_path));
    GaussianRational lambda = parse_lambda(lambda_text);
    EmbeddedEigenReport rep = find_embedded(op, b, lambda, resolution);

    json basis = json::array();
    for (const LatticeFunctionQ& e : rep.basis) basis.push_back(io::function_to_json(op.graph, e));
    json result;
    result["search_radius"] = rep.search_radius;
    result["dimension"] = rep.basis.size();
    result["basis"] = basis;
    switch (rep.band_status.position) {
        case BandPosition::InBandInterior: result["band_status"] = "interior"; break;
        case BandPosition::InSpectrumBoundary: result["band_status"] = "boundary"; break;
        default: result["band_status"] = "outside"; break;
    }
    out.emit(out.format == "json" ? wrap_json("find-embedded", result) : result.dump(2) + "\n");
    return rep.basis.empty() ? kNegative : kOk;
}

int cmd_check_halfspace(const std::string& operator_path, const std::string& perturbation_path,
                        const std::string& direction_text, bool symmetrize, const Output& out) {
    PeriodicOperatorQ op = io::operator_from_json(io::load_json_file(operator_path), symmetrize);
    std::vector<long> direction = parse_direction(direction_text);
    bool verdict;
    if (perturbation_path.empty()) {
        verdict = halfspace_no_compact_support(op, direction);
    } else {
        LocalPerturbationQ b =
            io::perturbation_from_json(op.graph, io::load_json_file(perturbation_path));
        verdict = halfspace_no_compact_support(op, b, direction);
    }
    json result;
    result["no_compact_solutions"] = verdict;
    out.emit(out.format == "json"
                 ? wrap_json("check-halfspace", result)
                 : std::string(verdict ? "no-compact-solutions" : "inconclusive") + "\n");
    return verdict ? kOk : kNegative;
}

int cmd_irreducible(const std::string& operator_path, const std::string& lambda_text,
                    bool symmetrize, const Output& out) {
    PeriodicOperatorQ op = io::operator_from_json(io::load_json_file(operator_path), symmetrize);
    GaussianRational lambda = parse_lambda(lambda_text);
    FloquetSurface fs = floquet_surface_poly(op, lambda);
    if (fs.flat_band) {
        out.emit("flat-band-degenerate\n");
        return kDegenerate;
    }
    json result;
    result["delta1"] = poly_to_string(fs.delta1);
    json content = json::array();
    for (int q : fs.content) content.push_back(q);
    result["content"] = content;
    if (fs.delta1.term_count() == 1) {
        result["status"] = "irreducible";
        out.emit(out.format == "json" ? wrap_json("irreducible", result)
                                      : std::string("irreducible (unit)\n"));
        return kOk;
    }
    IrreducibilityReport rep = irreducibility_check(fs.delta1);
    std::string status = rep.status == Irreducibility::Irreducible  ? "irreducible"
                         : rep.status == Irreducibility::Reducible ? "reducible"
                                                                   : "unknown";
    result["status"] = status;
    if (!rep.note.empty()) result["note"] = rep.note;
    if (rep.witness) {
        json factors = json::array();
        for (const auto& [f, m] : rep.witness->factors) {
            json one;
            one["factor"] = poly_to_string(f);
            one["multiplicity"] = m;
            factors.push_back(one);
        }
        result["witness"] = factors;
    }
    out.emit(out.format == "json" ? wrap_json("irreducible", result) : status + "\n");
    return rep.status == Irreducibility::Irreducible ? kOk : kNegative;
}

int cmd_quantum_reduce(const std::string& graph_path, const std::string& lambda_text,
                       const std::string& perturbation_path,
                       const std::string& perturbation_output, const Output& out) {
    MetricGraph g = io::metric_graph_from_json(io::load_json_file(graph_path));
    double lambda = std::stod(lambda_text);
    std::vector<EdgePerturbation> perts;
    if (!perturbation_path.empty()) {
        json j = io::load_json_file(perturbation_path);
        for (const auto& jp : j.at("edges")) {
            EdgePerturbation p;
            p.edge = jp.at("edge").get<int>();
            p.cell = jp.at("cell").get<std::vector<int>>();
            for (const auto& js : jp.at("delta")) {
                PotentialSegment s;
                s.length = rational_from_string(js.at("length").get<std::string>());
                s.value = rational_from_string(js.at("value").get<std::string>());
                p.delta.push_back(std::move(s));
            }
            perts.push_back(std::move(p));
        }
    }
    QuantumReduction red = reduce(g, lambda, perts);
    PeriodicOperatorQ op = io::rationalize_operator(red.op);
    json artifact = io::operator_to_json(op);
    out.emit(out.format == "json" ? wrap_json("quantum-reduce", artifact)
                                  : artifact.dump(2) + "\n");
    if (red.perturbation && !perturbation_output.empty()) {
        LocalPerturbationQ b = io::rationalize_perturbation(*red.perturbation);
        io::write_text_file(perturbation_output,
                            io::perturbation_to_json(op.graph, b).dump(2) + "\n");
    }
    return kOk;
}

int cmd_lambda_scan(const std::string& operator_path, const std::string& perturbation_path,
                    int resolution, int per_band, bool symmetrize, const Output& out) {
    PeriodicOperatorQ op = io::operator_from_json(io::load_json_file(operator_path), symmetrize);
    LocalPerturbationQ b;
    b.dimension = op.dimension();
    if (!perturbation_path.empty())
        b = io::perturbation_from_json(op.graph, io::load_json_file(perturbation_path));

    BandList bl = bands(op, resolution);
    json findings = json::array();
    bool any = false;
    std::ostringstream text;
    for (const Band& band : bl.bands) {
        for (int i = 1; i <= per_band; ++i) {
            double x = band.lo + (band.hi - band.lo) * i / (per_band + 1.0);
            GaussianRational lambda(rationalize(x));
            if (membership(bl, to_double(lambda.re)).position != BandPosition::InBandInterior)
                continue;
            EmbeddedEigenReport rep = find_embedded(op, b, lambda, resolution);
            json one;
            one["lambda"] = rational_to_string(lambda.re);
            one["dimension"] = rep.basis.size();
            findings.push_back(one);
            text << rational_to_string(lambda.re) << " " << rep.basis.size() << "\n";
            any = any || !rep.basis.empty();
        }
    }
    json result;
    result["scan"] = findings;
    out.emit(out.format == "json" ? wrap_json("lambda-scan", result) : text.str());
    return any ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Floquet analysis of periodic graph operators"};
    app.require_subcommand(1);

    std::string operator_path, rhs_path, function_path, perturbation_path, graph_path;
    std::string lambda_text, direction_text = "1", perturbation_output;
    int resolution = 64, grid_points = 64, per_band = 5;
    bool symmetrize = false;
    Output out{"", ""};

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--output", out.path, "write the artifact to a file instead of stdout");
        sub->add_option("--format", out.format, "output format")
            ->check(CLI::IsMember(std::vector<std::string>{"text", "csv", "json"}));
        sub->add_flag("--symmetrize", symmetrize,
                      "repair an asymmetric term list by Hermitian averaging");
    };

    auto* sym = app.add_subcommand("symbol", "print the Floquet symbol A(z)");
    sym->add_option("operator", operator_path)->required();
    add_common(sym);

    auto* bnd = app.add_subcommand("bands", "sampled dispersion / band intervals");
    bnd->add_option("operator", operator_path)->required();
    bnd->add_option("--resolution", resolution, "grid points per torus dimension");
    add_common(bnd);

    auto* frm = app.add_subcommand("fermi", "real Floquet surface samples at an energy");
    frm->add_option("operator", operator_path)->required();
    frm->add_option("--lambda", lambda_text, "energy (real)")->required();
    frm->add_option("--grid", grid_points, "samples per circle");
    add_common(frm);

    auto* slv = app.add_subcommand("solve", "decide (A - lambda) u = psi in compact support");
    slv->add_option("operator", operator_path)->required();
    slv->add_option("rhs", rhs_path)->required();
    slv->add_option("--lambda", lambda_text, "exact p/q, or decimal (rationalized)")->required();
    add_common(slv);

    auto* plt = app.add_subcommand("plant", "build B embedding an eigenfunction");
    plt->add_option("operator", operator_path)->required();
    plt->add_option("eigenfunction", function_path)->required();
    plt->add_option("--lambda", lambda_text)->required();
    add_common(plt);

    auto* fnd = app.add_subcommand("find-embedded", "exact embedded-eigenfunction search");
    fnd->add_option("operator", operator_path)->required();
    fnd->add_option("perturbation", perturbation_path)->required();
    fnd->add_option("--lambda", lambda_text)->required();
    fnd->add_option("--resolution", resolution, "band sampling for the status report");
    add_common(fnd);

    auto* hsp = app.add_subcommand("check-halfspace", "no-compact-solution criterion");
    hsp->add_option("operator", operator_path)->required();
    hsp->add_option("--perturbation", perturbation_path, "optional local perturbation JSON");
    hsp->add_option("--direction", direction_text, "integer tuple, e.g. 1,0")->required();
    add_common(hsp);

    auto* irr = app.add_subcommand("irreducible", "Floquet surface irreducibility at lambda");
    irr->add_option("operator", operator_path)->required();
    irr->add_option("--lambda", lambda_text)->required();
    add_common(irr);

    auto* qrd = app.add_subcommand("quantum-reduce",
                                   "vertex reduction of a periodic quantum graph");
    qrd->add_option("graph", graph_path)->required();
    qrd->add_option("--lambda", lambda_text)->required();
    qrd->add_option("--edge-perturbation", perturbation_path,
                    "edge potential deltas: {\"edges\":[{\"edge\",\"cell\",\"delta\"}]}");
    qrd->add_option("--perturbation-output", perturbation_output,
                    "write the reduced local perturbation B here");
    add_common(qrd);

    auto* scn = app.add_subcommand("lambda-scan",
                                   "heuristic rational scan of band interiors");
    scn->add_option("operator", operator_path)->required();
    scn->add_option("--perturbation", perturbation_path, "optional local perturbation JSON");
    scn->add_option("--resolution", resolution);
    scn->add_option("--count", per_band, "energies per band");
    add_common(scn);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sym->parsed()) return cmd_symbol(operator_path, symmetrize, out);
        if (bnd->parsed()) return cmd_bands(operator_path, resolution, symmetrize, out);
        if (frm->parsed())
            return cmd_fermi(operator_path, lambda_text, grid_points, symmetrize, out);
        if (slv->parsed())
            return cmd_solve(operator_path, rhs_path, lambda_text, symmetrize, out);
        if (plt->parsed())
            return cmd_plant(operator_path, function_path, lambda_text, symmetrize, out);
        if (fnd->parsed())
            return cmd_find_embedded(operator_path, perturbation_path, lambda_text, resolution,
                                     symmetrize, out);
        if (hsp->parsed())
            return cmd_check_halfspace(operator_path, perturbation_path, direction_text,
                                       symmetrize, out);
        if (irr->parsed()) return cmd_irreducible(operator_path, lambda_text, symmetrize, out);
        if (qrd->parsed())
            return cmd_quantum_reduce(graph_path, lambda_text, perturbation_path,
                                      perturbation_output, out);
        if (scn->parsed())
            return cmd_lambda_scan(operator_path, perturbation_path, resolution, per_band,
                                   symmetrize, out);
    } catch (const DirichletCollision& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDegenerate;
    } catch (const FlatBandError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
