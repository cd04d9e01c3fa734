// hplus: batch front end for the interpolation library.
//
//   hplus classify seq.json --alpha 0.5 --m 8
//   hplus solve seq.json --epsilon 0.05 --seed 7
//   hplus construct seq.json --delta 0.2
//   hplus probe --measure mu.json --lambdas 2,4,8
//   hplus gallery radial --depth 3 --out data
//
// Exit codes: 0 ok, 2 bad input, 3 precondition failed, 4 internal failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hplus/density_classifier.hpp"
#include "hplus/errors.hpp"
#include "hplus/gn_construction.hpp"
#include "hplus/interp_solver.hpp"
#include "hplus/necessity_probe.hpp"
#include "hplus/report_io.hpp"
#include "hplus/sequence_gallery.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace hplus;

namespace {

struct Globals {
    int grid = 4096;
    double tolerance = 1e-8;
    std::uint64_t seed = 1;
    std::string out = ".";
    bool json = false;
};

class Report {
public:
    Report(std::string command, const Globals& g) : start_(std::chrono::steady_clock::now()) {
        doc_["command"] = std::move(command);
        doc_["parameters"] = json::object();
        doc_["parameters"]["grid"] = g.grid;
        doc_["parameters"]["tolerance"] = g.tolerance;
        doc_["parameters"]["seed"] = g.seed;
        doc_["results"] = json::object();
        doc_["timings"] = json::object();
        doc_["outputs"] = json::array();
    }

    json& params() { return doc_["parameters"]; }
    json& results() { return doc_["results"]; }

    void lap(const std::string& name) {
        const auto now = std::chrono::steady_clock::now();
        doc_["timings"][name] = std::chrono::duration<double>(now - start_).count();
        start_ = now;
    }

    void write(const fs::path& path, const std::string& content) {
        write_file_atomic(path, content);
        doc_["outputs"].push_back(path.string());
    }

    void finish(bool as_json) const {
        if (as_json) {
            std::cout << doc_.dump(2) << "\n";
        } else {
            for (const auto& p : doc_["outputs"]) std::cout << "wrote " << p.get<std::string>() << "\n";
        }
    }

private:
    json doc_;
    std::chrono::steady_clock::time_point start_;
};

GridSpec grid_spec(const Globals& g) {
    GridSpec spec;
    spec.resolution = g.grid;
    return spec;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

json witness_json(const std::optional<Witness>& w) {
    if (!w) return nullptr;
    return json{{"base", w->base}, {"level", w->level}, {"count", w->count}, {"ratio", w->ratio}};
}

// ---- classify ----

struct ClassifyArgs {
    std::string input;
    double alpha = 0.5;
    double m = 8.0;
    bool fit = false;
};

int cmd_classify(const ClassifyArgs& a, const Globals& g) {
    Report rep("classify", g);
    const PointSequence seq = read_sequence_file(a.input);
    rep.params()["input"] = a.input;
    rep.params()["alpha"] = a.alpha;
    rep.params()["m"] = a.m;
    const ClassificationReport cr = classify(seq, {a.m, a.alpha});
    rep.lap("classify");

    CsvTable csv({"condition", "passed", "alpha", "m", "fitted_m", "witness_base", "witness_level", "witness_count",
                  "witness_ratio"});
    json conds = json::array();
    if (!g.json) std::printf("%-10s %-6s %12s  witness\n", "condition", "pass", "fitted M");
    for (const auto& c : cr.conditions) {
        const auto& w = c.witness;
        csv.add_row({c.id, c.passed ? "pass" : "fail", format_number(c.constants.alpha),
                      format_number(c.constants.m_const), format_number(c.fitted_m),
                      w ? std::to_string(w->base) : "", w ? format_number(w->level) : "",
                      w ? format_number(w->count) : "", w ? format_number(w->ratio) : ""});
        conds.push_back({{"id", c.id}, {"passed", c.passed}, {"fitted_m", c.fitted_m}, {"witness", witness_json(w)}});
        if (!g.json) {
            std::printf("%-10s %-6s %12s  ", c.id.c_str(), c.passed ? "pass" : "FAIL", fmt(c.fitted_m).c_str());
            if (w) {
                std::printf("base %zu, level %s, count %s\n", w->base, fmt(w->level).c_str(), fmt(w->count).c_str());
            } else {
                std::printf("-\n");
            }
        }
    }
    rep.results()["conditions"] = conds;
    rep.results()["separation"] = {{"gap", cr.separation.gap}, {"first", cr.separation.first},
                                   {"second", cr.separation.second}};
    rep.results()["carleson"] = {{"constant", cr.carleson.constant}, {"box_index", cr.carleson.box_index}};
    if (!g.json) {
        std::printf("separation %s (nodes %zu, %zu)\n", fmt(cr.separation.gap).c_str(), cr.separation.first,
                    cr.separation.second);
        std::printf("carleson   %s\n", fmt(cr.carleson.constant).c_str());
    }

    const fs::path out(g.out);
    rep.write(out / "classify.csv", csv.to_string());

    if (a.fit) {
        CsvTable fit({"alpha", "fitted_m"});
        json rows = json::array();
        if (!g.json) std::printf("%-6s %12s\n", "alpha", "min M (a)");
        for (int i = 2; i <= 19; ++i) {
            const double alpha = 0.05 * i;
            const double m = check_condition_a(seq, {1.0, alpha}).fitted_m;
            fit.add_row({format_number(alpha), format_number(m)});
            rows.push_back({{"alpha", alpha}, {"fitted_m", m}});
            if (!g.json) std::printf("%-6.2f %12s\n", alpha, fmt(m).c_str());
        }
        rep.results()["fit"] = rows;
        rep.write(out / "classify_fit.csv", fit.to_string());
    }
    rep.lap("output");
    rep.finish(g.json);
    return 0;
}

// ---- solve ----

struct SolveArgs {
    std::string input;
    std::string values;
    double epsilon = 0.0;
    bool partitions = false;
};

int cmd_solve(const SolveArgs& a, const Globals& g) {
    Report rep("solve", g);
    const PointSequence seq = read_sequence_file(a.input);
    rep.params()["input"] = a.input;
    InterpolationProblem p{seq, {}, 1.0, g.tolerance};
    if (!a.values.empty()) {
        p.values = parse_values_json(read_text_file(a.values));
        p.epsilon = a.epsilon > 0.0 ? a.epsilon : 1.0;
        rep.params()["values"] = a.values;
    } else {
        if (!(a.epsilon > 0.0)) throw InputError("give either --values or --epsilon");
        p.epsilon = a.epsilon;
        p.values = generate_compatible_values(seq, a.epsilon, g.seed);
    }
    rep.params()["epsilon"] = p.epsilon;
    p.validate();
    const CompatibilityResult compat = check_compatibility(p);
    rep.results()["compatible"] = compat.ok;
    rep.results()["worst_ratio"] = compat.worst_ratio;

    GridSpec spec = grid_spec(g);
    InterpolationResult r = solve_direct(p, spec);
    if (r.status == Feasibility::infeasible) {
        // An infeasible verdict is confirmed on a grid four times finer before it is reported.
        spec.resolution *= 4;
        spec.refinement *= 4;
        r = solve_direct(p, spec);
        rep.results()["refined"] = true;
    }
    rep.lap("solve");
    const bool feasible = r.status == Feasibility::feasible;
    rep.results()["status"] = feasible ? "feasible" : "infeasible";
    rep.results()["objective"] = r.objective;
    rep.results()["grid_size"] = r.grid_size;
    rep.results()["exact"] = r.exact;

    const fs::path out(g.out);
    if (!g.json) std::printf("status: %s (grid %zu, objective %s)\n", feasible ? "feasible" : "infeasible",
                             r.grid_size, fmt(r.objective).c_str());
    if (feasible) {
        CsvTable atoms({"angle", "mass"});
        for (const auto& at : r.measure->atoms()) atoms.add_row({format_number(at.angle), format_number(at.mass)});
        CsvTable res({"node", "target", "value", "relative_residual"});
        double worst = 0.0;
        if (!g.json) std::printf("%-6s %14s %14s %12s\n", "node", "target", "u(z_n)", "residual");
        for (std::size_t n = 0; n < seq.size(); ++n) {
            const double u = poisson_integral(*r.measure, seq[n]);
            res.add_row({std::to_string(n), format_number(p.values[n]), format_number(u),
                         format_number(r.residuals[n])});
            worst = std::max(worst, r.residuals[n]);
            if (!g.json) std::printf("%-6zu %14s %14s %12s\n", n, fmt(p.values[n]).c_str(), fmt(u).c_str(),
                                     fmt(r.residuals[n]).c_str());
        }
        rep.results()["atoms"] = r.measure->atoms().size();
        rep.results()["max_residual"] = worst;
        rep.write(out / "atoms.csv", atoms.to_string());
        rep.write(out / "residuals.csv", res.to_string());
    } else {
        CsvTable cert({"node", "x_n", "side"});
        if (!g.json) std::printf("%-6s %14s %5s\n", "node", "x_n", "side");
        for (std::size_t n = 0; n < seq.size(); ++n) {
            const char* side = r.in_t[n] ? "T" : "S";
            cert.add_row({std::to_string(n), format_number(r.certificate[n]), side});
            if (!g.json) std::printf("%-6zu %14s %5s\n", n, fmt(r.certificate[n]).c_str(), side);
        }
        rep.results()["certificate"] = r.certificate;
        rep.write(out / "certificate.csv", cert.to_string());
    }
    if (a.partitions) {
        const PartitionResult pr = solve_by_partitions(p, spec);
        rep.results()["partitions_feasible"] = pr.feasible;
        rep.results()["partitions_solved"] = pr.partitions_solved;
        if (!g.json) std::printf("partition oracle: %s after %zu one-sided problems\n",
                                 pr.feasible ? "feasible" : "infeasible", pr.partitions_solved);
        rep.lap("partitions");
    }
    rep.finish(g.json);
    return 0;
}

// ---- construct ----

struct ConstructArgs {
    std::string input;
    double delta = 0.2;
    double alpha = 0.5;
    double m = 0.0;
    std::string partition;
    double epsilon = 0.0;
};

std::uint32_t read_partition(const std::string& path, std::size_t d) {
    if (d > 32) throw InputError("construct handles at most 32 nodes");
    std::uint32_t mask = 0;
    if (path.empty()) {
        for (std::size_t n = 0; n < d; n += 2) mask |= 1u << n;
        return mask;
    }
    const std::vector<double> bits = parse_values_json(read_text_file(path));
    if (bits.size() != d) throw InputError("partition needs one entry per node");
    for (std::size_t n = 0; n < d; ++n) {
        if (bits[n] != 0.0 && bits[n] != 1.0) throw InputError("partition entries must be 0 (S) or 1 (T)");
        if (bits[n] == 1.0) mask |= 1u << n;
    }
    return mask;
}

int cmd_construct(const ConstructArgs& a, const Globals& g) {
    Report rep("construct", g);
    const PointSequence seq = read_sequence_file(a.input);
    const std::uint32_t mask = read_partition(a.partition, seq.size());
    DensityConstants c{a.m, a.alpha};
    if (!(a.m > 0.0)) c.m_const = check_condition_a(seq, {1.0, a.alpha}).fitted_m;
    rep.params()["input"] = a.input;
    rep.params()["delta"] = a.delta;
    rep.params()["alpha"] = c.alpha;
    rep.params()["m"] = c.m_const;
    rep.params()["partition_mask"] = mask;

    const ConstructionParams params = choose_params(seq, c, a.delta);
    const GnFamily fam = build_gn(seq, params);
    const EstimateReport est = verify_estimates(fam, seq);
    rep.lap("construction");
    const HInftyResult h = solve_hinfty_partition(seq, mask, grid_spec(g), g.tolerance);
    rep.lap("bounded_lp");
    const double eps = a.epsilon > 0.0 ? a.epsilon : std::min(params.eta, 0.02) / 2.0;
    const std::vector<double> w = generate_compatible_values(seq, eps, g.seed);
    const AssembledU u = assemble_u(seq, w, fam, h, mask);
    rep.lap("assemble");

    rep.results()["m0"] = params.m0;
    rep.results()["gamma"] = params.gamma;
    rep.results()["eta"] = params.eta;
    rep.results()["cap_n"] = params.cap_n;
    rep.results()["estimates_hold"] = est.holds(a.delta);
    rep.results()["bounded_level"] = h.level;
    rep.results()["epsilon"] = eps;
    rep.results()["inequalities_hold"] = u.all_satisfied;

    CsvTable arcs({"node", "arc_start", "arc_length"});
    CsvTable marg({"node", "cover_margin", "tail_sum"});
    CsvTable evals({"node", "side", "w", "u", "u_t_only", "satisfied"});
    for (std::size_t n = 0; n < seq.size(); ++n) {
        for (const Arc& arc : fam.g[n].arcs()) {
            arcs.add_row({std::to_string(n), format_number(arc.start), format_number(arc.length)});
        }
        marg.add_row({std::to_string(n), format_number(est.cover_margin[n]), format_number(est.tail_sum[n])});
        const bool t = (mask >> n) & 1u;
        evals.add_row({std::to_string(n), t ? "T" : "S", format_number(w[n]), format_number(u.at_nodes[n]),
                       format_number(u.at_nodes_t_only[n]), u.satisfied[n] ? "yes" : "no"});
    }
    SvgLayers layers;
    layers.bands = fam.g;
    for (const auto& z : seq.points()) layers.boxes.push_back(CarlesonBox::over(z));

    const fs::path out(g.out);
    rep.write(out / "arcs.csv", arcs.to_string());
    rep.write(out / "estimates.csv", marg.to_string());
    rep.write(out / "u_values.csv", evals.to_string());
    rep.write(out / "construct.svg", disc_svg(seq, layers));

    if (!g.json) {
        std::printf("M0 %s, gamma %s, eta %s, N %d\n", fmt(params.m0).c_str(), fmt(params.gamma).c_str(),
                    fmt(params.eta).c_str(), params.cap_n);
        std::printf("estimates %s; bounded level %s; epsilon %s\n", est.holds(a.delta) ? "hold" : "FAIL",
                    fmt(h.level).c_str(), fmt(eps).c_str());
        std::printf("%-6s %4s %14s %14s %4s\n", "node", "side", "w", "u", "ok");
        for (std::size_t n = 0; n < seq.size(); ++n) {
            std::printf("%-6zu %4s %14s %14s %4s\n", n, ((mask >> n) & 1u) ? "T" : "S", fmt(w[n]).c_str(),
                        fmt(u.at_nodes[n]).c_str(), u.satisfied[n] ? "yes" : "NO");
        }
    }
    rep.finish(g.json);
    return 0;
}

// ---- probe ----

struct ProbeArgs {
    std::string input;
    std::string measure;
    double epsilon = 0.05;
    std::vector<double> lambdas{2, 4, 8, 16, 32, 64};
    int rays = 8192;
    int radial = 256;
};

int cmd_probe(const ProbeArgs& a, const Globals& g) {
    Report rep("probe", g);
    BoundaryMeasure mu;
    if (!a.measure.empty()) {
        mu = parse_measure_json(read_text_file(a.measure));
        rep.params()["measure"] = a.measure;
    } else if (!a.input.empty()) {
        const PointSequence seq = read_sequence_file(a.input);
        InterpolationProblem p{seq, generate_compatible_values(seq, a.epsilon, g.seed), a.epsilon, g.tolerance};
        const InterpolationResult r = solve_direct(p, grid_spec(g));
        if (r.status != Feasibility::feasible) throw PreconditionError("no positive interpolant at this epsilon");
        mu = *r.measure;
        rep.params()["input"] = a.input;
        rep.params()["epsilon"] = a.epsilon;
    } else {
        throw InputError("give --measure or a sequence file");
    }
    rep.params()["rays"] = a.rays;
    rep.params()["radial"] = a.radial;
    const auto est = radial_projection_profile(mu, a.lambdas, a.rays, a.radial);
    rep.lap("probe");

    CsvTable csv({"lambda", "projection_measure", "measure_times_lambda"});
    json rows = json::array();
    double c_fit = 0.0;
    if (!g.json) std::printf("%-10s %14s %14s\n", "lambda", "|E*|", "|E*| lambda");
    for (const auto& e : est) {
        csv.add_row({format_number(e.lambda), format_number(e.measure), format_number(e.measure * e.lambda)});
        rows.push_back({{"lambda", e.lambda}, {"measure", e.measure}});
        c_fit = std::max(c_fit, e.measure * e.lambda);
        if (!g.json) std::printf("%-10s %14s %14s\n", fmt(e.lambda).c_str(), fmt(e.measure).c_str(),
                                 fmt(e.measure * e.lambda).c_str());
    }
    rep.results()["estimates"] = rows;
    rep.results()["fitted_c"] = c_fit;
    if (!g.json) std::printf("fitted C %s\n", fmt(c_fit).c_str());
    rep.write(fs::path(g.out) / "probe.csv", csv.to_string());
    rep.finish(g.json);
    return 0;
}

// ---- gallery ----

struct GalleryArgs {
    std::string name;
    int depth = 3;
    int spread = 2;
    int levels = 2;
};

int cmd_gallery(const GalleryArgs& a, const Globals& g) {
    Report rep("gallery", g);
    rep.params()["name"] = a.name;
    const fs::path out(g.out);
    std::vector<std::pair<std::string, PointSequence>> files;
    if (a.name == "radial") {
        files.emplace_back("radial_depth" + std::to_string(a.depth), radial_geometric(a.depth));
    } else if (a.name == "lattice") {
        files.emplace_back("lattice_depth" + std::to_string(a.depth) + "_spread" + std::to_string(a.spread),
                           dyadic_lattice(a.depth, a.spread));
    } else if (a.name == "counterexample") {
        const auto pair = counterexample_pair(a.levels);
        const std::string tag = "_levels" + std::to_string(a.levels);
        files.emplace_back("counterexample_z1" + tag, pair.z1);
        files.emplace_back("counterexample_z2" + tag, pair.z2);
        files.emplace_back("counterexample_union" + tag, pair.combined);
    } else {
        std::string known;
        for (const auto& n : gallery_names()) known += (known.empty() ? "" : ", ") + n;
        throw InputError("unknown generator '" + a.name + "'; known: " + known);
    }
    json sizes = json::object();
    for (const auto& [stem, seq] : files) {
        rep.write(out / (stem + ".json"), sequence_to_json(seq));
        sizes[stem] = seq.size();
    }
    rep.results()["points"] = sizes;
    rep.finish(g.json);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Positive harmonic interpolation in the unit disc"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--grid", g.grid, "Uniform grid resolution")->check(CLI::Range(16, 1 << 22));
    app.add_option("--tolerance", g.tolerance, "Relative feasibility tolerance");
    app.add_option("--seed", g.seed, "Seed for generated values");
    app.add_option("--out", g.out, "Output directory");
    app.add_flag("--json", g.json, "Print the run report as JSON");

    ClassifyArgs ca;
    auto* classify_cmd = app.add_subcommand("classify", "Density, separation and Carleson checks");
    classify_cmd->fallthrough();
    classify_cmd->add_option("input", ca.input, "Sequence file")->required();
    classify_cmd->add_option("--alpha", ca.alpha, "Density exponent");
    classify_cmd->add_option("--m", ca.m, "Density constant");
    classify_cmd->add_flag("--fit", ca.fit, "Also fit the minimal M for a range of alpha");

    SolveArgs sa;
    auto* solve_cmd = app.add_subcommand("solve", "Positive harmonic interpolation by LP");
    solve_cmd->fallthrough();
    solve_cmd->add_option("input", sa.input, "Sequence file")->required();
    solve_cmd->add_option("--values", sa.values, "Values file");
    solve_cmd->add_option("--epsilon", sa.epsilon, "Compatibility exponent; generates values when --values is absent");
    solve_cmd->add_flag("--partitions", sa.partitions, "Cross-check with the one-sided partition oracle");

    ConstructArgs ka;
    auto* construct_cmd = app.add_subcommand("construct", "Boundary-set construction and assembled interpolant");
    construct_cmd->fallthrough();
    construct_cmd->add_option("input", ka.input, "Sequence file")->required();
    construct_cmd->add_option("--delta", ka.delta, "Cover parameter in (0, 1)");
    construct_cmd->add_option("--alpha", ka.alpha, "Density exponent");
    construct_cmd->add_option("--m", ka.m, "Density constant; fitted when omitted");
    construct_cmd->add_option("--partition", ka.partition, "JSON array of 0 (S) / 1 (T); alternating by default");
    construct_cmd->add_option("--epsilon", ka.epsilon, "Compatibility exponent for the sampled values");

    ProbeArgs pa;
    auto* probe_cmd = app.add_subcommand("probe", "Radial projection of superlevel sets");
    probe_cmd->fallthrough();
    probe_cmd->add_option("input", pa.input, "Sequence file (values are generated and solved)");
    probe_cmd->add_option("--measure", pa.measure, "Measure file");
    probe_cmd->add_option("--epsilon", pa.epsilon, "Compatibility exponent for a sequence input");
    probe_cmd->add_option("--lambdas", pa.lambdas, "Thresholds, each > 1")->delimiter(',');
    probe_cmd->add_option("--rays", pa.rays, "Number of radii")->check(CLI::PositiveNumber);
    probe_cmd->add_option("--radial", pa.radial, "Samples per radius")->check(CLI::PositiveNumber);

    GalleryArgs ga;
    auto* gallery_cmd = app.add_subcommand("gallery", "Write a generated sequence file");
    gallery_cmd->fallthrough();
    gallery_cmd->add_option("name", ga.name, "radial, lattice or counterexample")->required();
    gallery_cmd->add_option("--depth", ga.depth, "Depth for radial and lattice");
    gallery_cmd->add_option("--spread", ga.spread, "Lattice branching");
    gallery_cmd->add_option("--levels", ga.levels, "Counterexample levels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*classify_cmd) return cmd_classify(ca, g);
        if (*solve_cmd) return cmd_solve(sa, g);
        if (*construct_cmd) return cmd_construct(ka, g);
        if (*probe_cmd) return cmd_probe(pa, g);
        if (*gallery_cmd) return cmd_gallery(ga, g);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 3;
    } catch (const ConstructionError& e) {
        std::cerr << "construction failed: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
