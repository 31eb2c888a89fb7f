#include "apd/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "apd/analysis.hpp"
#include "apd/pattern_io.hpp"
#include "apd/presets.hpp"
#include "apd/proximal.hpp"
#include "apd/spectral_io.hpp"

namespace apd::cli {

namespace {

const char* format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::json: return "json";
        case OutputFormat::csv: return "csv";
        case OutputFormat::text: return "text";
    }
    return "json";
}

struct Report {
    nlohmann::json result;
    std::string csv;    // empty when the command has no tabular form
    std::string plain;  // pattern text for `generate --format text`
    std::string svg;
    ExitCode code = ExitCode::ok;
};

nlohmann::json header(const RunConfig& c) {
    return {{"tool", kToolName}, {"version", kToolVersion}, {"config", config_to_json(c)}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read file " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

nlohmann::json read_json_file(const std::string& path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("invalid JSON in " + path + ": " + e.what());
    }
}

PointPattern input_pattern(const std::string& path, const char* flag) {
    if (path.empty()) throw Error(std::string("missing input path (") + flag + ")");
    return load_pattern(path);
}

SubstitutionSystem chosen_substitution(const RunConfig& c) {
    if (!c.system_file.empty()) return substitution_from_json(read_json_file(c.system_file));
    if (c.preset.empty()) throw Error("choose a substitution with --preset or --system");
    if (auto s = find_substitution_preset(c.preset)) return *s;
    throw Error("unknown substitution preset '" + c.preset + "'");
}

Box window_from(const std::vector<double>& w, int dim) {
    if (dim == 1 && w.size() == 2) return {{w[0], 0.0}, {w[1], 0.0}};
    if (dim == 2 && w.size() == 4) return {{w[0], w[1]}, {w[2], w[3]}};
    throw Error(dim == 1 ? "--window needs lo,hi" : "--window needs lo_x,lo_y,hi_x,hi_y");
}

Point vector_from(const std::vector<double>& v, int dim, const char* flag) {
    if (static_cast<int>(v.size()) != dim) {
        throw Error(std::string(flag) + " needs " + std::to_string(dim) + " component(s)");
    }
    return {v[0], dim == 2 ? v[1] : 0.0};
}

std::optional<std::set<Symbol>> selection(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::set<Symbol>(s.begin(), s.end());
}

Report do_generate(const RunConfig& c) {
    std::optional<PointPattern> p;
    const bool scheme_file = !c.system_file.empty() && read_json_file(c.system_file).contains("basis");
    if (c.preset == "lattice") {
        if (c.spacing.empty() || c.spacing.size() > 2) throw Error("--spacing needs one value per dimension");
        const int dim = static_cast<int>(c.spacing.size());
        p = lattice(dim, {c.spacing[0], dim == 2 ? c.spacing[1] : 0.0}, window_from(c.window, dim));
    } else if (scheme_file || find_scheme_preset(c.preset)) {
        const CutProjectScheme scheme =
            scheme_file ? scheme_from_json(read_json_file(c.system_file)) : *find_scheme_preset(c.preset);
        const Box w = window_from(c.window, 1);
        p = cut_project(scheme, w.lo[0], w.hi[0]);
    } else {
        const SubstitutionSystem s = chosen_substitution(c);
        if (c.two_sided) {
            const auto seeds = bi_infinite_seed(s);
            SeedPair seed = seeds.front();
            if (!c.seed.empty()) {
                if (c.seed.size() != 2) throw Error("--seed for a two-sided fixed point reads as two symbols, left then right");
                const auto it = std::find_if(seeds.begin(), seeds.end(), [&](const SeedPair& sp) {
                    return sp.left == c.seed[0] && sp.right == c.seed[1];
                });
                if (it == seeds.end()) throw Error("seed '" + c.seed + "' is not a legal two-sided fixed-point seed");
                seed = *it;
            }
            const auto [left, right] = two_sided_fixed_point(s, seed, std::max<std::size_t>(c.min_length, 1));
            p = realize_two_sided(s, left, right, selection(c.select));
        } else {
            const Word seed = c.seed.empty() ? Word(1, s.alphabet().front()) : c.seed;
            p = realize(s, substitute(s, seed, c.iterations), 0.0, selection(c.select));
        }
    }
    Report r;
    if (c.format == OutputFormat::text) {
        r.plain = pattern_to_text(*p);
    } else if (c.format == OutputFormat::csv) {
        throw Error("generate writes json or text");
    } else {
        r.result = pattern_to_json(*p);
    }
    return r;
}

Report do_analyze(const RunConfig& c) {
    const PointPattern p = input_pattern(c.input, "--input");
    Report r;
    auto& j = r.result;
    j["points"] = p.size();
    j["min_gap"] = min_gap(p);
    const Interval cov = covering_radius(p);
    j["covering_radius"] = {cov.lower, cov.upper};
    if (c.radius > 0.0) {
        const PatchCensus census = patch_census(p, c.radius);
        j["census"] = {{"radius", c.radius}, {"classes", census.class_count()}, {"anchors", census.anchor_count()}};
        const RepetitivityResult rep = repetitivity_radius(p, c.radius);
        j["repetitivity"] = {{"status", to_string(rep.status)},
                             {"return_distance", {rep.return_distance.lower, rep.return_distance.upper}},
                             {"singleton_classes", rep.singleton_classes}};
        if (!rep.note.empty()) j["repetitivity"]["note"] = rep.note;
        if (rep.status == RepetitivityStatus::inconclusive) r.code = ExitCode::inconclusive;
    }
    if (c.cutoff > 0.0) {
        const MeyerVerdict m = meyer_check(p, c.cutoff);
        auto ladder = nlohmann::json::array();
        for (const auto& s : m.ladder) ladder.push_back({{"points", s.points}, {"delta_min_gap", s.delta_min_gap}});
        j["meyer"] = {{"verdict", to_string(m.verdict)},
                      {"delta_min_gap", m.delta_min_gap},
                      {"relatively_dense_gap", m.relatively_dense_gap},
                      {"ladder", ladder}};
        if (!m.note.empty()) j["meyer"]["note"] = m.note;
        if (m.verdict == Verdict::inconclusive) r.code = ExitCode::inconclusive;
    }
    return r;
}

GridSpec grid_from(const RunConfig& c, int dim) {
    GridSpec g;
    g.dimension = dim;
    g.lo = vector_from(c.kmin, dim, "--kmin");
    g.hi = vector_from(c.kmax, dim, "--kmax");
    g.step = c.kstep;
    g.validate();
    return g;
}

SpectralParams params_from(const RunConfig& c) {
    SpectralParams s;
    s.theta_bragg = c.theta_bragg;
    s.epsilon_pe = c.epsilon;
    s.mono_slack = c.mono_slack;
    s.epsilon_ext = c.epsilon_ext;
    return s;
}

Report do_diffract(const RunConfig& c) {
    const PointPattern p = input_pattern(c.input, "--input");
    std::vector<Box> ladder;
    if (c.ladder == "centered") {
        ladder = centered_ladder(p.window(), p.dimension(), c.ladder_steps);
    } else if (c.ladder == "anchored") {
        ladder = anchored_ladder(p.window(), p.dimension(), c.ladder_steps);
    } else {
        throw Error("--ladder must be centered or anchored");
    }
    SpectrumReport s = bragg_scan(p, grid_from(c, p.dimension()), ladder, params_from(c));
    if (!c.radii.empty()) annotate_topological(s, EquivarianceProbe(p, c.radii));
    Report r;
    r.result = spectrum_to_json(s);
    r.csv = spectrum_to_csv(s);
    if (c.plot) r.svg = spectrum_to_svg(s);
    return r;
}

Report do_pe_test(const RunConfig& c) {
    const PointPattern p = input_pattern(c.input, "--input");
    const WaveVector k{vector_from(c.k, p.dimension(), "--k")};
    const EigenvalueVerdict v = topological_eigenvalue_test(p, k, c.radii, c.epsilon, c.mono_slack);
    Report r;
    r.result = eigenvalue_to_json(k, v, c.epsilon);
    if (c.plot) {
        SpectrumReport s;
        s.dimension = p.dimension();
        s.radii = c.radii;
        SpectrumEntry e;
        e.k = k;
        e.intensity = bragg_intensity(p, k);
        e.phase_spread_ladder = v.ladder;
        e.verdict = v.topological ? PeakVerdict::topological : PeakVerdict::none;
        s.entries.push_back(e);
        r.svg = spectrum_to_svg(s);
    }
    std::ostringstream csv;
    csv << "radius,spread\n";
    for (const auto& step : v.ladder) csv << format_double(step.radius) << ',' << format_double(step.spread) << '\n';
    r.csv = csv.str();
    return r;
}

Report do_dual(const RunConfig& c) {
    const PointPattern p = input_pattern(c.input, "--input");
    const EpsilonDualResult d = epsilon_dual(p, c.epsilon, grid_from(c, p.dimension()));
    Report r;
    auto accepted = nlohmann::json::array();
    std::ostringstream csv;
    csv << (p.dimension() == 1 ? "k" : "k_x,k_y") << ",max_deviation\n";
    for (const auto& e : d.accepted) {
        accepted.push_back({{"k", p.dimension() == 1 ? nlohmann::json::array({e.k[0]}) : nlohmann::json::array({e.k[0], e.k[1]})},
                            {"max_deviation", e.max_deviation}});
        csv << format_double(e.k[0]);
        if (p.dimension() == 2) csv << ',' << format_double(e.k[1]);
        csv << ',' << format_double(e.max_deviation) << '\n';
    }
    r.result = {{"epsilon", c.epsilon}, {"grid_size", d.grid_size}, {"max_gap", d.max_gap}, {"accepted", accepted}};
    r.csv = csv.str();
    return r;
}

Report do_cr(const RunConfig& c) {
    const CoincidenceRank cr = coincidence_rank(chosen_substitution(c), c.power_max);
    Report r;
    r.result = coincidence_to_json(cr);
    if (!cr.certified) r.code = ExitCode::inconclusive;
    return r;
}

Report do_proximal(const RunConfig& c) {
    const PointPattern a = input_pattern(c.input, "--input");
    const PointPattern b = input_pattern(c.against, "--against");
    std::vector<Point> schedule;
    if (!c.centers.empty()) {
        if (a.dimension() != 1) throw Error("--centers lists 1D centres; use --start/--step/--steps otherwise");
        for (double x : c.centers) schedule.push_back({x, 0.0});
    } else {
        if (c.steps < 1) throw Error("give --centers or a positive --steps");
        for (int i = 1; i <= c.steps; ++i) {
            const double x = c.start + c.step * i;
            schedule.push_back({x, a.dimension() == 2 ? x : 0.0});
        }
    }
    const ProximalityReport pr = proximality_probe(a, b, schedule);
    Report r;
    r.result = proximality_to_json(pr);
    r.csv = proximality_to_csv(pr);
    if (pr.verdict == ProximalVerdict::inconclusive) r.code = ExitCode::inconclusive;
    return r;
}

Report do_torus(const RunConfig& c) {
    const PointPattern p = input_pattern(c.input, "--input");
    if (p.dimension() != 1) throw Error("torus takes a 1D pattern; basis entries are scalar wave numbers");
    if (c.basis.empty()) throw Error("--basis is required");
    std::vector<WaveVector> basis;
    for (double k : c.basis) basis.push_back({{k, 0.0}});
    if (c.radii.empty()) throw Error("--radii is required");
    const auto reports = collision_ladder(p, basis, c.radii, c.tol);
    Report r;
    auto rows = nlohmann::json::array();
    for (const auto& rep : reports) {
        rows.push_back(collision_to_json(rep));
        if (rep.inconclusive) r.code = ExitCode::inconclusive;
    }
    r.result = {{"basis", c.basis}, {"base_tol", c.tol}, {"ladder", rows}};
    r.csv = collisions_to_csv(reports);
    return r;
}

Report dispatch(const RunConfig& c) {
    if (c.command == "generate") return do_generate(c);
    if (c.command == "analyze") return do_analyze(c);
    if (c.command == "diffract") return do_diffract(c);
    if (c.command == "pe-test") return do_pe_test(c);
    if (c.command == "dual") return do_dual(c);
    if (c.command == "cr") return do_cr(c);
    if (c.command == "proximal") return do_proximal(c);
    if (c.command == "torus") return do_torus(c);
    throw Error("unknown command '" + c.command + "'");
}

std::string render(const RunConfig& c, const Report& r) {
    const nlohmann::json h = header(c);
    if (!r.plain.empty()) {
        return r.plain + "# generator=" + h.dump() + "\n";
    }
    if (c.format == OutputFormat::json) {
        nlohmann::json doc = h;
        doc["result"] = r.result;
        return doc.dump(1) + "\n";
    }
    if (c.format == OutputFormat::csv && !r.csv.empty()) return "# " + h.dump() + "\n" + r.csv;
    if (c.format == OutputFormat::csv) throw Error("command '" + c.command + "' has no csv form");
    return "# " + h.dump() + "\n" + r.result.dump(1) + "\n";
}

}  // namespace

nlohmann::json config_to_json(const RunConfig& c) {
    return {{"command", c.command},
            {"input", c.input},
            {"against", c.against},
            {"output", c.output},
            {"format", format_name(c.format)},
            {"plot", c.plot},
            {"preset", c.preset},
            {"system", c.system_file},
            {"iterations", c.iterations},
            {"seed", c.seed},
            {"select", c.select},
            {"two_sided", c.two_sided},
            {"min_length", c.min_length},
            {"window", c.window},
            {"spacing", c.spacing},
            {"power_max", c.power_max},
            {"radius", c.radius},
            {"cutoff", c.cutoff},
            {"kmin", c.kmin},
            {"kmax", c.kmax},
            {"kstep", c.kstep},
            {"ladder", c.ladder},
            {"ladder_steps", c.ladder_steps},
            {"radii", c.radii},
            {"k", c.k},
            {"epsilon", c.epsilon},
            {"theta_bragg", c.theta_bragg},
            {"mono_slack", c.mono_slack},
            {"epsilon_ext", c.epsilon_ext},
            {"basis", c.basis},
            {"tol", c.tol},
            {"centers", c.centers},
            {"start", c.start},
            {"step", c.step},
            {"steps", c.steps}};
}

std::optional<RunConfig> parse_arguments(int argc, const char* const* argv, std::ostream& out) {
    RunConfig c;
    CLI::App app{"Aperiodic point pattern toolkit", kToolName};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    auto common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input) sub->add_option("-i,--input", c.input, "Point-set file (json or text)")->required();
        sub->add_option("-o,--output", c.output, "Report path; standard output when omitted");
        sub->add_option("--format", c.format, "json, csv or text")
            ->transform(CLI::CheckedTransformer(
                std::map<std::string, OutputFormat>{{"json", OutputFormat::json}, {"csv", OutputFormat::csv}, {"text", OutputFormat::text}}));
        sub->add_flag("--plot", c.plot, "Write an SVG plot next to the report");
    };
    auto kgrid = [&](CLI::App* sub) {
        sub->add_option("--kmin", c.kmin, "Grid lower corner")->delimiter(',')->required();
        sub->add_option("--kmax", c.kmax, "Grid upper corner")->delimiter(',')->required();
        sub->add_option("--kstep", c.kstep, "Grid step")->required();
    };

    auto* gen = app.add_subcommand("generate", "Generate a point set");
    common(gen, false);
    gen->add_option("--preset", c.preset, "thue_morse, fibonacci_sub, period_doubling, fibonacci_cp or lattice");
    gen->add_option("--system", c.system_file, "Custom substitution or cut & project JSON");
    gen->add_option("--iterations", c.iterations, "Substitution iterations");
    gen->add_option("--seed", c.seed, "Seed word; two symbols (left, right) with --two-sided");
    gen->add_option("--select", c.select, "Keep tiles with these symbols only");
    gen->add_flag("--two-sided", c.two_sided, "Two-sided fixed point around the origin");
    gen->add_option("--min-length", c.min_length, "Minimal length of each half (two-sided)");
    gen->add_option("--window", c.window, "Physical window lo,hi (2D: lo_x,lo_y,hi_x,hi_y)")->delimiter(',');
    gen->add_option("--spacing", c.spacing, "Lattice spacing per axis")->delimiter(',');

    auto* ana = app.add_subcommand("analyze", "Gaps, covering radius, census, repetitivity, Meyer check");
    common(ana, true);
    ana->add_option("--radius", c.radius, "Patch radius for census and repetitivity");
    ana->add_option("--cutoff", c.cutoff, "Difference-set cutoff for the Meyer check");

    auto* dif = app.add_subcommand("diffract", "Bragg scan over a k-grid");
    common(dif, true);
    kgrid(dif);
    dif->add_option("--ladder", c.ladder, "centered or anchored");
    dif->add_option("--ladder-steps", c.ladder_steps, "Windows in the ladder (ratio 2)");
    dif->add_option("--radii", c.radii, "Radius ladder for topological verdicts")->delimiter(',');
    dif->add_option("--theta", c.theta_bragg, "Bragg candidate threshold");
    dif->add_option("--epsilon", c.epsilon, "Final phase spread bound");
    dif->add_option("--slack", c.mono_slack, "Relative increase tolerated along the ladder");
    dif->add_option("--epsilon-ext", c.epsilon_ext, "Extinction threshold");

    auto* pe = app.add_subcommand("pe-test", "Pattern-equivariance test of one plane wave");
    common(pe, true);
    pe->add_option("--k", c.k, "Wave vector")->delimiter(',')->required();
    pe->add_option("--radii", c.radii, "Increasing radius ladder")->delimiter(',')->required();
    pe->add_option("--epsilon", c.epsilon, "Final phase spread bound");
    pe->add_option("--slack", c.mono_slack, "Relative increase tolerated along the ladder");

    auto* dual = app.add_subcommand("dual", "Epsilon-dual wave vectors on a grid");
    common(dual, true);
    kgrid(dual);
    dual->add_option("--epsilon", c.epsilon, "Deviation bound")->required();

    auto* cr = app.add_subcommand("cr", "Coincidence rank by column analysis");
    common(cr, false);
    cr->add_option("--preset", c.preset, "Substitution preset");
    cr->add_option("--system", c.system_file, "Custom substitution JSON");
    cr->add_option("--power-max", c.power_max, "Largest substitution power");

    auto* prox = app.add_subcommand("proximal", "Agreement radii of two patterns along a shift schedule");
    common(prox, true);
    prox->add_option("--against", c.against, "Second point-set file")->required();
    prox->add_option("--centers", c.centers, "Explicit 1D centres")->delimiter(',');
    prox->add_option("--start", c.start, "Schedule origin");
    prox->add_option("--step", c.step, "Schedule step");
    prox->add_option("--steps", c.steps, "Schedule length");

    auto* tor = app.add_subcommand("torus", "Fiber-collision sampling of the torus parametrisation");
    common(tor, true);
    tor->add_option("--basis", c.basis, "Eigenvalue basis (wave numbers)")->delimiter(',')->required();
    tor->add_option("--radii", c.radii, "Increasing radius ladder")->delimiter(',')->required();
    tor->add_option("--tol", c.tol, "Coordinate tolerance at the first radius; shrinks as (R0/R)^2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw Error(e.what());
    }
    c.command = app.get_subcommands().front()->get_name();
    for (const auto* ladder : {&c.radii}) {
        for (std::size_t i = 1; i < ladder->size(); ++i) {
            if (!((*ladder)[i] > (*ladder)[i - 1])) throw Error("ladders must be strictly increasing");
        }
    }
    return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const Report r = dispatch(config);
    const std::string text = render(config, r);
    if (config.output.empty()) {
        out << text;
    } else {
        std::ofstream f(config.output, std::ios::binary);
        if (!f) throw Error("cannot write report " + config.output);
        f << text;
    }
    if (!r.svg.empty()) {
        const std::string path = (config.output.empty() ? std::string(kToolName) + "-" + config.command : config.output) + ".svg";
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error("cannot write plot " + path);
        f << r.svg;
        err << "plot written to " << path << '\n';
    }
    return static_cast<int>(r.code);
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        const auto config = parse_arguments(argc, argv, out);
        if (!config) return static_cast<int>(ExitCode::ok);
        return run(*config, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return static_cast<int>(ExitCode::error);
}

}  // namespace apd::cli
