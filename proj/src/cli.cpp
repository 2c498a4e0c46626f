#include "sshqed/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "sshqed/agreement.hpp"
#include "sshqed/band_structure.hpp"
#include "sshqed/errors.hpp"
#include "sshqed/format.hpp"
#include "sshqed/spectral_analysis.hpp"

namespace sshqed::cli {

namespace {

using io::Json;
using io::Table;

struct Globals {
    std::string params;
    std::string out;
    std::string format;
};

struct ModelFlags {
    std::optional<std::string> config;
    std::optional<double> alpha;
    std::optional<double> delta;
    std::optional<double> J;
    std::optional<double> g;
    std::optional<double> omega_rabi;
    std::optional<double> delta_c;
    std::optional<double> omega_e;
    std::optional<int> x1;
    std::string band = "upper";
};

struct GridFlags {
    double dk_min = -0.2;
    double dk_max = 0.2;
    int dk_steps = 401;
};

void add_waveguide_flags(CLI::App* sc, ModelFlags& f) {
    sc->add_option("--delta", f.delta, "Dimerization in [-1, 1]");
    sc->add_option("--J", f.J, "Characteristic hopping");
}

void add_model_flags(CLI::App* sc, ModelFlags& f) {
    add_waveguide_flags(sc, f);
    sc->add_option("--config", f.config, "Coupling A, B or AB")
        ->check(CLI::IsMember({"A", "B", "AB"}));
    sc->add_option("--alpha", f.alpha, "A-site share of the coupling (AB only)");
    sc->add_option("--g", f.g, "Emitter-waveguide coupling");
    sc->add_option("--omega-rabi", f.omega_rabi, "Control-field Rabi frequency");
    sc->add_option("--delta-c", f.delta_c, "Control-field detuning");
    sc->add_option("--omega-e", f.omega_e, "Emitter transition frequency");
    sc->add_option("--x1", f.x1, "Unit cell of the emitter");
    sc->add_option("--band", f.band, "Scattering band")->check(CLI::IsMember({"upper", "lower"}));
}

void add_grid_flags(CLI::App* sc, GridFlags& g) {
    sc->add_option("--dk-min", g.dk_min, "Lowest detuning");
    sc->add_option("--dk-max", g.dk_max, "Highest detuning");
    sc->add_option("--dk-steps", g.dk_steps, "Number of detuning samples");
}

ParamFile merged(const Globals& gl, const ModelFlags& f) {
    ParamFile p = gl.params.empty() ? ParamFile{} : load_params(gl.params);
    if (f.config) {
        const Coupling c = parse_coupling(*f.config);
        if (c != p.config && !f.alpha) p.alpha.reset();
        p.config = c;
    }
    if (f.alpha) p.alpha = *f.alpha;
    if (f.delta) p.waveguide.delta = *f.delta;
    if (f.J) p.waveguide.J = *f.J;
    if (f.g) p.emitter.g = *f.g;
    if (f.omega_rabi) p.emitter.omega_rabi = *f.omega_rabi;
    if (f.delta_c) p.emitter.delta_c = *f.delta_c;
    if (f.omega_e) p.emitter.omega_e = *f.omega_e;
    if (f.x1) p.emitter.x1 = *f.x1;
    return p;
}

Json pair_json(cplx z) { return Json::array({z.real(), z.imag()}); }

std::string render(const Table& t, const std::string& fmt) {
    return fmt == "json" ? io::dump_json(io::to_json(t)) : io::to_csv(t);
}

std::string render(const Json& j, const std::string& fmt) {
    return fmt == "csv" ? io::to_csv(io::flatten(j)) : io::dump_json(j);
}

Table spectrum_table(const SpectrumGrid& grid) {
    Table t;
    t.columns = {"delta_k", "T", "R", "re_t", "im_t"};
    for (const auto& r : grid.records) t.rows.push_back({r.delta_k, r.T, r.R, r.t.real(), r.t.imag()});
    return t;
}

Table contour_table(const SpectrumGrid& grid) {
    Table t;
    t.columns = {"delta_k", "omega_rabi", "T"};
    for (const auto& r : grid.records) t.rows.push_back({r.delta_k, r.omega_rabi, r.T});
    return t;
}

Table features_table(const std::vector<LineshapeFeature>& fs) {
    Table t;
    t.columns = {"kind", "position", "depth", "fwhm", "asymmetry"};
    for (const auto& f : fs) t.rows.push_back({to_string(f.kind), f.position, f.depth, f.fwhm, f.asymmetry});
    return t;
}

void report_skipped(const SpectrumGrid& grid, std::ostream& err) {
    if (grid.skipped > 0) err << "note: skipped " << grid.skipped << " out-of-band grid points\n";
}

}  // namespace

ParamFile load_params(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot read parameter file " + path);
    Json j;
    try {
        j = Json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("params", "malformed JSON in " + path + ": " + e.what());
    }
    if (!j.is_object()) throw ValidationError("params", path + " must hold a JSON object");
    ParamFile p;
    auto number = [&](const std::string& key, const Json& v) {
        if (!v.is_number()) throw ValidationError(key, key + " must be a number");
        return v.get<double>();
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        const Json& v = it.value();
        if (key == "J") {
            p.waveguide.J = number(key, v);
        } else if (key == "delta") {
            p.waveguide.delta = number(key, v);
        } else if (key == "omega0") {
            p.waveguide.omega0 = number(key, v);
        } else if (key == "omega_e") {
            p.emitter.omega_e = number(key, v);
        } else if (key == "delta_c") {
            p.emitter.delta_c = number(key, v);
        } else if (key == "omega_rabi") {
            p.emitter.omega_rabi = number(key, v);
        } else if (key == "g") {
            p.emitter.g = number(key, v);
        } else if (key == "alpha") {
            p.alpha = number(key, v);
        } else if (key == "x1") {
            if (!v.is_number_integer()) throw ValidationError(key, "x1 must be an integer");
            p.emitter.x1 = v.get<int>();
        } else if (key == "config") {
            if (!v.is_string()) throw ValidationError(key, "config must be a string");
            p.config = parse_coupling(v.get<std::string>());
        } else {
            throw ValidationError(key, "unknown parameter key '" + key + "'");
        }
    }
    return p;
}

Model to_model(const ParamFile& p) {
    CouplingConfig c;
    c.variant = p.config;
    switch (p.config) {
        case Coupling::A: c.alpha = p.alpha.value_or(1.0); break;
        case Coupling::B: c.alpha = p.alpha.value_or(0.0); break;
        case Coupling::AB: c.alpha = p.alpha.value_or(0.5); break;
    }
    return validate(p.waveguide, p.emitter, c);
}

int thread_count() {
    const char* env = std::getenv("SSHQED_THREADS");
    if (env == nullptr) return 1;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1 || n > 1024) return 1;
    return static_cast<int>(n);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Single-photon scattering in an SSH waveguide coupled to a driven Lambda emitter"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals gl;
    app.add_option("--params", gl.params, "JSON parameter file");
    app.add_option("--out", gl.out, "Output path (stdout when omitted)");
    app.add_option("--format", gl.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    ModelFlags mf;
    GridFlags grid;

    auto* bands = app.add_subcommand("bands", "Dispersion and d-vector over the Brillouin zone");
    int k_steps = 201;
    add_waveguide_flags(bands, mf);
    bands->add_option("--k-steps", k_steps, "Number of k samples on [-pi, pi]");

    auto* winding = app.add_subcommand("winding", "Winding number and Zak phase");
    int samples = 256;
    add_waveguide_flags(winding, mf);
    winding->add_option("--samples", samples, "Initial Brillouin-zone samples");

    auto* spectrum = app.add_subcommand("spectrum", "Transmission spectrum versus detuning");
    add_model_flags(spectrum, mf);
    add_grid_flags(spectrum, grid);

    auto* contour = app.add_subcommand("contour", "Transmission over detuning and Rabi frequency");
    double om_min = 0.0, om_max = 0.4;
    int om_steps = 41;
    add_model_flags(contour, mf);
    add_grid_flags(contour, grid);
    contour->add_option("--omega-min", om_min, "Lowest Rabi frequency");
    contour->add_option("--omega-max", om_max, "Highest Rabi frequency");
    contour->add_option("--omega-steps", om_steps, "Number of Rabi-frequency samples");

    auto* pol = app.add_subcommand("poles", "Poles, regime label and Lamb shift");
    std::optional<double> k_opt;
    double dk_probe = 0.0;
    add_model_flags(pol, mf);
    pol->add_option("--k", k_opt, "Quasi-momentum in (0, pi)");
    pol->add_option("--dk", dk_probe, "Detuning used to pick k when --k is absent");

    auto* feat = app.add_subcommand("features", "Dips and peaks of a transmission spectrum");
    add_model_flags(feat, mf);
    add_grid_flags(feat, grid);

    auto* val = app.add_subcommand("validate", "Closed forms against the lattice oracle");
    AgreementOptions aopt;
    bool no_wavepacket = false;
    val->add_option("--draws", aopt.draws_per_config, "Random draws per coupling");
    val->add_option("--seed", aopt.seed, "Random seed");
    val->add_flag("--no-wavepacket", no_wavepacket, "Skip the time-domain cases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::usage;
    }

    auto emit = [&](const std::string& text) {
        if (gl.out.empty()) {
            out << text;
        } else {
            io::write_atomic(gl.out, text);
        }
    };
    auto fmt_or = [&](const char* fallback) { return gl.format.empty() ? std::string(fallback) : gl.format; };
    const int threads = thread_count();

    try {
        if (bands->parsed()) {
            const ParamFile p = merged(gl, mf);
            const Model m = validate(p.waveguide, EmitterParams{}, CouplingConfig::a());
            Table t;
            t.columns = {"k", "omega_upper", "omega_lower", "dx", "dy"};
            for (double k : linspace(-M_PI, M_PI, k_steps)) {
                const BlochPoint bp = bloch_point(k, m.waveguide);
                const DVector d = d_vector(k, m.waveguide);
                t.rows.push_back({k, bp.omega, -bp.omega, d.dx, d.dy});
            }
            emit(render(t, fmt_or("csv")));
        } else if (winding->parsed()) {
            const ParamFile p = merged(gl, mf);
            const Model m = validate(p.waveguide, EmitterParams{}, CouplingConfig::a());
            const int nu = winding_number(m.waveguide, samples);
            Json j = Json::object();
            j["delta"] = m.waveguide.delta;
            j["nu"] = nu;
            j["zak_phase"] = nu * M_PI;
            emit(render(j, fmt_or("json")));
        } else if (spectrum->parsed() || feat->parsed()) {
            const Model m = to_model(merged(gl, mf));
            const auto dk = linspace(grid.dk_min, grid.dk_max, grid.dk_steps);
            const SpectrumGrid sg = sweep_spectrum(m, dk, parse_band(mf.band), threads);
            report_skipped(sg, err);
            if (spectrum->parsed()) {
                emit(render(spectrum_table(sg), fmt_or("csv")));
            } else {
                emit(render(features_table(extract_features(sg.records)), fmt_or("json")));
            }
        } else if (contour->parsed()) {
            const Model m = to_model(merged(gl, mf));
            const auto dk = linspace(grid.dk_min, grid.dk_max, grid.dk_steps);
            const auto om = linspace(om_min, om_max, om_steps);
            const SpectrumGrid sg = sweep_contour(m, dk, om, parse_band(mf.band), threads);
            report_skipped(sg, err);
            emit(render(contour_table(sg), fmt_or("csv")));
        } else if (pol->parsed()) {
            const Model m = to_model(merged(gl, mf));
            const double k = k_opt ? *k_opt
                                   : momentum_from_energy(m.emitter.omega_e + dk_probe, m.waveguide);
            const PolePair pp = poles(m, k);
            const RegimeLabel rl = classify_regime(m, k);
            Json j = Json::object();
            j["k"] = k;
            j["pole_plus"] = pair_json(pp.pole_plus);
            j["pole_minus"] = pair_json(pp.pole_minus);
            j["regime"] = to_string(rl.label);
            j["ratio"] = rl.ratio;
            j["regime_cutoffs"] = Json::array({0.25, 4.0});
            j["regime_note"] = "heuristic cutoffs on the Rabi-to-linewidth ratio";
            j["lamb_shift"] = lamb_shift(m.emitter.g, m.coupling.alpha, m.waveguide);
            emit(render(j, fmt_or("json")));
        } else if (val->parsed()) {
            aopt.wavepacket = !no_wavepacket;
            const AgreementReport rep = run_agreement(aopt);
            Json j = Json::object();
            j["n_cases"] = rep.n_cases;
            j["max_abs_error_closed_vs_matrix"] = rep.max_abs_error_closed_vs_matrix;
            j["max_abs_error_closed_vs_lattice"] = rep.max_abs_error_closed_vs_lattice;
            j["max_abs_error_reflection"] = rep.max_abs_error_reflection;
            Json cases = Json::array();
            for (const auto& w : rep.wavepacket_cases) {
                Json c = Json::object();
                c["config"] = std::string(to_string(w.config));
                c["delta"] = w.delta;
                c["alpha"] = w.alpha;
                c["omega_rabi"] = w.omega_rabi;
                c["delta_k0"] = w.delta_k0;
                c["k0"] = w.k0;
                c["T_analytic_avg"] = w.T_analytic_avg;
                c["T_wp"] = w.T_wp;
                c["R_wp"] = w.R_wp;
                c["residual"] = w.residual;
                c["diff"] = w.diff;
                cases.push_back(std::move(c));
            }
            j["wavepacket_cases"] = std::move(cases);
            j["passed"] = rep.passed;
            emit(render(j, fmt_or("json")));
            if (!rep.passed) {
                err << "validation tolerance breached\n";
                return ExitCode::tolerance_breach;
            }
        }
    } catch (const ValidationError& e) {
        err << "error: invalid " << e.field() << ": " << e.what() << "\n";
        return ExitCode::usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::failure;
    }
    return ExitCode::ok;
}

}  // namespace sshqed::cli
