#include <algorithm>
#include <cstdio>
#include <functional>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "giantscatter/errors.hpp"
#include "giantscatter/runner.hpp"

namespace {

using gs::json;

constexpr int exit_ok = 0;
constexpr int exit_spec = 2;
constexpr int exit_validation = 3;

// Flags shared by the sweep-style subcommands. Each one, when present,
// overrides the matching field of the config file.
struct Overrides {
    std::string config_file;
    std::string out;
    bool emit_spec = false;
    bool auto_grid = false;

    std::optional<std::string> label, band, mode, dk_units, outputs;
    std::optional<int> n1, d, d1, d2, d21, oracle_cells, oracle_points;
    std::optional<double> delta, J, g, Delta, Delta_from, Delta_to, dk_from, dk_to;
    std::optional<int> Delta_points, dk_points;

    json overlay() const {
        json o = json::object();
        if (label) o["config"] = *label;
        if (band) o["band"] = *band;
        if (mode) o["mode"] = *mode;
        if (n1) o["n1"] = *n1;
        if (d) o["d"] = *d;
        if (d1) o["d1"] = *d1;
        if (d2) o["d2"] = *d2;
        if (d21) o["d21"] = *d21;
        if (delta) o["delta"] = *delta;
        if (J) o["J"] = *J;
        if (g) o["g"] = *g;
        if (Delta) o["Delta"] = *Delta;
        json dr = json::object();
        if (Delta_from) dr["from"] = *Delta_from;
        if (Delta_to) dr["to"] = *Delta_to;
        if (Delta_points) dr["points"] = *Delta_points;
        if (!dr.empty()) {
            if (Delta) gs::fail(gs::ErrorKind::SpecError, "Delta: --Delta cannot be combined with a range");
            o["Delta"] = dr;
        }
        json dk = json::object();
        if (dk_from) dk["from"] = *dk_from;
        if (dk_to) dk["to"] = *dk_to;
        if (dk_points) dk["points"] = *dk_points;
        if (dk_units) dk["units"] = *dk_units;
        if (!dk.empty()) o["Delta_k"] = dk;
        if (auto_grid) {
            if (!dk.empty()) gs::fail(gs::ErrorKind::SpecError, "Delta_k: --auto-grid cannot be combined with --dk-*");
            o["Delta_k"] = "auto";
        }
        if (outputs) {
            json arr = json::array();
            std::stringstream ss(*outputs);
            for (std::string item; std::getline(ss, item, ',');)
                if (!item.empty()) arr.push_back(item);
            o["outputs"] = arr;
        }
        json orc = json::object();
        if (oracle_cells) orc["cells"] = *oracle_cells;
        if (oracle_points) orc["points"] = *oracle_points;
        if (!orc.empty()) o["oracle"] = orc;
        return o;
    }
};

void add_sweep_options(CLI::App* app, Overrides& o) {
    app->add_option("-c,--config", o.config_file, "JSON spec file")->check(CLI::ExistingFile);
    app->add_option("-o,--out", o.out, "write <prefix>.csv and <prefix>.json instead of CSV on stdout");
    app->add_flag("--emit-spec", o.emit_spec, "print the resolved spec as JSON and exit");
    app->add_option("--label", o.label, "coupling configuration, e.g. AA or ABAB");
    app->add_option("--n1", o.n1, "first coupling cell");
    app->add_option("--d", o.d, "leg distance (single atom, or both atoms)");
    app->add_option("--d1", o.d1);
    app->add_option("--d2", o.d2);
    app->add_option("--d21", o.d21, "gap between atom 1's last and atom 2's first leg");
    app->add_option("--delta", o.delta, "dimerization");
    app->add_option("--J", o.J, "mean hopping");
    app->add_option("--band", o.band, "upper or lower");
    app->add_option("--g", o.g, "coupling per leg");
    app->add_option("--mode", o.mode, "exact or resonant");
    app->add_option("--Delta", o.Delta, "fixed atomic detuning in J");
    app->add_option("--Delta-from", o.Delta_from);
    app->add_option("--Delta-to", o.Delta_to);
    app->add_option("--Delta-points", o.Delta_points);
    app->add_option("--dk-from", o.dk_from, "probe detuning grid start");
    app->add_option("--dk-to", o.dk_to);
    app->add_option("--dk-points", o.dk_points);
    app->add_option("--dk-units", o.dk_units, "J or gamma_e");
    app->add_flag("--auto-grid", o.auto_grid, "per-Delta probe grid that resolves every pole");
    app->add_option("--outputs", o.outputs, "comma list of spectrum,characteristics,classification,oracle_check");
    app->add_option("--oracle-cells", o.oracle_cells);
    app->add_option("--oracle-points", o.oracle_points);
}

// system: forced for single/two; otherwise the file decides, then --system.
gs::SweepSpec resolve(const Overrides& o, const std::string& system, const std::optional<std::string>& flag = {}) {
    gs::SweepSpec s;
    s.system = system;
    if (!o.config_file.empty()) {
        std::ifstream in(o.config_file);
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            gs::fail(gs::ErrorKind::SpecError, o.config_file + ": " + e.what());
        }
        s = gs::spec_from_json(doc, s);
    }
    s = gs::spec_from_json(o.overlay(), s);
    if (flag) s.system = *flag;
    return s;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) gs::fail(gs::ErrorKind::SpecError, "out: cannot write " + path);
    f << text;
}

int emit(const gs::SweepSpec& spec, const Overrides& o, const std::function<int(const gs::SweepResult&)>& report) {
    if (o.emit_spec) {
        gs::check_spec(spec);
        std::cout << gs::spec_to_json(spec).dump(2) << '\n';
        return exit_ok;
    }
    const auto res = gs::run_sweep(spec);
    for (const auto& w : res.sidecar["warnings"]) std::cerr << "warning: " << w.get<std::string>() << '\n';
    if (!o.out.empty()) {
        std::ostringstream csv;
        gs::write_csv(csv, res.rows);
        write_text(o.out + ".csv", csv.str());
        write_text(o.out + ".json", res.sidecar.dump(2) + "\n");
    }
    if (report) return report(res);
    if (o.out.empty()) gs::write_csv(std::cout, res.rows);
    return exit_ok;
}

bool has_output(gs::SweepSpec& s, const std::string& name) {
    return std::find(s.outputs.begin(), s.outputs.end(), name) != s.outputs.end();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-photon scattering off giant atoms on an SSH waveguide"};
    app.require_subcommand(1);

    Overrides single_o, two_o, sweep_o, classify_o, oracle_o;
    auto* single = app.add_subcommand("single", "one giant atom spectrum");
    add_sweep_options(single, single_o);
    auto* two = app.add_subcommand("two", "two giant atoms spectrum");
    add_sweep_options(two, two_o);
    auto* sweep2d = app.add_subcommand("sweep2d", "spectrum over a Delta x Delta_k grid");
    std::optional<std::string> sweep_system;
    add_sweep_options(sweep2d, sweep_o);
    sweep2d->add_option("--system", sweep_system, "single or two");
    auto* classify = app.add_subcommand("classify", "line-shape classification per Delta");
    std::optional<std::string> classify_system;
    add_sweep_options(classify, classify_o);
    classify->add_option("--system", classify_system, "single or two");
    auto* oracle = app.add_subcommand("oracle-check", "compare closed forms against the finite-chain solve");
    std::optional<std::string> oracle_system;
    double oracle_tol = 1e-5;
    add_sweep_options(oracle, oracle_o);
    oracle->add_option("--system", oracle_system, "single or two");
    oracle->add_option("--tol", oracle_tol, "max allowed |R_oracle - R_exact|");
    auto* validate = app.add_subcommand("validate", "run a validation suite");
    std::string suite = "all";
    validate->add_option("suite", suite, "golden, oracle, symmetry or all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_spec;
    }

    try {
        if (*single) {
            auto s = resolve(single_o, "single");
            s.system = "single";
            return emit(s, single_o, nullptr);
        }
        if (*two) {
            auto s = resolve(two_o, "two");
            s.system = "two";
            return emit(s, two_o, nullptr);
        }
        if (*sweep2d) {
            auto s = resolve(sweep_o, "two", sweep_system);
            if (s.Delta.points < 2)
                gs::fail(gs::ErrorKind::SpecError, "Delta: sweep2d needs a Delta range with at least 2 points");
            return emit(s, sweep_o, nullptr);
        }
        if (*classify) {
            auto s = resolve(classify_o, "two", classify_system);
            if (!has_output(s, "classification")) s.outputs.push_back("classification");
            return emit(s, classify_o, [](const gs::SweepResult& r) {
                std::cout << r.sidecar["classification"].dump(2) << '\n';
                return exit_ok;
            });
        }
        if (*oracle) {
            auto s = resolve(oracle_o, "two", oracle_system);
            s.mode = gs::Mode::Exact;
            if (!has_output(s, "oracle_check")) s.outputs.push_back("oracle_check");
            return emit(s, oracle_o, [oracle_tol](const gs::SweepResult& r) {
                double worst = 0.0;
                std::size_t failed = 0, n = 0;
                for (const auto& e : r.sidecar["oracle_check"]) {
                    ++n;
                    if (e.contains("error")) {
                        ++failed;
                        std::cout << "error at Delta=" << gs::format_double(e["Delta"].get<double>())
                                  << " Delta_k=" << gs::format_double(e["Delta_k"].get<double>()) << ": "
                                  << e["error"].get<std::string>() << '\n';
                        continue;
                    }
                    const double d = e["abs_diff_R"].get<double>();
                    worst = std::max(worst, d);
                    if (!(d < oracle_tol)) ++failed;
                }
                std::cout << "oracle-check: " << n << " points, max |dR| = " << gs::format_double(worst) << ", "
                          << failed << " over tolerance " << gs::format_double(oracle_tol) << '\n';
                return failed == 0 ? exit_ok : exit_validation;
            });
        }
        if (*validate) {
            const auto rep = gs::validate(suite);
            std::size_t failed = 0;
            for (const auto& c : rep.checks) {
                std::cout << (c.passed ? "PASS " : "FAIL ") << c.suite << ": " << c.name << " (" << c.detail << ")\n";
                if (!c.passed) ++failed;
            }
            std::cout << rep.checks.size() - failed << "/" << rep.checks.size() << " checks passed\n";
            return failed == 0 ? exit_ok : exit_validation;
        }
    } catch (const gs::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
        case gs::ErrorKind::SpecError:
        case gs::ErrorKind::InvalidMapping:
        case gs::ErrorKind::OutOfBand:
        case gs::ErrorKind::NotApplicable:
        case gs::ErrorKind::GridTooCoarse:
        case gs::ErrorKind::GapClosing:
            return exit_spec;
        default:
            return 1;
        }
    } catch (const json::exception& e) {
        std::cerr << "error [SpecError]: " << e.what() << '\n';
        return exit_spec;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_ok;
}
