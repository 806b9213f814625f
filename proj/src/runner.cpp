#include "giantscatter/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "giantscatter/calibration.hpp"
#include "giantscatter/errors.hpp"

#ifndef GS_GIT_HASH
#define GS_GIT_HASH "unknown"
#endif

namespace gs {

std::string git_hash() { return GS_GIT_HASH; }

// ---------------------------------------------------------------- spec I/O

namespace {

const std::set<std::string> known_outputs = {"spectrum", "characteristics", "classification", "oracle_check"};

[[noreturn]] void spec_error(const std::string& path, const std::string& msg) {
    fail(ErrorKind::SpecError, path + ": " + msg);
}

double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) spec_error(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) spec_error(path, "must be finite");
    return v;
}

int int_at(const json& j, const std::string& path) {
    if (!j.is_number_integer()) spec_error(path, "expected an integer");
    return j.get<int>();
}

std::string string_at(const json& j, const std::string& path) {
    if (!j.is_string()) spec_error(path, "expected a string");
    return j.get<std::string>();
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    if (!obj.is_object()) spec_error(path, "expected an object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) spec_error(path.empty() ? key : path + "." + key, "unknown field");
}

GridSpec grid_at(const json& j, const std::string& path, GridSpec g, bool allow_k, const LatticeParams& lat) {
    if (j.is_string()) {
        if (allow_k || lower(j.get<std::string>()) != "auto") spec_error(path, "expected a number or an object");
        g.automatic = true;
        return g;
    }
    if (j.is_number()) {
        const double v = number_at(j, path);
        return {v, v, 1, g.in_gamma_e};
    }
    check_keys(j, allow_k ? std::set<std::string>{"from", "to", "points", "units", "k"}
                          : std::set<std::string>{"from", "to", "points", "units"},
               path);
    if (j.contains("k")) {
        const double k = number_at(j["k"], path + ".k");
        const double v = dispersion(k, lat);
        if (j.size() > 1) spec_error(path, "'k' cannot be combined with other fields");
        return {v, v, 1, false};
    }
    g.automatic = false;
    if (j.contains("from")) g.from = number_at(j["from"], path + ".from");
    if (j.contains("to")) g.to = number_at(j["to"], path + ".to");
    if (j.contains("points")) {
        const int n = int_at(j["points"], path + ".points");
        if (n < 1) spec_error(path + ".points", "must be at least 1");
        g.points = static_cast<std::size_t>(n);
    }
    if (j.contains("units")) {
        const std::string u = lower(string_at(j["units"], path + ".units"));
        if (u == "gamma_e") g.in_gamma_e = true;
        else if (u == "j") g.in_gamma_e = false;
        else spec_error(path + ".units", "expected \"J\" or \"gamma_e\"");
    }
    return g;
}

json grid_json(const GridSpec& g) {
    if (g.automatic) return "auto";
    json j = {{"from", g.from}, {"to", g.to}, {"points", g.points}};
    j["units"] = g.in_gamma_e ? "gamma_e" : "J";
    return j;
}

}  // namespace

SweepSpec spec_from_json(const json& doc, SweepSpec s) {
    check_keys(doc, {"system", "config", "n1", "d", "d1", "d2", "d21", "delta", "J", "band", "g", "mode", "Delta",
                     "Delta_k", "outputs", "oracle"},
               "");
    if (doc.contains("system")) s.system = lower(string_at(doc["system"], "system"));
    if (doc.contains("config")) s.label = string_at(doc["config"], "config");
    if (doc.contains("n1")) s.n1 = int_at(doc["n1"], "n1");
    if (doc.contains("d")) s.d1 = int_at(doc["d"], "d");
    if (doc.contains("d1")) s.d1 = int_at(doc["d1"], "d1");
    if (doc.contains("d2")) s.d2 = int_at(doc["d2"], "d2");
    if (doc.contains("d21")) s.d21 = int_at(doc["d21"], "d21");
    if (doc.contains("delta")) s.lattice.delta = number_at(doc["delta"], "delta");
    if (doc.contains("J")) s.lattice.J = number_at(doc["J"], "J");
    if (doc.contains("band")) {
        const std::string b = lower(string_at(doc["band"], "band"));
        if (b == "upper") s.lattice.band = Band::Upper;
        else if (b == "lower") s.lattice.band = Band::Lower;
        else spec_error("band", "expected \"upper\" or \"lower\"");
    }
    if (doc.contains("g")) s.g = number_at(doc["g"], "g");
    if (doc.contains("mode")) {
        const std::string m = lower(string_at(doc["mode"], "mode"));
        if (m == "exact") s.mode = Mode::Exact;
        else if (m == "resonant" || m == "resonantapprox") s.mode = Mode::ResonantApprox;
        else spec_error("mode", "expected \"exact\" or \"resonant\"");
    }
    if (doc.contains("Delta")) s.Delta = grid_at(doc["Delta"], "Delta", s.Delta, true, s.lattice);
    if (doc.contains("Delta_k")) s.Delta_k = grid_at(doc["Delta_k"], "Delta_k", s.Delta_k, false, s.lattice);
    if (doc.contains("outputs")) {
        const json& o = doc["outputs"];
        if (!o.is_array()) spec_error("outputs", "expected an array");
        s.outputs.clear();
        for (std::size_t i = 0; i < o.size(); ++i)
            s.outputs.push_back(string_at(o[i], "outputs[" + std::to_string(i) + "]"));
    }
    if (doc.contains("oracle")) {
        const json& o = doc["oracle"];
        check_keys(o, {"cells", "lead_margin", "points"}, "oracle");
        if (o.contains("cells")) s.oracle.cells = int_at(o["cells"], "oracle.cells");
        if (o.contains("lead_margin")) s.oracle.lead_margin = int_at(o["lead_margin"], "oracle.lead_margin");
        if (o.contains("points")) {
            const int n = int_at(o["points"], "oracle.points");
            if (n < 1) spec_error("oracle.points", "must be at least 1");
            s.oracle_points = static_cast<std::size_t>(n);
        }
    }
    return s;
}

json spec_to_json(const SweepSpec& s) {
    json j;
    j["system"] = s.system;
    j["config"] = s.label;
    j["n1"] = s.n1;
    j["d1"] = s.d1;
    if (s.system == "two") {
        j["d2"] = s.d2;
        j["d21"] = s.d21;
    }
    j["delta"] = s.lattice.delta;
    j["J"] = s.lattice.J;
    j["band"] = s.lattice.band == Band::Upper ? "upper" : "lower";
    j["g"] = s.g;
    j["mode"] = s.mode == Mode::Exact ? "exact" : "resonant";
    j["Delta"] = {{"from", s.Delta.from}, {"to", s.Delta.to}, {"points", s.Delta.points}};
    j["Delta_k"] = grid_json(s.Delta_k);
    j["outputs"] = s.outputs;
    j["oracle"] = {{"cells", s.oracle.cells}, {"lead_margin", s.oracle.lead_margin}, {"points", s.oracle_points}};
    return j;
}

std::vector<std::string> check_spec(const SweepSpec& s) {
    std::vector<std::string> warnings;
    if (s.system != "single" && s.system != "two") spec_error("system", "expected \"single\" or \"two\"");
    try {
        check_params(s.lattice);
        if (s.system == "single") make_single(s.label, s.n1, s.d1, s.g);
        else make_two(s.label, s.n1, s.d1, s.d21, s.d2, s.g);
    } catch (const Error& e) {
        spec_error("config", e.what());
    }
    for (const auto* g : {&s.Delta, &s.Delta_k}) {
        const std::string name = g == &s.Delta ? "Delta" : "Delta_k";
        if (g->automatic) continue;
        if (g->points > 1 && !(g->to > g->from)) spec_error(name, "range must be ascending");
        if (g->points == 1 && g->to != g->from) spec_error(name, "a single point needs from == to");
    }
    if (!s.Delta_k.automatic && s.Delta.points * s.Delta_k.points > max_sweep_points)
        spec_error("Delta_k.points", "sweep exceeds " + std::to_string(max_sweep_points) + " points");
    if (s.outputs.empty()) spec_error("outputs", "at least one output is required");
    for (std::size_t i = 0; i < s.outputs.size(); ++i)
        if (!known_outputs.count(s.outputs[i]))
            spec_error("outputs[" + std::to_string(i) + "]", "unknown output '" + s.outputs[i] + "'");
    if (s.oracle.lead_margin < 100) spec_error("oracle.lead_margin", "must be at least 100");
    if (s.g / s.lattice.J > 0.05)
        warnings.push_back("g/J = " + format_double(s.g / s.lattice.J) +
                           " is outside the weak-coupling regime the closed forms assume");
    return warnings;
}

std::vector<double> delta_values(const SweepSpec& s) { return linspace(s.Delta.from, s.Delta.to, s.Delta.points); }

// ---------------------------------------------------------------- workers

unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SCATTER_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min<long>(v, 1024));
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || stop.load()) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                stop = true;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t + 1 < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------- sweeps

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<SpectrumRow>& rows) {
    os << csv_header << '\n';
    for (const auto& r : rows) {
        os << format_double(r.Delta) << ',' << format_double(r.Delta_k) << ',' << format_double(r.amp.R) << ','
           << format_double(r.amp.T) << ',' << format_double(r.amp.r.real()) << ','
           << format_double(r.amp.r.imag()) << ',' << format_double(r.amp.t.real()) << ','
           << format_double(r.amp.t.imag()) << ',' << flags_to_string(r.amp.flags) << ',';
        if (std::isfinite(r.gamma_e) && r.gamma_e > 0) os << format_double(r.Delta_k / r.gamma_e);
        os << '\n';
    }
}

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json chars_json(const CharacteristicSingle& c) {
    return {{"k", c.k}, {"phi_k", c.phi_k}, {"gamma_e", c.gamma_e}, {"lamb_shift", c.lamb_shift},
            {"decay", c.decay}, {"global_phase", c.global_phase}};
}

json chars_json(const CharacteristicTwo& c) {
    const auto sa = sa_representation(c, 0.0);
    return {{"k", c.k},
            {"phi_k", c.phi_k},
            {"gamma_e", c.gamma_e},
            {"lamb1", c.lamb1},
            {"lamb2", c.lamb2},
            {"gamma1", c.gamma1},
            {"gamma2", c.gamma2},
            {"gamma12", c.gamma12},
            {"g12", c.g12},
            {"theta1", c.theta1},
            {"theta2", c.theta2},
            {"sa",
             {{"delta_SL", sa.delta_SL},
              {"delta_AL", sa.delta_AL},
              {"gamma_S", sa.gamma_S},
              {"gamma_A", sa.gamma_A},
              {"g_SA", sa.g_SA},
              {"gamma_SA", sa.gamma_SA}}}};
}

json fano_json(const FanoDecomposition& f) {
    return {{"delta_plus", f.delta_plus}, {"delta_minus", f.delta_minus}, {"gamma_plus", f.gamma_plus},
            {"gamma_minus", f.gamma_minus}, {"q", finite_or_null(f.q)}, {"eta", f.eta},
            {"ratio", finite_or_null(f.ratio)}, {"broad", f.broad == 1 ? "+" : "-"},
            {"epsilon", f.epsilon_definition}};
}

json report_json(const LineShapeReport& r) {
    json params = json::object();
    for (const auto& [k, v] : r.fit_params) params[k] = finite_or_null(v);
    return {{"shape", to_string(r.shape)},
            {"residual", r.residual},
            {"fit_params", params},
            {"peaks", r.peaks},
            {"regime_evidence", r.regime_evidence}};
}

struct Frozen {
    std::optional<CharacteristicSingle> single;
    std::optional<CharacteristicTwo> two;
    std::optional<FanoDecomposition> fano;
    double gamma_e = std::nan("");
};

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    const auto warnings = check_spec(spec);
    const bool single = spec.system == "single";
    const LatticeParams& p = spec.lattice;
    SingleConfig c1;
    TwoAtomConfig c2;
    if (single) c1 = make_single(spec.label, spec.n1, spec.d1, spec.g);
    else c2 = make_two(spec.label, spec.n1, spec.d1, spec.d21, spec.d2, spec.g);

    const auto deltas = delta_values(spec);
    const auto unit_grid = linspace(spec.Delta_k.from, spec.Delta_k.to, spec.Delta_k.points);

    std::vector<Frozen> frozen(deltas.size());
    std::vector<std::vector<double>> grids(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        Frozen& f = frozen[i];
        if (auto k0 = probe_wave_vector(deltas[i], 0.0, p, Mode::ResonantApprox)) {
            if (single) {
                f.single = characteristics_single(c1, *k0, p);
                f.gamma_e = f.single->gamma_e;
            } else {
                f.two = characteristics_two(c2, *k0, p);
                f.gamma_e = f.two->gamma_e;
                try {
                    f.fano = fano_decompose(c2, deltas[i], p);
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::NotApplicable) throw;
                }
            }
        }
        if (spec.Delta_k.automatic) {
            if (f.single) grids[i] = suggest_grid(context_of(*f.single));
            else if (f.two) grids[i] = suggest_grid(context_of(*f.two, f.fano));
            else grids[i] = linspace(-8.0, 8.0, 401);
            continue;
        }
        // out-of-band Delta has no Gamma_e; fall back to g^2 / J for the axis scale
        const double scale = spec.Delta_k.in_gamma_e
                                 ? (std::isfinite(f.gamma_e) ? f.gamma_e : spec.g * spec.g / p.J)
                                 : 1.0;
        grids[i].reserve(unit_grid.size());
        for (double u : unit_grid) grids[i].push_back(u * scale);
    }

    // row offset of each Delta block
    std::vector<std::size_t> offset(deltas.size() + 1, 0);
    for (std::size_t i = 0; i < deltas.size(); ++i) offset[i + 1] = offset[i] + grids[i].size();
    if (offset.back() > max_sweep_points)
        spec_error("Delta_k", "sweep exceeds " + std::to_string(max_sweep_points) + " points");
    SweepResult out;
    out.rows.resize(offset.back());
    parallel_for(out.rows.size(), [&](std::size_t idx) {
        const std::size_t i =
            static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), idx) - offset.begin()) - 1;
        const std::size_t j = idx - offset[i];
        const double D = deltas[i], dk = grids[i][j];
        ScatteringAmplitudes a;
        if (spec.mode == Mode::ResonantApprox) {
            if (single) a = frozen[i].single ? amplitudes_single(*frozen[i].single, dk, c1.n())
                                             : ScatteringAmplitudes::transmitted();
            else a = frozen[i].two ? amplitudes_two(*frozen[i].two, dk, c2.atom1.n(), c2.atom2.n())
                                   : ScatteringAmplitudes::transmitted();
        } else {
            a = single ? scatter_single(c1, D, dk, p, spec.mode) : scatter_two(c2, D, dk, p, spec.mode);
        }
        out.rows[idx] = {D, dk, a, frozen[i].gamma_e};
    });

    auto wants = [&](const char* name) {
        return std::find(spec.outputs.begin(), spec.outputs.end(), name) != spec.outputs.end();
    };

    json& side = out.sidecar;
    side["schema"] = 1;
    side["provenance"] = {{"tool", "giantscatter"},
                          {"git_hash", git_hash()},
                          {"units", "energies in J, detunings in Gamma_e where flagged"},
                          {"spec", spec_to_json(spec)}};
    side["warnings"] = warnings;
    side["rows"] = out.rows.size();

    if (wants("characteristics")) {
        json arr = json::array();
        for (std::size_t i = 0; i < deltas.size(); ++i) {
            json e = {{"Delta", deltas[i]}, {"in_band", frozen[i].single || frozen[i].two}};
            if (frozen[i].single) e["single"] = chars_json(*frozen[i].single);
            if (frozen[i].two) e["two"] = chars_json(*frozen[i].two);
            if (frozen[i].fano) e["fano"] = fano_json(*frozen[i].fano);
            arr.push_back(e);
        }
        side["characteristics"] = arr;
    }

    if (wants("classification")) {
        json arr = json::array();
        for (std::size_t i = 0; i < deltas.size(); ++i) {
            json e = {{"Delta", deltas[i]}};
            const std::vector<SpectrumRow> slice(out.rows.begin() + static_cast<long>(offset[i]),
                                                 out.rows.begin() + static_cast<long>(offset[i + 1]));
            try {
                LineShapeContext ctx;
                if (frozen[i].single) ctx = context_of(*frozen[i].single);
                else if (frozen[i].two) ctx = context_of(*frozen[i].two, frozen[i].fano);
                e.update(report_json(classify(slice, ctx)));
            } catch (const Error& err) {
                e["shape"] = nullptr;
                e["error"] = err.what();
            }
            arr.push_back(e);
        }
        side["classification"] = arr;
    }

    if (wants("oracle_check")) {
        json arr = json::array();
        for (std::size_t i = 0; i < deltas.size(); ++i) {
            const std::size_t per = grids[i].size();
            const std::size_t m = std::min(spec.oracle_points, per);
            std::vector<std::size_t> picks;
            for (std::size_t q = 0; q < m; ++q)
                picks.push_back(m == 1 ? per / 2 : q * (per - 1) / (m - 1));
            std::vector<json> res(picks.size());
            parallel_for(picks.size(), [&](std::size_t q) {
                const double dk = grids[i][picks[q]];
                json e = {{"Delta", deltas[i]}, {"Delta_k", dk}};
                try {
                    const auto sol = single ? solve(build_system(c1, deltas[i], dk, p, spec.oracle))
                                            : solve(build_system(c2, deltas[i], dk, p, spec.oracle));
                    const auto ex = single ? scatter_single(c1, deltas[i], dk, p, Mode::Exact)
                                           : scatter_two(c2, deltas[i], dk, p, Mode::Exact);
                    e["R_oracle"] = std::norm(sol.r);
                    e["R_exact"] = ex.R;
                    e["abs_diff_R"] = std::abs(std::norm(sol.r) - ex.R);
                    e["abs_diff_r"] = std::abs(sol.r - ex.r);
                    e["flux_error"] = std::abs(sol.flux - 1.0);
                    e["residual"] = sol.residual;
                    e["cells"] = sol.cells;
                } catch (const Error& err) {
                    e["error"] = err.what();
                }
                res[q] = e;
            });
            for (auto& e : res) arr.push_back(e);
        }
        side["oracle_check"] = arr;
    }
    return out;
}

// ---------------------------------------------------------------- validation

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

constexpr double quarter = pi / 4.0;

// Lower-edge-inclusive bisection on a sign change.
template <class F>
double bisect(F f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct GoldenEntry {
    const char* name;
    const char* label;
    double delta;
    double Delta;  // resolved operating point
    const char* quantity;
    double expected;
};

double quantity_of(const CharacteristicTwo& c, const std::string& q) {
    const auto sa = sa_representation(c, 0.0);
    if (q == "delta_SL") return sa.delta_SL;
    if (q == "delta_AL") return sa.delta_AL;
    if (q == "gamma_S") return sa.gamma_S;
    if (q == "gamma_A") return sa.gamma_A;
    if (q == "g_SA") return sa.g_SA;
    if (q == "gamma2") return c.gamma2;
    if (q == "lamb") return (c.lamb1 + c.lamb2) / 2.0;
    fail(ErrorKind::SpecError, "unknown fixture quantity " + q);
}

double g12_over_ge(const char* label, double delta, double Delta) {
    const LatticeParams p{1.0, delta, Band::Upper};
    const auto cfg = make_two(label, 1, 2, 2, 2, 0.01);
    const auto c = characteristics_two(cfg, wave_vector_from_detuning(Delta, p), p);
    return c.g12 / c.gamma_e;
}

std::vector<GoldenEntry> golden_fixture() {
    const LatticeParams up{1.0, 0.5, Band::Upper};
    const double D120 = dispersion(-3.0 * quarter, up);
    const double D158 = dispersion(-2.0 * quarter, up);
    const double D189 = dispersion(-quarter, up);
    const double D124 = bisect([](double D) { return g12_over_ge("AABB", 0.5, D); }, 1.20, 1.27);
    const double D170 = bisect([](double D) { return g12_over_ge("AABB", -0.5, D); }, 1.65, 1.75);
    return {
        {"ABAB +0.5 @1.20 Delta_SL", "ABAB", 0.5, D120, "delta_SL", -0.96},
        {"ABAB +0.5 @1.20 Gamma_A", "ABAB", 0.5, D120, "gamma_A", 2.82},
        {"ABAB +0.5 @1.58 Gamma_S", "ABAB", 0.5, D158, "gamma_S", 7.79},
        {"ABAB -0.5 @1.58 Gamma_S", "ABAB", -0.5, D158, "gamma_S", 5.26},
        {"ABAB -0.5 @1.20 Delta_SL", "ABAB", -0.5, D120, "delta_SL", 0.47},
        {"ABAB -0.5 @1.20 Gamma_A", "ABAB", -0.5, D120, "gamma_A", 0.46},
        {"AABB +0.5 @1.24 Delta_SL", "AABB", 0.5, D124, "delta_SL", 0.99},
        {"AABB +0.5 @1.24 Gamma_S", "AABB", 0.5, D124, "gamma_S", 3.38},
        {"AABB -0.5 @1.70 Delta_SL", "AABB", -0.5, D170, "delta_SL", -0.49},
        {"AABB -0.5 @1.70 Gamma_A", "AABB", -0.5, D170, "gamma_A", 0.51},
        {"ABBA +0.5 @1.58 g_SA", "ABBA", 0.5, D158, "g_SA", -0.32},
        {"ABBA -0.5 @1.58 g_SA", "ABBA", -0.5, D158, "g_SA", -0.95},
        {"AAAB +0.5 @1.58 Gamma_2", "AAAB", 0.5, D158, "gamma2", 3.9},
        {"AAAB -0.5 @1.58 Gamma_2", "AAAB", -0.5, D158, "gamma2", 2.6},
        {"ABBA +0.5 @1.89 Delta_L", "ABBA", 0.5, D189, "lamb", 0.98},
        {"ABBA -0.5 @1.89 Delta_L", "ABBA", -0.5, D189, "lamb", 0.83},
    };
}

void golden_suite(std::vector<CheckResult>& out) {
    for (const auto& e : golden_fixture()) {
        const LatticeParams p{1.0, e.delta, Band::Upper};
        const auto cfg = make_two(e.label, 1, 2, 2, 2, 0.01);
        const auto c = characteristics_two(cfg, wave_vector_from_detuning(e.Delta, p), p);
        const double got = quantity_of(c, e.quantity) / c.gamma_e;
        const double err = std::abs(got - e.expected);
        std::ostringstream d;
        d << "Delta=" << format_double(e.Delta) << " got " << got << " Gamma_e, expected " << e.expected
          << ", |diff|=" << err;
        out.push_back({"golden", e.name, err <= 0.01, d.str()});
    }
    // Single-atom AA at k = -pi/2 over one distance period.
    const double expect[4][2] = {{-1, 2}, {0, 0}, {1, 2}, {0, 4}};
    for (double delta : {0.5, -0.5}) {
        const LatticeParams p{1.0, delta, Band::Upper};
        for (int r = 0; r < 4; ++r) {
            const auto c = characteristics_single(make_single("AA", 1, 5 + r, 0.01), -pi / 2, p);
            const double eL = expect[r][0] * c.gamma_e, eG = expect[r][1] * c.gamma_e;
            const double err = std::max(std::abs(c.lamb_shift - eL), std::abs(c.decay - eG)) / c.gamma_e;
            std::ostringstream n;
            n << "AA d=4x+" << (r + 1) << " delta=" << delta;
            out.push_back({"golden", n.str(), err <= 1e-12, "max rel err " + format_double(err)});
        }
    }
}

void oracle_suite(std::vector<CheckResult>& out) {
    struct Instance {
        std::string label;
        int d1, d2, d21;
        double delta, Delta, dk;
    };
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> cls(0, 5), dist(1, 6), sgn(0, 1);
    std::uniform_real_distribution<double> mag(0.2, 0.7), unit(0.0, 1.0), dkd(-8.0, 8.0);
    std::vector<Instance> inst;
    for (int i = 0; i < 50; ++i) {
        Instance x;
        x.label = std::string(canonical_classes[static_cast<std::size_t>(cls(rng))]);
        x.d1 = dist(rng);
        x.d2 = dist(rng);
        x.d21 = dist(rng);
        x.delta = (sgn(rng) ? 1.0 : -1.0) * mag(rng);
        const double lo = 2.0 * std::abs(x.delta) + 0.05, hi = 2.0 - 0.05;
        x.Delta = lo + (hi - lo) * unit(rng);
        x.dk = dkd(rng);
        inst.push_back(x);
    }
    std::vector<double> diff(inst.size()), flux(inst.size());
    parallel_for(inst.size(), [&](std::size_t i) {
        const auto& x = inst[i];
        const LatticeParams p{1.0, x.delta, Band::Upper};
        const auto cfg = make_two(x.label, 1, x.d1, x.d21, x.d2, 0.01);
        const double ge = emission_rate(wave_vector_from_detuning(x.Delta, p), 0.01, p);
        const double dk = x.dk * ge;
        OracleSettings s;
        s.cells = 600;
        const auto sol = solve(build_system(cfg, x.Delta, dk, p, s));
        diff[i] = std::abs(std::norm(sol.r) - scatter_two(cfg, x.Delta, dk, p, Mode::Exact).R);
        flux[i] = std::abs(sol.flux - 1.0);
    });
    const double worst = *std::max_element(diff.begin(), diff.end());
    const double worst_flux = *std::max_element(flux.begin(), flux.end());
    out.push_back({"oracle", "50 random two-atom instances", worst < 1e-5, "max |dR| " + format_double(worst)});
    out.push_back({"oracle", "flux conservation", worst_flux < 1e-8, "max ||r|^2+|t|^2-1| " + format_double(worst_flux)});

    const LatticeParams p{1.0, 0.5, Band::Upper};
    const auto cfg = make_two("ABAB", 1, 2, 2, 2, 0.01);
    const auto conv = doubling_check(cfg, 1.45, 1e-4, p, 600);
    out.push_back({"oracle", "N doubling 600 -> 1200", conv.change < 1e-8, "|r| change " + format_double(conv.change)});
}

double max_diff(const std::vector<SpectrumRow>& a, const std::vector<SpectrumRow>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i].amp.R - b[i].amp.R));
    return m;
}

void symmetry_suite(std::vector<CheckResult>& out) {
    const std::vector<std::array<int, 3>> tuples = {{2, 2, 2}, {1, 3, 2}, {3, 2, 1}, {4, 1, 3}, {2, 5, 4}};
    const double deltas[] = {1.2, 1.45, 1.7};
    const auto grid = linspace(-8.0, 8.0, 200);
    for (const auto& row : equivalence_rows()) {
        double worst = 0.0;
        int cases = 0;
        for (const auto& t : tuples)
            for (int sign : {1, -1}) {
                const ClassTuple canon{std::string(row.canonical), t[0], t[1], t[2], sign};
                const ClassTuple part = apply_row(row, canon);
                if (part.d1 < 1 || part.d2 < 1 || part.d21 < 1) continue;
                const LatticeParams pc{1.0, 0.5 * canon.delta_sign, Band::Upper};
                const LatticeParams pp{1.0, 0.5 * part.delta_sign, Band::Upper};
                const auto a = make_two(canon.label, 1, canon.d1, canon.d21, canon.d2, 0.01);
                const auto b = make_two(part.label, 1, part.d1, part.d21, part.d2, 0.01);
                for (double D : deltas) {
                    const double ge = emission_rate(wave_vector_from_detuning(D, pc), 0.01, pc);
                    std::vector<double> g;
                    for (double u : grid) g.push_back(u * ge);
                    worst = std::max(worst, max_diff(reflection_spectrum_two(a, D, g, pc, Mode::ResonantApprox).rows,
                                                     reflection_spectrum_two(b, D, g, pp, Mode::ResonantApprox).rows));
                    ++cases;
                }
            }
        out.push_back({"symmetry", std::string(row.canonical) + " ~ " + std::string(row.partner),
                       cases > 0 && worst < 1e-12, std::to_string(cases) + " spectra, max |dR| " + format_double(worst)});
    }

    // delta-sign blindness for AA-type legs
    {
        double worst = 0.0;
        const auto grid2 = linspace(-8e-4, 8e-4, 200);
        for (double D : deltas) {
            const LatticeParams a{1.0, 0.5, Band::Upper}, b{1.0, -0.5, Band::Upper};
            for (const char* l : {"AA", "BB"}) {
                const auto cfg = make_single(l, 1, 3, 0.01);
                worst = std::max(worst, max_diff(reflection_spectrum_single(cfg, D, grid2, a, Mode::Exact).rows,
                                                 reflection_spectrum_single(cfg, D, grid2, b, Mode::Exact).rows));
            }
            const auto cfg = make_two("AAAA", 1, 2, 3, 2, 0.01);
            worst = std::max(worst, max_diff(reflection_spectrum_two(cfg, D, grid2, a, Mode::Exact).rows,
                                             reflection_spectrum_two(cfg, D, grid2, b, Mode::Exact).rows));
        }
        out.push_back({"symmetry", "delta sign blindness (AA, BB, AAAA)", worst < 1e-12, "max |dR| " + format_double(worst)});
    }

    // period-4 modulation at k = -pi/2
    {
        double worst = 0.0;
        for (double delta : {0.5, -0.5}) {
            const LatticeParams p{1.0, delta, Band::Upper};
            for (const char* l : {"AA", "AB", "BA", "BB"})
                for (int d = 1; d <= 6; ++d) {
                    const auto a = characteristics_single(make_single(l, 1, d, 0.01), -pi / 2, p);
                    const auto b = characteristics_single(make_single(l, 1, d + 4, 0.01), -pi / 2, p);
                    worst = std::max({worst, std::abs(a.lamb_shift - b.lamb_shift) / a.gamma_e,
                                      std::abs(a.decay - b.decay) / a.gamma_e});
                }
        }
        out.push_back({"symmetry", "period 4 in d at k=-pi/2", worst < 1e-12, "max rel diff " + format_double(worst)});
    }
}

}  // namespace

ValidationReport validate(const std::string& suite) {
    const std::string s = lower(suite);
    if (s != "golden" && s != "oracle" && s != "symmetry" && s != "all")
        fail(ErrorKind::SpecError, "suite: expected golden, oracle, symmetry or all");
    ValidationReport rep;
    if (s == "golden" || s == "all") golden_suite(rep.checks);
    if (s == "symmetry" || s == "all") symmetry_suite(rep.checks);
    if (s == "oracle" || s == "all") oracle_suite(rep.checks);
    return rep;
}

}  // namespace gs
