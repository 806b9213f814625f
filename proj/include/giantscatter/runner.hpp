#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "giantscatter/lineshape.hpp"
#include "giantscatter/oracle.hpp"

namespace gs {

using json = nlohmann::json;

// A grid of values; when in_gamma_e is set the values are multiples of
// Gamma_e at k(Delta).
struct GridSpec {
    double from = 0;
    double to = 0;
    std::size_t points = 1;
    bool in_gamma_e = false;
    // Delta_k only: pick a per-Delta grid that resolves every pole.
    bool automatic = false;
};

struct SweepSpec {
    std::string system = "two";   // "single" or "two"
    std::string label = "AAAA";
    int n1 = 1;                   // first coupling cell
    int d1 = 2;                   // single-atom distance, or atom 1's
    int d2 = 2;
    int d21 = 2;
    LatticeParams lattice;
    double g = 0.01;
    Mode mode = Mode::ResonantApprox;
    GridSpec Delta{1.5811388300841898, 1.5811388300841898, 1};
    GridSpec Delta_k{-8.0, 8.0, 401, true};
    std::vector<std::string> outputs = {"spectrum", "characteristics"};
    OracleSettings oracle;
    std::size_t oracle_points = 21;
};

inline constexpr std::size_t max_sweep_points = 1000000;

// Parses a spec document over the defaults; SpecError names the field path.
SweepSpec spec_from_json(const json& doc, SweepSpec base = {});
json spec_to_json(const SweepSpec& spec);
// SpecError on any violated constraint. Returns advisory warnings.
std::vector<std::string> check_spec(const SweepSpec& spec);

std::vector<double> delta_values(const SweepSpec& spec);

struct SweepResult {
    std::vector<SpectrumRow> rows;  // Delta-major, then Delta_k, both ascending
    json sidecar;
};

SweepResult run_sweep(const SweepSpec& spec);

// 17 significant digits
std::string format_double(double v);
void write_csv(std::ostream& os, const std::vector<SpectrumRow>& rows);
inline constexpr const char* csv_header = "Delta,Delta_k,R,T,re_r,im_r,re_t,im_t,flags,Delta_k_over_gamma_e";

// Worker count: SCATTER_THREADS when set and positive, else the hardware
// concurrency. Always at least 1.
unsigned worker_count();

// Runs body(i) for i in [0, n) on the worker pool. Exceptions are rethrown
// after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool passed() const;
};

// suite: "golden", "oracle", "symmetry" or "all".
ValidationReport validate(const std::string& suite);

std::string git_hash();

}  // namespace gs
