#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "giantscatter/lattice.hpp"

namespace gs {

// Exact evaluates the characteristic quantities at the probe's own wave
// vector; ResonantApprox freezes them at k(Delta).
enum class Mode { Exact, ResonantApprox };

enum Flag : std::uint32_t {
    FlagNone = 0,
    FlagOutOfBand = 1u << 0,
    FlagRegimeViolation = 1u << 1,
};

std::string flags_to_string(std::uint32_t flags);

struct ScatteringAmplitudes {
    cplx r{0.0, 0.0};
    cplx t{1.0, 0.0};
    double R = 0.0;
    double T = 1.0;
    std::uint32_t flags = FlagNone;

    static ScatteringAmplitudes from(cplx r, cplx t) { return {r, t, std::norm(r), std::norm(t)}; }
    // The photon passes untouched when its energy has no propagating mode.
    static ScatteringAmplitudes transmitted() { return {{0, 0}, {1, 0}, 0.0, 1.0, FlagOutOfBand}; }
};

struct SpectrumRow {
    double Delta = 0;
    double Delta_k = 0;
    ScatteringAmplitudes amp;
    // Gamma_e at k(Delta) when Delta is inside the band, NaN otherwise.
    double gamma_e = std::nan("");
};

// n points evenly spaced on [lo, hi], inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace gs
