#pragma once

#include <optional>
#include <vector>

#include "giantscatter/coupling.hpp"
#include "giantscatter/spectrum.hpp"

namespace gs {

struct CharacteristicSingle {
    double lamb_shift = 0;
    double decay = 0;
    double global_phase = 0;
    // evaluation point, kept for reporting
    double k = 0;
    double phi_k = 0;
    double gamma_e = 0;
};

CharacteristicSingle characteristics_single(const SingleConfig& cfg, double k, const LatticeParams& p);

// Right-moving wave vector used for a probe at Delta + Delta_k (Exact) or at
// Delta (ResonantApprox); empty when that energy has no propagating mode.
std::optional<double> probe_wave_vector(double Delta, double Delta_k, const LatticeParams& p, Mode mode);

// r and t from given characteristic quantities; n is the first leg's cell.
ScatteringAmplitudes amplitudes_single(const CharacteristicSingle& c, double Delta_k, int n);

ScatteringAmplitudes scatter_single(const SingleConfig& cfg, double Delta, double Delta_k,
                                    const LatticeParams& p, Mode mode);

struct SingleSpectrum {
    std::vector<SpectrumRow> rows;
    std::optional<CharacteristicSingle> frozen;  // at k(Delta), when Delta is in band
};

// Grid must be finite and ascending.
SingleSpectrum reflection_spectrum_single(const SingleConfig& cfg, double Delta,
                                          const std::vector<double>& grid, const LatticeParams& p,
                                          Mode mode);

void check_grid(const std::vector<double>& grid);

}  // namespace gs
