#include "giantscatter/single_atom.hpp"

#include <cmath>

#include "giantscatter/errors.hpp"

namespace gs {

CharacteristicSingle characteristics_single(const SingleConfig& cfg, double k, const LatticeParams& p) {
    const double s = p.sign();
    const double ge = emission_rate(k, cfg.g, p);
    const double phi = topo_phase(k, p);
    // sums in extended precision: near a dark point decay and the cross terms of
    // two atoms cancel to a few digits and must stay mutually consistent
    using ld = long double;
    const ld kd = static_cast<ld>(k) * cfg.d();
    const ld ph = phi;
    const ld m1 = cfg.leg1.mu(), n1 = cfg.leg1.nu();
    const ld m2 = cfg.leg2.mu(), n2 = cfg.leg2.nu();

    CharacteristicSingle c;
    c.k = k;
    c.phi_k = phi;
    c.gamma_e = ge;
    c.lamb_shift = static_cast<double>(ge * ((m1 * m2 + n1 * n2) * std::sin(kd) - s * (m1 * n1 + m2 * n2) * std::sin(ph) +
                                             s * n1 * m2 * std::sin(kd + ph) + s * m1 * n2 * std::sin(kd - ph)));
    c.decay = static_cast<double>(2.0L * ge *
                                  (s * m1 * n2 * std::cos(kd - ph) + s * n1 * m2 * std::cos(kd + ph) +
                                   s * (m1 * n1 + m2 * n2) * std::cos(ph) + (m1 * m2 + n1 * n2) * std::cos(kd) + 1.0L));
    const cplx e = std::polar(1.0, -phi);
    const cplx S = (cfg.leg1.mu() + s * cfg.leg1.nu() * e) + (cfg.leg2.mu() + s * cfg.leg2.nu() * e) * std::polar(1.0, k * cfg.d());
    c.global_phase = std::arg(ge * S * S);
    return c;
}

std::optional<double> probe_wave_vector(double Delta, double Delta_k, const LatticeParams& p, Mode mode) {
    const double E = mode == Mode::Exact ? Delta + Delta_k : Delta;
    if (!in_band(E, p)) return std::nullopt;
    return wave_vector_from_detuning(E, p);
}

ScatteringAmplitudes amplitudes_single(const CharacteristicSingle& c, double Delta_k, int n) {
    const cplx I(0.0, 1.0);
    if (std::abs(c.decay) < eps_cancel * c.gamma_e) return ScatteringAmplitudes::from({0.0, 0.0}, {1.0, 0.0});
    const cplx num = I * (Delta_k - c.lamb_shift);
    const cplx den = num - c.decay / 2.0;
    const cplx r = (c.decay / 2.0) * std::polar(1.0, c.global_phase + 2.0 * c.k * n) / den;
    return ScatteringAmplitudes::from(r, num / den);
}

ScatteringAmplitudes scatter_single(const SingleConfig& cfg, double Delta, double Delta_k,
                                    const LatticeParams& p, Mode mode) {
    check_params(p);
    check_config(cfg);
    const auto k = probe_wave_vector(Delta, Delta_k, p, mode);
    if (!k) return ScatteringAmplitudes::transmitted();
    return amplitudes_single(characteristics_single(cfg, *k, p), Delta_k, cfg.n());
}

void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) fail(ErrorKind::SpecError, "empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) fail(ErrorKind::SpecError, "grid contains a non-finite value");
        if (i > 0 && !(grid[i] > grid[i - 1])) fail(ErrorKind::SpecError, "grid must be strictly ascending");
    }
}

SingleSpectrum reflection_spectrum_single(const SingleConfig& cfg, double Delta,
                                          const std::vector<double>& grid, const LatticeParams& p,
                                          Mode mode) {
    check_params(p);
    check_config(cfg);
    check_grid(grid);
    SingleSpectrum out;
    double ge = std::nan("");
    if (auto k0 = probe_wave_vector(Delta, 0.0, p, Mode::ResonantApprox)) {
        out.frozen = characteristics_single(cfg, *k0, p);
        ge = out.frozen->gamma_e;
    }
    out.rows.reserve(grid.size());
    for (double dk : grid) {
        ScatteringAmplitudes a;
        if (mode == Mode::ResonantApprox)
            a = out.frozen ? amplitudes_single(*out.frozen, dk, cfg.n()) : ScatteringAmplitudes::transmitted();
        else
            a = scatter_single(cfg, Delta, dk, p, mode);
        out.rows.push_back({Delta, dk, a, ge});
    }
    return out;
}

}  // namespace gs
