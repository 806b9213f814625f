#pragma once

#include <complex>
#include <limits>

namespace gs {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

enum class Band { Upper, Lower };

// Energies are in units of J throughout. delta = 0 is allowed but gapless.
struct LatticeParams {
    double J = 1.0;
    double delta = 0.5;
    Band band = Band::Upper;

    double xi1() const { return J * (1.0 + delta); }
    double xi2() const { return J * (1.0 - delta); }
    int sign() const { return band == Band::Upper ? 1 : -1; }
    bool gapless() const { return delta == 0.0; }
};

// Throws SpecError when J <= 0 or |delta| >= 1.
void check_params(const LatticeParams& p);

inline constexpr double eps_band = 1e-6;   // margin on detuning at band edges, units of J
inline constexpr double eps_k = 1e-6;      // margin on |sin k|
inline constexpr double eps_omega = 1e-9;
inline constexpr double eps_y = 1e-12;
// A pole and a zero of r or t closer than this (units of Gamma_e) are
// cancelled; a dark channel otherwise leaves 0/0 at its resonance.
// Roundoff level: anything wider is a real feature and is kept.
inline constexpr double eps_cancel = 64.0 * std::numeric_limits<double>::epsilon();

// -(xi1 + xi2 e^{-ik}) = omega_k e^{i phi_k}
cplx offdiag(double k, const LatticeParams& p);

// +omega_k on the upper band, -omega_k on the lower band. Total on [-pi, pi].
double dispersion(double k, const LatticeParams& p);

// Principal argument of offdiag(k), in (-pi, pi].
double topo_phase(double k, const LatticeParams& p);

// -J^2 (1 - delta^2) sin k / (+-omega_k). Positive on the upper band for
// k in (-pi, 0) and on the lower band for k in (0, pi).
double group_velocity(double k, const LatticeParams& p);

// Gamma_e = g^2 / v_g
double emission_rate(double k, double g, const LatticeParams& p);

// Inverse of dispersion on the right-moving branch: k in (-pi, 0) on the
// upper band, (0, pi) on the lower band. OutOfBand inside the gap, outside
// the band, or within eps_band of an edge.
double wave_vector_from_detuning(double Delta, const LatticeParams& p);

bool in_band(double energy, const LatticeParams& p);

struct BlochPoint {
    double k = 0;
    double omega_k = 0;
    double phi_k = 0;
    double v_g = 0;
    double gamma_e = 0;
};

BlochPoint bloch_point(double k, double g, const LatticeParams& p);

}  // namespace gs
