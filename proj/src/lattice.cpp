#include "giantscatter/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "giantscatter/errors.hpp"

namespace gs {

void check_params(const LatticeParams& p) {
    if (!(p.J > 0.0) || !std::isfinite(p.J)) fail(ErrorKind::SpecError, "J must be positive");
    if (!(std::abs(p.delta) < 1.0)) fail(ErrorKind::SpecError, "delta must lie in (-1, 1)");
}

cplx offdiag(double k, const LatticeParams& p) {
    return -(p.xi1() + p.xi2() * std::polar(1.0, -k));
}

static double omega(double k, const LatticeParams& p) {
    const double d2 = p.delta * p.delta;
    const double arg = 2.0 * (1.0 + d2) + 2.0 * (1.0 - d2) * std::cos(k);
    return p.J * std::sqrt(std::max(arg, 0.0));
}

double dispersion(double k, const LatticeParams& p) { return p.sign() * omega(k, p); }

double topo_phase(double k, const LatticeParams& p) {
    const cplx y = offdiag(k, p);
    if (std::abs(y) < eps_y) fail(ErrorKind::GapClosing, "y(k) vanishes at k=" + std::to_string(k));
    // std::arg returns [-pi, pi]; fold -pi onto pi
    double a = std::arg(y);
    if (a <= -pi) a += 2.0 * pi;
    return a;
}

double group_velocity(double k, const LatticeParams& p) {
    const double w = omega(k, p);
    if (std::abs(std::sin(k)) < eps_k || w < eps_omega)
        fail(ErrorKind::BandEdge, "group velocity degenerate at k=" + std::to_string(k));
    return -p.J * p.J * (1.0 - p.delta * p.delta) * std::sin(k) / (p.sign() * w);
}

double emission_rate(double k, double g, const LatticeParams& p) {
    const double v = group_velocity(k, p);
    return g * g / v;
}

bool in_band(double energy, const LatticeParams& p) {
    const double e = p.sign() * energy;
    return e > 2.0 * p.J * std::abs(p.delta) + eps_band && e < 2.0 * p.J - eps_band;
}

double wave_vector_from_detuning(double Delta, const LatticeParams& p) {
    if (!in_band(Delta, p))
        fail(ErrorKind::OutOfBand, "energy " + std::to_string(Delta) + " outside the band");
    const double d2 = p.delta * p.delta;
    const double J2 = p.J * p.J;
    double c = (Delta * Delta - 2.0 * J2 * (1.0 + d2)) / (2.0 * J2 * (1.0 - d2));
    c = std::clamp(c, -1.0, 1.0);
    const double a = std::abs(std::acos(c));
    return p.band == Band::Upper ? -a : a;
}

BlochPoint bloch_point(double k, double g, const LatticeParams& p) {
    BlochPoint b;
    b.k = k;
    b.omega_k = omega(k, p);
    b.phi_k = topo_phase(k, p);
    b.v_g = group_velocity(k, p);
    b.gamma_e = g * g / b.v_g;
    return b;
}

}  // namespace gs
