#include "giantscatter/two_atom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "giantscatter/calibration.hpp"
#include "giantscatter/errors.hpp"
#include "giantscatter/single_atom.hpp"

namespace gs {

CharacteristicTwo characteristics_two(const TwoAtomConfig& cfg, double k, const LatticeParams& p) {
    const double s = p.sign();
    const auto c1 = characteristics_single(cfg.atom1, k, p);
    const auto c2 = characteristics_single(cfg.atom2, k, p);
    const double ge = c1.gamma_e;
    const double phi = c1.phi_k;

    CharacteristicTwo c;
    c.lamb1 = c1.lamb_shift;
    c.lamb2 = c2.lamb_shift;
    c.gamma1 = c1.decay;
    c.gamma2 = c2.decay;
    c.theta1 = c1.global_phase;
    c.theta2 = c2.global_phase;
    c.k = k;
    c.phi_k = phi;
    c.gamma_e = ge;

    // Cross terms over every (leg of atom 1, leg of atom 2) pair. A mu-nu pair
    // picks up phi_mu = -phi, the mirrored nu-mu pair phi_nu = +phi.
    const auto legs = cfg.legs();
    long double cos_sum = 0.0L, sin_sum = 0.0L;
    const long double ph = phi;
    for (int i = 0; i < 2; ++i) {
        for (int j = 2; j < 4; ++j) {
            const Leg& a = legs[i];
            const Leg& b = legs[j];
            const long double kD = static_cast<long double>(k) * (b.cell - a.cell);
            const long double same = s * (a.mu() * b.mu() + a.nu() * b.nu());
            cos_sum += same * std::cos(kD) + a.mu() * b.nu() * std::cos(kD - ph) +
                       a.nu() * b.mu() * std::cos(kD + ph);
            sin_sum += same * std::sin(kD) + a.mu() * b.nu() * std::sin(kD - ph) +
                       a.nu() * b.mu() * std::sin(kD + ph);
        }
    }
    c.gamma12 = static_cast<double>(ge * cos_sum);
    c.g12 = static_cast<double>(ge * sin_sum / 2.0L);
    return c;
}

namespace {

using ld = long double;
using lcplx = std::complex<long double>;

std::array<lcplx, 2> pole_pair(const CharacteristicTwo& c) {
    const lcplx I(0.0L, 1.0L);
    const lcplx z1 = ld(c.lamb1) - I * ld(c.gamma1) / 2.0L;
    const lcplx z2 = ld(c.lamb2) - I * ld(c.gamma2) / 2.0L;
    const lcplx v = ld(c.g12) - I * ld(c.gamma12) / 2.0L;
    const lcplx h = (z1 - z2) / 2.0L;
    const lcplx root = std::sqrt(h * h + v * v);
    const lcplx m = (z1 + z2) / 2.0L;
    return {m + root, m - root};
}

}  // namespace

ScatteringAmplitudes amplitudes_two(const CharacteristicTwo& c, double Delta_k, int n1, int n2) {
    // Long double throughout: close to a dark point the narrow pole is a small
    // difference of order-Gamma_e numbers and R + T drifts by eps/width in double.
    const lcplx I(0.0L, 1.0L);
    const ld G1 = c.gamma1, G2 = c.gamma2, L1 = c.lamb1, L2 = c.lamb2;
    const lcplx e1 = std::polar(1.0L, 2.0L * ld(c.k) * n1 + ld(c.theta1));
    const lcplx e2 = std::polar(1.0L, 2.0L * ld(c.k) * n2 + ld(c.theta2));
    const ld tol = eps_cancel * c.gamma_e;
    const lcplx alpha = I * (G1 * e1 + G2 * e2);
    const lcplx beta = G1 * e1 * (-I * L2 - G2 / 2.0L) + G2 * e2 * (-I * L1 - G1 / 2.0L) + G1 * G2 * e2;
    // D = -(x - l1)(x - l2), numerator of t = -(x - L1)(x - L2), numerator of r = alpha x + beta.
    // Evaluated factored: near a dark point a pole sits next to a zero and
    // the expanded D loses its digits.
    const auto lam = pole_pair(c);
    std::vector<lcplx> tz = {L1, L2};
    std::vector<lcplx> tp(lam.begin(), lam.end()), rp = tp;
    for (auto it = tp.begin(); it != tp.end();) {
        auto z = std::find_if(tz.begin(), tz.end(), [&](lcplx q) { return std::abs(q - *it) < tol; });
        if (z == tz.end()) {
            ++it;
            continue;
        }
        tz.erase(z);
        it = tp.erase(it);
    }
    const lcplx x(Delta_k, 0.0L);
    lcplx rr = alpha * x + beta;
    if (std::abs(alpha) > 0) {
        const lcplx rz = -beta / alpha;
        for (auto it = rp.begin(); it != rp.end(); ++it)
            if (std::abs(rz - *it) < tol) {
                rp.erase(it);
                rr = alpha;
                break;
            }
    }
    lcplx tr(1.0L, 0.0L);
    for (lcplx z : tz) tr *= x - z;
    for (lcplx l : tp) tr /= x - l;
    rr /= -2.0L;
    for (lcplx l : rp) rr /= x - l;
    return ScatteringAmplitudes::from(cplx(double(rr.real()), double(rr.imag())),
                                      cplx(double(tr.real()), double(tr.imag())));
}

ScatteringAmplitudes scatter_two(const TwoAtomConfig& cfg, double Delta, double Delta_k,
                                 const LatticeParams& p, Mode mode) {
    check_params(p);
    check_config(cfg);
    const auto k = probe_wave_vector(Delta, Delta_k, p, mode);
    if (!k) return ScatteringAmplitudes::transmitted();
    return amplitudes_two(characteristics_two(cfg, *k, p), Delta_k, cfg.atom1.n(), cfg.atom2.n());
}

TwoSpectrum reflection_spectrum_two(const TwoAtomConfig& cfg, double Delta, const std::vector<double>& grid,
                                    const LatticeParams& p, Mode mode) {
    check_params(p);
    check_config(cfg);
    check_grid(grid);
    TwoSpectrum out;
    double ge = std::nan("");
    if (auto k0 = probe_wave_vector(Delta, 0.0, p, Mode::ResonantApprox)) {
        out.frozen = characteristics_two(cfg, *k0, p);
        ge = out.frozen->gamma_e;
    }
    out.rows.reserve(grid.size());
    for (double dk : grid) {
        ScatteringAmplitudes a;
        if (mode == Mode::ResonantApprox)
            a = out.frozen ? amplitudes_two(*out.frozen, dk, cfg.atom1.n(), cfg.atom2.n())
                           : ScatteringAmplitudes::transmitted();
        else
            a = scatter_two(cfg, Delta, dk, p, mode);
        out.rows.push_back({Delta, dk, a, ge});
    }
    return out;
}

SARepresentation sa_representation(const CharacteristicTwo& c, double Delta_k) {
    SARepresentation sa;
    sa.delta_SL = (c.lamb1 + c.lamb2 + 2.0 * c.g12) / 2.0;
    sa.delta_AL = (c.lamb1 + c.lamb2 - 2.0 * c.g12) / 2.0;
    sa.delta_S = Delta_k - sa.delta_SL;
    sa.delta_A = Delta_k - sa.delta_AL;
    sa.gamma_S = (c.gamma1 + c.gamma2 + 2.0 * c.gamma12) / 2.0;
    sa.gamma_A = (c.gamma1 + c.gamma2 - 2.0 * c.gamma12) / 2.0;
    sa.g_SA = (c.lamb1 - c.lamb2) / 2.0;
    sa.gamma_SA = (c.gamma1 - c.gamma2) / 2.0;
    sa.gamma_e = c.gamma_e;
    return sa;
}

std::vector<Pole> poles(const CharacteristicTwo& c) {
    const cplx I(0.0, 1.0);
    const cplx z1 = c.lamb1 - I * c.gamma1 / 2.0;
    const cplx z2 = c.lamb2 - I * c.gamma2 / 2.0;
    const cplx v = c.g12 - I * c.gamma12 / 2.0;
    const cplx h = (z1 - z2) / 2.0;
    const cplx root = std::sqrt(h * h + v * v);
    const cplx m = (z1 + z2) / 2.0;
    std::vector<Pole> out;
    for (cplx l : {m + root, m - root}) out.push_back({l.real(), -2.0 * l.imag()});
    return out;
}

FanoDecomposition fano_decompose(const TwoAtomConfig& cfg, double Delta, const LatticeParams& p) {
    check_params(p);
    check_config(cfg);
    const std::string label = cfg.label();
    if (label != "AAAA" && label != "ABAB" && label != "AABB")
        fail(ErrorKind::NotApplicable, "no two-Lorentzian split for " + label);
    if (cfg.d1() != cfg.d2() || cfg.d1() != cfg.d21())
        fail(ErrorKind::NotApplicable, "two-Lorentzian split needs d1 = d2 = d21");
    if (p.band != Band::Upper) fail(ErrorKind::NotApplicable, "two-Lorentzian split is for the upper band");

    const double k = wave_vector_from_detuning(Delta, p);
    const double ge = emission_rate(k, cfg.g(), p);
    const double phi = topo_phase(k, p);
    const double kd = k * cfg.d1();
    double a = kd, b = 2.0 * kd, ph = kd;
    if (label == "ABAB") {
        a = kd - phi;
        ph = kd - phi;
    } else if (label == "AABB") {
        b = 2.0 * kd - phi;
        ph = kd - phi;
    }

    FanoDecomposition f;
    f.k = k;
    f.gamma_e = ge;
    f.phase = ph + 2.0 * k * cfg.atom1.m();
    f.delta_plus = ge * (std::sin(a) + (1.0 + std::cos(a)) * std::sin(b));
    f.delta_minus = ge * (std::sin(a) - (1.0 + std::cos(a)) * std::sin(b));
    f.gamma_plus = std::max(0.0, 2.0 * ge * (1.0 + std::cos(a)) * (1.0 + std::cos(b)));
    f.gamma_minus = std::max(0.0, 2.0 * ge * (1.0 + std::cos(a)) * (1.0 - std::cos(b)));
    f.broad = f.gamma_plus >= f.gamma_minus ? 1 : -1;
    const double gb = f.gamma_broad(), gn = f.gamma_narrow();
    const double sep = f.delta_broad() - f.delta_narrow();
    f.ratio = gn > 0.0 ? gb / gn : std::numeric_limits<double>::infinity();
    f.q = gb > 0.0 ? sep / (gb / 2.0) : std::numeric_limits<double>::infinity();
    f.eta = gb > 0.0 ? (gb * gb / 4.0) / (sep * sep + gb * gb / 4.0) : 0.0;
    return f;
}

cplx fano_branch(const FanoDecomposition& f, int s, double Delta_k) {
    const cplx I(0.0, 1.0);
    const double d = s > 0 ? f.delta_plus : f.delta_minus;
    const double w = s > 0 ? f.gamma_plus : f.gamma_minus;
    return (s * w / 2.0) * std::polar(1.0, f.phase) / (I * (Delta_k - d) - w / 2.0);
}

double fano_profile(double q, double eta, double eps) {
    return eta * (q + eps) * (q + eps) / (1.0 + eps * eps);
}

const char* to_string(SpecialKind kind) {
    switch (kind) {
        case SpecialKind::ABBA_Lorentzian: return "ABBA_Lorentzian";
        case SpecialKind::AAAB_Lorentzian: return "AAAB_Lorentzian";
        case SpecialKind::SuperGaussian: return "SuperGaussian";
        case SpecialKind::FanoApprox: return "FanoApprox";
    }
    return "?";
}

namespace {

void require(bool ok, const std::string& condition) {
    if (!ok) fail(ErrorKind::RegimeViolation, condition);
}

double lorentz(double x, double center, double width) {
    const double h = width * width / 4.0;
    return h / ((x - center) * (x - center) + h);
}

}  // namespace

SpecialCase special_case_reflection(SpecialKind kind, const TwoAtomConfig& cfg, double Delta,
                                    const std::vector<double>& grid, const LatticeParams& p) {
    check_grid(grid);
    const auto spec = reflection_spectrum_two(cfg, Delta, grid, p, Mode::ResonantApprox);
    if (!spec.frozen) fail(ErrorKind::OutOfBand, "Delta outside the band");
    const CharacteristicTwo& c = *spec.frozen;
    const double tol = calib::dark_tol * c.gamma_e;

    SpecialCase out;
    out.grid = grid;
    out.approx.reserve(grid.size());
    std::function<double(double)> model;

    switch (kind) {
        case SpecialKind::ABBA_Lorentzian: {
            require(std::abs(c.g12) <= tol, "g12 ~ 0");
            require(std::abs(c.gamma1 * c.gamma2 - c.gamma12 * c.gamma12) <= tol * c.gamma_e,
                    "Gamma1 Gamma2 - Gamma12^2 ~ 0");
            require(std::abs(c.lamb1 - c.lamb2) <= tol, "Lamb shifts equal");
            const double center = (c.lamb1 + c.lamb2) / 2.0;
            const double width = c.gamma1 + c.gamma2;
            model = [=](double x) { return lorentz(x, center, width); };
            break;
        }
        case SpecialKind::AAAB_Lorentzian: {
            const bool first_dark = c.gamma1 <= tol;
            const bool second_dark = c.gamma2 <= tol;
            require(first_dark != second_dark, "exactly one atom decoupled");
            require(std::abs(c.g12) <= tol, "g12 ~ 0");
            require(std::abs(c.gamma12) <= tol, "Gamma12 ~ 0");
            const double center = first_dark ? c.lamb2 : c.lamb1;
            const double width = first_dark ? c.gamma2 : c.gamma1;
            model = [=](double x) { return lorentz(x, center, width); };
            break;
        }
        case SpecialKind::SuperGaussian: {
            require(std::abs(c.lamb1 - c.lamb2) <= tol, "Lamb shifts equal");
            require(std::abs(c.g12) > tol, "g12 nonzero");
            const double center = (c.lamb1 + c.lamb2) / 2.0;
            const double g2 = c.g12 * c.g12;
            const double scale = 4.0 * g2 * g2 + c.gamma12 * c.gamma12 * g2;
            model = [=](double x) {
                const double d = x - center;
                return std::exp(-(d * d * d * d) / scale);
            };
            break;
        }
        case SpecialKind::FanoApprox: {
            const auto f = fano_decompose(cfg, Delta, p);
            require(f.ratio >= calib::fano_gate, "Gamma_broad / Gamma_narrow >= " +
                                                     std::to_string(calib::fano_gate));
            model = [=](double x) {
                return fano_profile(f.q, f.eta, (x - f.delta_narrow()) / (f.gamma_narrow() / 2.0));
            };
            break;
        }
    }

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double a = model(grid[i]);
        out.approx.push_back(a);
        out.exact.push_back(spec.rows[i].amp.R);
        out.max_residual = std::max(out.max_residual, std::abs(a - spec.rows[i].amp.R));
    }
    return out;
}

EitReport eit_check(const SARepresentation& sa) {
    const double tol = calib::dark_tol * sa.gamma_e;
    const bool s_dark = std::abs(sa.gamma_S) < tol;
    const bool a_dark = std::abs(sa.gamma_A) < tol;
    if (s_dark == a_dark) fail(ErrorKind::NotApplicable, "need exactly one dark S/A channel");
    EitReport r;
    r.symmetric_dark = s_dark;
    const double bright = s_dark ? sa.gamma_A : sa.gamma_S;
    const double g = std::abs(sa.g_SA);
    r.dip = (sa.delta_SL + sa.delta_AL) / 2.0;
    r.peak_low = r.dip - g;
    r.peak_high = r.dip + g;
    r.eit_like = g > tol && g < bright / 4.0;
    return r;
}

}  // namespace gs
