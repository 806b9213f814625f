#pragma once

#include <optional>
#include <string>
#include <vector>

#include "giantscatter/coupling.hpp"
#include "giantscatter/spectrum.hpp"

namespace gs {

struct CharacteristicTwo {
    double lamb1 = 0, lamb2 = 0;
    double gamma1 = 0, gamma2 = 0;
    double gamma12 = 0;
    double g12 = 0;
    double theta1 = 0, theta2 = 0;
    double k = 0;
    double phi_k = 0;
    double gamma_e = 0;
};

CharacteristicTwo characteristics_two(const TwoAtomConfig& cfg, double k, const LatticeParams& p);

ScatteringAmplitudes amplitudes_two(const CharacteristicTwo& c, double Delta_k, int n1, int n2);

ScatteringAmplitudes scatter_two(const TwoAtomConfig& cfg, double Delta, double Delta_k,
                                 const LatticeParams& p, Mode mode);

struct TwoSpectrum {
    std::vector<SpectrumRow> rows;
    std::optional<CharacteristicTwo> frozen;
};

TwoSpectrum reflection_spectrum_two(const TwoAtomConfig& cfg, double Delta, const std::vector<double>& grid,
                                    const LatticeParams& p, Mode mode);

struct SARepresentation {
    double delta_S = 0, delta_A = 0;    // Delta_k minus the S/A Lamb shifts
    double delta_SL = 0, delta_AL = 0;
    double gamma_S = 0, gamma_A = 0;
    double g_SA = 0;
    double gamma_SA = 0;
    double gamma_e = 0;  // scale for "approximately zero" decisions
};

SARepresentation sa_representation(const CharacteristicTwo& c, double Delta_k);

// Complex poles of the two-atom response: eigenvalues of
// [[L1 - i G1/2, g12 - i G12/2], [g12 - i G12/2, L2 - i G2/2]].
struct Pole {
    double center;
    double width;  // full width, -2 Im(lambda)
};
std::vector<Pole> poles(const CharacteristicTwo& c);

struct FanoDecomposition {
    double delta_plus = 0, delta_minus = 0;
    double gamma_plus = 0, gamma_minus = 0;
    int broad = 1;       // +1 when gamma_plus is the broad channel
    double q = 0;        // (Delta_broad - Delta_narrow) / (Gamma_broad / 2)
    double eta = 0;
    double ratio = 0;    // Gamma_max / Gamma_min, infinite when one width vanishes
    double k = 0;
    double gamma_e = 0;
    double phase = 0;    // common phase of both branches, including 2 k m1
    std::string epsilon_definition = "epsilon = (Delta_k - Delta_narrow) / (Gamma_narrow / 2)";

    double delta_broad() const { return broad > 0 ? delta_plus : delta_minus; }
    double delta_narrow() const { return broad > 0 ? delta_minus : delta_plus; }
    double gamma_broad() const { return broad > 0 ? gamma_plus : gamma_minus; }
    double gamma_narrow() const { return broad > 0 ? gamma_minus : gamma_plus; }
};

// Two-Lorentzian split of r2 for AAAA, ABAB and AABB with d1 = d2 = d21 at
// frozen k(Delta). NotApplicable otherwise.
FanoDecomposition fano_decompose(const TwoAtomConfig& cfg, double Delta, const LatticeParams& p);

// r_{2,s} for s = +1 or -1.
cplx fano_branch(const FanoDecomposition& f, int s, double Delta_k);

// eta (q + eps)^2 / (1 + eps^2)
double fano_profile(double q, double eta, double eps);

enum class SpecialKind { ABBA_Lorentzian, AAAB_Lorentzian, SuperGaussian, FanoApprox };

const char* to_string(SpecialKind kind);

struct SpecialCase {
    std::vector<double> grid;
    std::vector<double> approx;
    std::vector<double> exact;  // frozen-k R from the full amplitudes
    double max_residual = 0;
};

// Closed-form reduced spectra that hold in particular regimes. Throws
// RegimeViolation naming the failed condition.
SpecialCase special_case_reflection(SpecialKind kind, const TwoAtomConfig& cfg, double Delta,
                                    const std::vector<double>& grid, const LatticeParams& p);

struct EitReport {
    bool eit_like = false;
    double dip = 0;
    double peak_low = 0;
    double peak_high = 0;
    bool symmetric_dark = true;  // true when the symmetric channel is the dark one
};

// NotApplicable unless exactly one S/A channel is dark.
EitReport eit_check(const SARepresentation& sa);

}  // namespace gs
