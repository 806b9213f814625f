#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "giantscatter/single_atom.hpp"
#include "giantscatter/two_atom.hpp"

namespace gs {

enum class LineShape { Lorentzian, Fano, EITLike, SuperGaussian, CompleteTransmission, Unclassified };

const char* to_string(LineShape s);

// What the classifier knows about the system besides the sampled spectrum.
struct LineShapeContext {
    double gamma_e = 0;
    std::vector<Pole> poles;
    std::optional<SARepresentation> sa;
    std::optional<FanoDecomposition> fano;
};

LineShapeContext context_of(const CharacteristicSingle& c);
LineShapeContext context_of(const CharacteristicTwo& c, std::optional<FanoDecomposition> fano = std::nullopt);

// A grid that spans every resolvable pole by three widths each side and
// samples the narrowest one with per_width points per width.
std::vector<double> suggest_grid(const LineShapeContext& ctx, int per_width = 8, std::size_t max_points = 200000);

struct LineShapeReport {
    LineShape shape = LineShape::Unclassified;
    std::map<std::string, double> fit_params;
    std::vector<double> peaks;
    double residual = 0;  // RMS of the accepted (or last attempted) fit
    std::vector<std::string> regime_evidence;
};

// Throws GridTooCoarse when the grid misses or undersamples the main feature.
LineShapeReport classify(const std::vector<SpectrumRow>& spectrum, const LineShapeContext& ctx);

struct FanoFit {
    double q = 0;
    double eta = 0;
    double residual = 0;
    double q_pred = 0;
    double eta_pred = 0;
};

// Window of 2 * calib::fano_window_half narrow widths centred on the minimum
// of the Fano profile.
std::vector<double> fano_window(const FanoDecomposition& f, std::size_t points = 401);

// Least squares of eta (q + eps)^2 / (1 + eps^2) with eps taken from the
// decomposition. RegimeViolation when the widths are not separated enough.
FanoFit fano_fit(const std::vector<SpectrumRow>& window, const FanoDecomposition& f);

struct Peak {
    std::size_t index;
    double height;
    double prominence;
};
std::vector<Peak> find_peaks(const std::vector<double>& y);

}  // namespace gs
