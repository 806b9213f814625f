#include "giantscatter/lineshape.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>
#include <unsupported/Eigen/NumericalDiff>

#include "giantscatter/calibration.hpp"
#include "giantscatter/errors.hpp"

namespace gs {

const char* to_string(LineShape s) {
    switch (s) {
        case LineShape::Lorentzian: return "Lorentzian";
        case LineShape::Fano: return "Fano";
        case LineShape::EITLike: return "EITLike";
        case LineShape::SuperGaussian: return "SuperGaussian";
        case LineShape::CompleteTransmission: return "CompleteTransmission";
        case LineShape::Unclassified: return "Unclassified";
    }
    return "?";
}

namespace {

using Model = std::function<double(double, const Eigen::VectorXd&)>;

struct Residuals : Eigen::DenseFunctor<double> {
    Residuals(const Model& m, const std::vector<double>& x, const std::vector<double>& y, int np)
        : Eigen::DenseFunctor<double>(np, static_cast<int>(x.size())), model(m), xs(x), ys(y) {}

    int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& f) const {
        for (std::size_t i = 0; i < xs.size(); ++i) f[static_cast<Eigen::Index>(i)] = model(xs[i], p) - ys[i];
        return 0;
    }

    const Model& model;
    const std::vector<double>& xs;
    const std::vector<double>& ys;
};

double rms_of(const Model& m, const std::vector<double>& x, const std::vector<double>& y,
              const Eigen::VectorXd& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = m(x[i], p) - y[i];
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(x.size()));
}

// Returns the fitted parameters; rms receives the fit residual.
Eigen::VectorXd curve_fit(const Model& m, const std::vector<double>& x, const std::vector<double>& y,
                          Eigen::VectorXd p, double& rms) {
    if (x.size() < static_cast<std::size_t>(p.size())) fail(ErrorKind::GridTooCoarse, "too few points to fit");
    Residuals f(m, x, y, static_cast<int>(p.size()));
    Eigen::NumericalDiff<Residuals> nd(f);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Residuals>> lm(nd);
    lm.setMaxfev(2000);
    lm.minimize(p);
    rms = rms_of(m, x, y, p);
    return p;
}

double lorentz(double x, double c, double w) {
    const double h = w * w / 4.0;
    return h / ((x - c) * (x - c) + h);
}

std::vector<Pole> resolvable(const LineShapeContext& ctx) {
    std::vector<Pole> out;
    for (const Pole& p : ctx.poles)
        if (p.width > calib::dark_tol * ctx.gamma_e) out.push_back(p);
    std::sort(out.begin(), out.end(), [](const Pole& a, const Pole& b) { return a.width > b.width; });
    return out;
}

void check_coverage(const std::vector<double>& x, const LineShapeContext& ctx) {
    const auto ps = resolvable(ctx);
    if (ps.empty()) return;
    const Pole& dom = ps.front();
    if (x.front() > dom.center - 3.0 * dom.width || x.back() < dom.center + 3.0 * dom.width)
        fail(ErrorKind::GridTooCoarse, "grid does not cover six widths of the dominant feature");
    double spacing = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) spacing = std::max(spacing, x[i] - x[i - 1]);
    for (const Pole& p : ps) {
        if (p.width < dom.width * 1e-3) continue;  // too narrow to matter on this scale
        if (spacing > p.width / 4.0) fail(ErrorKind::GridTooCoarse, "grid spacing exceeds a quarter linewidth");
    }
}

}  // namespace

std::vector<Peak> find_peaks(const std::vector<double>& y) {
    std::vector<Peak> out;
    const std::size_t n = y.size();
    for (std::size_t i = 0; i < n; ++i) {
        const bool left = i == 0 || y[i] > y[i - 1];
        const bool right = i + 1 == n || y[i] >= y[i + 1];
        if (!left || !right) continue;
        // plateaus: keep only the first sample of a flat top
        if (i > 0 && y[i] == y[i - 1]) continue;
        double lmin = y[i], rmin = y[i];
        std::size_t j = i;
        while (j > 0 && y[j - 1] <= y[i]) lmin = std::min(lmin, y[--j]);
        const bool left_edge = j == 0;
        j = i;
        while (j + 1 < n && y[j + 1] <= y[i]) rmin = std::min(rmin, y[++j]);
        const bool right_edge = j + 1 == n;
        // a side that runs off the grid without a higher peak does not bound the prominence
        double base;
        if (left_edge && right_edge) base = std::min(lmin, rmin);
        else if (left_edge) base = rmin;
        else if (right_edge) base = lmin;
        else base = std::max(lmin, rmin);
        out.push_back({i, y[i], y[i] - base});
    }
    return out;
}

LineShapeContext context_of(const CharacteristicSingle& c) {
    LineShapeContext ctx;
    ctx.gamma_e = c.gamma_e;
    ctx.poles = {{c.lamb_shift, c.decay}};
    return ctx;
}

LineShapeContext context_of(const CharacteristicTwo& c, std::optional<FanoDecomposition> fano) {
    LineShapeContext ctx;
    ctx.gamma_e = c.gamma_e;
    ctx.poles = poles(c);
    ctx.sa = sa_representation(c, 0.0);
    ctx.fano = fano;
    return ctx;
}

std::vector<double> suggest_grid(const LineShapeContext& ctx, int per_width, std::size_t max_points) {
    const auto ps = resolvable(ctx);
    if (ps.empty()) return linspace(-8.0 * ctx.gamma_e, 8.0 * ctx.gamma_e, 401);
    double lo = std::numeric_limits<double>::max(), hi = std::numeric_limits<double>::lowest();
    double narrow = ps.front().width;
    for (const Pole& p : ps) {
        lo = std::min(lo, p.center - 4.0 * p.width);
        hi = std::max(hi, p.center + 4.0 * p.width);
        if (p.width >= ps.front().width * 1e-3) narrow = std::min(narrow, p.width);
    }
    lo = std::min(lo, -2.0 * ctx.gamma_e);
    hi = std::max(hi, 2.0 * ctx.gamma_e);
    const double step = narrow / per_width;
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1;
    return linspace(lo, hi, std::clamp<std::size_t>(n, 201, max_points));
}

std::vector<double> fano_window(const FanoDecomposition& f, std::size_t points) {
    const double wn = f.gamma_narrow();
    const double center = f.delta_narrow() - f.q * wn / 2.0;
    const double half = calib::fano_window_half * wn;
    return linspace(center - half, center + half, points);
}

FanoFit fano_fit(const std::vector<SpectrumRow>& window, const FanoDecomposition& f) {
    if (!(f.ratio >= calib::fano_gate))
        fail(ErrorKind::RegimeViolation, "Gamma_broad / Gamma_narrow = " + std::to_string(f.ratio) +
                                             " below " + std::to_string(calib::fano_gate));
    std::vector<double> eps, R;
    for (const auto& row : window) {
        eps.push_back((row.Delta_k - f.delta_narrow()) / (f.gamma_narrow() / 2.0));
        R.push_back(row.amp.R);
    }
    const Model m = [](double e, const Eigen::VectorXd& p) { return fano_profile(p[0], p[1], e); };
    Eigen::VectorXd p0(2);
    p0 << f.q, f.eta;
    FanoFit out;
    const Eigen::VectorXd p = curve_fit(m, eps, R, p0, out.residual);
    out.q = p[0];
    out.eta = p[1];
    out.q_pred = f.q;
    out.eta_pred = f.eta;
    return out;
}

namespace {

// Vertex of the parabola through a sampled maximum and its neighbours.
std::pair<double, double> refine_peak(const std::vector<double>& x, const std::vector<double>& y, std::size_t i) {
    if (i == 0 || i + 1 >= y.size()) return {x[i], y[i]};
    const double h1 = x[i] - x[i - 1], h2 = x[i + 1] - x[i];
    const double s1 = (y[i] - y[i - 1]) / h1, s2 = (y[i + 1] - y[i]) / h2;
    const double a = (s2 - s1) / (h1 + h2);
    if (!(a < 0)) return {x[i], y[i]};
    const double xv = 0.5 * (x[i - 1] + x[i]) - s1 / (2.0 * a);
    if (xv < x[i - 1] || xv > x[i + 1]) return {x[i], y[i]};
    return {xv, y[i - 1] + s1 * (xv - x[i - 1]) + a * (xv - x[i - 1]) * (xv - x[i])};
}

}  // namespace

LineShapeReport classify(const std::vector<SpectrumRow>& spectrum, const LineShapeContext& ctx) {
    if (spectrum.size() < 16) fail(ErrorKind::GridTooCoarse, "need at least 16 points");
    std::vector<double> x, R;
    for (const auto& row : spectrum) {
        x.push_back(row.Delta_k);
        R.push_back(row.amp.R);
    }
    LineShapeReport rep;
    const auto imax = static_cast<std::size_t>(std::max_element(R.begin(), R.end()) - R.begin());
    const double rmax = R[imax];

    if (rmax < calib::flat_max_R) {
        rep.shape = LineShape::CompleteTransmission;
        rep.fit_params["max_R"] = rmax;
        rep.residual = rmax;
        rep.regime_evidence.push_back("max R below " + std::to_string(calib::flat_max_R));
        return rep;
    }
    check_coverage(x, ctx);

    // Lorentzian
    {
        const auto ps = resolvable(ctx);
        double w0 = ps.empty() ? 2.0 * ctx.gamma_e : ps.front().width;
        const Model m = [](double t, const Eigen::VectorXd& p) { return p[2] * lorentz(t, p[0], p[1]); };
        Eigen::VectorXd p0(3);
        p0 << x[imax], w0, rmax;
        double rms = 0.0;
        const Eigen::VectorXd p = curve_fit(m, x, R, p0, rms);
        rep.residual = rms;
        if (rms < calib::lorentz_rms) {
            rep.shape = LineShape::Lorentzian;
            rep.fit_params = {{"center", p[0]}, {"fwhm", std::abs(p[1])}, {"amplitude", p[2]}};
            rep.peaks = {p[0]};
            rep.regime_evidence.push_back("Lorentzian RMS " + std::to_string(rms));
            return rep;
        }
    }

    const auto peaks = find_peaks(R);
    std::vector<Peak> prominent;
    for (const Peak& pk : peaks)
        if (pk.prominence >= calib::peak_prominence) prominent.push_back(pk);

    // Fano: zero-touching minimum next to the narrow resonance, lopsided wings
    if (ctx.fano && ctx.fano->ratio >= calib::fano_gate) {
        const auto& f = *ctx.fano;
        const double wn = f.gamma_narrow();
        std::size_t imin = imax;
        double rmin = std::numeric_limits<double>::max();
        for (std::size_t i = 1; i + 1 < R.size(); ++i) {
            if (std::abs(x[i] - f.delta_narrow()) > 3.0 * std::max(wn, std::abs(f.q) * wn)) continue;
            if (R[i] < rmin) {
                rmin = R[i];
                imin = i;
            }
        }
        if (imin != imax && rmin <= 0.02 * rmax) {
            double left = R.front(), right = R.back();
            for (std::size_t i = imin; i-- > 0;)
                if (i == 0 || (R[i] >= R[i - 1] && R[i] >= R[i + 1])) {
                    left = R[i];
                    break;
                }
            for (std::size_t i = imin + 1; i < R.size(); ++i)
                if (i + 1 == R.size() || (R[i] >= R[i - 1] && R[i] >= R[i + 1])) {
                    right = R[i];
                    break;
                }
            const double asym = std::abs(left - right) / std::max(left, right);
            if (asym > 0.05) {
                rep.shape = LineShape::Fano;
                rep.fit_params = {{"q", f.q},
                                  {"eta", f.eta},
                                  {"minimum", x[imin]},
                                  {"Delta_narrow", f.delta_narrow()},
                                  {"Gamma_narrow", wn},
                                  {"ratio", f.ratio},
                                  {"wing_asymmetry", asym}};
                rep.regime_evidence.push_back("Gamma ratio " + std::to_string(f.ratio));
                rep.regime_evidence.push_back("minimum R " + std::to_string(rmin));
                return rep;
            }
        }
    }

    // EIT-like: two unit peaks around a dip with one dark S/A channel
    if (ctx.sa && prominent.size() == 2) {
        try {
            const auto eit = eit_check(*ctx.sa);
            const auto p0 = refine_peak(x, R, prominent[0].index);
            const auto p1 = refine_peak(x, R, prominent[1].index);
            const bool unit = p0.second > 1.0 - 1e-3 && p1.second > 1.0 - 1e-3;
            if (eit.eit_like && unit) {
                rep.shape = LineShape::EITLike;
                rep.peaks = {p0.first, p1.first};
                const auto lo = std::min_element(R.begin() + static_cast<long>(prominent[0].index),
                                                 R.begin() + static_cast<long>(prominent[1].index));
                rep.fit_params = {{"dip", x[static_cast<std::size_t>(lo - R.begin())]},
                                  {"dip_R", *lo},
                                  {"g_SA", ctx.sa->g_SA}};
                rep.regime_evidence.push_back(std::string(eit.symmetric_dark ? "symmetric" : "antisymmetric") +
                                              " channel dark, |g_SA| < Gamma_bright/4");
                return rep;
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotApplicable) throw;
        }
    }

    // Super-Gaussian: one flat-topped unit peak
    if (prominent.size() == 1 && refine_peak(x, R, prominent[0].index).second > 1.0 - 1e-3) {
        std::vector<double> cx, cy;
        for (std::size_t i = 0; i < R.size(); ++i)
            if (R[i] >= 0.5) {
                cx.push_back(x[i]);
                cy.push_back(R[i]);
            }
        if (cx.size() >= 8) {
            const double half = (cx.back() - cx.front()) / 2.0;
            const Model m = [](double t, const Eigen::VectorXd& p) {
                return std::exp(-std::pow(std::abs((t - p[0]) / p[1]), p[2]));
            };
            Eigen::VectorXd p0(3);
            p0 << x[imax], std::max(half, 1e-300), 2.0;
            double rms = 0.0;
            const Eigen::VectorXd p = curve_fit(m, cx, cy, p0, rms);
            if (p[2] >= calib::supergauss_min_power && rms <= calib::supergauss_rms) {
                rep.shape = LineShape::SuperGaussian;
                rep.residual = rms;
                rep.fit_params = {{"center", p[0]}, {"width", std::abs(p[1])}, {"power", p[2]}};
                rep.peaks = {p[0]};
                rep.regime_evidence.push_back("flat unit peak, exponent " + std::to_string(p[2]));
                return rep;
            }
        }
    }

    rep.shape = LineShape::Unclassified;
    for (const Peak& pk : prominent) rep.peaks.push_back(x[pk.index]);
    return rep;
}

}  // namespace gs
