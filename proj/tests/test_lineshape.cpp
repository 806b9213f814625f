#include <doctest.h>

#include <cmath>
#include <string>

#include "giantscatter/errors.hpp"
#include "giantscatter/lineshape.hpp"
#include "named_points.hpp"

using namespace gs;

namespace {

std::vector<SpectrumRow> synthetic(const std::vector<double>& x, double (*f)(double)) {
    std::vector<SpectrumRow> rows;
    for (double v : x) {
        SpectrumRow r;
        r.Delta_k = v;
        r.amp.R = f(v);
        r.amp.T = 1.0 - r.amp.R;
        rows.push_back(r);
    }
    return rows;
}

LineShapeContext one_pole(double center, double width) {
    LineShapeContext ctx;
    ctx.gamma_e = 1.0;
    ctx.poles = {{center, width}};
    return ctx;
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::SolveFailure;
}

}  // namespace

TEST_CASE("synthetic Lorentzian is recovered") {
    const auto rows = synthetic(linspace(-8, 8, 801), [](double x) { return 1.0 / (1.0 + (x - 0.5) * (x - 0.5)); });
    const auto rep = classify(rows, one_pole(0.5, 2.0));
    CHECK(rep.shape == LineShape::Lorentzian);
    CHECK(rep.fit_params.at("center") == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(rep.fit_params.at("fwhm") == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(rep.residual < 1e-8);
}

TEST_CASE("flat spectrum is complete transmission") {
    const auto rows = synthetic(linspace(-8, 8, 101), [](double) { return 1e-9; });
    CHECK(classify(rows, one_pole(0.0, 0.0)).shape == LineShape::CompleteTransmission);
}

TEST_CASE("double-humped spectrum without a dark channel is unclassified") {
    const auto rows = synthetic(linspace(-8, 8, 801), [](double x) {
        return 0.9 * std::exp(-(x - 3) * (x - 3)) + 0.9 * std::exp(-(x + 3) * (x + 3));
    });
    CHECK(classify(rows, one_pole(0.0, 2.0)).shape == LineShape::Unclassified);
}

TEST_CASE("grids that miss or undersample the feature are rejected") {
    const auto rows = synthetic(linspace(-1, 1, 5), [](double) { return 0.5; });
    CHECK(kind_of([&] { classify(rows, one_pole(0, 1)); }) == ErrorKind::GridTooCoarse);
    const auto narrow = synthetic(linspace(-8, 8, 41), [](double x) { return 0.01 / (0.01 + x * x); });
    CHECK(kind_of([&] { classify(narrow, one_pole(0, 0.2)); }) == ErrorKind::GridTooCoarse);
    const auto offset = synthetic(linspace(-8, 8, 801), [](double x) { return 1 / (1 + (x - 7) * (x - 7)); });
    CHECK(kind_of([&] { classify(offset, one_pole(7, 2)); }) == ErrorKind::GridTooCoarse);
}

TEST_CASE("suggested grid covers and resolves every pole") {
    LineShapeContext ctx;
    ctx.gamma_e = 1.0;
    ctx.poles = {{0.0, 4.0}, {1.0, 0.05}};
    const auto g = suggest_grid(ctx, 8);
    CHECK(g.front() <= -16.0);
    CHECK(g.back() >= 16.0);
    CHECK(g[1] - g[0] <= 0.05 / 8 + 1e-12);
    CHECK(suggest_grid(ctx, 8, 1000).size() == 1000);
}

TEST_CASE("peaks and prominences") {
    const std::vector<double> y = {0, 1, 0.2, 0.6, 0.1, 0.1, 0.3};
    const auto p = find_peaks(y);
    REQUIRE(p.size() == 3);
    CHECK(p[0].index == 1);
    CHECK(p[0].prominence == doctest::Approx(1.0));
    CHECK(p[1].index == 3);
    CHECK(p[1].prominence == doctest::Approx(0.4));
    CHECK(p[2].index == 6);
    CHECK(p[2].prominence == doctest::Approx(0.2));
}

TEST_CASE("Fano fit returns the generating q and eta") {
    const LatticeParams p{1.0, 0.5, Band::Upper};
    const auto cfg = make_two("AAAA", 1, 2, 2, 2, 0.01);
    const auto f = fano_decompose(cfg, 1.2, p);  // ratio above 100
    REQUIRE(f.ratio > 50);
    std::vector<SpectrumRow> rows;
    for (double x : fano_window(f)) {
        SpectrumRow r;
        r.Delta_k = x;
        r.amp.R = fano_profile(f.q, f.eta, (x - f.delta_narrow()) / (f.gamma_narrow() / 2.0));
        rows.push_back(r);
    }
    const auto fit = fano_fit(rows, f);
    CHECK(fit.q == doctest::Approx(f.q).epsilon(1e-6));
    CHECK(fit.eta == doctest::Approx(f.eta).epsilon(1e-6));
    CHECK(fit.residual < 1e-10);
}

TEST_CASE("Fano window is centred on the profile minimum") {
    const LatticeParams p{1.0, 0.5, Band::Upper};
    const auto f = fano_decompose(make_two("AAAA", 1, 2, 2, 2, 0.01), 1.15, p);
    const auto w = fano_window(f, 401);
    const double mid = w[200];
    CHECK(fano_profile(f.q, f.eta, (mid - f.delta_narrow()) / (f.gamma_narrow() / 2.0)) < 1e-20);
    CHECK(w.back() - w.front() == doctest::Approx(6.0 * f.gamma_narrow()));
}

TEST_CASE("Fano fit refuses poorly separated widths") {
    const LatticeParams p{1.0, 0.5, Band::Upper};
    const auto f = fano_decompose(make_two("AAAA", 1, 2, 2, 2, 0.01), 1.06, p);
    CHECK(kind_of([&] { fano_fit({}, f); }) == ErrorKind::RegimeViolation);
}

TEST_CASE("named parameter points classify as stated and survive grid doubling") {
    for (const auto& pt : named::points()) {
        CAPTURE(pt.label);
        CAPTURE(pt.delta);
        CAPTURE(pt.Delta);
        const auto a = named::classify_point(pt, 8);
        const auto b = named::classify_point(pt, 16);
        CHECK(std::string(to_string(a.shape)) == to_string(pt.shape));
        CHECK(a.shape == b.shape);
    }
}

TEST_CASE("single-atom context classifies its Lorentzian") {
    const LatticeParams p{1.0, 0.5, Band::Upper};
    const auto cfg = make_single("AB", 1, 3, 0.01);
    const auto s0 = reflection_spectrum_single(cfg, 1.4, {0.0}, p, Mode::ResonantApprox);
    const auto ctx = context_of(*s0.frozen);
    const auto s = reflection_spectrum_single(cfg, 1.4, suggest_grid(ctx), p, Mode::ResonantApprox);
    const auto rep = classify(s.rows, ctx);
    CHECK(rep.shape == LineShape::Lorentzian);
    CHECK(rep.fit_params.at("fwhm") == doctest::Approx(s0.frozen->decay).epsilon(1e-6));
}
