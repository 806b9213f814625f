#include <doctest.h>

#include <cmath>

#include "giantscatter/errors.hpp"
#include "giantscatter/single_atom.hpp"
#include "reference.hpp"

using namespace gs;

namespace {

const char* labels[] = {"AA", "AB", "BA", "BB"};

}  // namespace

TEST_CASE("characteristics equal the bare-chain self-energy") {
    for (double delta : {-0.5, 0.5, 0.2})
        for (const char* l : labels)
            for (int d : {1, 2, 3, 5}) {
                const LatticeParams p{1.0, delta, Band::Upper};
                const double g = 0.01, D = 1.45;
                const auto c = characteristics_single(make_single(l, 4, d, g), wave_vector_from_detuning(D, p), p);
                const int M = d + 8;
                const cplx s = ref::self_energy(ref::legs(l, 4, d), ref::legs(l, 4, d), M, g, D, {1.0, delta});
                CAPTURE(l);
                CAPTURE(d);
                CAPTURE(delta);
                CHECK(c.lamb_shift == doctest::Approx(s.real()).epsilon(1e-9).scale(c.gamma_e));
                CHECK(c.decay == doctest::Approx(-2.0 * s.imag()).epsilon(1e-9).scale(c.gamma_e));
            }
}

TEST_CASE("exact spectrum equals the Green's function reference") {
    for (double delta : {-0.5, 0.5})
        for (const char* l : labels) {
            const LatticeParams p{1.0, delta, Band::Upper};
            const auto cfg = make_single(l, 3, 3, 0.01);
            const double D = 1.3;
            const double ge = emission_rate(wave_vector_from_detuning(D, p), 0.01, p);
            for (double u : {-6.0, -1.0, -0.2, 0.0, 0.7, 3.0}) {
                const double dk = u * ge;
                const auto a = scatter_single(cfg, D, dk, p, Mode::Exact);
                const auto r = ref::solve({ref::legs(l, 3, 3)}, 10, 0.01, D, D + dk, {1.0, delta});
                CHECK(a.R == doctest::Approx(r.R).epsilon(1e-9).scale(1.0));
                CHECK(a.T == doctest::Approx(r.T).epsilon(1e-9).scale(1.0));
            }
        }
}

TEST_CASE("R + T = 1 and the resonance reaches unit reflection") {
    const LatticeParams p{1.0, 0.5, Band::Upper};
    const auto cfg = make_single("AB", 1, 3, 0.01);
    const auto c = characteristics_single(cfg, wave_vector_from_detuning(1.4, p), p);
    const auto peak = amplitudes_single(c, c.lamb_shift, cfg.n());
    CHECK(peak.R == doctest::Approx(1.0).epsilon(1e-14));
    for (double u = -5; u <= 5; u += 0.5) {
        const auto a = amplitudes_single(c, u * c.gamma_e, cfg.n());
        CHECK(std::abs(a.R + a.T - 1.0) < 1e-14);
    }
}

TEST_CASE("resonant approximation freezes k at Delta") {
    const LatticeParams p{1.0, -0.5, Band::Upper};
    const auto cfg = make_single("BA", 2, 2, 0.01);
    const auto k = probe_wave_vector(1.6, 1e-3, p, Mode::ResonantApprox);
    REQUIRE(k);
    CHECK(*k == doctest::Approx(wave_vector_from_detuning(1.6, p)));
    const auto ke = probe_wave_vector(1.6, 1e-3, p, Mode::Exact);
    CHECK(*ke == doctest::Approx(wave_vector_from_detuning(1.601, p)));
    // exact and frozen agree near resonance at weak coupling
    const auto a = scatter_single(cfg, 1.6, 1e-5, p, Mode::Exact);
    const auto b = scatter_single(cfg, 1.6, 1e-5, p, Mode::ResonantApprox);
    CHECK(std::abs(a.R - b.R) < 1e-3);
}

TEST_CASE("out-of-band probes pass untouched and are flagged") {
    const LatticeParams p{1.0, 0.5, Band::Upper};
    const auto cfg = make_single("AA", 1, 2, 0.01);
    const auto a = scatter_single(cfg, 0.5, 0.0, p, Mode::Exact);
    CHECK(a.R == 0.0);
    CHECK(a.T == 1.0);
    CHECK((a.flags & FlagOutOfBand) != 0);
    const auto s = reflection_spectrum_single(cfg, 0.5, {-1e-3, 0.0, 1e-3}, p, Mode::ResonantApprox);
    CHECK_FALSE(s.frozen);
    for (const auto& row : s.rows) CHECK(row.amp.flags == FlagOutOfBand);
}

TEST_CASE("AA at d = 2 and k = -pi/2 is fully transparent") {
    const LatticeParams p{1.0, 0.5, Band::Upper};
    const auto s = reflection_spectrum_single(make_single("AA", 1, 2, 0.01), std::sqrt(2.5),
                                              linspace(-2e-3, 2e-3, 401), p, Mode::ResonantApprox);
    for (const auto& row : s.rows) CHECK(row.amp.R < 1e-20);
}

TEST_CASE("grid checks") {
    const LatticeParams p{1.0, 0.5, Band::Upper};
    const auto cfg = make_single("AA", 1, 2, 0.01);
    CHECK_THROWS_AS(reflection_spectrum_single(cfg, 1.5, {}, p, Mode::Exact), Error);
    CHECK_THROWS_AS(reflection_spectrum_single(cfg, 1.5, {0.0, 0.0}, p, Mode::Exact), Error);
    CHECK_THROWS_AS(reflection_spectrum_single(cfg, 1.5, {1.0, 0.0}, p, Mode::Exact), Error);
    CHECK_THROWS_AS(reflection_spectrum_single(cfg, 1.5, {0.0, std::nan("")}, p, Mode::Exact), Error);
}

TEST_CASE("lower band scatters like the upper band's mirror") {
    const LatticeParams up{1.0, 0.5, Band::Upper}, lo{1.0, 0.5, Band::Lower};
    const auto cfg = make_single("AB", 1, 3, 0.01);
    const auto cu = characteristics_single(cfg, wave_vector_from_detuning(1.5, up), up);
    const auto cl = characteristics_single(cfg, wave_vector_from_detuning(-1.5, lo), lo);
    CHECK(cl.gamma_e == doctest::Approx(cu.gamma_e));
    const auto r = ref::solve({ref::legs("AB", 1, 3)}, 8, 0.01, -1.5, -1.5 + 0.3 * cl.gamma_e, {1.0, 0.5});
    CHECK(scatter_single(cfg, -1.5, 0.3 * cl.gamma_e, lo, Mode::Exact).R == doctest::Approx(r.R).epsilon(1e-9));
}
