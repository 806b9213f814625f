#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "giantscatter/errors.hpp"
#include "giantscatter/oracle.hpp"
#include "giantscatter/single_atom.hpp"
#include "giantscatter/two_atom.hpp"
#include "reference.hpp"

using namespace gs;

TEST_CASE("empty chain transmits everything") {
    const LatticeParams p{1.0, 0.5, Band::Upper};
    OracleSettings s;
    s.cells = 400;
    const auto sol = solve(build_system(std::vector<std::vector<Leg>>{}, 0.01, 1.5, 0.0, p, s));
    CHECK(std::abs(sol.r) < 1e-12);
    CHECK(std::abs(std::abs(sol.t) - 1.0) < 1e-12);
}

TEST_CASE("finite-chain solve agrees with the Green's function reference") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const char* labels[] = {"AA", "AB", "BA", "BB"};
    for (int trial = 0; trial < 12; ++trial) {
        const double delta = (trial % 2 ? 1.0 : -1.0) * (0.2 + 0.5 * u01(rng));
        const LatticeParams p{1.0, delta, Band::Upper};
        const double D = 2.0 * std::abs(delta) + 0.05 + (1.9 - 2.0 * std::abs(delta)) * u01(rng);
        const std::string l1 = labels[trial % 4], l2 = labels[(trial / 2) % 4];
        const auto cfg = make_two(l1 + l2, 2, 1 + trial % 3, 1 + trial % 2, 2 + trial % 4, 0.01);
        const double ge = emission_rate(wave_vector_from_detuning(D, p), 0.01, p);
        const double dk = (u01(rng) * 8.0 - 4.0) * ge;
        const auto sol = solve(build_system(cfg, D, dk, p));
        const auto r = ref::solve({ref::legs(l1.c_str(), 2, cfg.d1()),
                                   ref::legs(l2.c_str(), cfg.atom2.n(), cfg.d2())},
                                  cfg.atom2.m() + 3, 0.01, D, D + dk, {1.0, delta});
        CAPTURE(trial);
        CHECK(std::abs(std::norm(sol.r) - r.R) < 1e-9);
        CHECK(std::abs(std::norm(sol.t) - r.T) < 1e-9);
        CHECK(std::abs(sol.flux - 1.0) < 1e-10);
        CHECK(sol.condition > 0.0);
    }
}

TEST_CASE("oracle amplitudes carry the closed-form phases") {
    const LatticeParams p{1.0, -0.5, Band::Upper};
    const auto cfg = make_single("AB", 5, 3, 0.01);
    const double ge = emission_rate(wave_vector_from_detuning(1.6, p), 0.01, p);
    const auto sol = solve(build_system(cfg, 1.6, 0.4 * ge, p));
    const auto a = scatter_single(cfg, 1.6, 0.4 * ge, p, Mode::Exact);
    CHECK(std::abs(sol.r - a.r) < 1e-9);
    CHECK(std::abs(sol.t - a.t) < 1e-9);
}

TEST_CASE("interior amplitudes are two plane waves") {
    const LatticeParams p{1.0, 0.5, Band::Upper};
    const auto cfg = make_two("ABBA", 1, 2, 3, 2, 0.01);
    const double ge = emission_rate(wave_vector_from_detuning(1.45, p), 0.01, p);
    const auto sol = solve(build_system(cfg, 1.45, 0.3 * ge, p));
    const int n1 = cfg.atom1.n() + sol.shift, m1 = cfg.atom1.m() + sol.shift;
    const int n2 = cfg.atom2.n() + sol.shift, m2 = cfg.atom2.m() + sol.shift;
    // between legs, and in both leads
    for (auto [lo, hi] : {std::pair{n1 + 1, m1 - 1}, std::pair{m1 + 1, n2 - 1}, std::pair{n2 + 1, m2 - 1},
                          std::pair{2, n1 - 1}, std::pair{m2 + 1, sol.cells - 1}}) {
        if (hi < lo) continue;
        CHECK(plane_wave_fit(sol, lo, hi).residual < 1e-6);
    }
    // right lead carries only the transmitted wave
    const auto right = plane_wave_fit(sol, m2 + 1, sol.cells);
    CHECK(std::abs(right.B) < 1e-9);
    CHECK(std::abs(std::abs(right.A) - std::abs(sol.t)) < 1e-9);
}

TEST_CASE("reflection does not depend on the chain length") {
    const LatticeParams p{1.0, 0.5, Band::Upper};
    const auto cfg = make_two("AABB", 1, 2, 2, 2, 0.01);
    const auto c = doubling_check(cfg, 1.3, 1e-4, p, 600);
    CHECK(c.change < 1e-9);
    CHECK(c.r_small > 0.0);
}

TEST_CASE("oracle input checks") {
    const LatticeParams p{1.0, 0.5, Band::Upper};
    const auto cfg = make_single("AA", 1, 2, 0.01);
    OracleSettings s;
    s.lead_margin = 50;
    CHECK_THROWS_AS(build_system(cfg, 1.5, 0.0, p, s), Error);
    s.lead_margin = 150;
    s.cells = 100;
    CHECK_THROWS_AS(build_system(cfg, 1.5, 0.0, p, s), Error);
    try {
        build_system(cfg, 0.5, 0.0, p);
        FAIL("expected OutOfBand");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfBand);
    }
    const auto sol = solve(build_system(cfg, 1.5, 0.0, p));
    CHECK_THROWS_AS(plane_wave_fit(sol, 0, 10), Error);
}

TEST_CASE("a tiny condition cap trips IllConditioned") {
    const LatticeParams p{1.0, 0.5, Band::Upper};
    OracleSettings s;
    s.max_condition = 1.0;
    try {
        solve(build_system(make_single("AB", 1, 2, 0.01), 1.5, 0.0, p, s));
        FAIL("expected IllConditioned");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IllConditioned);
    }
}
