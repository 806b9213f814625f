#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>

#include "giantscatter/errors.hpp"
#include "giantscatter/runner.hpp"

using namespace gs;

namespace {

std::string spec_error_of(const json& doc) {
    try {
        check_spec(spec_from_json(doc));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SpecError);
        return e.what();
    }
    return "";
}

std::string csv_of(const SweepResult& r) {
    std::ostringstream os;
    write_csv(os, r.rows);
    return os.str();
}

struct EnvGuard {
    explicit EnvGuard(const char* v) { setenv("SCATTER_THREADS", v, 1); }
    ~EnvGuard() { unsetenv("SCATTER_THREADS"); }
};

}  // namespace

TEST_CASE("spec defaults and round trip") {
    const SweepSpec s = spec_from_json(json::object());
    CHECK(s.system == "two");
    CHECK(s.g == 0.01);
    const SweepSpec t = spec_from_json(spec_to_json(s));
    CHECK(spec_to_json(t) == spec_to_json(s));
}

TEST_CASE("Delta accepts a number, a range or a wave vector") {
    CHECK(spec_from_json({{"Delta", 1.3}}).Delta.points == 1);
    const auto r = spec_from_json({{"Delta", {{"from", 1.1}, {"to", 1.9}, {"points", 5}}}});
    CHECK(delta_values(r).size() == 5);
    CHECK(delta_values(r).back() == 1.9);
    const auto k = spec_from_json({{"Delta", {{"k", -pi / 2}}}, {"delta", -0.5}});
    CHECK(k.Delta.from == doctest::Approx(std::sqrt(2.5)));
}

TEST_CASE("spec errors carry the field path") {
    CHECK(spec_error_of({{"outputs", json::array()}}).find("outputs") != std::string::npos);
    CHECK(spec_error_of({{"outputs", {"spectrum", "plots"}}}).find("outputs[1]") != std::string::npos);
    CHECK(spec_error_of({{"Delta_k", {{"pionts", 3}}}}).find("Delta_k.pionts") != std::string::npos);
    CHECK(spec_error_of({{"Delta_k", {{"from", 1}, {"to", 0}, {"points", 3}}}}).find("Delta_k") !=
          std::string::npos);
    CHECK(spec_error_of({{"g", "big"}}).find("g:") != std::string::npos);
    CHECK(spec_error_of({{"config", "ABCA"}}).find("config") != std::string::npos);
    CHECK(spec_error_of({{"band", "middle"}}).find("band") != std::string::npos);
    CHECK(spec_error_of({{"Delta", {{"from", 1.0}, {"to", 1.9}, {"points", 1001}}},
                         {"Delta_k", {{"points", 1001}}}})
              .find("exceeds") != std::string::npos);
}

TEST_CASE("strong coupling is warned about, not rejected") {
    const auto w = check_spec(spec_from_json({{"g", 0.2}}));
    REQUIRE(w.size() == 1);
    CHECK(w[0].find("weak-coupling") != std::string::npos);
}

TEST_CASE("AA at d = 2 on the k = -pi/2 point reflects nothing") {
    for (double delta : {0.5, -0.5}) {
        const auto s = spec_from_json({{"system", "single"},
                                       {"config", "AA"},
                                       {"d", 2},
                                       {"delta", delta},
                                       {"Delta", {{"k", -pi / 2}}}});
        const auto r = run_sweep(s);
        CHECK(r.rows.size() == 401);
        for (const auto& row : r.rows) CHECK(row.amp.R < 1e-15);
        // off resonance the probe's own k moves slightly away from the dark point
        auto e = s;
        e.mode = Mode::Exact;
        for (const auto& row : run_sweep(e).rows) CHECK(row.amp.R < 1e-10);
    }
}

TEST_CASE("two-dimensional sweep is Delta-major with ascending columns") {
    const auto s = spec_from_json({{"config", "AAAA"},
                                   {"Delta", {{"from", 1.1}, {"to", 1.9}, {"points", 9}}},
                                   {"Delta_k", {{"from", -8}, {"to", 8}, {"points", 33}}}});
    const auto r = run_sweep(s);
    REQUIRE(r.rows.size() == 9 * 33);
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 1; j < 33; ++j) {
            const auto& a = r.rows[i * 33 + j - 1];
            const auto& b = r.rows[i * 33 + j];
            CHECK(a.Delta == b.Delta);
            CHECK(a.Delta_k < b.Delta_k);
        }
    CHECK(r.rows.front().Delta_k / r.rows.front().gamma_e == doctest::Approx(-8.0));
}

TEST_CASE("CSV has the fixed header and 17 significant digits") {
    const auto s = spec_from_json({{"Delta", 1.45}, {"Delta_k", {{"from", -1}, {"to", 1}, {"points", 3}}}});
    const std::string csv = csv_of(run_sweep(s));
    std::istringstream in(csv);
    std::string header, line;
    std::getline(in, header);
    CHECK(header == "Delta,Delta_k,R,T,re_r,im_r,re_t,im_t,flags,Delta_k_over_gamma_e");
    std::getline(in, line);
    CHECK(line.rfind("1.45,", 0) == 0);
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
}

TEST_CASE("out-of-band rows are flagged and have no Gamma_e column") {
    const auto s = spec_from_json(
        {{"Delta", {{"from", 0.5}, {"to", 1.5}, {"points", 2}}}, {"Delta_k", {{"from", -1}, {"to", 1}, {"points", 3}}}});
    const std::string csv = csv_of(run_sweep(s));
    CHECK(csv.find("0.5,-0.0001,0,1,0,0,1,0,OutOfBand,\n") != std::string::npos);
}

TEST_CASE("output does not depend on the worker count") {
    const auto s = spec_from_json({{"config", "ABAB"},
                                   {"mode", "exact"},
                                   {"Delta", {{"from", 1.2}, {"to", 1.8}, {"points", 7}}},
                                   {"Delta_k", {{"from", -5}, {"to", 5}, {"points", 101}}}});
    std::string one, three;
    {
        EnvGuard g("1");
        CHECK(worker_count() == 1);
        one = csv_of(run_sweep(s));
    }
    {
        EnvGuard g("3");
        CHECK(worker_count() == 3);
        three = csv_of(run_sweep(s));
    }
    CHECK(one == three);
    CHECK(csv_of(run_sweep(s)) == one);
}

TEST_CASE("worker pool rethrows body errors") {
    EnvGuard g("4");
    CHECK_THROWS_AS(parallel_for(100, [](std::size_t i) {
                        if (i == 57) fail(ErrorKind::SolveFailure, "boom");
                    }),
                    Error);
}

TEST_CASE("sidecar content") {
    const auto s = spec_from_json({{"config", "ABBA"},
                                   {"Delta", std::sqrt(2.5)},
                                   {"Delta_k", "auto"},
                                   {"outputs", {"spectrum", "characteristics", "classification", "oracle_check"}},
                                   {"oracle", {{"points", 3}}}});
    const auto r = run_sweep(s);
    const json& j = r.sidecar;
    CHECK(j["schema"] == 1);
    CHECK(j["provenance"]["units"] == "energies in J, detunings in Gamma_e where flagged");
    CHECK(j["provenance"]["spec"] == spec_to_json(s));
    CHECK(j["provenance"]["git_hash"].get<std::string>().size() > 0);
    CHECK(j["characteristics"][0]["two"]["sa"]["g_SA"].get<double>() < 0.0);
    CHECK(j["classification"][0]["shape"] == "EITLike");
    REQUIRE(j["oracle_check"].size() == 3);
    for (const auto& e : j["oracle_check"]) CHECK(e["abs_diff_R"].get<double>() < 1e-9);
}

TEST_CASE("classification failures are reported per Delta") {
    const auto s = spec_from_json({{"config", "AAAA"},
                                   {"Delta", 1.15},
                                   {"Delta_k", {{"from", -8}, {"to", 8}, {"points", 17}}},
                                   {"outputs", {"classification"}}});
    const auto r = run_sweep(s);
    CHECK(r.sidecar["classification"][0]["shape"].is_null());
    CHECK(r.sidecar["classification"][0]["error"].get<std::string>().find("GridTooCoarse") != std::string::npos);
}

TEST_CASE("validation suites") {
    CHECK(validate("symmetry").passed());
    CHECK_THROWS_AS(validate("nonsense"), Error);
    const auto golden = validate("golden");
    CHECK(golden.checks.size() == 24);
    // every fixture carries its name so a failure is traceable
    for (const auto& c : golden.checks) CHECK_FALSE(c.name.empty());
}
