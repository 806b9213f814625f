#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "giantscatter/errors.hpp"
#include "giantscatter/runner.hpp"

namespace py = pybind11;
using namespace gs;

namespace {

PyObject* error_type = nullptr;

py::dict to_dict(const CharacteristicSingle& c) {
    py::dict d;
    d["lamb_shift"] = c.lamb_shift;
    d["decay"] = c.decay;
    d["global_phase"] = c.global_phase;
    d["k"] = c.k;
    d["phi_k"] = c.phi_k;
    d["gamma_e"] = c.gamma_e;
    return d;
}

py::dict to_dict(const CharacteristicTwo& c) {
    py::dict d;
    d["lamb1"] = c.lamb1;
    d["lamb2"] = c.lamb2;
    d["gamma1"] = c.gamma1;
    d["gamma2"] = c.gamma2;
    d["gamma12"] = c.gamma12;
    d["g12"] = c.g12;
    d["theta1"] = c.theta1;
    d["theta2"] = c.theta2;
    d["k"] = c.k;
    d["phi_k"] = c.phi_k;
    d["gamma_e"] = c.gamma_e;
    return d;
}

py::dict rows_to_arrays(const std::vector<SpectrumRow>& rows) {
    const auto n = static_cast<py::ssize_t>(rows.size());
    py::array_t<double> dk(n), R(n), T(n);
    py::array_t<std::complex<double>> r(n), t(n);
    py::array_t<std::uint32_t> flags(n);
    for (py::ssize_t i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        dk.mutable_at(i) = row.Delta_k;
        R.mutable_at(i) = row.amp.R;
        T.mutable_at(i) = row.amp.T;
        r.mutable_at(i) = row.amp.r;
        t.mutable_at(i) = row.amp.t;
        flags.mutable_at(i) = row.amp.flags;
    }
    py::dict d;
    d["Delta_k"] = dk;
    d["R"] = R;
    d["T"] = T;
    d["r"] = r;
    d["t"] = t;
    d["flags"] = flags;
    return d;
}

template <class Cfg>
py::tuple oracle_amplitudes(const Cfg& cfg, double Delta, double Delta_k, const LatticeParams& p, int cells) {
    OracleSettings s;
    s.cells = cells;
    const auto sol = solve(build_system(cfg, Delta, Delta_k, p, s));
    return py::make_tuple(sol.r, sol.t);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Single-photon scattering off giant atoms on an SSH waveguide";

    // the module attribute keeps the type alive for the translator
    error_type = py::exception<gs::Error>(m, "Error", PyExc_ValueError).ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const gs::Error& e) {
            py::object inst = py::reinterpret_borrow<py::object>(error_type)(e.what());
            inst.attr("kind") = to_string(e.kind());
            PyErr_SetObject(error_type, inst.ptr());
        }
    });

    py::enum_<Band>(m, "Band").value("Upper", Band::Upper).value("Lower", Band::Lower);
    py::enum_<Mode>(m, "Mode").value("Exact", Mode::Exact).value("ResonantApprox", Mode::ResonantApprox);

    py::class_<LatticeParams>(m, "LatticeParams")
        .def(py::init([](double J, double delta, Band band) {
                 LatticeParams p{J, delta, band};
                 check_params(p);
                 return p;
             }),
             py::arg("J") = 1.0, py::arg("delta") = 0.5, py::arg("band") = Band::Upper)
        .def_readonly("J", &LatticeParams::J)
        .def_readonly("delta", &LatticeParams::delta)
        .def_readonly("band", &LatticeParams::band)
        .def_property_readonly("xi1", &LatticeParams::xi1)
        .def_property_readonly("xi2", &LatticeParams::xi2)
        .def("__repr__", [](const LatticeParams& p) {
            std::ostringstream os;
            os << "LatticeParams(J=" << p.J << ", delta=" << p.delta
               << ", band=" << (p.band == Band::Upper ? "Upper" : "Lower") << ")";
            return os.str();
        });

    py::class_<SingleConfig>(m, "SingleConfig")
        .def_property_readonly("label", &SingleConfig::label)
        .def_property_readonly("n", &SingleConfig::n)
        .def_property_readonly("d", &SingleConfig::d)
        .def_readonly("g", &SingleConfig::g)
        .def("__repr__", [](const SingleConfig& c) {
            return "SingleConfig(" + c.label() + ", n=" + std::to_string(c.n()) + ", d=" + std::to_string(c.d()) + ")";
        });

    py::class_<TwoAtomConfig>(m, "TwoAtomConfig")
        .def_property_readonly("label", &TwoAtomConfig::label)
        .def_property_readonly("d1", &TwoAtomConfig::d1)
        .def_property_readonly("d21", &TwoAtomConfig::d21)
        .def_property_readonly("d2", &TwoAtomConfig::d2)
        .def_property_readonly("g", &TwoAtomConfig::g)
        .def("__repr__", [](const TwoAtomConfig& c) {
            return "TwoAtomConfig(" + c.label() + ", d1=" + std::to_string(c.d1()) + ", d21=" +
                   std::to_string(c.d21()) + ", d2=" + std::to_string(c.d2()) + ")";
        });

    m.def("single", &make_single, py::arg("label"), py::arg("n") = 1, py::arg("d") = 1, py::arg("g") = 0.01);
    m.def(
        "two",
        [](const std::string& label, int d1, int d21, int d2, int n1, double g) {
            return make_two(label, n1, d1, d21, d2, g);
        },
        py::arg("label"), py::arg("d1") = 2, py::arg("d21") = 2, py::arg("d2") = 2, py::arg("n1") = 1,
        py::arg("g") = 0.01);

    m.def("dispersion", &dispersion, py::arg("k"), py::arg("params"));
    m.def("topo_phase", &topo_phase, py::arg("k"), py::arg("params"));
    m.def("group_velocity", &group_velocity, py::arg("k"), py::arg("params"));
    m.def("emission_rate", &emission_rate, py::arg("k"), py::arg("g"), py::arg("params"));
    m.def("wave_vector", &wave_vector_from_detuning, py::arg("Delta"), py::arg("params"));
    m.def("in_band", &in_band, py::arg("energy"), py::arg("params"));

    m.def("characteristics", [](const SingleConfig& c, double k, const LatticeParams& p) {
        return to_dict(characteristics_single(c, k, p));
    }, py::arg("config"), py::arg("k"), py::arg("params"));
    m.def("characteristics", [](const TwoAtomConfig& c, double k, const LatticeParams& p) {
        return to_dict(characteristics_two(c, k, p));
    }, py::arg("config"), py::arg("k"), py::arg("params"));

    m.def("scatter", [](const SingleConfig& c, double D, double dk, const LatticeParams& p, Mode mode) {
        const auto a = scatter_single(c, D, dk, p, mode);
        return py::make_tuple(a.r, a.t);
    }, py::arg("config"), py::arg("Delta"), py::arg("Delta_k"), py::arg("params"), py::arg("mode") = Mode::ResonantApprox);
    m.def("scatter", [](const TwoAtomConfig& c, double D, double dk, const LatticeParams& p, Mode mode) {
        const auto a = scatter_two(c, D, dk, p, mode);
        return py::make_tuple(a.r, a.t);
    }, py::arg("config"), py::arg("Delta"), py::arg("Delta_k"), py::arg("params"), py::arg("mode") = Mode::ResonantApprox);

    m.def("spectrum", [](const SingleConfig& c, double D, const std::vector<double>& grid, const LatticeParams& p,
                         Mode mode) {
        std::vector<SpectrumRow> rows;
        {
            py::gil_scoped_release nogil;
            rows = reflection_spectrum_single(c, D, grid, p, mode).rows;
        }
        return rows_to_arrays(rows);
    }, py::arg("config"), py::arg("Delta"), py::arg("grid"), py::arg("params"), py::arg("mode") = Mode::ResonantApprox);
    m.def("spectrum", [](const TwoAtomConfig& c, double D, const std::vector<double>& grid, const LatticeParams& p,
                         Mode mode) {
        std::vector<SpectrumRow> rows;
        {
            py::gil_scoped_release nogil;
            rows = reflection_spectrum_two(c, D, grid, p, mode).rows;
        }
        return rows_to_arrays(rows);
    }, py::arg("config"), py::arg("Delta"), py::arg("grid"), py::arg("params"), py::arg("mode") = Mode::ResonantApprox);

    m.def("oracle", &oracle_amplitudes<SingleConfig>, py::arg("config"), py::arg("Delta"), py::arg("Delta_k"),
          py::arg("params"), py::arg("cells") = 0);
    m.def("oracle", &oracle_amplitudes<TwoAtomConfig>, py::arg("config"), py::arg("Delta"), py::arg("Delta_k"),
          py::arg("params"), py::arg("cells") = 0);

    // JSON in, (csv text, sidecar JSON text) out; the Python layer parses.
    m.def("_run", [](const std::string& spec_text) {
        const auto spec = spec_from_json(json::parse(spec_text));
        SweepResult res;
        {
            py::gil_scoped_release nogil;
            res = run_sweep(spec);
        }
        std::ostringstream os;
        write_csv(os, res.rows);
        return py::make_tuple(os.str(), res.sidecar.dump());
    }, py::arg("spec"));
    m.def("_emit_spec", [](const std::string& spec_text) {
        return spec_to_json(spec_from_json(json::parse(spec_text))).dump();
    }, py::arg("spec"));

    m.def("validate", [](const std::string& suite) {
        ValidationReport rep;
        {
            py::gil_scoped_release nogil;
            rep = validate(suite);
        }
        py::list out;
        for (const auto& c : rep.checks) out.append(py::make_tuple(c.suite, c.name, c.passed, c.detail));
        return out;
    }, py::arg("suite") = "all");

    m.attr("csv_header") = csv_header;
    m.attr("git_hash") = git_hash();
}
