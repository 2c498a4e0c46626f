#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <string>
#include <vector>

#include "sshqed/agreement.hpp"
#include "sshqed/band_structure.hpp"
#include "sshqed/core_model.hpp"
#include "sshqed/errors.hpp"
#include "sshqed/lattice_oracle.hpp"
#include "sshqed/scattering.hpp"
#include "sshqed/spectral_analysis.hpp"

namespace py = pybind11;
using namespace sshqed;

namespace {

Model make_model(const std::string& config, double alpha, double delta, double J, double g,
                 double omega_rabi, double delta_c, double omega_e, int x1) {
    const Coupling c = parse_coupling(config);
    CouplingConfig cc{c, c == Coupling::A ? 1.0 : c == Coupling::B ? 0.0 : 0.5};
    if (alpha == alpha) cc.alpha = alpha;  // NaN keeps the default
    WaveguideParams w;
    w.J = J;
    w.delta = delta;
    EmitterParams e;
    e.omega_e = omega_e;
    e.delta_c = delta_c;
    e.omega_rabi = omega_rabi;
    e.g = g;
    e.x1 = x1;
    return validate(w, e, cc);
}

py::dict grid_to_dict(const SpectrumGrid& g) {
    const std::size_t n = g.records.size();
    py::array_t<double> dk(n), om(n), T(n), R(n);
    py::array_t<std::complex<double>> t(n), r(n);
    auto pdk = dk.mutable_unchecked<1>();
    auto pom = om.mutable_unchecked<1>();
    auto pT = T.mutable_unchecked<1>();
    auto pR = R.mutable_unchecked<1>();
    auto pt = t.mutable_unchecked<1>();
    auto pr = r.mutable_unchecked<1>();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& rec = g.records[i];
        pdk(i) = rec.delta_k;
        pom(i) = rec.omega_rabi;
        pT(i) = rec.T;
        pR(i) = rec.R;
        pt(i) = rec.t;
        pr(i) = rec.r;
    }
    py::dict d;
    d["delta_k"] = dk;
    d["omega_rabi"] = om;
    d["T"] = T;
    d["R"] = R;
    d["t"] = t;
    d["r"] = r;
    d["skipped"] = g.skipped;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "SSH waveguide with a driven three-level emitter";

    auto base = py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
    py::register_exception<ValidationError>(mod, "ValidationError", base.ptr());

    py::enum_<Band>(mod, "Band").value("upper", Band::upper).value("lower", Band::lower);

    py::class_<Model>(mod, "Model")
        .def_readonly("t1", &Model::t1)
        .def_readonly("t2", &Model::t2)
        .def_readonly("omega_a", &Model::omega_a)
        .def_readonly("emitter_in_band", &Model::emitter_in_band)
        .def_property_readonly("alpha", [](const Model& m) { return m.coupling.alpha; })
        .def_property_readonly("config",
                               [](const Model& m) { return std::string(to_string(m.coupling.variant)); });

    mod.def("model", &make_model, py::arg("config") = "A",
            py::arg("alpha") = std::numeric_limits<double>::quiet_NaN(), py::arg("delta") = 0.0,
            py::arg("J") = 1.0, py::arg("g") = 0.2, py::arg("omega_rabi") = 0.0,
            py::arg("delta_c") = 0.0, py::arg("omega_e") = 1.5, py::arg("x1") = 20);

    mod.def("dispersion", [](double k, double delta, double J) {
        WaveguideParams w;
        w.J = J;
        w.delta = delta;
        return bloch_point(k, w).omega;
    }, py::arg("k"), py::arg("delta"), py::arg("J") = 1.0);

    mod.def("winding_number", [](double delta, double J, int samples) {
        WaveguideParams w;
        w.J = J;
        w.delta = delta;
        return winding_number(w, samples);
    }, py::arg("delta"), py::arg("J") = 1.0, py::arg("samples") = 256);

    mod.def("transmission", &transmittance, py::arg("model"), py::arg("omega"),
            py::arg("band") = Band::upper);
    mod.def("reflection", &reflectance, py::arg("model"), py::arg("omega"),
            py::arg("band") = Band::upper);

    mod.def("scatter", [](const Model& m, double omega, Band band) {
        const ScatterPoint p = scatter(m, omega, band);
        py::dict d;
        d["k"] = p.k;
        d["t"] = p.t;
        d["r"] = p.r;
        d["tL"] = p.tL;
        d["tR"] = p.tR;
        d["singular"] = p.singular;
        return d;
    }, py::arg("model"), py::arg("omega"), py::arg("band") = Band::upper);

    mod.def("poles", [](const Model& m, double k) {
        const PolePair p = poles(m, k);
        return py::make_tuple(p.pole_plus, p.pole_minus);
    }, py::arg("model"), py::arg("k"));

    mod.def("classify_regime", [](const Model& m, double k) {
        const RegimeLabel l = classify_regime(m, k);
        return py::make_tuple(to_string(l.label), l.ratio);
    }, py::arg("model"), py::arg("k"));

    mod.def("spectrum", [](const Model& m, const std::vector<double>& dk, Band band, int threads) {
        return grid_to_dict(sweep_spectrum(m, dk, band, threads));
    }, py::arg("model"), py::arg("delta_k"), py::arg("band") = Band::upper, py::arg("threads") = 1);

    mod.def("contour", [](const Model& m, const std::vector<double>& dk,
                          const std::vector<double>& om, Band band, int threads) {
        return grid_to_dict(sweep_contour(m, dk, om, band, threads));
    }, py::arg("model"), py::arg("delta_k"), py::arg("omega_rabi"), py::arg("band") = Band::upper,
       py::arg("threads") = 1);

    mod.def("features", [](const std::vector<double>& x, const std::vector<double>& T) {
        py::list out;
        for (const auto& f : extract_features(x, T)) {
            py::dict d;
            d["kind"] = to_string(f.kind);
            d["position"] = f.position;
            d["depth"] = f.depth;
            d["fwhm"] = f.fwhm;
            d["asymmetry"] = f.asymmetry;
            out.append(d);
        }
        return out;
    }, py::arg("x"), py::arg("T"));

    mod.def("lattice_solve", [](const Model& m, double omega, int cells, Band band) {
        const ScatterSolution s = boundary_matched_solve(omega, cells, m, band);
        return py::make_tuple(s.t, s.r, s.residual);
    }, py::arg("model"), py::arg("omega"), py::arg("cells"), py::arg("band") = Band::upper);

    mod.def("wavepacket", [](const Model& m, double k0, double sigma_x, int cells) {
        const WavepacketRun w = wavepacket_transport(k0, sigma_x, cells, m);
        py::dict d;
        d["T"] = w.T;
        d["R"] = w.R;
        d["time"] = w.time;
        d["bound_population"] = w.bound_population;
        d["norm_drift"] = w.norm_drift;
        return d;
    }, py::arg("model"), py::arg("k0"), py::arg("sigma_x"), py::arg("cells"));
}
