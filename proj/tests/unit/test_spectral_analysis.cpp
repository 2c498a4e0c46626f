#include "doctest.h"

#include <cmath>

#include "sshqed/errors.hpp"
#include "sshqed/scattering.hpp"
#include "sshqed/spectral_analysis.hpp"

using namespace sshqed;

namespace {

Model make(double delta, double g, double omega_rabi, CouplingConfig c = CouplingConfig::a(),
           double delta_c = 0.0, double omega_e = 1.5) {
    WaveguideParams wg;
    wg.delta = delta;
    EmitterParams em;
    em.g = g;
    em.omega_rabi = omega_rabi;
    em.delta_c = delta_c;
    em.omega_e = omega_e;
    return validate(wg, em, c);
}

double k_at(const Model& m, double dk = 0.0) {
    return momentum_from_energy(m.emitter.omega_e + dk, m.waveguide);
}

std::vector<LineshapeFeature> dips_of(const std::vector<LineshapeFeature>& fs) {
    std::vector<LineshapeFeature> out;
    for (const auto& f : fs) {
        if (f.kind == FeatureKind::dip) out.push_back(f);
    }
    return out;
}

}  // namespace

TEST_CASE("weak-field poles: one imaginary, one zero") {
    const Model m = make(0.5, 0.2, 0.0);
    const double k = k_at(m);
    const BlochPoint bp = bloch_point(k, m.waveguide);
    const PolePair p = poles(m, k);
    const double expected = 0.04 * bp.omega / (2 * m.t1 * m.t2 * std::sin(k));
    CHECK(std::abs(p.pole_plus - cplx(0.0, expected)) < 1e-15);
    CHECK(std::abs(p.pole_minus) < 1e-15);
}

TEST_CASE("strong-field poles approach +-Omega/2") {
    const Model m = make(0.5, 0.2, 4.0);
    const PolePair p = poles(m, k_at(m));
    CHECK(p.pole_plus.real() == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(p.pole_minus.real() == doctest::Approx(-2.0).epsilon(1e-3));
    CHECK(p.pole_plus.imag() == doctest::Approx(p.pole_minus.imag()));
}

TEST_CASE("AB weak-field pole carries the Lamb shift") {
    for (double delta : {0.5, -0.5}) {
        const Model m = make(delta, 0.2, 0.0, CouplingConfig::ab(0.5));
        const PolePair p = poles(m, k_at(m));
        CHECK(p.pole_plus.real() == doctest::Approx(0.04 * 0.25 / m.t1).epsilon(1e-12));
        CHECK(std::abs(p.pole_minus) < 1e-15);
    }
}

TEST_CASE("pole errors") {
    CHECK_THROWS_AS(poles(make(0.5, 0.2, 0.1, CouplingConfig::a(), 0.05), 1.0), UnsupportedError);
    CHECK_THROWS_AS(poles(make(0.5, 0.2, 0.1), 0.0), EdgeSingularityError);
    CHECK_THROWS_AS(classify_regime(make(0.5, 0.2, 0.1), M_PI), EdgeSingularityError);
}

TEST_CASE("pole imaginary parts over sampled momenta") {
    int violations = 0;
    int samples = 0;
    for (CouplingConfig c : {CouplingConfig::a(), CouplingConfig::ab(0.2), CouplingConfig::ab(0.5)}) {
        for (double delta : {0.5, -0.5}) {
            for (double om : {0.0, 0.01, 0.1, 0.5}) {
                const Model m = make(delta, 0.2, om, c);
                for (int i = 1; i < 40; ++i) {
                    const PolePair p = poles(m, M_PI * i / 40.0);
                    ++samples;
                    if (p.pole_plus.imag() < -1e-15 || p.pole_minus.imag() < -1e-15) {
                        if (c.variant == Coupling::A) FAIL("negative imaginary part for config A");
                        ++violations;
                    }
                }
            }
        }
    }
    MESSAGE("poles with negative imaginary part: " << violations << " of " << samples);
}

TEST_CASE("regime classification") {
    const Model none = make(0.5, 0.2, 0.0);
    CHECK(classify_regime(none, k_at(none)).label == Regime::lorentzian);
    CHECK(classify_regime(none, k_at(none)).ratio == 0.0);

    const Model strong = make(0.5, 0.2, 0.4);
    const RegimeLabel s = classify_regime(strong, k_at(strong));
    CHECK(s.label == Regime::ats);
    CHECK(s.ratio == doctest::Approx(9.86).epsilon(2e-3));

    const Model weak = make(0.5, 0.2, 0.009);
    const RegimeLabel w = classify_regime(weak, k_at(weak));
    CHECK(w.ratio == doctest::Approx(0.22).epsilon(0.02));
    CHECK(w.label == Regime::lorentzian);

    const Model mid = make(0.5, 0.2, 0.04);
    CHECK(classify_regime(mid, k_at(mid)).label == Regime::eit);

    // Deterministic in the ratio.
    for (double om = 0.0; om < 0.6; om += 0.01) {
        const Model m = make(-0.5, 0.2, om, CouplingConfig::ab(0.3));
        const RegimeLabel r = classify_regime(m, k_at(m));
        const Regime expect = r.ratio < 0.25 ? Regime::lorentzian : r.ratio <= 4 ? Regime::eit : Regime::ats;
        CHECK(r.label == expect);
    }
    CHECK(to_string(Regime::ats) == "ats");
}

TEST_CASE("Lamb shift values") {
    WaveguideParams p;
    p.delta = 0.5;
    CHECK(lamb_shift(0.2, 1.0, p) == 0.0);
    CHECK(lamb_shift(0.2, 0.0, p) == 0.0);
    CHECK(lamb_shift(0.2, 0.5, p) == doctest::Approx(1.0 / 150.0).epsilon(1e-14));
    p.delta = -0.5;
    CHECK(lamb_shift(0.2, 0.5, p) == doctest::Approx(0.02).epsilon(1e-14));
}

TEST_CASE("ATS zero positions") {
    const auto a = ats_dip_positions(make(0.5, 0.2, 0.4));
    CHECK(a.first == doctest::Approx(-0.2));
    CHECK(a.second == doctest::Approx(0.2));
    const auto ab = ats_dip_positions(make(0.5, 0.2, 0.4, CouplingConfig::ab(0.5)));
    CHECK(ab.first == doctest::Approx(1.0 / 300.0 - 0.2).epsilon(1e-14));
    CHECK(ab.second == doctest::Approx(1.0 / 300.0 + 0.2).epsilon(1e-14));
    const auto wide = ats_dip_positions(make(0.5, 0.2, 0.8, CouplingConfig::ab(0.5)));
    CHECK(wide.second - wide.first == doctest::Approx(2.0 * (ab.second - ab.first)));
    // Strong-field form of the exact zeros dk^2 - L dk - Omega^2/4 = 0.
    const Model m = make(0.5, 0.2, 0.4, CouplingConfig::ab(0.5));
    const double L = 1.0 / 150.0;
    const double root = 0.5 * std::sqrt(L * L + 0.16);
    CHECK(std::abs(transmittance(m, 1.5 + 0.5 * L - root)) < 1e-12);
    CHECK(std::abs(transmittance(m, 1.5 + 0.5 * L + root)) < 1e-12);
    CHECK(std::abs(ab.first - (0.5 * L - root)) < L * L / 0.4);
    CHECK(std::abs(ab.second - (0.5 * L + root)) < L * L / 0.4);
}

TEST_CASE("linspace") {
    const auto g = linspace(-1.0, 1.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == -1.0);
    CHECK(g.back() == 1.0);
    CHECK(g[2] == 0.0);
    CHECK_THROWS_AS(linspace(0.0, 1.0, 1), ValidationError);
    CHECK_THROWS_AS(linspace(1.0, 0.0, 3), ValidationError);
}

TEST_CASE("Lorentzian spectrum") {
    const Model m = make(0.5, 0.1, 0.0);
    const auto dk = linspace(-0.4, 0.4, 801);
    const SpectrumGrid g = sweep_spectrum(m, dk);
    REQUIRE(g.records.size() == 801);
    CHECK(g.skipped == 0);
    const auto& centre = g.records[400];
    CHECK(centre.delta_k == 0.0);
    CHECK(centre.T == 0.0);
    CHECK(centre.singular);
    CHECK(g.records.front().T > 0.95);
    CHECK(g.records.back().T > 0.95);
    const auto fs = extract_features(g.records);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].kind == FeatureKind::dip);
    CHECK(std::abs(fs[0].position) < 1e-3);
    CHECK(fs[0].depth == doctest::Approx(1.0));
    CHECK(fs[0].fwhm > 0.0);
}

TEST_CASE("sweep records are unitary and bounded") {
    for (CouplingConfig c : {CouplingConfig::a(), CouplingConfig::b(), CouplingConfig::ab(0.5)}) {
        for (double delta : {0.5, -0.5}) {
            const Model m = make(delta, 0.2, 0.1, c, 0.01);
            const SpectrumGrid g = sweep_spectrum(m, linspace(-0.45, 0.45, 901));
            for (const auto& r : g.records) {
                CHECK(r.T >= 0.0);
                CHECK(r.T <= 1.0 + 1e-12);
                CHECK(std::abs(r.T + r.R - 1.0) < 1e-12);
                CHECK(std::abs(r.tL - r.tR) < 1e-12);
            }
        }
    }
}

TEST_CASE("A config spectrum is not mirror symmetric in detuning") {
    // omega_k and sin k change across the line, so T(dk) != T(-dk); the
    // mismatch shrinks as dk -> 0.
    const Model m = make(0.5, 0.2, 0.0);
    double prev = 1.0;
    for (double d : {0.1, 0.05, 0.025, 0.0125, 0.001}) {
        const double diff = std::abs(std::norm(transmittance(m, 1.5 + d)) -
                                     std::norm(transmittance(m, 1.5 - d)));
        CHECK(diff < prev);
        prev = diff;
    }
    CHECK(prev < 1e-4);
    CHECK(std::abs(std::norm(transmittance(m, 1.6)) - std::norm(transmittance(m, 1.4))) > 1e-3);
}

TEST_CASE("out-of-band points are skipped") {
    const Model m = make(0.5, 0.2, 0.1);
    const SpectrumGrid g = sweep_spectrum(m, linspace(-1.0, 1.0, 201));
    CHECK(g.skipped > 0);
    CHECK(g.records.size() + g.skipped == 201);
    for (const auto& r : g.records) {
        CHECK(r.delta_k > -0.5);
        CHECK(r.delta_k < 0.5);
    }
    const Model gap = make(0.5, 0.2, 0.1, CouplingConfig::a(), 0.0, 0.5);
    CHECK_THROWS_AS(sweep_spectrum(gap, linspace(-0.1, 0.1, 11)), EmptyGridError);
    CHECK_THROWS_AS(sweep_spectrum(m, std::vector<double>{0.1, 0.0}), ValidationError);
}

TEST_CASE("lower band sweep") {
    const Model m = make(-0.5, 0.2, 0.2, CouplingConfig::ab(0.4), 0.0, -1.5);
    const SpectrumGrid g = sweep_spectrum(m, linspace(-0.3, 0.3, 301), Band::lower);
    CHECK(g.skipped == 0);
    for (const auto& r : g.records) CHECK(std::abs(r.T + r.R - 1.0) < 1e-12);
}

TEST_CASE("threaded sweeps are identical to serial ones") {
    const Model m = make(-0.5, 0.2, 0.05, CouplingConfig::ab(0.5));
    const auto dk = linspace(-0.3, 0.3, 1001);
    const auto om = linspace(0.0, 0.2, 7);
    const SpectrumGrid a = sweep_contour(m, dk, om, Band::upper, 1);
    const SpectrumGrid b = sweep_contour(m, dk, om, Band::upper, 4);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].delta_k == b.records[i].delta_k);
        CHECK(a.records[i].omega_rabi == b.records[i].omega_rabi);
        CHECK(a.records[i].T == b.records[i].T);
        CHECK(a.records[i].t == b.records[i].t);
    }
}

TEST_CASE("contour rows") {
    const Model m = make(0.5, 0.2, 0.0);
    const auto dk = linspace(-0.45, 0.45, 201);
    const auto om = linspace(0.0, 0.4, 9);
    const SpectrumGrid c = sweep_contour(m, dk, om);
    CHECK(c.omega_axis.size() == 9);
    CHECK(c.records.size() == 201 * 9);
    // Omega outer loop.
    CHECK(c.records[0].omega_rabi == 0.0);
    CHECK(c.records[200].omega_rabi == 0.0);
    CHECK(c.records[201].omega_rabi == om[1]);

    const SpectrumGrid s = sweep_spectrum(m, dk);
    const auto row0 = c.row(0.0);
    REQUIRE(row0.size() == s.records.size());
    for (std::size_t i = 0; i < row0.size(); ++i) {
        CHECK(row0[i].T == s.records[i].T);
        CHECK(row0[i].t == s.records[i].t);
    }
    // Transparency ridge along dk = 0.
    for (double o : om) {
        const auto row = c.row(o);
        const double T0 = row[100].T;
        if (o == 0.0) {
            CHECK(T0 == 0.0);
        } else {
            CHECK(std::abs(T0 - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("AB contours depend on the sign of delta") {
    const auto dk = linspace(-0.3, 0.3, 121);
    const auto om = linspace(0.0, 0.3, 7);
    const SpectrumGrid p = sweep_contour(make(0.5, 0.2, 0.0, CouplingConfig::ab(0.5)), dk, om);
    const SpectrumGrid n = sweep_contour(make(-0.5, 0.2, 0.0, CouplingConfig::ab(0.5)), dk, om);
    REQUIRE(p.records.size() == n.records.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < p.records.size(); ++i) {
        worst = std::max(worst, std::abs(p.records[i].T - n.records[i].T));
    }
    CHECK(worst > 0.1);
}

TEST_CASE("ATS dips sit at the transmission zeros") {
    const Model m = make(0.5, 0.2, 0.4);
    const SpectrumGrid g = sweep_spectrum(m, linspace(-0.4, 0.4, 10000));
    const auto fs = extract_features(g.records);
    const auto dips = dips_of(fs);
    REQUIRE(dips.size() == 2);
    CHECK(std::abs(dips[0].position + 0.2) < 5e-3);
    CHECK(std::abs(dips[1].position - 0.2) < 5e-3);
    for (const auto& d : dips) {
        CHECK(d.fwhm > 0.0);
        CHECK(d.asymmetry > 0.0);
    }
    int peaks = 0;
    for (const auto& f : fs) peaks += f.kind == FeatureKind::peak;
    CHECK(peaks == 1);
}

TEST_CASE("dip positions converge with grid refinement") {
    const Model m = make(0.5, 0.2, 0.4);
    double prev = 1.0;
    for (int n : {1001, 2001, 4001, 8001}) {
        const auto dips = dips_of(extract_features(sweep_spectrum(m, linspace(-0.4, 0.4, n)).records));
        REQUIRE(dips.size() == 2);
        const double err = std::max(std::abs(dips[0].position + 0.2), std::abs(dips[1].position - 0.2));
        CHECK(err <= 0.5 * prev);
        prev = err;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("Fano spectrum has a zero next to a transparency point") {
    const Model m = make(-0.5, 0.2, 0.0045, CouplingConfig::ab(0.5));
    const SpectrumGrid g = sweep_spectrum(m, linspace(-0.002, 0.002, 4001));
    double tmin = 1.0, tmax = 0.0, xmin = 0.0, xmax = 0.0;
    for (const auto& r : g.records) {
        if (r.T < tmin) { tmin = r.T; xmin = r.delta_k; }
        if (r.T > tmax) { tmax = r.T; xmax = r.delta_k; }
    }
    CHECK(tmin < 1e-4);
    CHECK(tmax > 1.0 - 1e-12);
    CHECK(xmax == doctest::Approx(0.0));
    CHECK(xmin < 0.0);
    CHECK(xmax - xmin < 5e-4);
    const auto dips = dips_of(extract_features(g.records));
    REQUIRE(dips.size() == 1);
    CHECK(dips[0].asymmetry != doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("feature extraction edge cases") {
    const std::vector<double> x{0.0, 1.0, 2.0, 3.0, 4.0};
    CHECK(extract_features(x, std::vector<double>{1, 1, 1, 1, 1}).empty());
    CHECK(extract_features(x, std::vector<double>{1, 0.9, 0.6, 0.9, 1}).empty());
    const auto one = extract_features(x, std::vector<double>{1, 0.8, 0.0, 0.4, 1});
    REQUIRE(one.size() == 1);
    CHECK(one[0].depth == 1.0);
    CHECK(one[0].fwhm > 0.0);
    CHECK(one[0].asymmetry > 0.0);
    CHECK_THROWS_AS(extract_features(std::vector<double>{0, 1}, std::vector<double>{1, 0}), ValidationError);
    CHECK_THROWS_AS(extract_features(x, std::vector<double>{1, 0}), ValidationError);
}

TEST_CASE("half-depth width of a sampled Lorentzian") {
    std::vector<double> x, T;
    const double w = 0.01;
    for (int i = 0; i <= 4000; ++i) {
        const double d = -0.2 + 0.4 * i / 4000.0;
        x.push_back(d);
        T.push_back(d * d / (d * d + w * w));
    }
    const auto fs = extract_features(x, T);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].fwhm == doctest::Approx(2 * w).epsilon(1e-3));
    CHECK(fs[0].asymmetry == doctest::Approx(1.0).epsilon(1e-3));
}
