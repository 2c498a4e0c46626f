#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sshqed/band_structure.hpp"
#include "sshqed/core_model.hpp"

namespace sshqed {

struct PolePair {
    cplx pole_plus;
    cplx pole_minus;
};

enum class Regime { lorentzian, eit, ats };

struct RegimeLabel {
    Regime label = Regime::lorentzian;
    double ratio = 0.0;
};

std::string to_string(Regime r);

/// Single-excitation poles in the Delta_k plane at control-field resonance.
PolePair poles(const Model& m, double k);

/// Threshold ratio |Omega| |2 t1 t2 sin k| / (g^2 omega_k |A|). Cutoffs 0.25 / 4.
RegimeLabel classify_regime(const Model& m, double k);

double lamb_shift(double g, double alpha, const WaveguideParams& p);

/// Transmission zeros L/2 +- Omega/2 in Delta_k, L the Lamb shift.
std::pair<double, double> ats_dip_positions(const Model& m);

struct SpectrumRecord {
    double delta_k = 0.0;
    double omega_rabi = 0.0;
    double T = 0.0;
    double R = 0.0;
    cplx t;
    cplx r;
    cplx tL;
    cplx tR;
    bool singular = false;
};

struct SpectrumGrid {
    std::vector<double> dk_axis;
    std::vector<double> omega_axis;  // empty for a 1D sweep
    std::vector<SpectrumRecord> records;
    std::size_t skipped = 0;

    /// Records of one Omega row (contiguous, Omega is the outer loop).
    std::vector<SpectrumRecord> row(double omega_rabi) const;
};

/// Evenly spaced grid of n >= 2 points on [lo, hi], lo < hi.
std::vector<double> linspace(double lo, double hi, int n);

/// Out-of-band points are skipped and counted. threads <= 0 picks the default.
SpectrumGrid sweep_spectrum(const Model& m, std::span<const double> dk_grid,
                            Band band = Band::upper, int threads = 1);

SpectrumGrid sweep_contour(const Model& m, std::span<const double> dk_grid,
                           std::span<const double> omega_grid, Band band = Band::upper,
                           int threads = 1);

enum class FeatureKind { dip, peak };

std::string to_string(FeatureKind k);

struct LineshapeFeature {
    FeatureKind kind = FeatureKind::dip;
    double position = 0.0;
    double depth = 0.0;  // 1 - T_min for dips, T_max for peaks
    double fwhm = 0.0;
    double asymmetry = 1.0;
};

std::vector<LineshapeFeature> extract_features(std::span<const double> x,
                                               std::span<const double> T);
std::vector<LineshapeFeature> extract_features(std::span<const SpectrumRecord> row);

}  // namespace sshqed
