#pragma once

#include <complex>

#include "sshqed/band_structure.hpp"
#include "sshqed/core_model.hpp"

namespace sshqed {

/// Relates (psi_k^out, psi_{-k}^in) on the right of the emitter to
/// (psi_k^in, psi_{-k}^out) on its left.
struct TransferMatrix {
    cplx t11{1.0, 0.0};
    cplx t12{0.0, 0.0};
    cplx t21{0.0, 0.0};
    cplx t22{1.0, 0.0};

    static TransferMatrix identity() noexcept { return {}; }
    cplx det() const noexcept { return t11 * t22 - t12 * t21; }
    TransferMatrix operator*(const TransferMatrix& rhs) const noexcept;
};

struct ScatteringMatrix {
    cplx tL;
    cplx rL;
    cplx tR;
    cplx rR;
};

/// Emitter-induced potential. V1, V2, V3 are the A-A, A-B and B-B entries for
/// split coupling g1 = g*alpha, g2 = g*(1 - alpha); V1 * V3 == V2^2.
struct EffectivePotential {
    double V = 0.0;
    double G = 0.0;
    double V1 = 0.0;
    double V2 = 0.0;
    double V3 = 0.0;
};

/// G = (dk + dc) / [4 dk (dk + dc) - Omega^2]; reduces to 1 / (4 dk) at
/// Omega = 0. Throws PotentialSingularity when the denominator vanishes.
double g_factor(double delta_k, double delta_c, double omega_rabi);

EffectivePotential effective_potential(double delta_k, double delta_c, double omega_rabi,
                                       double g, double alpha = 1.0);

/// Transfer matrix at quasi-momentum k in (0, pi) on the selected band.
/// A and B use the single-site forms; AB is the product U_B * U_A of the two
/// interface matrices with theta = 2 (k x1 + phi).
TransferMatrix transfer_matrix(const Model& m, double k, Band band = Band::upper);

ScatteringMatrix scattering_matrix(const TransferMatrix& U);

/// Mixing factor s + 2 alpha (1 - alpha) (e^{-i phi} - s), s = +-1 for the
/// upper/lower band. On the upper band this is 2a(1-a)(e^{-i phi} - 1) + 1.
cplx mixing_factor(double alpha, double phi, Band band = Band::upper);

/// Closed-form transmission amplitude at signed energy omega.
cplx transmittance(const Model& m, double omega, Band band = Band::upper);

/// Reflection amplitude r_L from the transfer-matrix pipeline.
cplx reflectance(const Model& m, double omega, Band band = Band::upper);

/// Reflection amplitude from the matching conditions directly (no matrices).
cplx reflectance_closed_form(const Model& m, double omega, Band band = Band::upper);

/// Everything a sweep needs at one energy: closed-form t, pipeline
/// (tL, tR, rL), and whether the analytic V -> infinity limit was used.
/// Where the pipeline is undefined (potential pole, AB with t1 = V2) the
/// reflection comes from its closed form and tL = tR = t.
struct ScatterPoint {
    double omega = 0.0;
    double k = 0.0;
    cplx t;
    cplx tL;
    cplx tR;
    cplx r;
    bool singular = false;
};

ScatterPoint scatter(const Model& m, double omega, Band band = Band::upper);

}  // namespace sshqed
