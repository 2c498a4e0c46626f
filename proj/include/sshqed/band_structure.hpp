#pragma once

#include <array>
#include <complex>

#include "sshqed/core_model.hpp"

namespace sshqed {

using cplx = std::complex<double>;

/// One point of the bare chain dispersion. h = -t1 - t2 e^{-ik} = omega e^{i phi}.
struct BlochPoint {
    double k = 0.0;
    cplx h;
    double phi = 0.0;    // principal branch (-pi, pi]
    double omega = 0.0;  // upper-band energy |h|
};

struct DVector {
    double dx = 0.0;
    double dy = 0.0;
    double dz = 0.0;
};

/// Upper/lower Bloch eigenvectors as amplitudes on (A, B):
/// upper = (1, e^{-i phi}) / sqrt2, lower = (-1, e^{-i phi}) / sqrt2.
struct BlochEigenvectors {
    std::array<cplx, 2> upper;
    std::array<cplx, 2> lower;
};

struct GroupVelocity {
    double value = 0.0;  // d omega_k / dk of the upper band
    bool band_edge = false;
};

struct BandEdges {
    double gap_edge = 0.0;
    double outer_edge = 0.0;
};

BlochPoint bloch_point(double k, const WaveguideParams& p);

/// Inverts the dispersion for a signed energy on the selected band. Returns
/// k in (0, pi); the scattering layer treats e^{ikj} as the incoming mode.
double momentum_from_energy(double omega, const WaveguideParams& p, Band band = Band::upper);

/// Signed derivative -t1 t2 sin k / omega_k. It is negative on (0, pi): the
/// e^{ikj} mode with k in (0, pi) carries current towards -j.
GroupVelocity group_velocity(double k, const WaveguideParams& p);

BlochEigenvectors bloch_eigenvectors(double k, const WaveguideParams& p);

DVector d_vector(double k, const WaveguideParams& p);

/// Winding of (dx, dy) around the origin over the Brillouin zone. Phase
/// increments are taken between neighbouring samples, and the grid is
/// refined until no increment exceeds pi/4.
int winding_number(const WaveguideParams& p, int n_samples = 256);

double zak_phase(const WaveguideParams& p, int n_samples = 256);

BandEdges band_edges(const WaveguideParams& p);

}  // namespace sshqed
