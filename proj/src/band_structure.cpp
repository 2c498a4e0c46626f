#include "sshqed/band_structure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sshqed/errors.hpp"

namespace sshqed {

namespace {

constexpr double pi = std::numbers::pi;
// Energies this close to a band edge are treated as sitting on it.
constexpr double kEdgeTolerance = 1e-12;

}  // namespace

BlochPoint bloch_point(double k, const WaveguideParams& p) {
    BlochPoint bp;
    bp.k = k;
    bp.h = -p.t1() - p.t2() * std::polar(1.0, -k);
    bp.phi = std::arg(bp.h);
    if (bp.phi == -pi) bp.phi = pi;
    const double t1 = p.t1();
    const double t2 = p.t2();
    bp.omega = std::sqrt(std::max(0.0, t1 * t1 + t2 * t2 + 2.0 * t1 * t2 * std::cos(k)));
    return bp;
}

double momentum_from_energy(double omega, const WaveguideParams& p, Band band) {
    const double t1 = p.t1();
    const double t2 = p.t2();
    const double inner = std::abs(t1 - t2);
    const double outer = t1 + t2;
    const double tol = kEdgeTolerance * p.J;

    if (std::isnan(omega)) {
        throw OutOfBandError(OutOfBandError::Kind::beyond_edge, "energy is NaN");
    }
    if (band_sign(band) * omega < 0.0) {
        throw OutOfBandError(OutOfBandError::Kind::wrong_band,
                             "energy " + std::to_string(omega) + " does not lie on the " +
                                 std::string(to_string(band)) + " band");
    }
    const double w = std::abs(omega);
    if (std::abs(w - inner) <= tol || std::abs(w - outer) <= tol) {
        throw EdgeSingularityError("energy " + std::to_string(omega) + " sits on a band edge");
    }
    if (w < inner) {
        throw OutOfBandError(OutOfBandError::Kind::gap,
                             "energy " + std::to_string(omega) + " lies in the band gap");
    }
    if (w > outer) {
        throw OutOfBandError(OutOfBandError::Kind::beyond_edge,
                             "energy " + std::to_string(omega) + " lies beyond the band edge");
    }
    const double c = (w * w - t1 * t1 - t2 * t2) / (2.0 * t1 * t2);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

GroupVelocity group_velocity(double k, const WaveguideParams& p) {
    const BlochPoint bp = bloch_point(k, p);
    const double s = std::sin(k);
    if (std::abs(s) < 1e-15 || bp.omega == 0.0) {
        return {0.0, true};
    }
    return {-p.t1() * p.t2() * s / bp.omega, false};
}

BlochEigenvectors bloch_eigenvectors(double k, const WaveguideParams& p) {
    const BlochPoint bp = bloch_point(k, p);
    if (bp.omega < 1e-14 * p.J) {
        throw DegenerateError("bands touch at k = " + std::to_string(k) +
                              "; Bloch eigenvectors are not unique");
    }
    const double norm = 1.0 / std::sqrt(2.0);
    const cplx b = std::polar(norm, -bp.phi);
    return {{cplx(norm, 0.0), b}, {cplx(-norm, 0.0), b}};
}

DVector d_vector(double k, const WaveguideParams& p) {
    return {-p.t1() - p.t2() * std::cos(k), -p.t2() * std::sin(k), 0.0};
}

int winding_number(const WaveguideParams& p, int n_samples) {
    if (n_samples < 64) {
        throw ValidationError("n_samples", "winding number needs at least 64 samples");
    }
    if (p.delta == 0.0) {
        throw UndefinedWindingError("gap is closed at delta = 0; winding number is undefined");
    }
    // Fine enough for |delta| down to ~1e-6 before giving up.
    constexpr long kMaxSamples = 1L << 24;
    for (long n = n_samples; n <= kMaxSamples; n *= 2) {
        double total = 0.0;
        double largest = 0.0;
        const DVector first = d_vector(-pi, p);
        cplx prev(first.dx, first.dy);
        for (long i = 1; i <= n; ++i) {
            const double k = -pi + 2.0 * pi * static_cast<double>(i) / static_cast<double>(n);
            const DVector d = d_vector(k, p);
            const cplx cur(d.dx, d.dy);
            const double step = std::arg(cur / prev);
            largest = std::max(largest, std::abs(step));
            total += step;
            prev = cur;
        }
        if (largest > pi / 4.0) continue;
        const double raw = total / (2.0 * pi);
        const double nu = std::round(raw);
        if (std::abs(raw - nu) >= 1e-6) {
            throw UndefinedWindingError("winding accumulation did not converge to an integer");
        }
        return static_cast<int>(nu);
    }
    throw UndefinedWindingError("gap too small to resolve the winding number");
}

double zak_phase(const WaveguideParams& p, int n_samples) {
    return winding_number(p, n_samples) * pi;
}

BandEdges band_edges(const WaveguideParams& p) {
    return {2.0 * std::abs(p.delta) * p.J, 2.0 * p.J};
}

}  // namespace sshqed
