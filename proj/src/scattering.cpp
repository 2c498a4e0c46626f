#include "sshqed/scattering.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "sshqed/errors.hpp"

namespace sshqed {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double kSingularTolerance = 1e-14;

struct Kinematics {
    double k;
    double phi;
    double omega_k;
    double sin_k;
};

Kinematics kinematics(const Model& m, double k) {
    const double s = std::sin(k);
    if (!(k > 0.0 && k < M_PI) || std::abs(s) < 1e-15) {
        throw EdgeSingularityError("sin k = 0 at k = " + std::to_string(k));
    }
    const BlochPoint bp = bloch_point(k, m.waveguide);
    return {k, bp.phi, bp.omega, s};
}

// Potentials as seen on the selected band. The lower band maps onto the
// upper one by flipping the A amplitudes, which flips V1 and V3 but not V2.
EffectivePotential band_potentials(const Model& m, double omega, Band band) {
    const double delta_k = omega - m.emitter.omega_e;
    EffectivePotential p = effective_potential(delta_k, m.emitter.delta_c, m.emitter.omega_rabi,
                                               m.emitter.g, m.coupling.alpha);
    const double s = band_sign(band);
    p.V *= s;
    p.V1 *= s;
    p.V3 *= s;
    return p;
}

// Transfer matrices are built in a generic scalar so the pipeline can run in
// extended precision; near the emitter poles t11 - t12 t21 / t22 cancels
// entries of order V / d.
template <class R>
struct Mat2 {
    using C = std::complex<R>;
    C t11, t12, t21, t22;

    Mat2 operator*(const Mat2& o) const {
        return {t11 * o.t11 + t12 * o.t21, t11 * o.t12 + t12 * o.t22,
                t21 * o.t11 + t22 * o.t21, t21 * o.t12 + t22 * o.t22};
    }
};

template <class R>
struct Scatter2 {
    std::complex<R> tL, rL, tR, rR;
};

template <class R>
Mat2<R> single_site_a(const Model& m, const Kinematics& kin, double V) {
    using C = std::complex<R>;
    const R k = kin.k, phi = kin.phi, v = V;
    const C d = C(0, 2) * R(m.t2) * std::sin(k + phi);
    const R theta = 2 * (k * R(m.emitter.x1) + phi);
    return {R(1) + v / d, v * std::polar(R(1), -theta) / d, -v * std::polar(R(1), theta) / d,
            R(1) - v / d};
}

template <class R>
Mat2<R> single_site_b(const Model& m, const Kinematics& kin, double V) {
    using C = std::complex<R>;
    const R k = kin.k, phi = kin.phi, v = V;
    const C d = C(0, 2) * R(m.t1) * std::sin(phi);
    const R kx = 2 * k * R(m.emitter.x1);
    return {R(1) - v / d, -v * std::polar(R(1), -kx) / d, v * std::polar(R(1), kx) / d,
            R(1) + v / d};
}

// A-side interface of the AB coupling. The scattering equation on A_{x1}
// carries the cross term V2 u_B(x1), which is absorbed into (t1 - V2).
template <class R>
Mat2<R> ab_interface_a(const Model& m, const Kinematics& kin, const EffectivePotential& p) {
    using C = std::complex<R>;
    if (std::abs(m.t1 - p.V2) < kSingularTolerance) {
        throw DegenerateError("t1 - V2 vanishes; AB transfer matrix is undefined");
    }
    const R k = kin.k, phi = kin.phi;
    const R reduced = R(m.t1) - R(p.V2);
    const C em = std::polar(R(1), -phi);
    const C ep = std::polar(R(1), phi);
    const C d = C(0, 2) * reduced * std::sin(phi);
    const C P = R(p.V1) + R(p.V2) * em;
    const C Q = R(p.V1) + R(p.V2) * ep;
    const R theta = 2 * (k * R(m.emitter.x1) + phi);
    return {R(1) - P / d, -Q * std::polar(R(1), -theta) / d, P * std::polar(R(1), theta) / d,
            R(m.t1) / reduced + P / d};
}

template <class R>
Mat2<R> ab_interface_b(const Model& m, const Kinematics& kin, const EffectivePotential& p) {
    using C = std::complex<R>;
    const R k = kin.k, phi = kin.phi;
    const C em = std::polar(R(1), -phi);
    const C ep = std::polar(R(1), phi);
    const C d = C(0, 2) * R(m.t2) * std::sin(k + phi);
    const R kx = 2 * k * R(m.emitter.x1);
    const C P = R(p.V3) + R(p.V2) * ep;
    const C Q = R(p.V3) + R(p.V2) * em;
    return {R(1) + P / d, Q * std::polar(R(1), -kx) / d, -P * std::polar(R(1), kx) / d,
            R(1) - Q / d};
}

template <class R>
Mat2<R> build_transfer(const Model& m, const Kinematics& kin, const EffectivePotential& p) {
    switch (m.coupling.variant) {
        case Coupling::A: return single_site_a<R>(m, kin, p.V);
        case Coupling::B: return single_site_b<R>(m, kin, p.V);
        case Coupling::AB: return ab_interface_b<R>(m, kin, p) * ab_interface_a<R>(m, kin, p);
    }
    return {R(1), R(0), R(0), R(1)};
}

template <class R>
Scatter2<R> scatter_from(const Mat2<R>& U) {
    using C = std::complex<R>;
    if (std::abs(U.t22) < R(kSingularTolerance)) {
        // Perfect reflection: keep the phase of the diverging entries.
        const C rl = std::abs(U.t21) > R(0) ? -U.t21 / std::abs(U.t21) : C(1);
        const C rr = std::abs(U.t12) > R(0) ? U.t12 / std::abs(U.t12) : C(1);
        return {C(0), rl, C(0), rr};
    }
    return {U.t11 - U.t12 * U.t21 / U.t22, -U.t21 / U.t22, R(1) / U.t22, U.t12 / U.t22};
}

using Wide = long double;

Scatter2<Wide> wide_scatter(const Model& m, const Kinematics& kin, const EffectivePotential& p) {
    return scatter_from(build_transfer<Wide>(m, kin, p));
}

cplx narrow(const std::complex<Wide>& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// t and r_L in the limit G -> infinity (emitter pole hit exactly).
cplx limit_transmission(const Model& m, const Kinematics& kin, Band band) {
    const double mix = m.coupling.alpha * (1.0 - m.coupling.alpha);
    if (mix == 0.0) return {0.0, 0.0};
    const cplx A = mixing_factor(m.coupling.alpha, kin.phi, band);
    return -2.0 * I * m.t2 * kin.sin_k * mix / (kin.omega_k * A);
}

// r_L from the matching conditions with G kept explicit; finite for every G,
// including G -> infinity and the AB point t1 = V2.
cplx closed_reflection(const Model& m, const Kinematics& kin, double G, bool infinite, Band band) {
    const double s = band_sign(band);
    const double a = m.coupling.alpha;
    const double b = 1.0 - a;
    const cplx e1 = std::polar(1.0, kin.phi);
    const cplx e2 = std::polar(1.0, 2.0 * kin.phi);
    const cplx num = a * a * e2 + 2.0 * s * a * b * e1 + b * b;
    const cplx den = e1 * (a * a + b * b) + 2.0 * s * a * b;
    const cplx phase = std::polar(1.0, 2.0 * kin.k * m.emitter.x1 + kin.phi);
    if (infinite) return -num * phase / den;
    const double g2G = 4.0 * m.emitter.g * m.emitter.g * G;
    return -g2G * num * phase / (g2G * den + s * m.t1 * (e2 - 1.0));
}

cplx closed_form(const Model& m, const Kinematics& kin, const EffectivePotential& p, Band band) {
    const double two_t1t2_sin = 2.0 * m.t1 * m.t2 * kin.sin_k;
    if (m.coupling.variant != Coupling::AB) {
        return two_t1t2_sin / (two_t1t2_sin - I * p.V * kin.omega_k);
    }
    // p.V already carries the band sign; the mixing factor is written for
    // the bare V, so undo it there.
    const double s = band_sign(band);
    const double bare_v = s * p.V;
    const double mix = m.coupling.alpha * (1.0 - m.coupling.alpha);
    const cplx A = mixing_factor(m.coupling.alpha, kin.phi, band);
    return 2.0 * I * m.t2 * kin.sin_k * (m.t1 - bare_v * mix) /
           (I * two_t1t2_sin + bare_v * kin.omega_k * A);
}

Kinematics kinematics_at(const Model& m, double omega, Band band) {
    return kinematics(m, momentum_from_energy(omega, m.waveguide, band));
}

}  // namespace

TransferMatrix TransferMatrix::operator*(const TransferMatrix& rhs) const noexcept {
    return {t11 * rhs.t11 + t12 * rhs.t21, t11 * rhs.t12 + t12 * rhs.t22,
            t21 * rhs.t11 + t22 * rhs.t21, t21 * rhs.t12 + t22 * rhs.t22};
}

double g_factor(double delta_k, double delta_c, double omega_rabi) {
    if (omega_rabi == 0.0) {
        if (std::abs(4.0 * delta_k) < kSingularTolerance) {
            throw PotentialSingularity(delta_k, "effective potential diverges at delta_k = 0");
        }
        return 1.0 / (4.0 * delta_k);
    }
    const double sum = delta_k + delta_c;
    const double den = 4.0 * delta_k * sum - omega_rabi * omega_rabi;
    if (std::abs(den) < kSingularTolerance) {
        throw PotentialSingularity(delta_k, "effective potential diverges at delta_k = " +
                                                std::to_string(delta_k));
    }
    return sum / den;
}

EffectivePotential effective_potential(double delta_k, double delta_c, double omega_rabi,
                                       double g, double alpha) {
    EffectivePotential p;
    p.G = g_factor(delta_k, delta_c, omega_rabi);
    p.V = 4.0 * g * g * p.G;
    const double g1 = g * alpha;
    const double g2 = g * (1.0 - alpha);
    p.V1 = 4.0 * g1 * g1 * p.G;
    p.V2 = 4.0 * g1 * g2 * p.G;
    p.V3 = 4.0 * g2 * g2 * p.G;
    return p;
}

cplx mixing_factor(double alpha, double phi, Band band) {
    const double s = band_sign(band);
    return s + 2.0 * alpha * (1.0 - alpha) * (std::polar(1.0, -phi) - s);
}

TransferMatrix transfer_matrix(const Model& m, double k, Band band) {
    const Kinematics kin = kinematics(m, k);
    const double omega = band_sign(band) * kin.omega_k;
    const Mat2<double> U = build_transfer<double>(m, kin, band_potentials(m, omega, band));
    return {U.t11, U.t12, U.t21, U.t22};
}

ScatteringMatrix scattering_matrix(const TransferMatrix& U) {
    const Scatter2<double> S = scatter_from(Mat2<double>{U.t11, U.t12, U.t21, U.t22});
    return {S.tL, S.rL, S.tR, S.rR};
}

cplx transmittance(const Model& m, double omega, Band band) {
    const Kinematics kin = kinematics_at(m, omega, band);
    try {
        return closed_form(m, kin, band_potentials(m, omega, band), band);
    } catch (const PotentialSingularity&) {
        return limit_transmission(m, kin, band);
    }
}

cplx reflectance(const Model& m, double omega, Band band) {
    const Kinematics kin = kinematics_at(m, omega, band);
    try {
        return narrow(wide_scatter(m, kin, band_potentials(m, omega, band)).rL);
    } catch (const PotentialSingularity&) {
        return closed_reflection(m, kin, 0.0, true, band);
    } catch (const DegenerateError&) {
        const double G = g_factor(omega - m.emitter.omega_e, m.emitter.delta_c, m.emitter.omega_rabi);
        return closed_reflection(m, kin, G, false, band);
    }
}

cplx reflectance_closed_form(const Model& m, double omega, Band band) {
    const Kinematics kin = kinematics_at(m, omega, band);
    try {
        const double G = g_factor(omega - m.emitter.omega_e, m.emitter.delta_c, m.emitter.omega_rabi);
        return closed_reflection(m, kin, G, false, band);
    } catch (const PotentialSingularity&) {
        return closed_reflection(m, kin, 0.0, true, band);
    }
}

ScatterPoint scatter(const Model& m, double omega, Band band) {
    const Kinematics kin = kinematics_at(m, omega, band);
    ScatterPoint pt;
    pt.omega = omega;
    pt.k = kin.k;
    EffectivePotential p;
    try {
        p = band_potentials(m, omega, band);
    } catch (const PotentialSingularity&) {
        pt.singular = true;
        pt.t = limit_transmission(m, kin, band);
        pt.tL = pt.t;
        pt.tR = pt.t;
        pt.r = closed_reflection(m, kin, 0.0, true, band);
        return pt;
    }
    pt.t = closed_form(m, kin, p, band);
    try {
        const Scatter2<Wide> S = wide_scatter(m, kin, p);
        pt.tL = narrow(S.tL);
        pt.tR = narrow(S.tR);
        pt.r = narrow(S.rL);
    } catch (const DegenerateError&) {
        // t1 = V2: the A-side factor is undefined but t vanishes there.
        pt.tL = pt.t;
        pt.tR = pt.t;
        pt.r = closed_reflection(m, kin, p.G, false, band);
    }
    return pt;
}

}  // namespace sshqed
