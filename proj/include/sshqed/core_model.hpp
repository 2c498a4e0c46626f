#pragma once

#include <string_view>

namespace sshqed {

// Energies are in the same unit as the characteristic hopping J. Every
// formula in the library is homogeneous in energy, so J = 1 reproduces the
// usual Delta_k / J axes.

/// SSH chain: intracell hopping t1 = J(1 + delta), intercell t2 = J(1 - delta).
struct WaveguideParams {
    double J = 1.0;
    double delta = 0.0;
    double omega0 = 0.0;

    double t1() const noexcept { return J * (1.0 + delta); }
    double t2() const noexcept { return J * (1.0 - delta); }
};

/// Driven Lambda emitter. The ground state is the energy reference; the
/// metastable level sits at omega_e - delta_c.
struct EmitterParams {
    double omega_e = 1.5;
    double delta_c = 0.0;
    double omega_rabi = 0.0;
    double g = 0.2;
    int x1 = 20;

    double omega_a() const noexcept { return omega_e - delta_c; }
};

enum class Coupling { A, B, AB };
enum class Band { upper, lower };

/// Sublattice coupling. The emitter couples with g1 = g*alpha to A and with
/// g2 = g*(1 - alpha) to B of the same unit cell.
struct CouplingConfig {
    Coupling variant = Coupling::A;
    double alpha = 1.0;

    static CouplingConfig a() noexcept { return {Coupling::A, 1.0}; }
    static CouplingConfig b() noexcept { return {Coupling::B, 0.0}; }
    static CouplingConfig ab(double alpha) noexcept { return {Coupling::AB, alpha}; }

    double g1(double g) const noexcept { return g * alpha; }
    double g2(double g) const noexcept { return g * (1.0 - alpha); }
};

/// Validated, immutable parameter bundle consumed by every other module.
struct Model {
    WaveguideParams waveguide;
    EmitterParams emitter;
    CouplingConfig coupling;
    double t1 = 0.0;
    double t2 = 0.0;
    double omega_a = 0.0;
    // omega_e outside both passbands is allowed but flagged.
    bool emitter_in_band = false;
};

Model validate(const WaveguideParams& waveguide, const EmitterParams& emitter,
               const CouplingConfig& coupling);

/// Band sign: +1 for the upper band, -1 for the lower band.
constexpr double band_sign(Band band) noexcept { return band == Band::upper ? 1.0 : -1.0; }

std::string_view to_string(Coupling c) noexcept;
std::string_view to_string(Band b) noexcept;
Coupling parse_coupling(std::string_view s);
Band parse_band(std::string_view s);

}  // namespace sshqed
