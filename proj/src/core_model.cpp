#include "sshqed/core_model.hpp"

#include <cmath>
#include <string>

#include "sshqed/errors.hpp"

namespace sshqed {

namespace {

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) {
        throw ValidationError(field, std::string(field) + " must be finite");
    }
}

}  // namespace

Model validate(const WaveguideParams& waveguide, const EmitterParams& emitter,
               const CouplingConfig& coupling) {
    require_finite(waveguide.J, "J");
    require_finite(waveguide.delta, "delta");
    require_finite(waveguide.omega0, "omega0");
    require_finite(emitter.omega_e, "omega_e");
    require_finite(emitter.delta_c, "delta_c");
    require_finite(emitter.omega_rabi, "omega_rabi");
    require_finite(emitter.g, "g");
    require_finite(coupling.alpha, "alpha");

    if (waveguide.J <= 0.0) {
        throw ValidationError("J", "J must be positive");
    }
    if (std::abs(waveguide.delta) > 1.0) {
        throw ValidationError("delta", "delta out of range [-1, 1]");
    }
    if (waveguide.omega0 != 0.0) {
        throw UnsupportedError("omega0 != 0 breaks chiral symmetry and is not supported");
    }
    if (emitter.omega_rabi < 0.0) {
        throw ValidationError("omega_rabi", "omega_rabi must be non-negative");
    }
    if (emitter.g < 0.0) {
        throw ValidationError("g", "g must be non-negative");
    }
    if (coupling.alpha < 0.0 || coupling.alpha > 1.0) {
        throw ValidationError("alpha", "alpha out of range [0, 1]");
    }
    switch (coupling.variant) {
        case Coupling::A:
            if (coupling.alpha != 1.0) {
                throw ValidationError("alpha", "config A requires alpha = 1");
            }
            break;
        case Coupling::B:
            if (coupling.alpha != 0.0) {
                throw ValidationError("alpha", "config B requires alpha = 0");
            }
            break;
        case Coupling::AB:
            if (coupling.alpha <= 0.0 || coupling.alpha >= 1.0) {
                throw ValidationError("alpha", "config AB requires 0 < alpha < 1");
            }
            break;
    }

    Model m;
    m.waveguide = waveguide;
    m.emitter = emitter;
    m.coupling = coupling;
    m.t1 = waveguide.t1();
    m.t2 = waveguide.t2();
    m.omega_a = emitter.omega_a();
    const double w = std::abs(emitter.omega_e);
    m.emitter_in_band = w >= 2.0 * std::abs(waveguide.delta) * waveguide.J && w <= 2.0 * waveguide.J;
    return m;
}

std::string_view to_string(Coupling c) noexcept {
    switch (c) {
        case Coupling::A: return "A";
        case Coupling::B: return "B";
        case Coupling::AB: return "AB";
    }
    return "?";
}

std::string_view to_string(Band b) noexcept { return b == Band::upper ? "upper" : "lower"; }

Coupling parse_coupling(std::string_view s) {
    if (s == "A") return Coupling::A;
    if (s == "B") return Coupling::B;
    if (s == "AB") return Coupling::AB;
    throw ValidationError("config", "config must be one of A, B, AB (got '" + std::string(s) + "')");
}

Band parse_band(std::string_view s) {
    if (s == "upper") return Band::upper;
    if (s == "lower") return Band::lower;
    throw ValidationError("band", "band must be upper or lower (got '" + std::string(s) + "')");
}

}  // namespace sshqed
