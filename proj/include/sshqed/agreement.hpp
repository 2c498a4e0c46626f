#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sshqed/core_model.hpp"

namespace sshqed {

struct AgreementOptions {
    int draws_per_config = 20;
    std::uint64_t seed = 20240611;
    bool wavepacket = true;
    int wavepacket_cells = 400;
    double sigma_x = 20.0;
    double stationary_tolerance = 1e-10;
    double wavepacket_tolerance = 2e-2;
};

struct WavepacketCase {
    Coupling config = Coupling::A;
    double delta = 0.0;
    double alpha = 1.0;
    double omega_rabi = 0.0;
    double delta_k0 = 0.0;
    double k0 = 0.0;
    double T_analytic_avg = 0.0;
    double T_wp = 0.0;
    double R_wp = 0.0;
    double residual = 0.0;
    double diff = 0.0;
};

struct AgreementReport {
    int n_cases = 0;
    double max_abs_error_closed_vs_matrix = 0.0;
    double max_abs_error_closed_vs_lattice = 0.0;
    double max_abs_error_reflection = 0.0;
    std::vector<WavepacketCase> wavepacket_cases;
    bool passed = false;
};

/// The three wavepacket carrier settings used for one coupling variant.
std::vector<WavepacketCase> default_wavepacket_cases(Coupling c);

AgreementReport run_agreement(const AgreementOptions& opt = {});

}  // namespace sshqed
