#include "sshqed/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sshqed/band_structure.hpp"
#include "sshqed/errors.hpp"
#include "sshqed/lattice_oracle.hpp"
#include "sshqed/scattering.hpp"

namespace sshqed {

namespace {

CouplingConfig coupling_for(Coupling c, double alpha) {
    switch (c) {
        case Coupling::A: return CouplingConfig::a();
        case Coupling::B: return CouplingConfig::b();
        case Coupling::AB: return CouplingConfig::ab(alpha);
    }
    return CouplingConfig::a();
}

void stationary_draws(const AgreementOptions& opt, Coupling c, std::mt19937_64& rng,
                      AgreementReport& rep) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uni = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
    for (int d = 0; d < opt.draws_per_config; ++d) {
        WaveguideParams wg;
        wg.delta = (unit(rng) < 0.5 ? -1.0 : 1.0) * uni(0.1, 0.8);
        EmitterParams em;
        em.g = uni(0.05, 0.5);
        em.omega_rabi = d % 5 == 0 ? 0.0 : uni(0.0, 0.5);
        em.delta_c = uni(-0.2, 0.2);
        em.omega_e = uni(0.5, 2.0);
        em.x1 = 5 + static_cast<int>(uni(0.0, 35.0));
        const int cells = em.x1 + 5 + static_cast<int>(uni(0.0, 35.0));
        const Model m = validate(wg, em, coupling_for(c, uni(0.1, 0.9)));

        const Band band = d % 2 == 0 ? Band::upper : Band::lower;
        const BandEdges edges = band_edges(wg);
        const double omega = band_sign(band) * uni(edges.gap_edge + 0.02, edges.outer_edge - 0.02);

        const ScatterPoint pt = scatter(m, omega, band);
        const ScatterSolution num = boundary_matched_solve(omega, cells, m, band);
        rep.max_abs_error_closed_vs_matrix =
            std::max(rep.max_abs_error_closed_vs_matrix, std::abs(pt.t - pt.tL));
        rep.max_abs_error_closed_vs_lattice =
            std::max(rep.max_abs_error_closed_vs_lattice, std::abs(pt.t - num.t));
        rep.max_abs_error_reflection = std::max(rep.max_abs_error_reflection, std::abs(pt.r - num.r));
        ++rep.n_cases;
    }
}

}  // namespace

std::vector<WavepacketCase> default_wavepacket_cases(Coupling c) {
    auto make = [c](double delta, double alpha, double om, double dk) {
        WavepacketCase w;
        w.config = c;
        w.delta = delta;
        w.alpha = alpha;
        w.omega_rabi = om;
        w.delta_k0 = dk;
        return w;
    };
    if (c == Coupling::AB) {
        return {make(-0.5, 0.5, 0.2, 0.0), make(-0.5, 0.5, 0.2, 0.02), make(-0.5, 0.5, 0.0, 0.1)};
    }
    const double alpha = c == Coupling::A ? 1.0 : 0.0;
    return {make(0.5, alpha, 0.4, 0.0), make(0.5, alpha, 0.4, 0.1), make(0.5, alpha, 0.4, -0.1)};
}

AgreementReport run_agreement(const AgreementOptions& opt) {
    AgreementReport rep;
    std::mt19937_64 rng(opt.seed);
    for (Coupling c : {Coupling::A, Coupling::B, Coupling::AB}) stationary_draws(opt, c, rng, rep);
    bool ok = rep.max_abs_error_closed_vs_matrix < opt.stationary_tolerance &&
              rep.max_abs_error_closed_vs_lattice < opt.stationary_tolerance;

    if (opt.wavepacket) {
        const int cells = opt.wavepacket_cells;
        for (Coupling c : {Coupling::A, Coupling::B, Coupling::AB}) {
            for (WavepacketCase w : default_wavepacket_cases(c)) {
                WaveguideParams wg;
                wg.delta = w.delta;
                EmitterParams em;
                em.omega_e = 1.5;
                em.g = 0.2;
                em.omega_rabi = w.omega_rabi;
                em.x1 = cells / 2;
                const Model m = validate(wg, em, coupling_for(c, w.alpha));
                w.k0 = momentum_from_energy(em.omega_e + w.delta_k0, wg);
                const WavepacketRun run = wavepacket_transport(w.k0, opt.sigma_x, cells, m);
                w.T_wp = run.T;
                w.R_wp = run.R;
                w.residual = run.residual;
                w.T_analytic_avg = packet_average(run, [&](double k) {
                    return std::norm(transmittance(m, bloch_point(k, wg).omega));
                });
                w.diff = std::abs(w.T_wp - w.T_analytic_avg);
                ok = ok && w.diff < opt.wavepacket_tolerance;
                rep.wavepacket_cases.push_back(w);
            }
        }
    }
    rep.passed = ok;
    return rep;
}

}  // namespace sshqed
