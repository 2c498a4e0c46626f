#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "sshqed/band_structure.hpp"
#include "sshqed/core_model.hpp"

namespace sshqed {

/// Single-excitation Hamiltonian of a finite open chain of `cells` unit cells
/// with the emitter attached at cell x1 (1-based). Basis order:
/// A_1, B_1, ..., A_N, B_N, e, a.
struct LatticeHamiltonian {
    Eigen::MatrixXd matrix;
    int cells = 0;
    int x1 = 0;
    CouplingConfig coupling;

    static int site_a(int j) noexcept { return 2 * (j - 1); }
    static int site_b(int j) noexcept { return 2 * (j - 1) + 1; }
    int level_e() const noexcept { return 2 * cells; }
    int level_a() const noexcept { return 2 * cells + 1; }
    int dim() const noexcept { return 2 * cells + 2; }
};

/// With require_bulk the chain must have at least 8 cells and 2 <= x1 <= N-2.
/// Without it only 1 <= x1 <= N is checked.
LatticeHamiltonian build_hamiltonian(int cells, const Model& m, bool require_bulk = true);

struct ScatterSolution {
    cplx t;
    cplx r;
    double residual = 0.0;
};

/// Exact stationary scattering state on the finite chain. Cell 1 carries
/// e^{ikj} plus r e^{-ikj}, cell N carries t e^{ikj} (same ansatz as the
/// transfer-matrix formalism); every other equation of motion is imposed.
ScatterSolution boundary_matched_solve(double omega, int cells, const Model& m,
                                       Band band = Band::upper);

/// Spectral propagator exp(-iHt) from one full diagonalisation.
class Propagator {
public:
    explicit Propagator(const LatticeHamiltonian& H);

    Eigen::VectorXcd evolve(const Eigen::VectorXcd& state, double t) const;
    Eigen::VectorXcd to_eigenbasis(const Eigen::VectorXcd& state) const;
    Eigen::VectorXcd from_eigenbasis(const Eigen::VectorXcd& coeffs, double t) const;

    const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }
    const Eigen::MatrixXd& eigenvectors() const noexcept { return vectors_; }

private:
    Eigen::VectorXd values_;
    Eigen::MatrixXd vectors_;
};

Eigen::VectorXcd evolve(const Eigen::VectorXcd& state, const LatticeHamiltonian& H, double t);

struct WavepacketOptions {
    int momentum_samples = 801;
    double start_sigmas = 3.0;   // packet centre sits this many sigma_x left of x1
    double window_sigmas = 2.0;  // "near the emitter" half-width
    double check_interval = 5.0;
    double clear_threshold = 1e-6;
    int edge_cells = 10;
};

struct WavepacketRun {
    double k0 = 0.0;
    double sigma_x = 0.0;
    int cells = 0;
    int x1 = 0;
    double time = 0.0;
    double T = 0.0;
    double R = 0.0;
    double residual = 0.0;          // population left near the emitter
    double bound_population = 0.0;  // weight on out-of-band eigenstates
    double norm_drift = 0.0;
    std::vector<double> momenta;    // |k| of each packet component
    std::vector<double> weights;    // normalised |amplitude|^2
};

/// Gaussian packet on the upper band moving towards +j, carrier |k| = k0.
/// Amplitudes exp(-kappa^2 sigma_x^2 / 2) (sigma_x sigma_k = 1).
WavepacketRun wavepacket_transport(double k0, double sigma_x, int cells, const Model& m,
                                   const WavepacketOptions& opt = {});

/// Sum of weights[i] * f(momenta[i]).
template <class F>
double packet_average(const WavepacketRun& run, F&& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < run.momenta.size(); ++i) acc += run.weights[i] * f(run.momenta[i]);
    return acc;
}

}  // namespace sshqed
