#include "sshqed/lattice_oracle.hpp"

#include <cmath>
#include <string>

#include "sshqed/errors.hpp"

namespace sshqed {

namespace {

constexpr cplx I{0.0, 1.0};

}  // namespace

LatticeHamiltonian build_hamiltonian(int cells, const Model& m, bool require_bulk) {
    const int x1 = m.emitter.x1;
    if (cells < 1) throw ValidationError("cells", "chain needs at least one cell");
    if (require_bulk) {
        if (cells < 8) throw ValidationError("cells", "chain needs at least 8 cells");
        if (x1 < 2 || x1 > cells - 2) {
            throw PlacementError("emitter cell " + std::to_string(x1) + " is not in the bulk of a " +
                                 std::to_string(cells) + "-cell chain");
        }
    } else if (x1 < 1 || x1 > cells) {
        throw PlacementError("emitter cell " + std::to_string(x1) + " is off the chain");
    }

    LatticeHamiltonian H;
    H.cells = cells;
    H.x1 = x1;
    H.coupling = m.coupling;
    H.matrix = Eigen::MatrixXd::Zero(H.dim(), H.dim());
    auto link = [&](int i, int j, double v) {
        H.matrix(i, j) = v;
        H.matrix(j, i) = v;
    };
    for (int j = 1; j <= cells; ++j) {
        link(H.site_a(j), H.site_b(j), -m.t1);
        if (j < cells) link(H.site_b(j), H.site_a(j + 1), -m.t2);
        H.matrix(H.site_a(j), H.site_a(j)) = m.waveguide.omega0;
        H.matrix(H.site_b(j), H.site_b(j)) = m.waveguide.omega0;
    }
    const int e = H.level_e();
    const int a = H.level_a();
    H.matrix(e, e) = m.emitter.omega_e;
    H.matrix(a, a) = m.emitter.omega_a();
    link(e, a, 0.5 * m.emitter.omega_rabi);
    const double g1 = m.coupling.g1(m.emitter.g);
    const double g2 = m.coupling.g2(m.emitter.g);
    if (g1 != 0.0) link(e, H.site_a(x1), g1);
    if (g2 != 0.0) link(e, H.site_b(x1), g2);
    return H;
}

ScatterSolution boundary_matched_solve(double omega, int cells, const Model& m, Band band) {
    const int x1 = m.emitter.x1;
    if (x1 - 1 < 3 || cells - x1 < 3) {
        throw PlacementError("emitter must sit at least 3 cells from both chain ends");
    }
    const LatticeHamiltonian H = build_hamiltonian(cells, m);
    const double k = momentum_from_energy(omega, m.waveguide, band);
    const BlochPoint bp = bloch_point(k, m.waveguide);
    const double s = band_sign(band);

    // Drop the metastable level when it is decoupled.
    const bool with_a = m.emitter.omega_rabi != 0.0;
    const int n_field = 2 * cells + 1 + (with_a ? 1 : 0);
    const int ir = n_field;
    const int it = n_field + 1;
    const int n = n_field + 2;

    // Plane waves on (A, B) of cell j.
    auto fwd_a = [&](int j) { return s * std::exp(I * (k * j + bp.phi)); };
    auto fwd_b = [&](int j) { return std::exp(I * (k * j)); };
    auto bwd_a = [&](int j) { return s * std::exp(-I * (k * j + bp.phi)); };
    auto bwd_b = [&](int j) { return std::exp(-I * (k * j)); };

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    int row = 0;

    // Cell 1: u = f+ + r f-.
    M(row, H.site_a(1)) = 1.0;
    M(row, ir) = -bwd_a(1);
    rhs(row++) = fwd_a(1);
    M(row, H.site_b(1)) = 1.0;
    M(row, ir) = -bwd_b(1);
    rhs(row++) = fwd_b(1);
    // Cell N: u = t f+.
    M(row, H.site_a(cells)) = 1.0;
    M(row, it) = -fwd_a(cells);
    rhs(row++) = 0.0;
    M(row, H.site_b(cells)) = 1.0;
    M(row, it) = -fwd_b(cells);
    rhs(row++) = 0.0;

    // (H - omega) psi = 0 on every row except A_1 and B_N, whose missing
    // neighbours are supplied by the ansatz.
    for (int i = 0; i < n_field; ++i) {
        if (i == H.site_a(1) || i == H.site_b(cells)) continue;
        for (int j = 0; j < n_field; ++j) M(row, j) = H.matrix(i, j);
        M(row, i) -= omega;
        ++row;
    }

    Eigen::FullPivLU<Eigen::MatrixXcd> lu(M);
    if (!lu.isInvertible()) {
        throw SingularSystemError("boundary-matched system is singular at omega = " +
                                  std::to_string(omega));
    }
    const Eigen::VectorXcd x = lu.solve(rhs);

    // Equation-of-motion violation on the physical interior rows.
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(H.dim());
    psi.head(n_field) = x.head(n_field);
    const Eigen::VectorXcd eom = H.matrix * psi - omega * psi;
    double residual = 0.0;
    for (int i = 0; i < H.dim(); ++i) {
        if (i == H.site_a(1) || i == H.site_b(cells)) continue;
        if (!with_a && i == H.level_a()) continue;
        residual = std::max(residual, std::abs(eom(i)));
    }
    residual = std::max(residual, (M * x - rhs).cwiseAbs().maxCoeff());
    if (!std::isfinite(residual)) {
        throw SingularSystemError("boundary-matched solution is not finite");
    }
    return {x(it), x(ir), residual};
}

Propagator::Propagator(const LatticeHamiltonian& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.matrix);
    if (es.info() != Eigen::Success) throw IntegrationError("diagonalisation failed");
    values_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
}

Eigen::VectorXcd Propagator::to_eigenbasis(const Eigen::VectorXcd& state) const {
    const Eigen::VectorXd re = vectors_.transpose() * state.real();
    const Eigen::VectorXd im = vectors_.transpose() * state.imag();
    Eigen::VectorXcd c(re.size());
    for (Eigen::Index i = 0; i < re.size(); ++i) c(i) = {re(i), im(i)};
    return c;
}

Eigen::VectorXcd Propagator::from_eigenbasis(const Eigen::VectorXcd& coeffs, double t) const {
    Eigen::VectorXcd rotated(coeffs.size());
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        rotated(i) = coeffs(i) * std::exp(-I * (values_(i) * t));
    }
    const Eigen::VectorXd re = vectors_ * rotated.real();
    const Eigen::VectorXd im = vectors_ * rotated.imag();
    Eigen::VectorXcd out(re.size());
    for (Eigen::Index i = 0; i < re.size(); ++i) out(i) = {re(i), im(i)};
    return out;
}

Eigen::VectorXcd Propagator::evolve(const Eigen::VectorXcd& state, double t) const {
    if (state.size() != values_.size()) {
        throw ValidationError("state", "state dimension does not match the Hamiltonian");
    }
    const double n0 = state.norm();
    if (std::abs(n0 - 1.0) > 1e-8) throw ValidationError("state", "state is not normalised");
    if (t == 0.0) return state;
    Eigen::VectorXcd out = from_eigenbasis(to_eigenbasis(state), t);
    if (std::abs(out.norm() - n0) > 1e-8) {
        throw IntegrationError("norm drift exceeds 1e-8");
    }
    return out;
}

Eigen::VectorXcd evolve(const Eigen::VectorXcd& state, const LatticeHamiltonian& H, double t) {
    return Propagator(H).evolve(state, t);
}

WavepacketRun wavepacket_transport(double k0, double sigma_x, int cells, const Model& m,
                                   const WavepacketOptions& opt) {
    if (!(k0 > 0.2 && k0 < M_PI - 0.2)) {
        throw ValidationError("k0", "carrier momentum must lie in (0.2, pi - 0.2)");
    }
    if (!(sigma_x > 0.0)) throw ValidationError("sigma_x", "packet width must be positive");
    if (cells < 10.0 * sigma_x) throw ValidationError("cells", "chain shorter than 10 sigma_x");
    if (opt.momentum_samples < 3) throw ValidationError("momentum_samples", "need at least 3");

    const int x1 = m.emitter.x1;
    const double j0 = x1 - opt.start_sigmas * sigma_x;
    if (j0 - 3.0 * sigma_x < 1.0) {
        throw ChainTooShortError("packet does not fit left of the emitter");
    }
    const LatticeHamiltonian H = build_hamiltonian(cells, m);

    WavepacketRun run;
    run.k0 = k0;
    run.sigma_x = sigma_x;
    run.cells = cells;
    run.x1 = x1;

    // e^{ikj} with k in (-pi, 0) moves towards +j on the upper band.
    const double sigma_k = 1.0 / sigma_x;
    const int ns = opt.momentum_samples;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(H.dim());
    double wsum = 0.0;
    for (int i = 0; i < ns; ++i) {
        const double kappa = -6.0 * sigma_k + 12.0 * sigma_k * i / (ns - 1);
        const double kk = k0 + kappa;
        if (!(kk > 0.0 && kk < M_PI)) continue;
        const double amp = std::exp(-0.5 * kappa * kappa * sigma_x * sigma_x);
        const BlochEigenvectors ev = bloch_eigenvectors(-kk, m.waveguide);
        for (int j = 1; j <= cells; ++j) {
            const cplx wave = amp * std::exp(I * (-kk * (j - j0)));
            psi(H.site_a(j)) += wave * ev.upper[0];
            psi(H.site_b(j)) += wave * ev.upper[1];
        }
        run.momenta.push_back(kk);
        run.weights.push_back(amp * amp);
        wsum += amp * amp;
    }
    for (double& w : run.weights) w /= wsum;
    psi /= psi.norm();

    const Propagator prop(H);
    Eigen::VectorXcd c = prop.to_eigenbasis(psi);

    // Bound and edge states never leave the emitter region; split them off.
    const BandEdges edges = band_edges(m.waveguide);
    const double margin = 1e-9 * m.waveguide.J;
    Eigen::VectorXcd c_bound = Eigen::VectorXcd::Zero(c.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        const double e = std::abs(prop.eigenvalues()(i));
        if (e < edges.gap_edge - margin || e > edges.outer_edge + margin) {
            c_bound(i) = c(i);
            c(i) = 0.0;
        }
    }
    run.bound_population = c_bound.squaredNorm();

    const int lo = static_cast<int>(std::floor(x1 - opt.window_sigmas * sigma_x));
    const int hi = static_cast<int>(std::ceil(x1 + opt.window_sigmas * sigma_x));
    auto cell_pop = [&](const Eigen::VectorXcd& v, int j) {
        return std::norm(v(H.site_a(j))) + std::norm(v(H.site_b(j)));
    };

    const double speed = std::abs(group_velocity(k0, m.waveguide).value);
    const double t_max = 4.0 * cells / std::max(speed, 1e-3 * m.waveguide.J);

    Eigen::VectorXcd state;
    double t = 0.0;
    while (true) {
        state = prop.from_eigenbasis(c, t);
        double edge = 0.0;
        for (int j = 1; j <= opt.edge_cells; ++j) {
            edge += cell_pop(state, j) + cell_pop(state, cells + 1 - j);
        }
        double near = 0.0;
        for (int j = std::max(1, lo); j <= std::min(cells, hi); ++j) near += cell_pop(state, j);
        const double emitter = std::norm(state(H.level_e())) + std::norm(state(H.level_a()));
        if (edge > opt.clear_threshold) {
            throw ChainTooShortError("packet reached the chain end before clearing the emitter");
        }
        if (t > 0.0 && near + emitter < opt.clear_threshold) break;
        t += opt.check_interval;
        if (t > t_max) {
            throw ChainTooShortError("packet did not clear the emitter within the run time");
        }
    }
    run.time = t;

    double left = 0.0, right = 0.0, mid = 0.0;
    for (int j = 1; j <= cells; ++j) {
        const double p = cell_pop(state, j);
        if (j < x1) {
            left += p;
        } else if (j > x1) {
            right += p;
        } else {
            mid += p;
        }
    }
    const double emitter = std::norm(state(H.level_e())) + std::norm(state(H.level_a()));
    run.T = right;
    run.R = left;
    run.residual = mid + emitter;

    const Eigen::VectorXcd full = state + prop.from_eigenbasis(c_bound, t);
    run.norm_drift = std::abs(full.squaredNorm() - 1.0);
    if (run.norm_drift > 1e-8) throw IntegrationError("norm drift exceeds 1e-8");
    return run;
}

}  // namespace sshqed
