#include "sshqed/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <thread>

#include "sshqed/errors.hpp"
#include "sshqed/scattering.hpp"

namespace sshqed {

namespace {

constexpr cplx I{0.0, 1.0};

void require_interior(double k) {
    if (!(k > 0.0 && k < M_PI) || std::sin(k) < 1e-15) {
        throw EdgeSingularityError("sin k = 0 at k = " + std::to_string(k));
    }
}

// c = g^2 omega_k A / (4 t1 t2 sin k)
cplx pole_offset(const Model& m, double k) {
    require_interior(k);
    const BlochPoint bp = bloch_point(k, m.waveguide);
    const cplx A = mixing_factor(m.coupling.alpha, bp.phi);
    const double g = m.emitter.g;
    return g * g * bp.omega * A / (4.0 * m.t1 * m.t2 * std::sin(k));
}

std::optional<SpectrumRecord> evaluate(const Model& m, double dk, Band band) {
    const double omega = m.emitter.omega_e + dk;
    ScatterPoint pt;
    try {
        pt = scatter(m, omega, band);
    } catch (const OutOfBandError&) {
        return std::nullopt;
    } catch (const EdgeSingularityError&) {
        return std::nullopt;
    }
    SpectrumRecord rec;
    rec.delta_k = dk;
    rec.omega_rabi = m.emitter.omega_rabi;
    rec.t = pt.t;
    rec.r = pt.r;
    rec.tL = pt.tL;
    rec.tR = pt.tR;
    rec.T = std::norm(pt.t);
    rec.R = std::norm(pt.r);
    rec.singular = pt.singular;
    return rec;
}

void check_grid(std::span<const double> grid, const char* name) {
    if (grid.size() < 2) throw ValidationError(name, "grid needs at least 2 points");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) throw ValidationError(name, "grid value is not finite");
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw ValidationError(name, "grid must be strictly increasing");
        }
    }
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Evaluates one Omega row into slots; order is fixed by index, not by thread.
void fill_row(const Model& m, std::span<const double> dk, Band band, int threads,
              std::vector<std::optional<SpectrumRecord>>& slots) {
    slots.assign(dk.size(), std::nullopt);
    const int n = static_cast<int>(dk.size());
    const int nt = std::clamp(threads, 1, std::max(1, n));
    if (nt == 1) {
        for (int i = 0; i < n; ++i) slots[i] = evaluate(m, dk[i], band);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(nt);
    for (int w = 0; w < nt; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += nt) slots[i] = evaluate(m, dk[i], band);
        });
    }
}

// Linear-interpolated crossing of `level` walking from i toward the edge in
// direction dir. Returns the grid end if the level is never reached.
double crossing(std::span<const double> x, std::span<const double> T, std::size_t i, int dir,
                double level, bool below) {
    auto past = [&](double v) { return below ? v >= level : v <= level; };
    std::size_t j = i;
    while (true) {
        if (dir < 0 && j == 0) return x.front();
        if (dir > 0 && j + 1 == x.size()) return x.back();
        const std::size_t next = dir < 0 ? j - 1 : j + 1;
        if (past(T[next])) {
            const double dT = T[next] - T[j];
            if (dT == 0.0) return x[next];
            return x[j] + (level - T[j]) * (x[next] - x[j]) / dT;
        }
        j = next;
    }
}

// Vertex of the parabola through three neighbouring samples, kept inside them.
double refine_extremum(std::span<const double> x, std::span<const double> T, std::size_t i) {
    const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
    const double y0 = T[i - 1], y1 = T[i], y2 = T[i + 1];
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double curv = (d12 - d01) / (x2 - x0);
    if (curv == 0.0 || !std::isfinite(curv)) return x1;
    const double v = 0.5 * (x0 + x1) - d01 / (2.0 * curv);
    return std::clamp(v, x0, x2);
}

LineshapeFeature make_feature(std::span<const double> x, std::span<const double> T, std::size_t i,
                              FeatureKind kind) {
    LineshapeFeature f;
    f.kind = kind;
    f.position = refine_extremum(x, T, i);
    double level;
    bool below;
    if (kind == FeatureKind::dip) {
        f.depth = 1.0 - T[i];
        level = 0.5 * (1.0 + T[i]);
        below = true;
    } else {
        f.depth = T[i];
        level = 0.5 * T[i];
        below = false;
    }
    const double xl = crossing(x, T, i, -1, level, below);
    const double xr = crossing(x, T, i, +1, level, below);
    f.fwhm = xr - xl;
    const double left = f.position - xl;
    const double right = xr - f.position;
    f.asymmetry = right > 0.0 && left > 0.0 ? left / right : 1.0;
    return f;
}

}  // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::lorentzian: return "lorentzian";
        case Regime::eit: return "eit";
        case Regime::ats: return "ats";
    }
    return "unknown";
}

std::string to_string(FeatureKind k) { return k == FeatureKind::dip ? "dip" : "peak"; }

PolePair poles(const Model& m, double k) {
    if (m.emitter.delta_c != 0.0) {
        throw UnsupportedError("pole closed form requires delta_c = 0");
    }
    const cplx c = pole_offset(m, k);
    const double half = 0.5 * m.emitter.omega_rabi;
    const cplx root = std::sqrt(cplx(half * half, 0.0) - c * c);
    return {I * c + root, I * c - root};
}

RegimeLabel classify_regime(const Model& m, double k) {
    const cplx c = pole_offset(m, k);
    RegimeLabel out;
    const double scale = 2.0 * std::abs(c);
    if (m.emitter.omega_rabi == 0.0) {
        out.ratio = 0.0;
    } else if (scale == 0.0) {
        out.ratio = INFINITY;
    } else {
        out.ratio = m.emitter.omega_rabi / scale;
    }
    if (out.ratio < 0.25) {
        out.label = Regime::lorentzian;
    } else if (out.ratio <= 4.0) {
        out.label = Regime::eit;
    } else {
        out.label = Regime::ats;
    }
    return out;
}

double lamb_shift(double g, double alpha, const WaveguideParams& p) {
    const double mix = alpha * (1.0 - alpha);
    if (mix == 0.0) return 0.0;
    return g * g * mix / p.t1();
}

std::pair<double, double> ats_dip_positions(const Model& m) {
    const double centre = 0.5 * lamb_shift(m.emitter.g, m.coupling.alpha, m.waveguide);
    const double half = 0.5 * m.emitter.omega_rabi;
    return {centre - half, centre + half};
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) throw ValidationError("steps", "need at least 2 grid points");
    if (!(hi > lo)) throw ValidationError("range", "grid maximum must exceed minimum");
    std::vector<double> out(static_cast<std::size_t>(n));
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) out[i] = lo + step * i;
    out.back() = hi;
    return out;
}

std::vector<SpectrumRecord> SpectrumGrid::row(double omega_rabi) const {
    std::vector<SpectrumRecord> out;
    for (const auto& r : records) {
        if (r.omega_rabi == omega_rabi) out.push_back(r);
    }
    return out;
}

SpectrumGrid sweep_spectrum(const Model& m, std::span<const double> dk_grid, Band band,
                            int threads) {
    const double omega = m.emitter.omega_rabi;
    return sweep_contour(m, dk_grid, std::span<const double>(&omega, 1), band, threads);
}

SpectrumGrid sweep_contour(const Model& m, std::span<const double> dk_grid,
                           std::span<const double> omega_grid, Band band, int threads) {
    check_grid(dk_grid, "dk_grid");
    if (omega_grid.empty()) throw ValidationError("omega_grid", "grid is empty");
    if (omega_grid.size() > 1) check_grid(omega_grid, "omega_grid");
    const int nt = resolve_threads(threads);

    SpectrumGrid grid;
    grid.dk_axis.assign(dk_grid.begin(), dk_grid.end());
    if (omega_grid.size() > 1) grid.omega_axis.assign(omega_grid.begin(), omega_grid.end());

    std::vector<std::optional<SpectrumRecord>> slots;
    for (double om : omega_grid) {
        Model row_model = m;
        row_model.emitter.omega_rabi = om;
        row_model = validate(row_model.waveguide, row_model.emitter, row_model.coupling);
        fill_row(row_model, dk_grid, band, nt, slots);
        for (auto& s : slots) {
            if (s) {
                grid.records.push_back(*s);
            } else {
                ++grid.skipped;
            }
        }
    }
    if (grid.records.empty()) {
        throw EmptyGridError("every grid point lies outside the selected band");
    }
    return grid;
}

std::vector<LineshapeFeature> extract_features(std::span<const double> x,
                                               std::span<const double> T) {
    if (x.size() != T.size()) throw ValidationError("spectrum", "axis and values differ in length");
    if (x.size() < 3) throw ValidationError("spectrum", "need at least 3 points");
    std::vector<LineshapeFeature> dips;
    std::vector<std::size_t> dip_index;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        if (T[i] < 0.5 && T[i] < T[i - 1] && T[i] <= T[i + 1]) {
            dips.push_back(make_feature(x, T, i, FeatureKind::dip));
            dip_index.push_back(i);
        }
    }
    std::vector<LineshapeFeature> out = dips;
    if (dip_index.size() >= 2) {
        for (std::size_t i = dip_index.front() + 1; i < dip_index.back(); ++i) {
            if (T[i] > 0.5 && T[i] > T[i - 1] && T[i] >= T[i + 1]) {
                out.push_back(make_feature(x, T, i, FeatureKind::peak));
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.position < b.position;
    });
    return out;
}

std::vector<LineshapeFeature> extract_features(std::span<const SpectrumRecord> row) {
    std::vector<double> x, T;
    x.reserve(row.size());
    T.reserve(row.size());
    for (const auto& r : row) {
        x.push_back(r.delta_k);
        T.push_back(r.T);
    }
    return extract_features(x, T);
}

}  // namespace sshqed
