#ifndef QCHAOS_SCHRODINGER_HPP
#define QCHAOS_SCHRODINGER_HPP

#include <fftw3.h>

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "qchaos/errors.hpp"
#include "qchaos/grid.hpp"
#include "qchaos/model.hpp"
#include "qchaos/parallel.hpp"

namespace qchaos {

namespace detail {
// FFTW planning is not thread-safe; execution on distinct buffers is.
inline std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}
} // namespace detail

// In-place DST-I over the interior block of a Dirichlet grid. The sine modes
// diagonalize the kinetic term exactly, so the propagator below is spectrally
// accurate in space and limited only by the operator splitting in time.
class SineTransform2D {
  public:
    SineTransform2D(int mx, int my) : mx_(mx), my_(my) {
        buf_ = static_cast<double*>(fftw_malloc(sizeof(double) * mx * my));
        if (!buf_) throw numeric_error("fftw_malloc failed");
        std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
        // FFTW_ESTIMATE keeps plan choice deterministic run to run.
        plan_ = fftw_plan_r2r_2d(mx, my, buf_, buf_, FFTW_RODFT00, FFTW_RODFT00,
                                 FFTW_ESTIMATE);
        if (!plan_) {
            fftw_free(buf_);
            throw numeric_error("fftw plan creation failed");
        }
    }

    SineTransform2D(const SineTransform2D&) = delete;
    SineTransform2D& operator=(const SineTransform2D&) = delete;

    ~SineTransform2D() {
        std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
        fftw_destroy_plan(plan_);
        fftw_free(buf_);
    }

    double* data() { return buf_; }
    int mx() const { return mx_; }
    int my() const { return my_; }

    void execute() { fftw_execute_r2r(plan_, buf_, buf_); }

    // RODFT00 applied twice multiplies by 2(m+1) per dimension.
    double round_trip_scale() const {
        return 1.0 / (4.0 * (mx_ + 1.0) * (my_ + 1.0));
    }

  private:
    int mx_, my_;
    double* buf_;
    fftw_plan plan_;
};

// Which eigenvalues the sine modes carry in the kinetic step. `spectral` is
// the continuum dispersion (spectrally accurate for smooth fields);
// `finite_difference` exponentiates the 5-point Laplacian exactly, which keeps
// the step local on the lattice and matches a tridiagonal dense Hamiltonian
// bit for bit.
enum class KineticDispersion { spectral, finite_difference };

// Workspace bound to one grid + action: applies exp(-dt H) steps (Strang
// splitting: half potential, full kinetic, half potential) and plain H for
// Rayleigh quotients. Not thread-safe; use one instance per evolution.
class ImaginaryPropagator {
  public:
    ImaginaryPropagator(const ActionParams& action, const Grid2D& grid, double dt,
                        KineticDispersion dispersion = KineticDispersion::spectral)
        : grid_(grid), dt_(dt), dst_(grid.nx - 2, grid.ny - 2) {
        action.validate();
        if (!(dt > 0.0)) throw config_error("dt must be positive");
        const int nx = grid.nx, ny = grid.ny;
        exp_half_v_.resize(static_cast<std::size_t>(nx) * ny);
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j)
                exp_half_v_[static_cast<std::size_t>(i) * ny + j] =
                    std::exp(-0.5 * dt * eval_potential(action.coeffs, grid.x(i), grid.y(j)));
        const int mx = nx - 2, my = ny - 2;
        const double lx = grid.x_max - grid.x_min;
        const double ly = grid.y_max - grid.y_min;
        qx2_.resize(mx);
        qy2_.resize(my);
        if (dispersion == KineticDispersion::spectral) {
            for (int k = 0; k < mx; ++k) {
                const double q = std::numbers::pi * (k + 1) / lx;
                qx2_[k] = q * q;
            }
            for (int k = 0; k < my; ++k) {
                const double q = std::numbers::pi * (k + 1) / ly;
                qy2_[k] = q * q;
            }
        } else {
            const double dx = grid.dx(), dy = grid.dy();
            for (int k = 0; k < mx; ++k) {
                const double s = std::sin(0.5 * std::numbers::pi * (k + 1) / (nx - 1));
                qx2_[k] = 4.0 * s * s / (dx * dx);
            }
            for (int k = 0; k < my; ++k) {
                const double s = std::sin(0.5 * std::numbers::pi * (k + 1) / (ny - 1));
                qy2_[k] = 4.0 * s * s / (dy * dy);
            }
        }
        const double scale = dst_.round_trip_scale();
        kin_factor_.resize(static_cast<std::size_t>(mx) * my);
        for (int kx = 0; kx < mx; ++kx)
            for (int ky = 0; ky < my; ++ky)
                kin_factor_[static_cast<std::size_t>(kx) * my + ky] =
                    std::exp(-dt * (qx2_[kx] + qy2_[ky]) / (2.0 * action.mass)) * scale;
        mass_ = action.mass;
        coeffs_ = action.coeffs;
    }

    const Grid2D& grid() const { return grid_; }
    double dt() const { return dt_; }

    void step(ScalarField2D& f) {
        multiply_exp_half_v(f);
        kinetic_spectral(f, kin_factor_.data());
        multiply_exp_half_v(f);
    }

    // out = H f with H = -(1/2m) Laplacian + V, Dirichlet walls.
    void apply_hamiltonian(const ScalarField2D& f, ScalarField2D& out) {
        const int ny = grid_.ny;
        const int mx = dst_.mx(), my = dst_.my();
        double* buf = dst_.data();
        for (int i = 0; i < mx; ++i)
            for (int j = 0; j < my; ++j)
                buf[static_cast<std::size_t>(i) * my + j] = f.at(i + 1, j + 1);
        dst_.execute();
        const double scale = dst_.round_trip_scale();
        for (int kx = 0; kx < mx; ++kx)
            for (int ky = 0; ky < my; ++ky)
                buf[static_cast<std::size_t>(kx) * my + ky] *=
                    (qx2_[kx] + qy2_[ky]) / (2.0 * mass_) * scale;
        dst_.execute();
        out = ScalarField2D(grid_);
        for (int i = 0; i < mx; ++i)
            for (int j = 0; j < my; ++j)
                out.at(i + 1, j + 1) = buf[static_cast<std::size_t>(i) * my + j];
        for (int i = 0; i < grid_.nx; ++i)
            for (int j = 0; j < ny; ++j)
                out.at(i, j) += eval_potential(coeffs_, grid_.x(i), grid_.y(j)) * f.at(i, j);
    }

  private:
    void multiply_exp_half_v(ScalarField2D& f) {
        const std::size_t n = f.values.size();
        for (std::size_t i = 0; i < n; ++i) f.values[i] *= exp_half_v_[i];
    }

    void kinetic_spectral(ScalarField2D& f, const double* factor) {
        const int my = dst_.my(), mx = dst_.mx();
        double* buf = dst_.data();
        for (int i = 0; i < mx; ++i)
            for (int j = 0; j < my; ++j)
                buf[static_cast<std::size_t>(i) * my + j] = f.at(i + 1, j + 1);
        dst_.execute();
        const std::size_t n = static_cast<std::size_t>(mx) * my;
        for (std::size_t k = 0; k < n; ++k) buf[k] *= factor[k];
        dst_.execute();
        for (int i = 0; i < mx; ++i)
            for (int j = 0; j < my; ++j)
                f.at(i + 1, j + 1) = buf[static_cast<std::size_t>(i) * my + j];
        // Dirichlet walls stay exactly zero.
        for (int i = 0; i < grid_.nx; ++i) {
            f.at(i, 0) = 0.0;
            f.at(i, grid_.ny - 1) = 0.0;
        }
        for (int j = 0; j < grid_.ny; ++j) {
            f.at(0, j) = 0.0;
            f.at(grid_.nx - 1, j) = 0.0;
        }
    }

    Grid2D grid_;
    double dt_;
    double mass_;
    PotentialCoeffs coeffs_;
    SineTransform2D dst_;
    std::vector<double> exp_half_v_;
    std::vector<double> qx2_, qy2_;
    std::vector<double> kin_factor_;
};

// e^{-HT} applied to `field`, no normalization. Throws numeric_error when the
// field magnitude leaves the representable range; callers that evolve for long
// times should renormalize and track the log scale themselves.
inline ScalarField2D evolve_imaginary(const ScalarField2D& field, const ActionParams& action,
                                      double T, double dt,
                                      KineticDispersion dispersion = KineticDispersion::spectral) {
    if (!(dt > 0.0) || !(T >= dt)) throw config_error("need dt > 0 and T >= dt");
    if (!field.finite()) throw numeric_error("initial field is not finite");
    const long steps = std::lround(T / dt);
    const double dt_eff = T / static_cast<double>(steps);
    ImaginaryPropagator prop(action, field.grid, dt_eff, dispersion);
    ScalarField2D f = field;
    for (long s = 0; s < steps; ++s) {
        prop.step(f);
        if ((s & 127) == 0 || s == steps - 1) {
            const double m = f.max_abs();
            if (!std::isfinite(m)) throw numeric_error("field overflowed during evolution");
            if (m > 1e250) throw numeric_error("field magnitude above overflow guard");
            if (m < 1e-250) throw numeric_error("field magnitude below underflow guard");
        }
    }
    return f;
}

struct GroundStateOptions {
    double dt = 1e-3;
    int block_steps = 100;
    long max_steps = 4'000'000;
    double init_width = 1.0;
    KineticDispersion dispersion = KineticDispersion::spectral;
};

struct GroundStateResult {
    ScalarField2D psi;   // L2-normalized, non-negative
    double energy = 0.0; // Rayleigh quotient <psi|H|psi>
    long steps = 0;
};

// Imaginary-time projection onto the ground state. Each block renormalizes the
// field (log-scale tracked implicitly) and re-estimates the energy; iteration
// stops when successive Rayleigh quotients differ by less than tol.
inline GroundStateResult ground_state(const ActionParams& action, const Grid2D& grid,
                                      double tol, const GroundStateOptions& opt = {}) {
    action.validate();
    if (!(tol > 0.0)) throw config_error("ground state tolerance must be positive");
    ImaginaryPropagator prop(action, grid, opt.dt, opt.dispersion);
    ScalarField2D psi(grid);
    const double w2 = opt.init_width * opt.init_width;
    for (int i = 1; i < grid.nx - 1; ++i)
        for (int j = 1; j < grid.ny - 1; ++j) {
            const double x = grid.x(i), y = grid.y(j);
            psi.at(i, j) = std::exp(-(x * x + y * y) / (2.0 * w2));
        }
    psi.normalize_l2();

    ScalarField2D hpsi;
    double e_prev = 0.0;
    bool have_prev = false;
    long steps = 0;
    while (steps < opt.max_steps) {
        for (int s = 0; s < opt.block_steps; ++s) prop.step(psi);
        steps += opt.block_steps;
        psi.normalize_l2();
        if (psi.min_value() < -1e-8 * psi.max_abs())
            throw numeric_error("ground state iteration developed sign oscillation; "
                                "check grid extent and dt");
        prop.apply_hamiltonian(psi, hpsi);
        const double e = psi.dot(hpsi);
        if (have_prev && std::fabs(e - e_prev) < tol) {
            // Clip the tiny negative ringing left by the spectral steps.
            for (double& v : psi.values) v = std::max(v, 0.0);
            psi.normalize_l2();
            return {psi, e, steps};
        }
        e_prev = e;
        have_prev = true;
    }
    throw numeric_error("ground state iteration did not converge within step budget");
}

// Euclidean transition amplitude for one ordered pair of grid points.
struct TransitionRecord {
    std::array<double, 2> x_in{};
    std::array<double, 2> x_fi{};
    double T = 0.0;
    double amplitude = 0.0;
    bool underflow = false; // amplitude fell below the positive floor
};

// Evolves a discrete delta (1/(dx dy) at the nearest node) from every source
// point for time T and samples every final point: all N^2 ordered pairs.
// Recorded coordinates are the snapped node positions so that downstream fits
// see exactly the points the solver used.
inline std::vector<TransitionRecord> transition_amplitudes(
    const ActionParams& action, const Grid2D& grid,
    const std::vector<std::array<double, 2>>& points, double T, double dt,
    unsigned threads = 0) {
    if (!(T > 0.0)) throw config_error("transition time must be positive");
    for (const auto& p : points)
        if (!grid.strictly_inside(p[0], p[1]))
            throw config_error("transition point outside grid interior");
    const std::size_t n = points.size();
    std::vector<std::array<int, 2>> nodes(n);
    std::vector<std::array<double, 2>> snapped(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int ix = grid.nearest_ix(points[i][0]);
        const int iy = grid.nearest_iy(points[i][1]);
        nodes[i] = {ix, iy};
        snapped[i] = {grid.x(ix), grid.y(iy)};
    }
    constexpr double kAmplitudeFloor = 1e-280;
    std::vector<TransitionRecord> records(n * n);
    parallel_for(
        n,
        [&](std::size_t src) {
            ScalarField2D delta(grid);
            delta.at(nodes[src][0], nodes[src][1]) = 1.0 / (grid.dx() * grid.dy());
            ScalarField2D evolved = evolve_imaginary(delta, action, T, dt);
            for (std::size_t dst = 0; dst < n; ++dst) {
                TransitionRecord r;
                r.x_in = snapped[src];
                r.x_fi = snapped[dst];
                r.T = T;
                r.amplitude = evolved.at(nodes[dst][0], nodes[dst][1]);
                r.underflow = !(r.amplitude > kAmplitudeFloor);
                records[src * n + dst] = r;
            }
        },
        threads);
    return records;
}

// eta(y,x) = -log(G / ref_norm); differences of eta are ref-independent.
inline std::vector<double> eta_field(const std::vector<TransitionRecord>& records,
                                     double ref_norm) {
    if (!(ref_norm > 0.0)) throw config_error("eta reference norm must be positive");
    std::vector<double> eta(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!(records[i].amplitude > 0.0))
            throw numeric_error("eta undefined for non-positive amplitude at record " +
                                std::to_string(i));
        eta[i] = -std::log(records[i].amplitude / ref_norm);
    }
    return eta;
}

} // namespace qchaos

#endif
