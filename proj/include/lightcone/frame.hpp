#pragma once

// SL(2,C) moving frame: dF F^{-1} = [[G, -G^2], [1, -G]] omega dw, with the
// surface X = F f3 F*.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lightcone/bjorling.hpp"
#include "lightcone/lorentz.hpp"

namespace lightcone {

// M(w) = [[G, -G^2], [1, -G]] * omega(w). Trace and determinant vanish.
Mat2C potential_matrix(const WeierstrassData& wd, Complex w);

// M(w) F.
Mat2C ode_rhs(const WeierstrassData& wd, Complex w, const Mat2C& f);

struct StepControl {
    double h_max = 1.0 / 64.0;
    double local_tol = 1e-10;  // per unit arclength, relative to max(1, |F|)
    double h_min = 1e-12;
    bool renormalize_det = false;  // F <- F / sqrt(det F) after every step
};

struct FrameResult {
    Mat2C f;
    double max_det_drift = 0.0;  // max |det F - det F0| seen along the path
    int steps = 0;
    int rejected = 0;
};

// Classical RK4 along the polyline through `path` (at least one point).
// Each step is compared with two half steps; the step is halved until the
// Richardson error estimate meets local_tol and the extrapolated value is
// accepted. Throws IntegrationError (carrying w) when G or omega cannot be
// evaluated or the frame turns non-finite, and StiffnessError when the step
// falls below h_min.
FrameResult integrate_frame(const WeierstrassData& wd, const Mat2C& f0, std::span<const Complex> path,
                            const StepControl& control = {});

struct GridSpec {
    double u0 = 0.0, u1 = 1.0;
    double v0 = -1.0, v1 = 1.0;
    int nu = 2, nv = 2;

    // Throws ValidationError for degenerate ranges or fewer than 2 nodes per axis.
    void validate() const;
    double u_at(int i) const;
    double v_at(int j) const;
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nu + i; }
};

struct GridNode {
    double u = 0.0;
    double v = 0.0;
    bool valid = false;
    Mat2C f;
    Herm2 x;
    double det_drift = 0.0;  // |det F - 1|
    std::string error;
};

// Residuals of the surface along the initial curve v = 0 at each u node.
struct BoundarySample {
    double u = 0.0;
    bool valid = false;
    Mat2C f;
    double position = 0.0;  // |X(u,0) - gamma(u)|_F
    double tangent = 0.0;   // |X_v(u,0) - L(u)|_F
    double scale = 1.0;     // max(1, |gamma(u)|_F)
};

struct SurfaceGrid {
    GridSpec spec;
    WeierstrassData wd;
    double base_u = 0.0;
    Mat2C base_frame;
    std::vector<GridNode> nodes;  // v-major: index(i, j) = j * nu + i
    std::vector<BoundarySample> boundary;

    const GridNode& at(int i, int j) const { return nodes[spec.index(i, j)]; }
    std::size_t valid_count() const;
};

struct SolveOptions {
    StepControl step;
    Tolerances tol;
    // Right factor R applied to the initial frame: F(u0) = frame_from_point(gamma(u0)) R.
    // Must fix f3 (R f3 R* = f3) for the initial condition to hold.
    std::optional<Mat2C> gauge;
    unsigned threads = 0;  // 0: LIGHTCONE_THREADS or hardware concurrency
};

// Integrates the frame along the real axis from the middle of the u range to
// every u node, then vertically to every (u, v) node. Failed nodes are
// marked invalid rather than aborting. Throws ValidationError when the data
// fail conformality or orientability.
SurfaceGrid solve_bjorling(const BjorlingData& data, const GridSpec& grid, const SolveOptions& options = {});

// Same surface construction for Weierstrass data that did not come from
// Björling data (closed-form frames, perturbed potentials).
SurfaceGrid integrate_surface(const WeierstrassData& wd, const Mat2C& base_frame, double base_u,
                              const GridSpec& grid, const SolveOptions& options = {});

// X = F f3 F*.
Herm2 surface_point(const Mat2C& f);

// Thread count from LIGHTCONE_THREADS, else hardware concurrency (>= 1).
unsigned default_thread_count();

}  // namespace lightcone
