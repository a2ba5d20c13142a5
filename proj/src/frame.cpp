#include "lightcone/frame.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "lightcone/error.hpp"
#include "lightcone/parallel.hpp"

namespace lightcone {

Mat2C potential_matrix(const WeierstrassData& wd, Complex w) {
    const Complex g = wd.g.eval(w);
    const Complex om = wd.omega.eval(w);
    return Mat2C{g, -(g * g), 1.0, -g} * om;
}

Mat2C ode_rhs(const WeierstrassData& wd, Complex w, const Mat2C& f) { return potential_matrix(wd, w) * f; }

namespace {

Mat2C checked_rhs(const WeierstrassData& wd, Complex w, const Mat2C& f, Complex dw) {
    Mat2C m;
    try {
        m = potential_matrix(wd, w);
    } catch (const EvaluationError& e) {
        throw IntegrationError(std::string("potential undefined on path: ") + e.what(), w);
    }
    if (!m.is_finite()) throw IntegrationError("potential is not finite on path", w);
    return (m * f) * dw;
}

// dF/ds = M(w0 + s dw) F dw over s in [0, 1].
Mat2C rk4_step(const WeierstrassData& wd, const Mat2C& f, Complex w0, Complex dw) {
    const Mat2C k1 = checked_rhs(wd, w0, f, dw);
    const Mat2C k2 = checked_rhs(wd, w0 + 0.5 * dw, f + 0.5 * k1, dw);
    const Mat2C k3 = checked_rhs(wd, w0 + 0.5 * dw, f + 0.5 * k2, dw);
    const Mat2C k4 = checked_rhs(wd, w0 + dw, f + k3, dw);
    return f + (1.0 / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

FrameResult integrate_frame(const WeierstrassData& wd, const Mat2C& f0, std::span<const Complex> path,
                            const StepControl& control) {
    if (path.empty()) throw std::invalid_argument("integrate_frame: empty path");
    FrameResult out;
    out.f = f0;
    const Complex det0 = f0.det();
    double h = control.h_max;
    for (std::size_t seg = 1; seg < path.size(); ++seg) {
        const Complex a = path[seg - 1];
        const Complex b = path[seg];
        const double length = std::abs(b - a);
        if (length == 0.0) continue;
        const Complex dir = (b - a) / length;
        double s = 0.0;
        while (length - s > 1e-15 * length) {
            h = std::min({h, control.h_max, length - s});
            const Complex w = a + dir * s;
            const Mat2C full = rk4_step(wd, out.f, w, dir * h);
            const Mat2C half = rk4_step(wd, out.f, w, dir * (0.5 * h));
            const Mat2C two_half = rk4_step(wd, half, w + dir * (0.5 * h), dir * (0.5 * h));
            const double err = (two_half - full).norm() / 15.0;
            const double limit = control.local_tol * h * std::max(1.0, out.f.norm());
            if (!(err <= limit)) {
                if (!std::isfinite(err)) throw IntegrationError("frame became non-finite", w);
                ++out.rejected;
                h *= 0.5;
                if (h < control.h_min) throw StiffnessError("step size underflow", w);
                continue;
            }
            out.f = two_half + (1.0 / 15.0) * (two_half - full);
            if (control.renormalize_det) out.f = out.f * (1.0 / std::sqrt(out.f.det()));
            if (!out.f.is_finite()) throw IntegrationError("frame became non-finite", w + dir * h);
            s += h;
            ++out.steps;
            out.max_det_drift = std::max(out.max_det_drift, std::abs(out.f.det() - det0));
            if (err < limit / 32.0) h *= 2.0;
        }
    }
    return out;
}

void GridSpec::validate() const {
    if (!(u1 > u0) || !(v1 > v0) || !std::isfinite(u0) || !std::isfinite(u1) || !std::isfinite(v0) ||
        !std::isfinite(v1)) {
        throw ValidationError("grid ranges must be finite with u0 < u1 and v0 < v1");
    }
    if (nu < 2 || nv < 2) throw ValidationError("grid needs at least 2 nodes per axis");
}

double GridSpec::u_at(int i) const { return i == nu - 1 ? u1 : u0 + (u1 - u0) * i / (nu - 1); }
double GridSpec::v_at(int j) const { return j == nv - 1 ? v1 : v0 + (v1 - v0) * j / (nv - 1); }

std::size_t SurfaceGrid::valid_count() const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const GridNode& n) { return n.valid; }));
}

Herm2 surface_point(const Mat2C& f) {
    // X = xi xi* with xi the first column of F.
    return {std::norm(f.m11), f.m11 * std::conj(f.m21), std::norm(f.m21)};
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("LIGHTCONE_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

void fill_node(GridNode& node, const Mat2C& f) {
    node.f = f;
    node.x = surface_point(f);
    node.det_drift = std::abs(f.det() - 1.0);
    node.valid = f.is_finite();
    if (!node.valid) node.error = "non-finite frame";
}

}  // namespace

SurfaceGrid integrate_surface(const WeierstrassData& wd, const Mat2C& base_frame, double base_u, const GridSpec& grid,
                              const SolveOptions& options) {
    grid.validate();
    SurfaceGrid out;
    out.spec = grid;
    out.wd = wd;
    out.base_u = base_u;
    out.base_frame = base_frame;
    out.nodes.resize(static_cast<std::size_t>(grid.nu) * grid.nv);
    out.boundary.resize(static_cast<std::size_t>(grid.nu));
    for (int j = 0; j < grid.nv; ++j) {
        for (int i = 0; i < grid.nu; ++i) {
            GridNode& n = out.nodes[grid.index(i, j)];
            n.u = grid.u_at(i);
            n.v = grid.v_at(j);
        }
    }

    // Real axis sweep outward from base_u, each node continuing from its neighbour.
    auto sweep = [&](int first, int last, int dir) {
        Mat2C f = base_frame;
        Complex w = base_u;
        std::string failure;
        for (int i = first; i != last + dir; i += dir) {
            BoundarySample& b = out.boundary[static_cast<std::size_t>(i)];
            b.u = grid.u_at(i);
            if (!failure.empty()) continue;
            try {
                const Complex pts[] = {w, Complex(b.u, 0.0)};
                f = integrate_frame(wd, f, pts, options.step).f;
                w = b.u;
                b.f = f;
                b.valid = true;
            } catch (const Error& e) {
                failure = e.what();
            }
        }
    };
    int split = 0;
    while (split < grid.nu && grid.u_at(split) < base_u) ++split;
    if (split < grid.nu) sweep(split, grid.nu - 1, +1);
    if (split > 0) sweep(split - 1, 0, -1);

    // Vertical columns are independent given the sweep.
    int zero = 0;
    while (zero < grid.nv && grid.v_at(zero) < 0.0) ++zero;  // first j with v >= 0
    const unsigned threads = options.threads ? options.threads : default_thread_count();
    detail::parallel_for(static_cast<std::size_t>(grid.nu), threads, [&](std::size_t col) {
        const int i = static_cast<int>(col);
        const BoundarySample& b = out.boundary[col];
        auto column = [&](int first, int last, int dir) {
            Mat2C f = b.f;
            Complex w(b.u, 0.0);
            std::string failure = b.valid ? "" : "real-axis integration failed";
            for (int j = first; j != last + dir; j += dir) {
                GridNode& node = out.nodes[grid.index(i, j)];
                if (!failure.empty()) {
                    node.valid = false;
                    node.error = failure;
                    continue;
                }
                try {
                    const Complex target(node.u, node.v);
                    const Complex pts[] = {w, target};
                    f = integrate_frame(wd, f, pts, options.step).f;
                    w = target;
                    fill_node(node, f);
                    if (!node.valid) failure = node.error;
                } catch (const Error& e) {
                    failure = e.what();
                    node.valid = false;
                    node.error = failure;
                }
            }
        };
        if (zero < grid.nv) column(zero, grid.nv - 1, +1);
        if (zero > 0) column(zero - 1, 0, -1);
    });
    return out;
}

SurfaceGrid solve_bjorling(const BjorlingData& data, const GridSpec& grid, const SolveOptions& options) {
    grid.validate();
    const WeierstrassData wd = weierstrass_from_bjorling(data, options.tol);
    const double base_u = 0.5 * (grid.u0 + grid.u1);
    Mat2C base = frame_from_point(Herm2::symmetrize(data.gamma()(base_u)));
    if (options.gauge) base = base * *options.gauge;

    SurfaceGrid out = integrate_surface(wd, base, base_u, grid, options);
    const Complex i{0.0, 1.0};
    for (BoundarySample& b : out.boundary) {
        if (!b.valid) continue;
        const Mat2C g = data.gamma()(b.u);
        const Mat2C l = data.tangent()(b.u);
        const Herm2 x = surface_point(b.f);
        const Mat2C mx = potential_matrix(wd, b.u) * x.matrix();
        const Mat2C xv = i * (mx - mx.adjoint());
        b.scale = std::max(1.0, g.norm());
        b.position = (x.matrix() - g).norm();
        b.tangent = (xv - l).norm();
    }
    return out;
}

}  // namespace lightcone
