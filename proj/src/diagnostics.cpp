#include "lightcone/diagnostics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "lightcone/error.hpp"
#include "lightcone/parallel.hpp"

namespace lightcone {

std::pair<Herm2, Herm2> tangent_vectors(const WeierstrassData& wd, const Mat2C& /*f*/, const Herm2& x, Complex w) {
    const Complex i{0.0, 1.0};
    const Mat2C mx = potential_matrix(wd, w) * x.matrix();
    const Mat2C mx_star = mx.adjoint();
    return {Herm2::symmetrize(mx + mx_star), Herm2::symmetrize(i * (mx - mx_star))};
}

JetFunction frame_jet(const WeierstrassData& wd, Complex w0, const Mat2C& f0, const StepControl& control) {
    return [wd, w0, f0, control](double u, double v) {
        const Complex w(u, v);
        const Complex pts[] = {w0, w};
        const Mat2C f = integrate_frame(wd, f0, pts, control).f;
        SurfaceJet jet;
        jet.x = surface_point(f);
        std::tie(jet.xu, jet.xv) = tangent_vectors(wd, f, jet.x, w);
        return jet;
    };
}

JetFunction finite_difference_jet(std::function<Herm2(double, double)> surface, double h) {
    return [surface = std::move(surface), h](double u, double v) {
        auto central = [&](double du, double dv, double step) {
            return (1.0 / (2.0 * step)) * (surface(u + du * step, v + dv * step) - surface(u - du * step, v - dv * step));
        };
        auto richardson = [&](double du, double dv) {
            return (1.0 / 3.0) * (4.0 * central(du, dv, 0.5 * h) - central(du, dv, h));
        };
        return SurfaceJet{surface(u, v), richardson(1.0, 0.0), richardson(0.0, 1.0)};
    };
}

double GaussMap::max_residual() const { return *std::max_element(residuals.begin(), residuals.end()); }

namespace {

Eigen::Vector4d as_vector(const Herm2& m) {
    const Vec4 v = herm_to_vec(m);
    return {v.t, v.x, v.y, v.z};
}

Herm2 as_herm(const Eigen::Vector4d& y) { return vec_to_herm({y(0), y(1), y(2), y(3)}); }

Eigen::Vector4d particular_solution(const Herm2& x, const Herm2& xu, const Herm2& xv) {
    // Rows are eta * A so that row . y = <A, Y>.
    Eigen::Matrix<double, 3, 4> a;
    const Herm2* rows[] = {&xu, &xv, &x};
    for (int r = 0; r < 3; ++r) {
        const Eigen::Vector4d v = as_vector(*rows[r]);
        a.row(r) << -v(0), v(1), v(2), v(3);
    }
    const Eigen::Vector3d rhs(0.0, 0.0, 1.0);
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (!(sv(2) > 1e-12 * sv(0))) {
        throw DegenerateInputError("gauss_map: tangent plane is degenerate");
    }
    return svd.solve(rhs);
}

GaussMap finish(const Herm2& x, const Herm2& xu, const Herm2& xv, const Herm2& y) {
    GaussMap out;
    out.n = y - (0.5 * minkowski_inner(y, y)) * x;
    const double nn = out.n.norm();
    out.residuals = {
        std::abs(minkowski_inner(out.n, out.n)) / (nn * nn),
        std::abs(minkowski_inner(out.n, xu)) / (nn * xu.norm()),
        std::abs(minkowski_inner(out.n, xv)) / (nn * xv.norm()),
        std::abs(minkowski_inner(out.n, x) - 1.0),
    };
    return out;
}

}  // namespace

GaussMap gauss_map(const Herm2& x, const Herm2& xu, const Herm2& xv) {
    return finish(x, xu, xv, as_herm(particular_solution(x, xu, xv)));
}

GaussMap gauss_map_shifted(const Herm2& x, const Herm2& xu, const Herm2& xv, double t) {
    return finish(x, xu, xv, as_herm(particular_solution(x, xu, xv)) + t * x);
}

SecondFundamental second_fundamental(const JetFunction& jet, double u, double v, double h) {
    auto normal_at = [&](double uu, double vv) {
        const SurfaceJet j = jet(uu, vv);
        return gauss_map(j.x, j.xu, j.xv).n;
    };
    auto derivative = [&](double du, double dv) {
        auto central = [&](double step) {
            return (1.0 / (2.0 * step)) * (normal_at(u + du * step, v + dv * step) - normal_at(u - du * step, v - dv * step));
        };
        return (1.0 / 3.0) * (4.0 * central(0.5 * h) - central(h));
    };
    const SurfaceJet here = jet(u, v);
    const Herm2 n_u = derivative(1.0, 0.0);
    const Herm2 n_v = derivative(0.0, 1.0);
    SecondFundamental s;
    s.lff = -minkowski_inner(here.xu, n_u);
    s.m = -minkowski_inner(here.xu, n_v);
    s.m_alt = -minkowski_inner(here.xv, n_u);
    s.n = -minkowski_inner(here.xv, n_v);
    return s;
}

SecondFundamental second_fundamental(const WeierstrassData& wd, const Mat2C& f, Complex w, double h,
                                     const StepControl& control) {
    return second_fundamental(frame_jet(wd, w, f, control), w.real(), w.imag(), h);
}

std::pair<double, double> curvatures(const PointDiagnostics& d, double tol) {
    const double det_g = d.e * d.g - d.f * d.f;
    if (!(det_g > tol)) throw DegenerateMetricError("curvatures: degenerate first fundamental form");
    const SecondFundamental& s = d.second;
    const double m = 0.5 * (s.m + s.m_alt);
    const double h = (d.e * s.n - 2.0 * d.f * m + d.g * s.lff) / (2.0 * det_g);
    const double k = (s.lff * s.n - m * m) / det_g;
    return {h, k};
}

PointDiagnostics diagnose_point(const JetFunction& jet, double u, double v, double h) {
    PointDiagnostics d;
    d.u = u;
    d.v = v;
    const SurfaceJet here = jet(u, v);
    d.e = minkowski_inner(here.xu, here.xu);
    d.f = minkowski_inner(here.xu, here.xv);
    d.g = minkowski_inner(here.xv, here.xv);
    d.phi2 = 0.5 * (d.e + d.g);
    d.conformality_defect = std::max(std::abs(d.e - d.g), 2.0 * std::abs(d.f)) / std::abs(d.e + d.g);
    const GaussMap gm = gauss_map(here.x, here.xu, here.xv);
    d.normal = gm.n;
    d.gauss_residuals = gm.residuals;
    d.second = second_fundamental(jet, u, v, h);
    d.m_symmetry = std::abs(d.second.m - d.second.m_alt);
    std::tie(d.h, d.k) = curvatures(d);
    return d;
}

namespace {

double lightcone_residual(const Herm2& x) { return std::abs(minkowski_inner(x, x)); }

}  // namespace

std::vector<NodeDiagnostics> diagnose_grid(const SurfaceGrid& grid, double relative_step, const StepControl& control,
                                           unsigned threads) {
    const GridSpec& g = grid.spec;
    const double step = relative_step * std::min((g.u1 - g.u0) / (g.nu - 1), (g.v1 - g.v0) / (g.nv - 1));
    std::vector<NodeDiagnostics> out(grid.nodes.size());
    detail::parallel_for(grid.nodes.size(), threads ? threads : default_thread_count(), [&](std::size_t k) {
        const GridNode& node = grid.nodes[k];
        NodeDiagnostics& d = out[k];
        d.point.u = node.u;
        d.point.v = node.v;
        if (!node.valid) {
            d.error = node.error;
            return;
        }
        d.lightcone_residual = lightcone_residual(node.x);
        d.det_drift = node.det_drift;
        try {
            d.point = diagnose_point(frame_jet(grid.wd, Complex(node.u, node.v), node.f, control), node.u, node.v, step);
            d.valid = true;
        } catch (const Error& e) {
            d.error = e.what();
        }
    });
    return out;
}

std::vector<NodeDiagnostics> diagnose_parametrization(const JetFunction& jet, const GridSpec& grid,
                                                      double relative_step, unsigned threads) {
    grid.validate();
    const double step = relative_step * std::min((grid.u1 - grid.u0) / (grid.nu - 1), (grid.v1 - grid.v0) / (grid.nv - 1));
    std::vector<NodeDiagnostics> out(static_cast<std::size_t>(grid.nu) * grid.nv);
    detail::parallel_for(out.size(), threads ? threads : default_thread_count(), [&](std::size_t k) {
        const int i = static_cast<int>(k % grid.nu);
        const int j = static_cast<int>(k / grid.nu);
        NodeDiagnostics& d = out[k];
        d.point.u = grid.u_at(i);
        d.point.v = grid.v_at(j);
        try {
            d.lightcone_residual = lightcone_residual(jet(d.point.u, d.point.v).x);
            d.point = diagnose_point(jet, d.point.u, d.point.v, step);
            d.valid = true;
        } catch (const Error& e) {
            d.error = e.what();
        }
    });
    return out;
}

}  // namespace lightcone
