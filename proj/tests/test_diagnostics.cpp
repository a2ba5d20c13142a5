#include <gtest/gtest.h>

#include <cmath>

#include "lightcone/catenoids.hpp"
#include "lightcone/diagnostics.hpp"
#include "lightcone/error.hpp"
#include "support.hpp"

using namespace lightcone;
using lightcone::testing::dist;
using lightcone::testing::Rng;

namespace {

const CatenoidSpec kSpecs[] = {{Family::Elliptic, 1.5}, {Family::Elliptic, 4.0}, {Family::Hyperbolic, 1.5},
                               {Family::Parabolic, 0.5}};

JetFunction closed_jet(const CatenoidSpec& s) {
    return [s](double u, double v) { return catenoid_jet(s, u, v); };
}

}  // namespace

TEST(Tangents, RecoverInitialData) {
    for (const CatenoidSpec& spec : kSpecs) {
        const BjorlingData data = catenoid_bjorling_data(spec);
        const SurfaceGrid grid = solve_bjorling(data, catenoid_chart(spec.family, 21, 11));
        for (int i = 0; i < grid.spec.nu; ++i) {
            const GridNode& n = grid.at(i, 5);
            ASSERT_EQ(n.v, 0.0);
            const auto [xu, xv] = tangent_vectors(grid.wd, n.f, n.x, n.u);
            const Mat2C gd = data.gamma_dot()(n.u);
            EXPECT_LT((xu.matrix() - gd).norm(), 1e-8 * (1.0 + gd.norm()));
            EXPECT_LT((xv.matrix() - data.tangent()(n.u)).norm(), 1e-6);
            const double e = minkowski_inner(xu, xu);
            EXPECT_LE(std::abs(e - minkowski_inner(xv, xv)), 1e-8 * e);
            EXPECT_LE(std::abs(minkowski_inner(xu, xv)), 1e-8 * e);
        }
    }
}

TEST(Tangents, MatchFiniteDifferences) {
    const CatenoidSpec spec{Family::Hyperbolic, 1.5};
    const SurfaceGrid grid = solve_bjorling(catenoid_bjorling_data(spec), catenoid_chart(spec.family, 9, 5));
    StepControl tight;
    tight.local_tol = 1e-11;
    for (const GridNode& n : grid.nodes) {
        const Complex w(n.u, n.v);
        const JetFunction jet = frame_jet(grid.wd, w, n.f, tight);
        auto x_at = [&](double u, double v) { return jet(u, v).x; };
        constexpr double h = 1e-5;
        const Herm2 fd_u = (1.0 / (2 * h)) * (x_at(n.u + h, n.v) - x_at(n.u - h, n.v));
        const Herm2 fd_v = (1.0 / (2 * h)) * (x_at(n.u, n.v + h) - x_at(n.u, n.v - h));
        const auto [xu, xv] = tangent_vectors(grid.wd, n.f, n.x, w);
        EXPECT_LT(dist(fd_u, xu), 1e-6 * (1.0 + xu.norm()));
        EXPECT_LT(dist(fd_v, xv), 1e-6 * (1.0 + xv.norm()));
    }
}

TEST(GaussMap, ResidualsOnRandomNodes) {
    Rng rng(51);
    for (int k = 0; k < 100; ++k) {
        const CatenoidSpec& spec = kSpecs[k % 4];
        const GridSpec chart = catenoid_chart(spec.family);
        const SurfaceJet j = catenoid_jet(spec, rng.uniform(chart.u0, chart.u1), rng.uniform(-1.0, 1.0));
        const GaussMap g = gauss_map(j.x, j.xu, j.xv);
        EXPECT_LE(g.max_residual(), 1e-10);
    }
}

TEST(GaussMap, IndependentOfParticularSolution) {
    const SurfaceJet j = catenoid_jet({Family::Elliptic, 1.5}, 0.4, 0.3);
    const GaussMap a = gauss_map(j.x, j.xu, j.xv);
    for (double t : {-3.0, 0.5, 10.0}) {
        const GaussMap b = gauss_map_shifted(j.x, j.xu, j.xv, t);
        EXPECT_LE(dist(a.n, b.n), 1e-10 * (1.0 + a.n.norm()));
    }
}

TEST(GaussMap, AxisPointByHand) {
    // X = diag(s, 0), tangent plane span{f1, f2}: the conditions force
    // n = diag(0, m) with -s m / 2 = 1.
    for (double s : {0.5, 1.0, 3.0}) {
        const GaussMap g = gauss_map(Herm2(s, 0, 0), basis::f1(), basis::f2());
        EXPECT_LT(dist(g.n, Herm2(0.0, 0.0, -2.0 / s)), 1e-14);
        EXPECT_LT(dist(g.n, (1.0 / s) * basis::f0()), 1e-14);
    }
}

TEST(GaussMap, DegenerateTangentPlane) {
    EXPECT_THROW(gauss_map(Herm2(1, 0, 0), basis::f1(), 2.0 * basis::f1()), DegenerateInputError);
}

TEST(SecondFundamental, SymmetryAndTraceFree) {
    for (const CatenoidSpec& spec : kSpecs) {
        const GridSpec chart = catenoid_chart(spec.family, 7, 5);
        for (int j = 1; j + 1 < chart.nv; ++j) {
            for (int i = 1; i + 1 < chart.nu; ++i) {
                const SecondFundamental s = second_fundamental(closed_jet(spec), chart.u_at(i), chart.v_at(j), 1e-4);
                EXPECT_LE(std::abs(s.m - s.m_alt), 1e-6);
                EXPECT_LE(std::abs(s.lff + s.n), 1e-5);
            }
        }
    }
}

TEST(Curvatures, FormulaScaling) {
    PointDiagnostics d;
    d.e = d.g = 2.0;
    d.second = {0.3, 0.1, 0.1, 0.5};
    auto [h1, k1] = curvatures(d);
    EXPECT_DOUBLE_EQ(h1, (0.3 + 0.5) / (2.0 * 2.0));
    EXPECT_DOUBLE_EQ(k1, (0.3 * 0.5 - 0.01) / 4.0);
    d.e = d.g = 4.0;
    auto [h2, k2] = curvatures(d);
    EXPECT_EQ(h2, 0.5 * h1);
    EXPECT_EQ(k2, 0.25 * k1);
    d.e = d.g = 0.0;
    EXPECT_THROW(curvatures(d), DegenerateMetricError);
}

TEST(Curvatures, ClosedFormsHaveZeroMeanCurvature) {
    for (const CatenoidSpec& spec : kSpecs) {
        const auto rows = diagnose_parametrization(closed_jet(spec), catenoid_chart(spec.family, 21, 11));
        for (const NodeDiagnostics& r : rows) {
            ASSERT_TRUE(r.valid) << r.error;
            EXPECT_LE(std::abs(r.point.h), 1e-6) << family_name(spec.family) << " " << r.point.u << "," << r.point.v;
            EXPECT_LE(r.point.conformality_defect, 1e-12);
        }
    }
}

TEST(Curvatures, EllipticGoldenK) {
    // Independent high-precision evaluation gives K(0,0) = -(a+2)^2/256 at
    // a = 3/2: L = -N = -7/8 against E = G = 4.
    const CatenoidSpec spec{Family::Elliptic, 1.5};
    const SurfaceGrid grid = solve_bjorling(catenoid_bjorling_data(spec), catenoid_chart(spec.family));
    const auto rows = diagnose_grid(grid);
    const NodeDiagnostics& origin = rows[grid.spec.index(0, 10)];
    ASSERT_EQ(origin.point.u, 0.0);
    ASSERT_EQ(origin.point.v, 0.0);
    ASSERT_TRUE(origin.valid);
    EXPECT_NEAR(origin.point.k, -49.0 / 1024.0, 1e-8);
    EXPECT_NEAR(origin.point.phi2, 4.0, 1e-10);
    EXPECT_NEAR(origin.point.second.lff, -0.875, 1e-8);
    EXPECT_NEAR(origin.point.second.n, 0.875, 1e-8);
}

TEST(Curvatures, GaugeDoesNotChangeDiagnostics) {
    const BjorlingData data = catenoid_bjorling_data({Family::Parabolic, 0.5});
    const GridSpec g = catenoid_chart(Family::Parabolic, 9, 5);
    SolveOptions gauged;
    gauged.gauge = Mat2C{std::polar(1.0, 0.7), 0.3, 0.0, std::polar(1.0, -0.7)};
    const auto a = diagnose_grid(solve_bjorling(data, g));
    const auto b = diagnose_grid(solve_bjorling(data, g, gauged));
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_LE(std::abs(a[k].point.h - b[k].point.h), 1e-8);
        EXPECT_LE(std::abs(a[k].point.k - b[k].point.k), 1e-6 * (1.0 + std::abs(a[k].point.k)));
    }
}

TEST(Curvatures, NonHolomorphicPerturbationIsNotMinimal) {
    const JetFunction jet = lightcone::testing::perturbed_elliptic_jet(0.1);
    double max_h = 0.0;
    for (double u : {0.5, 1.5, 2.5})
        for (double v : {-0.5, 0.25, 0.5}) max_h = std::max(max_h, std::abs(diagnose_point(jet, u, v, 1e-2).h));
    EXPECT_GE(max_h, 1e-3);
    // Same construction without the perturbation stays minimal.
    const JetFunction control = lightcone::testing::perturbed_elliptic_jet(0.0);
    EXPECT_LE(std::abs(diagnose_point(control, 1.5, 0.5, 1e-2).h), 1e-5);
}

TEST(Grid, InvalidNodesStayInvalid) {
    const WeierstrassData wd = sol1_weierstrass(0.5);
    const SurfaceGrid s = integrate_surface(wd, closed_form_frame_sol1(0.5, 0.5), 0.5, {0.0, 1.0, -0.5, 0.5, 5, 5});
    const auto rows = diagnose_grid(s);
    for (std::size_t k = 0; k < rows.size(); ++k) EXPECT_EQ(rows[k].valid, s.nodes[k].valid);
}
