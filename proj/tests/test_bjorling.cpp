#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lightcone/bjorling.hpp"
#include "lightcone/catenoids.hpp"
#include "lightcone/error.hpp"
#include "support.hpp"

using namespace lightcone;

namespace {

constexpr Complex kI{0.0, 1.0};

struct Case {
    Family family;
    double parameter;
};

const Case kCases[] = {{Family::Elliptic, 1.5}, {Family::Elliptic, 4.0}, {Family::Hyperbolic, 1.5},
                       {Family::Parabolic, 0.5}};

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

BjorlingData with_tangent(const BjorlingData& d, const HermitianCurve& tangent) {
    return BjorlingData(d.gamma(), tangent, d.u_min(), d.u_max(), d.samples());
}

}  // namespace

TEST(Data, ConstructionChecks) {
    const BjorlingData d = catenoid_bjorling_data({Family::Elliptic, 1.5});
    EXPECT_THROW(BjorlingData(d.gamma(), d.tangent(), 1.0, 1.0), ValidationError);
    EXPECT_THROW(BjorlingData(d.gamma(), d.tangent(), 0.0, 1.0, 8), ValidationError);
    const auto nodes = BjorlingData(d.gamma(), d.tangent(), -1.0, 3.0, 9).nodes();
    ASSERT_EQ(nodes.size(), 9u);
    EXPECT_EQ(nodes.front(), -1.0);
    EXPECT_EQ(nodes.back(), 3.0);
    for (std::size_t k = 1; k < nodes.size(); ++k) EXPECT_LT(nodes[k - 1], nodes[k]);
    // Chebyshev-Lobatto: clustered at the ends.
    EXPECT_LT(nodes[1] - nodes[0], nodes[5] - nodes[4]);
}

TEST(Data, ReflectedOffDiagonal) {
    const HermitianCurve c = HermitianCurve::parse("u^2", "(1+2*i)*exp(i*u)", std::nullopt, "1");
    for (double u : {-1.0, 0.3, 2.0}) {
        const Mat2C m = c(u);
        EXPECT_NEAR(std::abs(m.m21 - std::conj(m.m12)), 0.0, 1e-15);
    }
}

TEST(Lambda, EllipticHandAlgebra) {
    for (double a : {1.5, 4.0}) {
        const BjorlingData d = catenoid_bjorling_data({Family::Elliptic, a});
        for (double u : {0.0, 0.7, 3.0}) {
            const Mat2C lam = lambda_of(d, u);
            const Complex e = std::exp(2.0 * kI * u);
            const Mat2C expected = 0.5 * Mat2C{-kI * (a - 2.0), kI * (2.0 - a) * e, -kI * (2.0 + a) / e, -kI * (a + 2.0)};
            EXPECT_LT((lam - expected).norm(), 1e-14) << "a = " << a << " u = " << u;
        }
    }
}

TEST(Lambda, ZeroTangentGivesHalfVelocity) {
    const BjorlingData d = catenoid_bjorling_data({Family::Elliptic, 1.5});
    const BjorlingData z = with_tangent(d, HermitianCurve::parse("0", "0", std::nullopt, "0"));
    EXPECT_LT((lambda_of(z, 0.4) - 0.5 * d.gamma_dot()(0.4)).norm(), 1e-15);
}

TEST(Lambda, DeterminantVanishes) {
    for (const Case& c : kCases) {
        for (TangentBranch b : {TangentBranch::Accepted, TangentBranch::Rejected}) {
            const BjorlingData d = catenoid_bjorling_data({c.family, c.parameter}, b);
            ASSERT_TRUE(check_conformality(d).pass);
            for (double u : d.nodes()) EXPECT_LE(std::abs(lambda_of(d, u).det()), 1e-10);
        }
    }
}

TEST(Conformality, CatenoidsPass) {
    for (double a : {-1.0, 0.5, 1.5, 4.0, 10.0}) {
        const ConformalityReport r = check_conformality(catenoid_bjorling_data({Family::Elliptic, a}));
        EXPECT_TRUE(r.pass) << r.summary();
        EXPECT_LE(r.worst_residual, 1e-12);
    }
    for (const Case& c : kCases) EXPECT_TRUE(check_conformality(catenoid_bjorling_data({c.family, c.parameter})).pass);
    EXPECT_TRUE(check_conformality(nonrotational_bjorling_data(0.5)).pass);
}

TEST(Conformality, WrongFieldFails) {
    const BjorlingData d = catenoid_bjorling_data({Family::Elliptic, 1.5});
    const ConformalityReport r = check_conformality(with_tangent(d, HermitianCurve::parse("0", "1", std::nullopt, "0")));
    EXPECT_FALSE(r.pass);
    ASSERT_EQ(r.samples.front().u, 0.0);
    EXPECT_NEAR(r.samples.front().position_orthogonality, 1.0, 1e-15);
    EXPECT_FALSE(r.samples.front().pass);
}

TEST(Conformality, ScaledFieldFailsLengthCondition) {
    const BjorlingData d = catenoid_bjorling_data({Family::Elliptic, 1.5});
    const HermitianCurve& l = d.tangent();
    const Expr two = Expr::literal(2.0);
    const HermitianCurve doubled{two * l.m11, two * l.m12, two * l.m21, two * l.m22};
    const ConformalityReport r = check_conformality(with_tangent(d, doubled));
    EXPECT_FALSE(r.pass);
    for (const ConformalitySample& s : r.samples) {
        EXPECT_NEAR(std::abs(s.length_defect), 3.0 * s.speed_sq, 1e-12);
        EXPECT_NEAR(s.speed_sq, 4.0, 1e-12);
    }
}

TEST(Orientability, EllipticBranches) {
    const OrientabilityReport acc = check_orientability(catenoid_bjorling_data({Family::Elliptic, 1.5}));
    EXPECT_TRUE(acc.pass) << acc.summary();
    for (const OrientabilitySample& s : acc.samples) {
        EXPECT_NEAR(std::abs(s.d1), 2.0, 1e-13);
        EXPECT_NEAR(std::abs(s.d1 - (-2.0 * kI * std::exp(-2.0 * kI * s.u))), 0.0, 1e-13);
    }
    const OrientabilityReport rej =
        check_orientability(catenoid_bjorling_data({Family::Elliptic, 1.5}, TangentBranch::Rejected));
    EXPECT_FALSE(rej.pass);
    for (const OrientabilitySample& s : rej.samples) EXPECT_LE(std::abs(s.d1), 1e-10);
}

TEST(Orientability, ParabolicRejectedBranchFails) {
    const OrientabilityReport r =
        check_orientability(catenoid_bjorling_data({Family::Parabolic, 0.5}, TangentBranch::Rejected));
    EXPECT_FALSE(r.pass);
    EXPECT_NE(r.summary().find("orientability"), std::string::npos);
}

TEST(Orientability, PassIffSignedAreaNegative) {
    for (const Case& c : kCases) {
        for (TangentBranch b : {TangentBranch::Accepted, TangentBranch::Rejected}) {
            const OrientabilityReport r = check_orientability(catenoid_bjorling_data({c.family, c.parameter}, b));
            bool all_negative = true;
            for (const OrientabilitySample& s : r.samples) all_negative = all_negative && s.signed_area_sign == -1;
            EXPECT_EQ(r.pass, b == TangentBranch::Accepted) << family_name(c.family) << " " << r.summary();
            EXPECT_EQ(r.pass, all_negative) << family_name(c.family);
        }
    }
}

TEST(Extraction, ClosedFormWeierstrassData) {
    for (const Case& c : kCases) {
        const CatenoidSpec spec{c.family, c.parameter};
        const BjorlingData d = catenoid_bjorling_data(spec);
        const WeierstrassData wd = weierstrass_from_bjorling(d);
        // Hand-written closed forms, independent of the classification table.
        const double p = c.parameter;
        auto g_ref = [&](double u) -> Complex {
            switch (c.family) {
                case Family::Elliptic: return (p - 2.0) / (p + 2.0) * std::exp(2.0 * kI * u);
                case Family::Hyperbolic: return (p + 2.0 * kI) / (p - 2.0 * kI) * std::exp(2.0 * u);
                case Family::Parabolic: return u + 2.0 * kI / p;
            }
            return 0.0;
        };
        auto w_ref = [&](double u) -> Complex {
            switch (c.family) {
                case Family::Elliptic: return -kI * (p + 2.0) * (p + 2.0) * std::exp(-2.0 * kI * u) / 8.0;
                case Family::Hyperbolic: return (p - 2.0 * kI) * (p - 2.0 * kI) * std::exp(-2.0 * u) / 8.0;
                case Family::Parabolic: return p * p / 4.0;
            }
            return 0.0;
        };
        for (double u : d.nodes()) {
            EXPECT_LE(rel(wd.g.eval(u), g_ref(u)), 1e-10) << family_name(c.family) << " u = " << u;
            EXPECT_LE(rel(wd.omega.eval(u), w_ref(u)), 1e-10) << family_name(c.family) << " u = " << u;
        }
        EXPECT_LE(wd.check.g_mismatch, 1e-9);
        EXPECT_LE(wd.check.omega_mismatch, 1e-9);
        EXPECT_LE(wd.check.trace_identity, 1e-10);
        EXPECT_LE(wd.check.reconstruction, 1e-9);
    }
}

TEST(Extraction, NonRotationalExample) {
    const double c = 0.5;
    const BjorlingData d = nonrotational_bjorling_data(c);
    const WeierstrassData wd = weierstrass_from_bjorling(d);
    for (double u : d.nodes()) {
        EXPECT_LE(rel(wd.g.eval(u), (c + 2.0 * kI) / c * u), 1e-10);
        EXPECT_LE(rel(wd.omega.eval(u), c * c / (4.0 * u * u)), 1e-10);
    }
}

TEST(Extraction, ReconstructionOffAxis) {
    // Omega~ gamma = Lambda follows from analyticity, so it holds at complex w too.
    const BjorlingData d = catenoid_bjorling_data({Family::Hyperbolic, 1.5});
    const WeierstrassData wd = weierstrass_from_bjorling(d);
    for (Complex w : {Complex(0.2, 0.5), Complex(-0.7, -0.3)}) {
        const Complex g = wd.g.eval(w), om = wd.omega.eval(w);
        const Mat2C omega_t = Mat2C{g, -g * g, 1.0, -g} * om;
        const Mat2C lam = lambda_of(d, w);
        EXPECT_LT((omega_t * d.gamma()(w) - lam).norm(), 1e-12 * (1.0 + lam.norm()));
    }
}

TEST(Extraction, NumericVariantsAgree) {
    for (const Case& c : kCases) {
        const BjorlingData d = catenoid_bjorling_data({c.family, c.parameter});
        const WeierstrassData wd = weierstrass_from_bjorling(d);
        for (double u : d.nodes()) {
            const WeierstrassValue v = weierstrass_at(d, u);
            const Mat2C lam = lambda_of(d, u);
            EXPECT_EQ(v.variant, std::abs(lam.m22) > std::abs(lam.m21) ? ExtractionVariant::SecondColumn
                                                                         : ExtractionVariant::FirstColumn);
            EXPECT_LE(rel(v.g, wd.g.eval(u)), 1e-12);
            EXPECT_LE(rel(v.omega, wd.omega.eval(u)), 1e-12);
        }
    }
}

TEST(Extraction, RequiresValidData) {
    EXPECT_THROW(weierstrass_from_bjorling(catenoid_bjorling_data({Family::Parabolic, 0.5}, TangentBranch::Rejected)),
                 ValidationError);
    const BjorlingData d = catenoid_bjorling_data({Family::Elliptic, 1.5});
    EXPECT_THROW(weierstrass_from_bjorling(with_tangent(d, HermitianCurve::parse("0", "1", std::nullopt, "0"))),
                 ValidationError);
}

TEST(Extraction, InconsistentRoutesReported) {
    // Slightly non-conformal data slips past a loose conformality tolerance;
    // the two extraction routes then disagree.
    const BjorlingData d = catenoid_bjorling_data({Family::Elliptic, 1.5});
    const HermitianCurve& l = d.tangent();
    const Expr s = Expr::literal(1.01);
    const BjorlingData off = with_tangent(d, {s * l.m11, s * l.m12, s * l.m21, s * l.m22});
    Tolerances loose;
    loose.conformality = 1e-1;
    try {
        weierstrass_from_bjorling(off, loose);
        FAIL() << "expected DataInconsistencyError";
    } catch (const DataInconsistencyError& e) {
        EXPECT_GT(e.worst(), 1e-9);
    }
}
