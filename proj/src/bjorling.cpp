#include "lightcone/bjorling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "lightcone/error.hpp"

namespace lightcone {

Mat2C HermitianCurve::operator()(Complex w) const {
    return {m11.eval(w), m12.eval(w), m21.eval(w), m22.eval(w)};
}

HermitianCurve HermitianCurve::derivative() const { return {diff(m11), diff(m12), diff(m21), diff(m22)}; }

HermitianCurve HermitianCurve::parse(std::string_view m11, std::string_view m12,
                                     std::optional<std::string_view> m21, std::string_view m22,
                                     const ParameterMap& params) {
    HermitianCurve c;
    c.m11 = lightcone::parse(m11, params);
    c.m12 = lightcone::parse(m12, params);
    c.m21 = m21 ? lightcone::parse(*m21, params) : conjugate_coefficients(c.m12);
    c.m22 = lightcone::parse(m22, params);
    return c;
}

BjorlingData::BjorlingData(HermitianCurve gamma, HermitianCurve tangent, double u_min, double u_max,
                           int samples)
    : gamma_(std::move(gamma)),
      gamma_dot_(gamma_.derivative()),
      tangent_(std::move(tangent)),
      u_min_(u_min),
      u_max_(u_max),
      samples_(samples) {
    if (!(u_max > u_min) || !std::isfinite(u_min) || !std::isfinite(u_max)) {
        throw ValidationError("Björling interval must satisfy u_min < u_max");
    }
    if (samples < kMinSamples) {
        throw ValidationError("Björling data needs at least " + std::to_string(kMinSamples) + " samples");
    }
}

std::vector<double> BjorlingData::nodes() const {
    std::vector<double> out(static_cast<std::size_t>(samples_));
    const double mid = 0.5 * (u_min_ + u_max_);
    const double half = 0.5 * (u_max_ - u_min_);
    const int n = samples_ - 1;
    for (int k = 0; k <= n; ++k) {
        // k = 0 maps to u_min.
        out[static_cast<std::size_t>(k)] = mid - half * std::cos(std::numbers::pi * k / n);
    }
    out.front() = u_min_;
    out.back() = u_max_;
    return out;
}

Mat2C lambda_of(const BjorlingData& data, Complex w) {
    const Complex i{0.0, 1.0};
    return 0.5 * (data.gamma_dot()(w) - i * data.tangent()(w));
}

namespace {

double hermitian_defect(const Mat2C& m) {
    const double d = std::max({std::abs(m.m11.imag()), std::abs(m.m22.imag()), std::abs(m.m21 - std::conj(m.m12))});
    return d / (1.0 + m.norm());
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

}  // namespace

ConformalityReport check_conformality(const BjorlingData& data, const Tolerances& tol) {
    ConformalityReport report;
    report.pass = true;
    double worst_ratio = -1.0;
    for (double u : data.nodes()) {
        const Mat2C g = data.gamma()(u);
        const Mat2C gd = data.gamma_dot()(u);
        const Mat2C l = data.tangent()(u);

        ConformalitySample s;
        s.u = u;
        s.hermitian_defect = std::max(hermitian_defect(g), hermitian_defect(l));
        const Herm2 hg = Herm2::symmetrize(g);
        const Herm2 hgd = Herm2::symmetrize(gd);
        const Herm2 hl = Herm2::symmetrize(l);
        s.speed_sq = minkowski_inner(hgd, hgd);
        s.length_defect = s.speed_sq - minkowski_inner(hl, hl);
        s.tangent_orthogonality = minkowski_inner(hgd, hl);
        s.position_orthogonality = minkowski_inner(hg, hl);
        s.lightcone_defect = minkowski_inner(hg, hg);
        s.trace = hg.trace();

        const double speed_scale = 1.0 + hgd.norm() * hgd.norm();
        struct Cond {
            const char* name;
            double residual;
            double limit;
        };
        const Cond conds[] = {
            {"<gamma',gamma'> - <L,L>", s.length_defect, tol.conformality * speed_scale},
            {"<gamma',L>", s.tangent_orthogonality, tol.conformality * speed_scale},
            {"<gamma,L>", s.position_orthogonality, tol.conformality * (1.0 + hg.norm() * hl.norm())},
            {"<gamma,gamma>", s.lightcone_defect, tol.conformality * (1.0 + hg.norm() * hg.norm())},
            {"hermitian", s.hermitian_defect, tol.hermitian},
        };
        s.pass = true;
        for (const Cond& c : conds) {
            const double ratio = std::abs(c.residual) / c.limit;
            if (ratio > 1.0 || !std::isfinite(ratio)) s.pass = false;
            if (ratio > worst_ratio || !std::isfinite(ratio)) {
                worst_ratio = std::isfinite(ratio) ? ratio : 1e300;
                report.worst_residual = std::abs(c.residual);
                report.worst_u = u;
                report.worst_condition = c.name;
            }
        }
        if (!(s.speed_sq > 0.0)) {
            s.pass = false;
            report.worst_condition = "spacelike gamma'";
            report.worst_u = u;
            report.worst_residual = s.speed_sq;
            worst_ratio = 1e300;
        }
        if (!(s.trace > 0.0)) {
            s.pass = false;
            report.worst_condition = "tr gamma > 0";
            report.worst_u = u;
            report.worst_residual = s.trace;
            worst_ratio = 1e300;
        }
        report.pass = report.pass && s.pass;
        report.samples.push_back(s);
    }
    return report;
}

std::string ConformalityReport::summary() const {
    return std::string(pass ? "PASS" : "FAIL") + " conformality: worst " + worst_condition + " = " +
           fmt_double(worst_residual) + " at u = " + fmt_double(worst_u);
}

OrientabilityReport check_orientability(const BjorlingData& data, const Tolerances& tol) {
    OrientabilityReport report;
    report.pass = true;
    report.sign_consistent = true;
    report.min_abs_d1 = std::numeric_limits<double>::infinity();
    for (double u : data.nodes()) {
        const Mat2C g = data.gamma()(u);
        const Mat2C lam = lambda_of(data, u);
        const Herm2 gd = Herm2::symmetrize(data.gamma_dot()(u));
        OrientabilitySample s;
        s.u = u;
        s.d1 = g.m11 * lam.m21 - g.m21 * lam.m11;
        s.threshold = tol.orientability * (1.0 + std::sqrt(std::abs(minkowski_inner(gd, gd))));
        try {
            s.signed_area_sign =
                signed_area_sign(Herm2::symmetrize(g), gd, Herm2::symmetrize(data.tangent()(u)));
        } catch (const Error&) {
            s.signed_area_sign = 0;
        }
        if (!(std::abs(s.d1) > s.threshold)) report.pass = false;
        if (s.signed_area_sign != -1) report.sign_consistent = false;
        if (std::abs(s.d1) < report.min_abs_d1) {
            report.min_abs_d1 = std::abs(s.d1);
            report.min_u = u;
        }
        report.samples.push_back(s);
    }
    // Nonvanishing D1 is equivalent to negative signed area; a mismatch is a
    // numerical inconsistency and counts as a failure.
    if (report.pass && !report.sign_consistent) report.pass = false;
    return report;
}

std::string OrientabilityReport::summary() const {
    std::string s = std::string(pass ? "PASS" : "FAIL") + " orientability: min |gamma11 Lambda21 - gamma21 Lambda11| = " +
                    fmt_double(min_abs_d1) + " at u = " + fmt_double(min_u);
    s += sign_consistent ? ", signed area negative at every sample" : ", signed area not negative everywhere";
    return s;
}

namespace {

struct LambdaExprs {
    Expr l11, l12, l21, l22;
};

LambdaExprs lambda_exprs(const BjorlingData& data) {
    const Expr half = Expr::literal(0.5);
    const Expr i = Expr::literal({0.0, 1.0});
    const HermitianCurve& gd = data.gamma_dot();
    const HermitianCurve& l = data.tangent();
    return {half * (gd.m11 - i * l.m11), half * (gd.m12 - i * l.m12), half * (gd.m21 - i * l.m21),
            half * (gd.m22 - i * l.m22)};
}

double rel_diff(Complex a, Complex b) {
    const double d = std::abs(a - b);
    if (d == 0.0) return 0.0;
    return d / std::max({std::abs(a), std::abs(b), 1e-14});
}

struct BothVariants {
    bool first_ok = false, second_ok = false;
    Complex g1, w1, g2, w2;
};

BothVariants both_variants(const Mat2C& lam, const Mat2C& g) {
    BothVariants v;
    const Complex den1 = lam.m21 * g.m11 - lam.m11 * g.m21;
    const Complex den2 = lam.m22 * g.m12 - lam.m12 * g.m22;
    if (lam.m21 != Complex{} && den1 != Complex{}) {
        v.first_ok = true;
        v.g1 = lam.m11 / lam.m21;
        v.w1 = lam.m21 * lam.m21 / den1;
    }
    if (lam.m22 != Complex{} && den2 != Complex{}) {
        v.second_ok = true;
        v.g2 = lam.m12 / lam.m22;
        v.w2 = lam.m22 * lam.m22 / den2;
    }
    return v;
}

}  // namespace

WeierstrassValue weierstrass_at(const BjorlingData& data, Complex w) {
    const Mat2C lam = lambda_of(data, w);
    const Mat2C g = data.gamma()(w);
    const BothVariants v = both_variants(lam, g);
    const bool prefer_second = std::abs(lam.m22) > std::abs(lam.m21);
    if ((prefer_second && v.second_ok) || !v.first_ok) {
        if (!v.second_ok) throw EvaluationError("Weierstrass data undefined (both extraction denominators vanish)", w);
        return {v.g2, v.w2, ExtractionVariant::SecondColumn};
    }
    return {v.g1, v.w1, ExtractionVariant::FirstColumn};
}

WeierstrassData weierstrass_from_bjorling(const BjorlingData& data, const Tolerances& tol) {
    const ConformalityReport conf = check_conformality(data, tol);
    if (!conf.pass) throw ValidationError(conf.summary());
    const OrientabilityReport orient = check_orientability(data, tol);
    if (!orient.pass) throw ValidationError(orient.summary());

    const LambdaExprs lam = lambda_exprs(data);
    const HermitianCurve& g = data.gamma();

    WeierstrassData wd;
    wd.chart = "w = u + iv";
    const double mid = 0.5 * (data.u_min() + data.u_max());
    const Mat2C lam_mid = lambda_of(data, mid);
    if (std::abs(lam_mid.m22) > std::abs(lam_mid.m21)) {
        wd.variant = ExtractionVariant::SecondColumn;
        wd.g = lam.l12 / lam.l22;
        wd.omega = (lam.l22 * lam.l22) / (lam.l22 * g.m12 - lam.l12 * g.m22);
    } else {
        wd.variant = ExtractionVariant::FirstColumn;
        wd.g = lam.l11 / lam.l21;
        wd.omega = (lam.l21 * lam.l21) / (lam.l21 * g.m11 - lam.l11 * g.m21);
    }

    ExtractionCheck& chk = wd.check;
    double worst_ratio = 0.0;
    auto record = [&](double residual, double limit, double& slot, double u) {
        slot = std::max(slot, residual);
        if (residual / limit > worst_ratio) {
            worst_ratio = residual / limit;
            chk.worst_u = u;
        }
    };
    for (double u : data.nodes()) {
        const Mat2C lm = lambda_of(data, u);
        const Mat2C gm = g(u);
        const BothVariants v = both_variants(lm, gm);
        if (v.first_ok && v.second_ok) {
            record(rel_diff(v.g1, v.g2), tol.consistency, chk.g_mismatch, u);
            record(rel_diff(v.w1, v.w2), tol.consistency, chk.omega_mismatch, u);
        }
        const Complex trace = lm.m11 * gm.m22 - lm.m12 * gm.m21 - lm.m21 * gm.m12 + lm.m22 * gm.m11;
        record(std::abs(trace) / (1.0 + lm.norm() * gm.norm()), tol.trace_identity, chk.trace_identity, u);

        Complex gv, wv;
        try {
            gv = wd.g.eval(u);
            wv = wd.omega.eval(u);
        } catch (const EvaluationError& e) {
            throw DataInconsistencyError(std::string("Weierstrass data undefined on the interval: ") + e.what(), u,
                                         std::numeric_limits<double>::infinity());
        }
        const Mat2C omega_mat = Mat2C{gv, -gv * gv, 1.0, -gv} * wv;
        const Mat2C recon = omega_mat * gm;
        record((recon - lm).norm() / (1.0 + lm.norm()), tol.consistency, chk.reconstruction, u);
    }
    if (worst_ratio > 1.0 || !std::isfinite(worst_ratio)) {
        throw DataInconsistencyError(
            "Weierstrass extraction inconsistent: G mismatch " + fmt_double(chk.g_mismatch) + ", omega mismatch " +
                fmt_double(chk.omega_mismatch) + ", trace identity " + fmt_double(chk.trace_identity) +
                ", reconstruction " + fmt_double(chk.reconstruction) + " (worst at u = " + fmt_double(chk.worst_u) +
                ")",
            chk.worst_u, worst_ratio);
    }
    return wd;
}

}  // namespace lightcone
