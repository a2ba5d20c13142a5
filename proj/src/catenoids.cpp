#include "lightcone/catenoids.hpp"

#include <cmath>
#include <numbers>

#include "lightcone/error.hpp"

namespace lightcone {

namespace {

constexpr Complex kI{0.0, 1.0};

Herm2 base_point() { return {1.0, 1.0, 1.0}; }

Complex cexp(Complex z) { return std::exp(z); }

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
        case Family::Elliptic: return "elliptic";
        case Family::Hyperbolic: return "hyperbolic";
        case Family::Parabolic: return "parabolic";
    }
    return {};
}

Family parse_family(std::string_view name) {
    if (name == "elliptic") return Family::Elliptic;
    if (name == "hyperbolic") return Family::Hyperbolic;
    if (name == "parabolic") return Family::Parabolic;
    throw ValidationError("unknown catenoid family '" + std::string(name) +
                          "' (expected elliptic, hyperbolic or parabolic)");
}

void CatenoidSpec::validate() const {
    if (!std::isfinite(parameter)) throw ValidationError("catenoid parameter must be finite");
    if (family == Family::Elliptic && parameter == -2.0) throw ValidationError("elliptic catenoid requires a != -2");
    if (family == Family::Parabolic && parameter == 0.0) throw ValidationError("parabolic catenoid requires c != 0");
}

Mat2C rotation(Family family, double u) {
    switch (family) {
        case Family::Elliptic: return {cexp(kI * u), 0.0, 0.0, cexp(-kI * u)};
        case Family::Hyperbolic: return {std::exp(u), 0.0, 0.0, std::exp(-u)};
        case Family::Parabolic: return {1.0, u - 1.0, 0.0, 1.0};
    }
    return Mat2C::identity();
}

Herm2 circle(Family family, double u) { return conjugate_action(rotation(family, u), base_point()); }

std::pair<double, double> catenoid_interval(Family family) {
    switch (family) {
        case Family::Elliptic: return {0.0, 2.0 * std::numbers::pi};
        case Family::Hyperbolic: return {-1.0, 1.0};
        case Family::Parabolic: return {0.5, 2.0};
    }
    return {0.0, 1.0};
}

BjorlingData catenoid_bjorling_data(const CatenoidSpec& spec, TangentBranch branch, int samples) {
    spec.validate();
    const bool accepted = branch == TangentBranch::Accepted;
    const auto [u_min, u_max] = catenoid_interval(spec.family);
    HermitianCurve gamma, tangent;
    switch (spec.family) {
        case Family::Elliptic: {
            const ParameterMap p{{"a", spec.parameter}};
            gamma = HermitianCurve::parse("1", "exp(2*i*u)", "exp(-2*i*u)", "1", p);
            // a gamma - 2 e3 (accepted), a gamma + 2 e3 (rejected)
            tangent = accepted ? HermitianCurve::parse("a-2", "a*exp(2*i*u)", "a*exp(-2*i*u)", "a+2", p)
                               : HermitianCurve::parse("a+2", "a*exp(2*i*u)", "a*exp(-2*i*u)", "a-2", p);
            break;
        }
        case Family::Hyperbolic: {
            const ParameterMap p{{"b", spec.parameter}};
            gamma = HermitianCurve::parse("exp(2*u)", "1", "1", "exp(-2*u)", p);
            // b gamma + 2 f2 (accepted), b gamma - 2 f2 (rejected)
            tangent = accepted ? HermitianCurve::parse("b*exp(2*u)", "b+2*i", "b-2*i", "b*exp(-2*u)", p)
                               : HermitianCurve::parse("b*exp(2*u)", "b-2*i", "b+2*i", "b*exp(-2*u)", p);
            break;
        }
        case Family::Parabolic: {
            const ParameterMap p{{"c", spec.parameter}};
            gamma = HermitianCurve::parse("u^2", "u", "u", "1", p);
            // c gamma + f2 (accepted), c gamma - f2 (rejected)
            tangent = accepted ? HermitianCurve::parse("c*u^2", "c*u+i", "c*u-i", "c", p)
                               : HermitianCurve::parse("c*u^2", "c*u-i", "c*u+i", "c", p);
            break;
        }
    }
    return BjorlingData(std::move(gamma), std::move(tangent), u_min, u_max, samples);
}

SurfaceJet catenoid_jet(const CatenoidSpec& spec, double u, double v) {
    const double p = spec.parameter;
    SurfaceJet j;
    switch (spec.family) {
        case Family::Elliptic: {
            const double top = std::exp((p - 2.0) * v);
            const double bottom = std::exp((p + 2.0) * v);
            const Complex off = cexp(Complex(p * v, 2.0 * u));
            j.x = {top, off, bottom};
            j.xu = {0.0, 2.0 * kI * off, 0.0};
            j.xv = {(p - 2.0) * top, p * off, (p + 2.0) * bottom};
            break;
        }
        case Family::Hyperbolic: {
            const double top = std::exp(2.0 * u + p * v);
            const double bottom = std::exp(-2.0 * u + p * v);
            const Complex off = cexp(Complex(p, 2.0) * v);
            j.x = {top, off, bottom};
            j.xu = {2.0 * top, 0.0, -2.0 * bottom};
            j.xv = {p * top, Complex(p, 2.0) * off, p * bottom};
            break;
        }
        case Family::Parabolic: {
            const double s = std::exp(p * v);
            j.x = {s * (u * u + v * v), s * Complex(u, v), s};
            j.xu = {s * 2.0 * u, s, 0.0};
            j.xv = p * j.x + Herm2(s * 2.0 * v, s * kI, 0.0);
            break;
        }
    }
    return j;
}

Herm2 catenoid_closed_form(const CatenoidSpec& spec, double u, double v) { return catenoid_jet(spec, u, v).x; }

GridSpec catenoid_chart(Family family, int nu, int nv) {
    const auto [u0, u1] = catenoid_interval(family);
    return {u0, u1, -1.0, 1.0, nu, nv};
}

Mat2C closed_form_frame_sol1(Complex nu, Complex z, bool* near_cut) {
    if (near_cut) *near_cut = std::abs(std::abs(std::arg(z)) - std::numbers::pi) < 1e-6;
    const Complex s = std::sqrt(nu);
    const Complex sq = std::sqrt(z);
    const Complex zp = std::exp(0.5 * nu * std::log(z));  // z^{nu/2}
    const Mat2C left{sq, 0.0, 0.0, 1.0 / sq};
    const Mat2C mid{s + 1.0 / s, s - 1.0 / s, s - 1.0 / s, s + 1.0 / s};
    const Mat2C right{1.0 / zp, 0.0, 0.0, zp};
    return 0.5 * (left * mid * right);
}

Mat2C closed_form_frame_sol2(Complex beta, Complex z) {
    const Complex r = std::sqrt(beta);
    const Mat2C shear{1.0, z, 0.0, 1.0};
    const Mat2C d1{1.0 / r, 0.0, 0.0, r};
    const Mat2C rot{std::cos(beta * z), -std::sin(beta * z), std::sin(beta * z), std::cos(beta * z)};
    const Mat2C d2{r, 0.0, 0.0, 1.0 / r};
    return shear * d1 * rot * d2;
}

WeierstrassData sol1_weierstrass(Complex nu) {
    if (nu == Complex{}) throw ValidationError("sol1 frame requires nu != 0");
    WeierstrassData wd;
    wd.g = Expr::variable();
    wd.omega = Expr::literal((1.0 - nu * nu) / 4.0) / pow(Expr::variable(), Expr::literal(2.0));
    wd.chart = "z";
    return wd;
}

WeierstrassData sol2_weierstrass(Complex beta) {
    if (beta == Complex{}) throw ValidationError("sol2 frame requires beta != 0");
    WeierstrassData wd;
    wd.g = Expr::variable();
    wd.omega = Expr::literal(beta * beta);
    wd.chart = "z";
    return wd;
}

WeierstrassData classification_weierstrass(const CatenoidSpec& spec) {
    spec.validate();
    WeierstrassData wd;
    wd.chart = "w";
    switch (spec.family) {
        case Family::Elliptic: {
            const ParameterMap p{{"a", spec.parameter}};
            wd.g = parse("(a-2)/(a+2)*exp(2*i*u)", p);
            wd.omega = parse("-i*(a+2)^2/8*exp(-2*i*u)", p);
            break;
        }
        case Family::Hyperbolic: {
            const ParameterMap p{{"b", spec.parameter}};
            wd.g = parse("(b+2*i)/(b-2*i)*exp(2*u)", p);
            wd.omega = parse("(b-2*i)^2/8*exp(-2*u)", p);
            break;
        }
        case Family::Parabolic: {
            const ParameterMap p{{"c", spec.parameter}};
            wd.g = parse("u+2*i/c", p);
            wd.omega = parse("c^2/4", p);
            break;
        }
    }
    return wd;
}

BjorlingData nonrotational_bjorling_data(double c, int samples) {
    if (c == 0.0 || !std::isfinite(c)) throw ValidationError("non-rotational example requires finite c != 0");
    const ParameterMap p{{"c", c}};
    HermitianCurve gamma = HermitianCurve::parse("u^2", "u", "u", "1", p);
    // (c/u) gamma + f2
    HermitianCurve tangent = HermitianCurve::parse("c*u", "c+i", "c-i", "c/u", p);
    return BjorlingData(std::move(gamma), std::move(tangent), 0.5, 2.0, samples);
}

SurfaceJet nonrotational_jet(double c, double u, double v) {
    const double s = std::exp(c * v);
    const double e2 = std::exp(2.0 * u);
    const Complex off = cexp(Complex(u, v));
    SurfaceJet j;
    j.x = {s * e2, s * off, s};
    j.xu = {2.0 * s * e2, s * off, 0.0};
    j.xv = c * j.x + Herm2(0.0, s * kI * off, 0.0);
    return j;
}

Herm2 nonrotational_surface(double c, double u, double v) { return nonrotational_jet(c, u, v).x; }

SurfaceJet nonrotational_extension_jet(double c, double s, double v) {
    const double ecv = std::exp(c * v);
    const Complex phase = cexp(kI * v);
    SurfaceJet j;
    j.x = {ecv * s * s, ecv * phase * s, ecv};
    j.xu = {2.0 * ecv * s, ecv * phase, 0.0};
    j.xv = c * j.x + Herm2(0.0, ecv * kI * phase * s, 0.0);
    return j;
}

Herm2 nonrotational_extension(double c, double s, double v) { return nonrotational_extension_jet(c, s, v).x; }

std::pair<Herm2, Herm2> nonrotational_example(double c, double u, double v) {
    if (c == 0.0) throw ValidationError("non-rotational example requires c != 0");
    return {nonrotational_surface(c, u, v), nonrotational_extension(c, std::exp(u), v)};
}

Herm2 lightlike_circle(double c, double v) { return {0.0, 0.0, std::exp(c * v)}; }

}  // namespace lightcone
