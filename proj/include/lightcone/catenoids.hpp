#pragma once

// Rotational zero mean curvature surfaces (elliptic, hyperbolic and
// parabolic catenoids), their Björling data and Weierstrass data, the two
// closed-form frame solutions used as ODE oracles, and a non-rotational
// example that extends analytically across a lightlike circle.

#include <string>
#include <string_view>
#include <utility>

#include "lightcone/bjorling.hpp"
#include "lightcone/diagnostics.hpp"
#include "lightcone/frame.hpp"
#include "lightcone/lorentz.hpp"

namespace lightcone {

enum class Family { Elliptic, Hyperbolic, Parabolic };

std::string_view family_name(Family f);
// Throws ValidationError for unknown names.
Family parse_family(std::string_view name);

struct CatenoidSpec {
    Family family = Family::Elliptic;
    double parameter = 1.5;  // a, b or c

    // Throws ValidationError: elliptic needs a != -2, parabolic c != 0.
    void validate() const;
};

// Which tangent field of the conformal pair is used. The rejected one
// satisfies conformality but not orientability.
enum class TangentBranch { Accepted, Rejected };

// One-parameter rotation groups; the parabolic one is stored as
// [[1, u - 1], [0, 1]] so that circle(Parabolic, 1) is the base point.
Mat2C rotation(Family family, double u);

// Orbit R(u) [[1,1],[1,1]] R(u)* of the base point.
Herm2 circle(Family family, double u);

// Björling parameter interval per family: [0, 2pi], [-1, 1], [1/2, 2].
std::pair<double, double> catenoid_interval(Family family);

// Tangent fields: elliptic a gamma -/+ 2 e3, hyperbolic b gamma +/- 2 f2,
// parabolic c gamma +/- f2 (accepted/rejected).
BjorlingData catenoid_bjorling_data(const CatenoidSpec& spec, TangentBranch branch = TangentBranch::Accepted,
                                    int samples = 33);

// Parametrizations X^E, X^H, X^P in the Björling coordinates w = u + iv.
Herm2 catenoid_closed_form(const CatenoidSpec& spec, double u, double v);
// Closed form with exact first derivatives.
SurfaceJet catenoid_jet(const CatenoidSpec& spec, double u, double v);

// Default 41 x 21 chart over the Björling interval and v in [-1, 1].
GridSpec catenoid_chart(Family family, int nu = 41, int nv = 21);

// First frame: F0(z) for G = z, Omega = lambda dz / z^2, lambda = (1 - nu^2)/4.
// Uses principal branches of z^{1/2}, z^{nu/2} and sqrt(nu); sets
// *near_cut when arg z is within 1e-6 of pi.
Mat2C closed_form_frame_sol1(Complex nu, Complex z, bool* near_cut = nullptr);
// Second frame: F1(z) for G = z, Omega = beta^2 dz.
Mat2C closed_form_frame_sol2(Complex beta, Complex z);

WeierstrassData sol1_weierstrass(Complex nu);
WeierstrassData sol2_weierstrass(Complex beta);

// Closed-form Weierstrass data of each family.
WeierstrassData classification_weierstrass(const CatenoidSpec& spec);

// Non-rotational example built on the parabolic circle with tangent field
// (c/u) gamma + f2 over u in [1/2, 2].
BjorlingData nonrotational_bjorling_data(double c, int samples = 33);

// X(u, v) = e^{cv} [[e^{2u}, e^{u+iv}], [e^{u-iv}, 1]] in log-polar
// coordinates of the Björling parameter (w = e^{u+iv}).
Herm2 nonrotational_surface(double c, double u, double v);
SurfaceJet nonrotational_jet(double c, double u, double v);

// Extension X~(s, v) = e^{cv} [[s^2, e^{iv} s], [e^{-iv} s, 1]], s = e^u,
// defined for all real s; s = 0 is the lightlike circle.
Herm2 nonrotational_extension(double c, double s, double v);
SurfaceJet nonrotational_extension_jet(double c, double s, double v);

// (X(u, v), X~(e^u, v)); the two agree.
std::pair<Herm2, Herm2> nonrotational_example(double c, double u, double v);

// L(v) = X~(0, v) = diag(0, e^{cv}).
Herm2 lightlike_circle(double c, double v);

}  // namespace lightcone
