#pragma once

#include <complex>
#include <random>

#include "lightcone/catenoids.hpp"
#include "lightcone/diagnostics.hpp"
#include "lightcone/lorentz.hpp"

namespace lightcone::testing {

// Fixed seeds keep every property test reproducible.
class Rng {
public:
    explicit Rng(std::uint32_t seed = 20240611u) : gen_(seed) {}

    double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    Complex complex(double r = 1.0) { return {uniform(-r, r), uniform(-r, r)}; }

    Herm2 hermitian(double r = 2.0) { return {uniform(-r, r), complex(r), uniform(-r, r)}; }

    // xi xi*: a generic light cone point.
    Herm2 cone_point(double r = 2.0) {
        const Complex a = complex(r), b = complex(r);
        return {std::norm(a), a * std::conj(b), std::norm(b)};
    }

private:
    std::mt19937 gen_;
};

// Elliptic catenoid (a = 3/2) potential with omega scaled by (1 + eps Re w),
// integrated along the grid path: base u = 1 -> (u, 0) -> (u, v). The factor
// is not holomorphic, so for eps != 0 the result is not a zero mean
// curvature surface. Tangents by finite differences.
inline JetFunction perturbed_elliptic_jet(double eps) {
    const CatenoidSpec spec{Family::Elliptic, 1.5};
    const WeierstrassData wd = classification_weierstrass(spec);
    WeierstrassData along_axis = wd;
    along_axis.omega = wd.omega * (Expr::literal(1.0) + Expr::literal(eps) * Expr::variable());
    const Mat2C base = frame_from_point(circle(spec.family, 1.0));
    auto surface = [=](double u, double v) {
        const Complex horizontal[] = {1.0, u};
        const Mat2C f = integrate_frame(along_axis, base, horizontal).f;
        WeierstrassData column = wd;
        column.omega = wd.omega * Expr::literal(1.0 + eps * u);
        const Complex vertical[] = {u, Complex(u, v)};
        return surface_point(integrate_frame(column, f, vertical).f);
    };
    return finite_difference_jet(surface, 1e-3);
}

inline double dist(const Mat2C& a, const Mat2C& b) { return (a - b).norm(); }
inline double dist(const Herm2& a, const Herm2& b) { return (a - b).norm(); }

}  // namespace lightcone::testing
