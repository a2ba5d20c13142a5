#include "lightcone/lorentz.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "lightcone/error.hpp"

namespace lightcone {

Mat2C Mat2C::inverse() const {
    const Complex d = det();
    if (d == Complex{}) throw DomainError("Mat2C::inverse: singular matrix");
    return {m22 / d, -m12 / d, -m21 / d, m11 / d};
}

double Mat2C::norm() const {
    return std::sqrt(std::norm(m11) + std::norm(m12) + std::norm(m21) + std::norm(m22));
}

bool Mat2C::is_finite() const {
    for (const Complex& c : {m11, m12, m21, m22}) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
    return true;
}

Mat2C& Mat2C::operator+=(const Mat2C& o) {
    m11 += o.m11;
    m12 += o.m12;
    m21 += o.m21;
    m22 += o.m22;
    return *this;
}

Mat2C& Mat2C::operator-=(const Mat2C& o) {
    m11 -= o.m11;
    m12 -= o.m12;
    m21 -= o.m21;
    m22 -= o.m22;
    return *this;
}

Mat2C& Mat2C::operator*=(Complex s) {
    m11 *= s;
    m12 *= s;
    m21 *= s;
    m22 *= s;
    return *this;
}

Mat2C operator+(Mat2C a, const Mat2C& b) { return a += b; }
Mat2C operator-(Mat2C a, const Mat2C& b) { return a -= b; }
Mat2C operator-(const Mat2C& a) { return {-a.m11, -a.m12, -a.m21, -a.m22}; }
Mat2C operator*(Complex s, Mat2C a) { return a *= s; }
Mat2C operator*(Mat2C a, Complex s) { return a *= s; }

Mat2C operator*(const Mat2C& a, const Mat2C& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

double max_abs_diff(const Mat2C& a, const Mat2C& b) {
    return std::max({std::abs(a.m11 - b.m11), std::abs(a.m12 - b.m12), std::abs(a.m21 - b.m21),
                     std::abs(a.m22 - b.m22)});
}

Herm2 Herm2::from_matrix(const Mat2C& m, double rel_tol) {
    const double scale = rel_tol * (1.0 + m.norm());
    if (std::abs(m.m11.imag()) > scale) {
        throw ValidationError("matrix is not Hermitian: m11 has imaginary part " +
                              std::to_string(m.m11.imag()));
    }
    if (std::abs(m.m22.imag()) > scale) {
        throw ValidationError("matrix is not Hermitian: m22 has imaginary part " +
                              std::to_string(m.m22.imag()));
    }
    if (std::abs(m.m21 - std::conj(m.m12)) > scale) {
        throw ValidationError("matrix is not Hermitian: m21 differs from conj(m12) by " +
                              std::to_string(std::abs(m.m21 - std::conj(m.m12))));
    }
    return symmetrize(m);
}

Herm2 Herm2::symmetrize(const Mat2C& m) {
    return {m.m11.real(), 0.5 * (m.m12 + std::conj(m.m21)), m.m22.real()};
}

double Herm2::norm() const { return std::sqrt(m11_ * m11_ + m22_ * m22_ + 2.0 * std::norm(m12_)); }

Herm2& Herm2::operator+=(const Herm2& o) {
    m11_ += o.m11_;
    m12_ += o.m12_;
    m22_ += o.m22_;
    return *this;
}

Herm2& Herm2::operator-=(const Herm2& o) {
    m11_ -= o.m11_;
    m12_ -= o.m12_;
    m22_ -= o.m22_;
    return *this;
}

Herm2& Herm2::operator*=(double s) {
    m11_ *= s;
    m12_ *= s;
    m22_ *= s;
    return *this;
}

double max_abs_diff(const Herm2& a, const Herm2& b) { return max_abs_diff(a.matrix(), b.matrix()); }

Herm2 vec_to_herm(const Vec4& v) { return {v.t + v.z, {v.x, v.y}, v.t - v.z}; }

Vec4 herm_to_vec(const Herm2& m) {
    return {0.5 * (m.m11() + m.m22()), m.m12().real(), m.m12().imag(), 0.5 * (m.m11() - m.m22())};
}

Vec4 herm_to_vec(const Mat2C& m, double rel_tol) { return herm_to_vec(Herm2::from_matrix(m, rel_tol)); }

namespace basis {
Herm2 f0() { return {0.0, 0.0, -2.0}; }
Herm2 f1() { return {0.0, {1.0, 0.0}, 0.0}; }
Herm2 f2() { return {0.0, {0.0, 1.0}, 0.0}; }
Herm2 f3() { return {1.0, 0.0, 0.0}; }
Herm2 e3() { return {1.0, 0.0, -1.0}; }
}  // namespace basis

Complex minkowski_inner(const Mat2C& v, const Mat2C& w) {
    // det(V+W) - det V - det W expanded.
    return -0.5 * (v.m11 * w.m22 + w.m11 * v.m22 - v.m12 * w.m21 - w.m12 * v.m21);
}

double minkowski_inner(const Herm2& v, const Herm2& w) {
    return -0.5 * (v.m11() * w.m22() + w.m11() * v.m22() - 2.0 * (v.m12() * std::conj(w.m12())).real());
}

double minkowski_inner(const Vec4& v, const Vec4& w) {
    return -v.t * w.t + v.x * w.x + v.y * w.y + v.z * w.z;
}

LightconeCheck is_lightcone_point(const Herm2& x, double tol) {
    LightconeCheck out;
    out.det_residual = std::abs(x.det());
    out.trace = x.trace();
    const double n = x.norm();
    out.in_cone = out.det_residual <= tol * (1.0 + n * n) && out.trace > 0.0;
    return out;
}

Mat2C conjugate_action(const Mat2C& f, const Mat2C& x) { return f * x * f.adjoint(); }

Herm2 conjugate_action(const Mat2C& f, const Herm2& x) {
    return Herm2::symmetrize(conjugate_action(f, x.matrix()));
}

Mat2C frame_from_point(const Herm2& x, double tol) {
    if (!is_lightcone_point(x, tol).in_cone) {
        throw DomainError("frame_from_point: point is not in the light cone (det = " +
                          std::to_string(x.det()) + ", tr = " + std::to_string(x.trace()) + ")");
    }
    // Column j of xi xi* is xi conj(xi_j); normalizing by sqrt(X_jj) makes
    // xi_j real and positive. The larger diagonal entry picks the column.
    Complex xi1, xi2;
    if (x.m11() >= x.m22()) {
        const double s = std::sqrt(x.m11());
        xi1 = x.m11() / s;
        xi2 = x.m21() / s;
    } else {
        const double s = std::sqrt(x.m22());
        xi1 = x.m12() / s;
        xi2 = x.m22() / s;
    }
    // Second column with xi1 eta2 - xi2 eta1 = 1.
    if (std::abs(xi1) >= std::abs(xi2)) return {xi1, 0.0, xi2, 1.0 / xi1};
    return {xi1, -1.0 / xi2, xi2, 0.0};
}

std::array<double, 3> stereographic_project(const Herm2& x) {
    const Vec4 v = herm_to_vec(x);
    if (!(v.t > -1.0)) {
        throw DomainError("stereographic_project: t = " + std::to_string(v.t) + " <= -1");
    }
    const double d = 1.0 + v.t;
    return {v.x / d, v.y / d, v.z / d};
}

double signed_area_sq(const Herm2& u, const Herm2& v) {
    const double uv = minkowski_inner(u, v);
    return minkowski_inner(u, u) * minkowski_inner(v, v) - uv * uv;
}

int signed_area_sign(const Herm2& base, const Herm2& u, const Herm2& v, double tol) {
    // A = sqrt(2) F^{-1} maps base to 2 f3; a positive multiple of an
    // SL(2,C) action, so orientation is preserved.
    const Mat2C f = frame_from_point(base, tol);
    const Mat2C a = std::sqrt(2.0) * f.inverse();
    const Herm2 gu = conjugate_action(a, u);
    const Herm2 gv = conjugate_action(a, v);
    // a (2 f3) + b f1 + c f2 = [[2a, b+ic], [b-ic, 0]]
    const double b = gu.m12().real();
    const double c = gu.m12().imag();
    const double e = gv.m12().real();
    const double f_coef = gv.m12().imag();
    const double area = b * f_coef - c * e;
    const double scale = std::hypot(b, c) * std::hypot(e, f_coef);
    if (!(std::abs(area) > tol * scale) || scale == 0.0) {
        throw DegenerateInputError("signed_area_sign: tangent vectors are linearly dependent");
    }
    return area > 0.0 ? 1 : -1;
}

}  // namespace lightcone
