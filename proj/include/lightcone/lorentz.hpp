#pragma once

// Hermitian 2x2 model of Lorentz 4-space. A point (t,x,y,z) is the matrix
//
//     [ t+z    x+iy ]
//     [ x-iy   t-z  ]
//
// and the Minkowski quadratic form is -det.

#include <array>
#include <complex>

namespace lightcone {

using Complex = std::complex<double>;

struct Vec4 {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// General complex 2x2 matrix. Carries frames, Lambda and the potential.
struct Mat2C {
    Complex m11{}, m12{}, m21{}, m22{};

    static constexpr Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2C zero() { return {}; }

    Complex det() const { return m11 * m22 - m12 * m21; }
    Complex trace() const { return m11 + m22; }
    Mat2C adjoint() const { return {std::conj(m11), std::conj(m21), std::conj(m12), std::conj(m22)}; }
    // Throws DomainError when singular.
    Mat2C inverse() const;
    double norm() const;  // Frobenius
    bool is_finite() const;

    Mat2C& operator+=(const Mat2C& o);
    Mat2C& operator-=(const Mat2C& o);
    Mat2C& operator*=(Complex s);

    friend bool operator==(const Mat2C&, const Mat2C&) = default;
};

Mat2C operator+(Mat2C a, const Mat2C& b);
Mat2C operator-(Mat2C a, const Mat2C& b);
Mat2C operator-(const Mat2C& a);
Mat2C operator*(const Mat2C& a, const Mat2C& b);
Mat2C operator*(Complex s, Mat2C a);
Mat2C operator*(Mat2C a, Complex s);

// Max-abs entrywise distance.
double max_abs_diff(const Mat2C& a, const Mat2C& b);

class Herm2 {
public:
    Herm2() = default;
    Herm2(double m11, Complex m12, double m22) : m11_(m11), m12_(m12), m22_(m22) {}

    // Checks m11, m22 real and m21 = conj(m12) within rel_tol * (1 + |m|);
    // throws ValidationError naming the offending entry. The result is the
    // symmetrized matrix.
    static Herm2 from_matrix(const Mat2C& m, double rel_tol = 1e-12);
    // Unconditional projection onto the Hermitian part of the stored entries:
    // m21 <- conj(m12) and diagonal imaginary parts dropped.
    static Herm2 symmetrize(const Mat2C& m);

    double m11() const { return m11_; }
    Complex m12() const { return m12_; }
    Complex m21() const { return std::conj(m12_); }
    double m22() const { return m22_; }

    Mat2C matrix() const { return {m11_, m12_, std::conj(m12_), m22_}; }
    double trace() const { return m11_ + m22_; }
    double det() const { return m11_ * m22_ - std::norm(m12_); }
    double norm() const;  // Frobenius

    Herm2& operator+=(const Herm2& o);
    Herm2& operator-=(const Herm2& o);
    Herm2& operator*=(double s);

    friend Herm2 operator+(Herm2 a, const Herm2& b) { return a += b; }
    friend Herm2 operator-(Herm2 a, const Herm2& b) { return a -= b; }
    friend Herm2 operator*(double s, Herm2 a) { return a *= s; }
    friend bool operator==(const Herm2&, const Herm2&) = default;

private:
    double m11_ = 0.0;
    Complex m12_{};
    double m22_ = 0.0;
};

double max_abs_diff(const Herm2& a, const Herm2& b);

Herm2 vec_to_herm(const Vec4& v);
Vec4 herm_to_vec(const Herm2& m);
// Validating variant; throws ValidationError on non-Hermitian input.
Vec4 herm_to_vec(const Mat2C& m, double rel_tol = 1e-12);

namespace basis {
Herm2 f0();
Herm2 f1();
Herm2 f2();
Herm2 f3();
// z-direction unit vector diag(1,-1).
Herm2 e3();
}  // namespace basis

// <V,W> = -1/2 (det(V+W) - det V - det W), defined on all of M(2,C).
Complex minkowski_inner(const Mat2C& v, const Mat2C& w);
double minkowski_inner(const Herm2& v, const Herm2& w);
double minkowski_inner(const Vec4& v, const Vec4& w);

struct LightconeCheck {
    bool in_cone = false;
    double det_residual = 0.0;  // |det X|
    double trace = 0.0;
};

// <X,X> = 0 up to tol * (1 + |X|^2) and tr X > 0.
LightconeCheck is_lightcone_point(const Herm2& x, double tol = 1e-12);

// F X F*.
Mat2C conjugate_action(const Mat2C& f, const Mat2C& x);
Herm2 conjugate_action(const Mat2C& f, const Herm2& x);

// Returns F in SL(2,C) with F f3 F* = X via the rank-one factorization
// X = xi xi*. Throws DomainError if X is not in Q3+ (relative tolerance tol).
Mat2C frame_from_point(const Herm2& x, double tol = 1e-10);

// (x, y, z) / (1 + t). Throws DomainError if t <= -1.
std::array<double, 3> stereographic_project(const Herm2& x);

// <U,U><V,V> - <U,V>^2, the squared signed area.
double signed_area_sq(const Herm2& u, const Herm2& v);

// Sign of SA(U, V) for U, V tangent to Q3+ at `base`. The pair is moved by
// an orientation-preserving similarity taking base to 2 f3 and decomposed
// as a (2 f3) + b f1 + c f2; the sign is that of b f - c e. Throws
// DegenerateInputError when U, V are (numerically) dependent.
int signed_area_sign(const Herm2& base, const Herm2& u, const Herm2& v, double tol = 1e-10);

}  // namespace lightcone
