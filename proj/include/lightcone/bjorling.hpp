#pragma once

// Björling data (gamma, L) for zero mean curvature surfaces in Q3+: checks
// for the conformality and orientability conditions, and extraction of the
// Weierstrass data (G, omega) from Lambda = (gamma' - i L) / 2 = Omega gamma.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lightcone/expr.hpp"
#include "lightcone/lorentz.hpp"

namespace lightcone {

// Entrywise expressions of a Hermitian-valued curve. m21 is kept as its own
// expression so that the curve extends analytically off the real axis.
struct HermitianCurve {
    Expr m11, m12, m21, m22;

    Mat2C operator()(Complex w) const;
    HermitianCurve derivative() const;

    // m21 defaults to the Schwarz reflection of m12.
    static HermitianCurve parse(std::string_view m11, std::string_view m12,
                                std::optional<std::string_view> m21, std::string_view m22,
                                const ParameterMap& params = {});
};

class BjorlingData {
public:
    static constexpr int kMinSamples = 9;

    // Throws ValidationError for an empty interval or fewer than 9 samples.
    BjorlingData(HermitianCurve gamma, HermitianCurve tangent, double u_min, double u_max,
                 int samples = 33);

    const HermitianCurve& gamma() const { return gamma_; }
    const HermitianCurve& gamma_dot() const { return gamma_dot_; }
    const HermitianCurve& tangent() const { return tangent_; }
    double u_min() const { return u_min_; }
    double u_max() const { return u_max_; }
    int samples() const { return samples_; }

    // Chebyshev-Lobatto nodes over [u_min, u_max], ascending, endpoints included.
    std::vector<double> nodes() const;

private:
    HermitianCurve gamma_;
    HermitianCurve gamma_dot_;
    HermitianCurve tangent_;
    double u_min_;
    double u_max_;
    int samples_;
};

struct Tolerances {
    double conformality = 1e-9;   // relative to 1 + |gamma'|^2 (see ConformalitySample)
    double orientability = 1e-7;  // |D1| floor relative to 1 + |gamma'|
    double consistency = 1e-9;    // G1 vs G2, omega1 vs omega2, Omega gamma vs Lambda
    double trace_identity = 1e-10;
    double hermitian = 1e-10;
};

// Lambda(w) = (gamma'(w) - i L(w)) / 2 per entry.
Mat2C lambda_of(const BjorlingData& data, Complex w);

// Residuals at one sample. Scales: length and tangent conditions use
// 1 + |gamma'|_F^2, <gamma, L> uses 1 + |gamma|_F |L|_F, <gamma, gamma>
// uses 1 + |gamma|_F^2, Hermitian defects use 1 + |.|_F.
struct ConformalitySample {
    double u = 0.0;
    double speed_sq = 0.0;              // <gamma', gamma'>
    double length_defect = 0.0;         // <gamma',gamma'> - <L,L>
    double tangent_orthogonality = 0.0; // <gamma', L>
    double position_orthogonality = 0.0;// <gamma, L>
    double lightcone_defect = 0.0;      // <gamma, gamma>
    double trace = 0.0;                 // tr gamma
    double hermitian_defect = 0.0;      // worst of gamma, L
    bool pass = false;
};

struct ConformalityReport {
    bool pass = false;
    std::vector<ConformalitySample> samples;
    double worst_residual = 0.0;  // raw residual of the worst condition
    double worst_u = 0.0;
    std::string worst_condition;

    std::string summary() const;
};

ConformalityReport check_conformality(const BjorlingData& data, const Tolerances& tol = {});

struct OrientabilitySample {
    double u = 0.0;
    Complex d1{};            // gamma11 Lambda21 - gamma21 Lambda11
    double threshold = 0.0;  // tol * (1 + |gamma'|)
    int signed_area_sign = 0;// SA(gamma', L) sign; 0 when degenerate
};

struct OrientabilityReport {
    bool pass = false;
    bool sign_consistent = false;  // every sample has signed area sign -1
    std::vector<OrientabilitySample> samples;
    double min_abs_d1 = 0.0;
    double min_u = 0.0;

    std::string summary() const;
};

OrientabilityReport check_orientability(const BjorlingData& data, const Tolerances& tol = {});

enum class ExtractionVariant {
    FirstColumn,   // G = L11/L21, Omega = L21^2 / (L21 g11 - L11 g21)
    SecondColumn,  // G = L12/L22, Omega = L22^2 / (L22 g12 - L12 g22)
};

// Worst self-consistency residuals observed over the validation nodes.
struct ExtractionCheck {
    double g_mismatch = 0.0;       // relative
    double omega_mismatch = 0.0;   // relative
    double trace_identity = 0.0;   // relative to 1 + |Lambda||gamma|
    double reconstruction = 0.0;   // |Omega gamma - Lambda| / (1 + |Lambda|)
    double worst_u = 0.0;
};

// Weierstrass data: Omega = omega(w) dw, potential [[G, -G^2], [1, -G]] omega.
struct WeierstrassData {
    Expr g;
    Expr omega;
    std::string chart = "w";
    ExtractionVariant variant = ExtractionVariant::FirstColumn;
    ExtractionCheck check;

    Complex g_at(Complex w) const { return g.eval(w); }
    Complex omega_at(Complex w) const { return omega.eval(w); }
};

// Builds G and omega symbolically from the data. Requires both checks to
// have passed (throws ValidationError otherwise). Throws
// DataInconsistencyError when the two extraction routes disagree, the trace
// identity fails, or Omega gamma != Lambda at some node.
WeierstrassData weierstrass_from_bjorling(const BjorlingData& data, const Tolerances& tol = {});

struct WeierstrassValue {
    Complex g{};
    Complex omega{};
    ExtractionVariant variant = ExtractionVariant::FirstColumn;
};

// Numerical (G, omega) at w, switching to the second-column formulas when
// |Lambda22| > |Lambda21|.
WeierstrassValue weierstrass_at(const BjorlingData& data, Complex w);

}  // namespace lightcone
