#pragma once

// Numerical surface theory in Q3+: tangent vectors, the lightlike Gauss map,
// second fundamental form and curvatures.

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "lightcone/frame.hpp"
#include "lightcone/lorentz.hpp"

namespace lightcone {

struct SurfaceJet {
    Herm2 x;
    Herm2 xu;
    Herm2 xv;
};

// Position and first derivatives at (u, v). May throw for points outside the
// surface's domain.
using JetFunction = std::function<SurfaceJet(double u, double v)>;

// Exact tangents from the frame equation: X_z = M X, Xu = MX + (MX)*,
// Xv = i (MX - (MX)*).
std::pair<Herm2, Herm2> tangent_vectors(const WeierstrassData& wd, const Mat2C& f, const Herm2& x, Complex w);

// Jet of the integrated surface near a node: F at nearby points comes from a
// short integration started at (w0, f0).
JetFunction frame_jet(const WeierstrassData& wd, Complex w0, const Mat2C& f0, const StepControl& control = {});

// Jet of an arbitrary parametrization with central-difference tangents
// (one Richardson level).
JetFunction finite_difference_jet(std::function<Herm2(double, double)> surface, double h = 1e-4);

struct GaussMap {
    Herm2 n;
    // |<n,n>|/|n|^2, |<n,Xu>|/(|n||Xu|), |<n,Xv>|/(|n||Xv|), |<n,X> - 1|
    std::array<double, 4> residuals{};
    double max_residual() const;
};

// Solves <Y,Xu> = <Y,Xv> = 0, <Y,X> = 1 (minimum-norm particular solution)
// and returns n = Y - <Y,Y>/2 X. Throws DegenerateInputError when the
// tangent plane is degenerate.
GaussMap gauss_map(const Herm2& x, const Herm2& xu, const Herm2& xv);
// Same construction from a caller-chosen particular solution shifted by
// t X; used to probe uniqueness.
GaussMap gauss_map_shifted(const Herm2& x, const Herm2& xu, const Herm2& xv, double t);

struct SecondFundamental {
    double lff = 0.0;     // -<Xu, n_u>
    double m = 0.0;       // -<Xu, n_v>
    double m_alt = 0.0;   // -<Xv, n_u>
    double n = 0.0;       // -<Xv, n_v>
};

// n-derivatives by central differences of step h with one Richardson level.
SecondFundamental second_fundamental(const JetFunction& jet, double u, double v, double h);
SecondFundamental second_fundamental(const WeierstrassData& wd, const Mat2C& f, Complex w, double h,
                                     const StepControl& control = {});

struct PointDiagnostics {
    double u = 0.0, v = 0.0;
    // First fundamental form.
    double e = 0.0, f = 0.0, g = 0.0;
    double phi2 = 0.0;                 // (E + G) / 2
    double conformality_defect = 0.0;  // max(|E - G|, 2|F|) / (E + G)
    Herm2 normal;
    std::array<double, 4> gauss_residuals{};
    SecondFundamental second;
    double h = 0.0;  // mean curvature
    double k = 0.0;  // extrinsic Gaussian curvature
    double m_symmetry = 0.0;  // |M - M_alt|
};

// H = (E N - 2 F M + G L) / (2 (EG - F^2)), K = (L N - M^2) / (EG - F^2);
// in conformal coordinates these are (L + N) / (2 phi^2) and
// (L N - M^2) / phi^4. Throws DegenerateMetricError when EG - F^2 <= tol.
std::pair<double, double> curvatures(const PointDiagnostics& d, double tol = 1e-14);

PointDiagnostics diagnose_point(const JetFunction& jet, double u, double v, double h);

struct NodeDiagnostics {
    bool valid = false;
    PointDiagnostics point;
    double lightcone_residual = 0.0;  // |<X,X>|, absolute
    double det_drift = 0.0;
    std::string error;
};

// Diagnostics at every valid node of an integrated grid. Step h is
// relative_step * min(du, dv).
std::vector<NodeDiagnostics> diagnose_grid(const SurfaceGrid& grid, double relative_step = 1e-4,
                                           const StepControl& control = {}, unsigned threads = 0);

// Diagnostics of a parametrization sampled on a grid (closed forms).
std::vector<NodeDiagnostics> diagnose_parametrization(const JetFunction& jet, const GridSpec& grid,
                                                      double relative_step = 1e-4, unsigned threads = 0);

}  // namespace lightcone
