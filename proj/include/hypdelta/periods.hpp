#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>

#include "hypdelta/curve.hpp"

namespace hypdelta {

using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;
using MatR = Eigen::MatrixXd;

struct PeriodsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ContourQuadConfig {
    int cheb_start = 64;
    int cheb_max = 4096;
    double rel_tol = 1e-12;
    double tau_symmetry_tol = 1e-8;
};

/// Period matrices of the differentials mu_k = x^{k-1} dx / 2y over the
/// canonical symplectic homology basis attached to the root ordering:
/// A_k encircles the cut (a_{2k-1}, a_{2k}); B_k runs from that cut along
/// the spine through the cut to infinity.
struct PeriodData {
    MatC mu;        // A-periods, mu(k,j) = period of mu_{k+1} over A_{j+1}
    MatC mu_prime;  // B-periods
    MatC tau;       // mu^{-1} mu_prime
    cx det_mu;
    MatR Y;     // Im tau
    MatR Yinv;
    MatR Ychol;  // upper-triangular R with Y = R^T R
    double det_Y = 0.0;
    double lambda_min = 0.0;  // smallest eigenvalue of Y
    double tau_symmetry_residual = 0.0;

    double hodge_norm() const { return det_Y * std::norm(det_mu); }
};

/// Specification of the homology basis as chains of spine-segment integrals;
/// exposed mainly for diagnostics.
struct HomologyBasis {
    int genus = 0;
    // A_k = 2 * segment(2k-1); B_k = 2 * sum_{m=2k..2g} segment(m)
    std::vector<std::vector<int>> a_chains;
    std::vector<std::vector<int>> b_chains;
};

HomologyBasis canonical_homology(const CurveSpec& curve);

class PeriodEngine {
public:
    explicit PeriodEngine(const CurveSpec& curve, ContourQuadConfig cfg = {});
    /// Rebuild from precomputed period matrices (cache path); skips the
    /// contour quadrature but revalidates tau.
    PeriodEngine(const CurveSpec& curve, ContourQuadConfig cfg, const MatC& mu, const MatC& mu_prime);

    const CurveSpec& curve() const { return curve_; }
    const CutSystem& cuts() const { return cuts_; }
    const PeriodData& periods() const { return data_; }
    const ContourQuadConfig& config() const { return cfg_; }

    /// Abel-Jacobi map with base point infinity; value modulo the period
    /// lattice. For finite points the sheet is taken from P.y (matched
    /// against the reference branch).
    VecC abel_jacobi(const SurfacePoint& P) const;
    VecC abel_jacobi_branch(int root_index) const;  // cached

    /// AJ image of a point in the chart x = t^{-2} about infinity
    /// (straight t-path from 0; the whole chart is cut-free).
    VecC aj_from_t(cx t) const;
    /// z_g coordinate of the t-chart point (last AJ component).
    cx z_g_from_t(cx t) const;

    cx h_poly(cx t) const;            // prod_k (1 - a_k t^2)
    cx sqrt_h(cx t) const;            // branch continued from +1 at t = 0
    cx y_chart(cx t) const;           // -t^{-(2g+1)} sqrt_h(t)

    /// Integral of the differential vector along the straight segment
    /// [x0, x1] on the branch sigma * y0 (sigma = +-1). The segment must
    /// not meet a cut; endpoints may be branch points.
    VecC segment_integral(cx x0, cx x1, int sigma) const;

    /// w = mu^{-1} z, the normalized coordinates the theta function uses.
    VecC normalize(const VecC& z) const { return mu_lu_.solve(z); }

    /// Reduce z modulo the period lattice; optionally returns the integer
    /// coefficients removed and the pre-rounding real coordinates.
    VecC reduce_mod_lattice(const VecC& z, Eigen::VectorXd* int_coeffs = nullptr,
                            Eigen::VectorXd* raw_coords = nullptr) const;
    /// Euclidean distance from z to the nearest lattice point.
    double lattice_distance(const VecC& z) const;

    /// |z_k - z_g^{2(g-k)+1} / (2(g-k)+1)| for k = 1..g-1 at the t-chart point.
    std::vector<double> local_coordinate_residual(cx t) const;

    double hodge_norm() const { return data_.hodge_norm(); }
    /// Gram matrix (i/2)(mu mu'^H - mu' mu^H) of the mu_k, from the
    /// bilinear relations; Hermitian positive definite.
    MatC gram_hodge() const;

    /// Escape direction with maximal angular clearance from all cuts,
    /// as seen from x (used to route integration paths to infinity).
    cx escape_direction(cx x) const;

private:
    void finalize_periods();
    VecC spine_segment(int m) const;  // integral over segment m (1-based), left branch
    VecC integrate_x_leg(cx x_from, cx x_to, int sigma) const;
    VecC integrate_branch_leg(cx x_from, cx branch_point, int sigma) const;
    VecC aj_finite(cx x, cx y) const;

    CurveSpec curve_;
    CutSystem cuts_;
    ContourQuadConfig cfg_;
    PeriodData data_;
    Eigen::PartialPivLU<MatC> mu_lu_;
    Eigen::FullPivLU<MatR> lattice_lu_;
    mutable std::map<int, VecC> branch_aj_cache_;
};

}  // namespace hypdelta
