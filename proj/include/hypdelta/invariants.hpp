#pragma once

#include <memory>
#include <optional>

#include "hypdelta/curve.hpp"
#include "hypdelta/periods.hpp"
#include "hypdelta/quad2d.hpp"
#include "hypdelta/theta.hpp"
#include "hypdelta/wronskian.hpp"

namespace hypdelta {

struct InvariantsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Surface quadrature configuration.
struct QuadConfig {
    std::string method = "adaptive";  // "adaptive" | "mc"
    long budget = 40000000;           // integrand evaluations across all charts
    double rel_tol = 1e-3;            // absolute tolerance on log-scale quantities
    unsigned long seed = 12345;
};

/// Geometric ladder + Richardson extrapolation of a one-sided limit.
struct LimitConfig {
    double h0 = 0.2;   // first step of the ladder
    int levels = 7;    // h_j = h0 * 2^{-j}, j = 0..levels-1
    double ray_angle = 0.0;
};

struct LimitResult {
    double value = 0.0;
    double measured_order = 0.0;   // slope of the pre-extrapolation differences
    double error_estimate = 0.0;   // size of the accepted Richardson update
    std::vector<double> ladder;    // raw values
};

/// Richardson extrapolation of V(h_j), h_j = h0 2^{-j}, assuming correction
/// orders order0, order0 + step, ... Entries whose relative noise exceeds
/// noise_cut are dropped from the tail of the ladder.
LimitResult richardson_limit(const std::vector<double>& values, int order0 = 1, int step = 1,
                             const std::vector<double>* rel_noise = nullptr,
                             double noise_cut = 1e-6);

struct SXResult {
    double log_S = 0.0;
    double err_estimate = 0.0;
    long evals = 0;
};

/// A(W'') limits at the model's own infinity, for every Weierstrass point.
struct LeadingLimits {
    std::vector<double> log_A;  // index 0..2g: finite branch points; 2g+1: infinity itself
    double min_order = 0.0;     // worst measured extrapolation order
    double log_B = 0.0;
    double order_B = 0.0;
    double log_A_closed_residual = 0.0;  // A(W) vs its closed form, relative
    double log_B_closed_residual = 0.0;
};

/// New model with the chosen finite branch point sent to infinity via
/// x -> 1/(x - a_j) (and infinity to 0); the defining polynomial stays
/// monic of the same degree.
CurveSpec mobius_infinity_model(const CurveSpec& curve, int root_index);

/// Everything the analytic invariants need for one curve model: periods,
/// theta engine, the vanishing characteristic, and cached AJ images.
class InvariantContext {
public:
    explicit InvariantContext(const CurveSpec& curve, ContourQuadConfig pcfg = {},
                              ThetaConfig tcfg = {});
    /// Cache path: periods supplied instead of integrated.
    InvariantContext(const CurveSpec& curve, ContourQuadConfig pcfg, ThetaConfig tcfg,
                     const MatC& mu, const MatC& mu_prime);

    /// Deterministic generic finite point (away from branch points and
    /// cuts); distinct k give distinct points.
    SurfacePoint generic_point(int k = 0) const;

    const CurveSpec& curve() const { return curve_; }
    const PeriodEngine& periods() const { return pe_; }
    const ThetaEngine& theta() const { return th_; }
    const CharTable& table() const { return table_; }
    const ThetaChar& delta() const { return delta_; }
    int genus() const { return g_; }
    int weierstrass_weight() const { return g_ * (g_ - 1) / 2; }

    /// AJ image of Weierstrass point idx (0..2g finite, 2g+1 = infinity).
    const VecC& aj_weierstrass(int idx) const { return aj_w_[idx]; }

    /// log ||theta||(z) with the curve's own delta.
    double log_norm(const VecC& z) const { return faltings_norm_log(pe_, th_, delta_, z); }

    double log_phi() const;            // log |phi_g(tau)|
    double log_petersson() const;      // log ||phi_g||
    double log_delta_norm() const;     // log ||Delta_g|| = -(4g+4) n log 2 + log ||phi_g||

    /// Arakelov (1,1)-form density against the plane measure, finite chart
    /// (independent of the sheet) or the t-chart about infinity.
    double mu_density_x(cx x) const;
    double mu_density_t(cx t) const;

    /// Total mass of mu; equals 1 up to quadrature error.
    Quad2DResult mu_mass(const QuadConfig& qc) const;

    /// log S(X) = -int log||theta||(g P - Q) d mu(P), Q defaulting to a
    /// deterministic generic point.
    SXResult log_S(const QuadConfig& qc, std::optional<SurfacePoint> Q = std::nullopt) const;

    /// Arakelov-Green function via the closed formula; P must not be a
    /// Weierstrass point.
    double green_log(const SurfacePoint& P, const SurfacePoint& Q, double log_S_value) const;
    double green_prime_log(const SurfacePoint& P, const SurfacePoint& Q, double log_S_value) const {
        return green_log(P, Q, log_S_value) - log_S_value / (g_ * g_ * g_);
    }

    /// int log G(P, .) d mu; vanishes for the true Green function.
    Quad2DResult green_normalization(const SurfacePoint& P, double log_S_value,
                                     const QuadConfig& qc) const;

    /// log ||F_z||(P) with z = x - x_P, by a Richardson ladder in the
    /// distance to P along ray_angle.
    LimitResult f_norm_log(const SurfacePoint& P, LimitConfig lc = {}) const;

    double wronskian_x_log(const SurfacePoint& P) const;  // log |W_x(mu)(P)|

    /// Leading-coefficient limits at this model's infinity, z_g ladder.
    LeadingLimits leading_limits(LimitConfig lc = {}) const;

    double log_A_closed() const;  // closed form for A(W) at infinity
    double log_B_closed() const;

    /// T(X) by definition at a generic point P, and by the closed formula.
    double t_def_log(const SurfacePoint& P, LimitConfig lc = {}) const;
    double t_closed_log() const;

    /// delta(X): Corollary route from log S and log ||Delta_g||, and the
    /// direct route from T by definition.
    double delta_closed(double log_S_value) const;
    double delta_from_T(double log_S_value, double t_def_log_value) const;

    /// log G'(W, W') for W = infinity of this model and W' = finite branch
    /// point index, via the leading-coefficient route (S cancels).
    double green_prime_log_infinity(int root_index, const LeadingLimits& ll) const;

    /// sum over W' != W of log G'(W, W'), W = this model's infinity.
    double green_prime_log_sum(const LeadingLimits& ll) const;

private:
    CurveSpec curve_;
    PeriodEngine pe_;
    ThetaEngine th_;
    CharTable table_;
    ThetaChar delta_;
    int g_;
    std::vector<VecC> aj_w_;
    MatC gram_inv_;
    mutable std::optional<double> log_phi_cache_;
};

/// Theorem-level consistency checks for the full curve (all Weierstrass
/// models are built internally).
struct ThmMainResult {
    std::vector<double> lhs_log;  // (g-1)^2 sum_{W' != W} log G'(W, W'), per W
    double rhs_log = 0.0;
    double residual = 0.0;        // max over W of |exp(lhs - rhs) - 1|
    double spread = 0.0;          // max - min of lhs_log
    double min_order = 0.0;
};

struct ThmSecondResult {
    double lhs_log = 0.0;
    double rhs_log = 0.0;
    double residual = 0.0;
};

class TheoremChecker {
public:
    TheoremChecker(const CurveSpec& curve, ContourQuadConfig pcfg = {}, ThetaConfig tcfg = {},
                   LimitConfig lc = {});

    const InvariantContext& base() const { return *base_; }

    /// Per-Weierstrass-point contexts are built lazily and cached.
    const InvariantContext& model(int w_index) const;  // 0..2g finite, 2g+1 = base
    const LeadingLimits& limits(int w_index) const;

    ThmMainResult thm_main(double t_log) const;
    ThmSecondResult thm_second(double t_log) const;

    /// g = 2 only: relative residual of
    /// G'(W,W')^2 = 2^{1/4} ||phi_2||^{-3/64} prod_{W'' != W,W'} ||theta||(W - W' + W'').
    double g2_remark_residual(int w_prime_index) const;

    /// Exploratory ratio log( G'(W,W')^g / prod ||theta||(W-W'+sum W_i) ),
    /// reported only, never asserted.
    double exploratory_ratio_log(int w_prime_index) const;

private:
    ContourQuadConfig pcfg_;
    ThetaConfig tcfg_;
    LimitConfig lc_;
    std::unique_ptr<InvariantContext> base_;
    mutable std::vector<std::unique_ptr<InvariantContext>> models_;
    mutable std::vector<std::unique_ptr<LeadingLimits>> limits_;
};

}  // namespace hypdelta
