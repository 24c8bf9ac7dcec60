#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypdelta {

using cx = std::complex<double>;

struct CurveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BuildOptions {
    double separability_eps_rel = 1e-8;            // eps = rel * (1 + max|a_k|)
    std::optional<std::vector<int>> ordering;      // user permutation of the raw roots
};

class CurveSpec;
namespace detail {
CurveSpec finish_build(std::vector<cx> raw_roots, const std::string& origin, const BuildOptions& opt);
}

/// Hyperelliptic curve y^2 = f(x), f monic separable of odd degree 2g+1.
/// Roots are stored in the ordering the homology construction relies on.
class CurveSpec {
public:
    int genus() const { return genus_; }
    int degree() const { return 2 * genus_ + 1; }
    const std::vector<cx>& roots() const { return roots_; }
    /// lambda_k, k=1..2g+1: f = x^{2g+1} + lambda_1 x^{2g} + ... + lambda_{2g+1}
    const std::vector<cx>& coefficients() const { return coeffs_; }
    const std::string& origin() const { return origin_; }
    const std::vector<int>& ordering() const { return ordering_; }
    const std::string& ordering_kind() const { return ordering_kind_; }
    double scale() const { return scale_; }

    cx f(cx x) const;
    cx fprime(cx x) const;

    /// prod_{k<l} (a_k - a_l)^2
    cx discriminant() const;
    /// log of |D| and arg of D, overflow-safe
    void discriminant_log(double& log_abs, double& arg) const;

    friend CurveSpec detail::finish_build(std::vector<cx>, const std::string&, const BuildOptions&);

private:
    int genus_ = 0;
    std::vector<cx> roots_;
    std::vector<cx> coeffs_;
    std::string origin_;
    std::vector<int> ordering_;
    std::string ordering_kind_;
    double scale_ = 1.0;
};

CurveSpec build_curve_from_roots(const std::vector<cx>& roots, const BuildOptions& opt = {});
/// `coeffs` is the full coefficient list, leading term first; must be monic
/// of odd degree >= 5.
CurveSpec build_curve_from_coefficients(const std::vector<cx>& coeffs, const BuildOptions& opt = {});

/// Point on the surface. chart: 0 = finite (x,y), 1 = infinity.
struct SurfacePoint {
    int chart = 0;  // 0 finite, 1 infinity
    cx x{};
    cx y{};
    static SurfacePoint infinity() { return SurfacePoint{1, cx(0), cx(0)}; }
    bool is_infinity() const { return chart == 1; }
};

struct WeierstrassSet {
    std::vector<SurfacePoint> points;  // 2g+1 finite branch points then infinity
    int weight_each = 0;               // g(g-1)/2
    long total_weight = 0;             // (2g+2) * weight = g^3 - g
};

WeierstrassSet weierstrass_points(const CurveSpec& curve);

/// Branch-cut geometry and the cut-plane branch y0 of sqrt(f).
///
/// Cuts pair consecutive roots (a1,a2), (a3,a4), ... and a ray runs from
/// a_{2g+1} to infinity. y0 is built as a product of per-cut square-root
/// factors, so it is single valued exactly off the cuts, and crossing one
/// cut flips the sign.
class CutSystem {
public:
    explicit CutSystem(const CurveSpec& curve);

    int genus() const { return g_; }
    const std::vector<cx>& roots() const { return roots_; }
    double chart_radius() const { return R0_; }  // |x| = R0 switches to the t-chart
    cx ray_base() const { return roots_.back(); }
    cx ray_direction() const { return ray_dir_; }

    /// Reference branch of sqrt(f(x)); throws if x is on a cut.
    cx y0(cx x) const;
    /// y0 with the factor of cut k (1-based) removed; finite on that cut.
    cx rest_excluding(int cut_k, cx x) const;

    int num_cuts() const { return g_; }  // finite-segment cuts
    void cut_endpoints(int cut_k, cx& p, cx& q) const;

    double distance_to_cuts(cx x) const;
    /// True if the open segment (p,q) meets any cut. Roots within
    /// `ignore_radius` of an endpoint are not counted.
    bool segment_hits_cuts(cx p, cx q, double ignore_radius = 0.0) const;

    bool validate(std::string* why = nullptr) const;

private:
    cx u_factor(int k, cx x) const;
    cx v_factor(cx x) const;

    int g_;
    std::vector<cx> roots_;
    cx ray_dir_;
    double R0_;
    double scale_;
};

/// y on a given sheet relative to the CutSystem branch: sheet 0 is y0.
cx y_on_sheet(const CutSystem& cuts, cx x, int sheet);

/// Continue a value of sqrt(f) along a sampled path (no cut bookkeeping;
/// pure continuity tracking). `path` must avoid branch points.
cx continue_sqrt_f(const CurveSpec& curve, const std::vector<cx>& path, cx y_start);

// geometry helpers
double point_segment_distance(cx p, cx a, cx b);
bool segments_intersect(cx a, cx b, cx c, cx d);

}  // namespace hypdelta
