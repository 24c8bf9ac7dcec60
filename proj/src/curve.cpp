#include "hypdelta/curve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hypdelta {

namespace {

std::vector<cx> coefficients_from_roots(const std::vector<cx>& roots) {
    std::vector<cx> c{cx(1.0)};  // leading
    for (cx r : roots) {
        c.push_back(cx(0.0));
        for (std::size_t i = c.size() - 1; i >= 1; --i) c[i] = c[i] - r * c[i - 1];
    }
    return {c.begin() + 1, c.end()};  // drop the leading 1
}

std::vector<cx> roots_from_coefficients(const std::vector<cx>& lambda) {
    int n = static_cast<int>(lambda.size());
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -lambda[n - 1 - i];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) throw CurveError("root finder did not converge");
    std::vector<cx> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()(i);
    // Newton polish
    auto f = [&](cx x) {
        cx v(1.0);
        for (cx l : lambda) v = v * x + l;
        return v;
    };
    auto fp = [&](cx x) {
        cx v(static_cast<double>(n));
        for (int k = 0; k < n - 1; ++k) v = v * x + cx(static_cast<double>(n - 1 - k)) * lambda[k];
        return v;
    };
    for (auto& r : roots)
        for (int it = 0; it < 3; ++it) {
            cx d = fp(r);
            if (std::abs(d) == 0.0) break;
            r -= f(r) / d;
        }
    return roots;
}

bool lex_less(cx a, cx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace

cx CurveSpec::f(cx x) const {
    cx v(1.0);
    for (cx l : coeffs_) v = v * x + l;
    return v;
}

cx CurveSpec::fprime(cx x) const {
    int n = degree();
    cx v(static_cast<double>(n));
    for (int k = 0; k < n - 1; ++k) v = v * x + cx(static_cast<double>(n - 1 - k)) * coeffs_[k];
    return v;
}

cx CurveSpec::discriminant() const {
    cx d(1.0);
    for (std::size_t k = 0; k < roots_.size(); ++k)
        for (std::size_t l = k + 1; l < roots_.size(); ++l) {
            cx diff = roots_[k] - roots_[l];
            d *= diff * diff;
        }
    return d;
}

void CurveSpec::discriminant_log(double& log_abs, double& arg) const {
    log_abs = 0.0;
    arg = 0.0;
    for (std::size_t k = 0; k < roots_.size(); ++k)
        for (std::size_t l = k + 1; l < roots_.size(); ++l) {
            cx diff = roots_[k] - roots_[l];
            log_abs += 2.0 * std::log(std::abs(diff));
            arg += 2.0 * std::arg(diff);
        }
    arg = std::remainder(arg, 2.0 * M_PI);
}

namespace detail {

CurveSpec finish_build(std::vector<cx> raw_roots, const std::string& origin, const BuildOptions& opt) {
    int n = static_cast<int>(raw_roots.size());
    if (n < 5 || n % 2 == 0) throw CurveError("degree must be odd and >= 5");

    std::vector<int> perm(n);
    std::string kind;
    if (opt.ordering) {
        perm = *opt.ordering;
        kind = "user";
        std::vector<int> sorted(perm);
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < n; ++i)
            if (sorted[i] != i) throw CurveError("ordering is not a permutation of 0..2g");
    } else {
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(),
                  [&](int i, int j) { return lex_less(raw_roots[i], raw_roots[j]); });
        kind = "lexicographic";
    }

    auto apply = [&](const std::vector<int>& p) {
        std::vector<cx> out(n);
        for (int i = 0; i < n; ++i) out[i] = raw_roots[p[i]];
        return out;
    };

    CurveSpec c;
    c.genus_ = (n - 1) / 2;
    c.roots_ = apply(perm);
    c.ordering_ = perm;
    c.ordering_kind_ = kind;
    c.origin_ = origin;

    double scale = 0.0;
    for (cx r : c.roots_) scale = std::max(scale, std::abs(r));
    c.scale_ = std::max(scale, 1e-6);

    double eps = opt.separability_eps_rel * (1.0 + scale);
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l)
            if (std::abs(c.roots_[k] - c.roots_[l]) <= eps) {
                std::ostringstream os;
                os << "roots " << k << " and " << l << " closer than separability eps " << eps;
                throw CurveError(os.str());
            }

    c.coeffs_ = coefficients_from_roots(c.roots_);

    // If the canonical ordering produces an invalid cut geometry, fall back
    // to an angular ordering about the centroid.
    if (!opt.ordering) {
        CutSystem cuts(c);
        std::string why;
        if (!cuts.validate(&why)) {
            cx centroid(0.0);
            for (cx r : c.roots_) centroid += r;
            centroid /= static_cast<double>(n);
            std::vector<int> ang(n);
            std::iota(ang.begin(), ang.end(), 0);
            std::sort(ang.begin(), ang.end(), [&](int i, int j) {
                double ai = std::arg(raw_roots[i] - centroid), aj = std::arg(raw_roots[j] - centroid);
                if (ai != aj) return ai < aj;
                return std::abs(raw_roots[i] - centroid) < std::abs(raw_roots[j] - centroid);
            });
            c.roots_ = apply(ang);
            c.ordering_ = ang;
            c.ordering_kind_ = "angular";
            c.coeffs_ = coefficients_from_roots(c.roots_);
            CutSystem cuts2(c);
            if (!cuts2.validate(&why))
                throw CurveError("no valid cut geometry for this root set: " + why);
        }
    } else {
        CutSystem cuts(c);
        std::string why;
        if (!cuts.validate(&why)) throw CurveError("user ordering gives invalid cut geometry: " + why);
    }
    return c;
}

}  // namespace detail

CurveSpec build_curve_from_roots(const std::vector<cx>& roots, const BuildOptions& opt) {
    return detail::finish_build(roots, "roots", opt);
}

CurveSpec build_curve_from_coefficients(const std::vector<cx>& coeffs, const BuildOptions& opt) {
    if (coeffs.size() < 2) throw CurveError("coefficient list too short");
    if (std::abs(coeffs[0] - cx(1.0)) > 1e-12) throw CurveError("polynomial must be monic");
    int degree = static_cast<int>(coeffs.size()) - 1;
    if (degree % 2 == 0) throw CurveError("degree must be odd (odd hyperelliptic model)");
    if (degree < 5) throw CurveError("degree must be >= 5 (genus >= 2)");
    std::vector<cx> lambda(coeffs.begin() + 1, coeffs.end());
    std::vector<cx> roots = roots_from_coefficients(lambda);
    CurveSpec c = detail::finish_build(roots, "coefficients", opt);
    // residual check against the supplied polynomial
    double scale = 0.0;
    for (cx r : roots) scale = std::max(scale, std::abs(r));
    double bound = 1e-8 * std::pow(1.0 + scale, degree);
    for (cx r : c.roots()) {
        cx v(1.0);
        for (cx l : lambda) v = v * r + l;
        if (std::abs(v) > bound) throw CurveError("root residual too large; input polynomial ill-conditioned");
    }
    return c;
}

WeierstrassSet weierstrass_points(const CurveSpec& curve) {
    WeierstrassSet w;
    int g = curve.genus();
    for (cx r : curve.roots()) w.points.push_back(SurfacePoint{0, r, cx(0.0)});
    w.points.push_back(SurfacePoint::infinity());
    w.weight_each = g * (g - 1) / 2;
    w.total_weight = static_cast<long>(w.points.size()) * w.weight_each;
    return w;
}

// ---------------------------------------------------------------------------
// geometry helpers

double point_segment_distance(cx p, cx a, cx b) {
    cx d = b - a;
    double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a) * std::conj(d)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

namespace {
int orient(cx a, cx b, cx c) {
    double v = ((b - a) * std::conj(c - a)).imag();
    // sign with a tolerance tied to the magnitudes involved
    double s = 1e-14 * (std::abs(b - a) * std::abs(c - a) + 1e-300);
    if (v > s) return 1;
    if (v < -s) return -1;
    return 0;
}
bool on_segment(cx a, cx b, cx p) {
    return std::min(a.real(), b.real()) - 1e-14 <= p.real() && p.real() <= std::max(a.real(), b.real()) + 1e-14 &&
           std::min(a.imag(), b.imag()) - 1e-14 <= p.imag() && p.imag() <= std::max(a.imag(), b.imag()) + 1e-14;
}
}  // namespace

bool segments_intersect(cx a, cx b, cx c, cx d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// CutSystem

CutSystem::CutSystem(const CurveSpec& curve)
    : g_(curve.genus()), roots_(curve.roots()), scale_(curve.scale()) {
    R0_ = 2.0 * scale_;
    // ray direction: away from the centroid, rotated until clear of the spine
    cx centroid(0.0);
    for (cx r : roots_) centroid += r;
    centroid /= static_cast<double>(roots_.size());
    cx base = roots_.back();
    cx d0 = base - centroid;
    double phi0 = (std::abs(d0) < 1e-12 * scale_) ? 0.0 : std::arg(d0);
    ray_dir_ = std::polar(1.0, phi0);
    for (int attempt = 0; attempt < 72; ++attempt) {
        double phi = phi0 + attempt * (M_PI / 36.0);
        cx dir = std::polar(1.0, phi);
        // test the ray clipped far beyond the root cluster
        cx far = base + dir * (10.0 * R0_ + 10.0);
        bool clear = true;
        int n = static_cast<int>(roots_.size());
        for (int m = 0; m + 1 < n && clear; ++m) {
            // skip spine segments incident to the base point
            if (m + 1 == n - 1) {
                // segment [a_{2g}, a_{2g+1}] touches the base; test it shifted off the base
                cx p = roots_[m], q = roots_[m + 1];
                cx qs = q + (p - q) * 1e-9;
                if (segments_intersect(base + dir * (1e-9 * scale_), far, p, qs)) clear = false;
            } else if (segments_intersect(base, far, roots_[m], roots_[m + 1])) {
                clear = false;
            }
        }
        for (int k = 0; k + 1 < n && clear; ++k)
            if (point_segment_distance(roots_[k], base, far) < 1e-9 * scale_ && std::abs(roots_[k] - base) > 1e-9 * scale_)
                clear = false;
        if (clear) {
            ray_dir_ = dir;
            break;
        }
    }
}

void CutSystem::cut_endpoints(int cut_k, cx& p, cx& q) const {
    p = roots_[2 * cut_k - 2];
    q = roots_[2 * cut_k - 1];
}

cx CutSystem::u_factor(int k, cx x) const {
    cx p, q;
    cut_endpoints(k, p, q);
    cx c = 0.5 * (p + q), d = 0.5 * (q - p);
    cx w = (x - c) / d;
    return d * std::sqrt(w - 1.0) * std::sqrt(w + 1.0);
}

cx CutSystem::v_factor(cx x) const {
    // sqrt(x - a_last) with the branch cut along the ray direction
    double phi = std::arg(ray_dir_);
    cx rot = std::polar(1.0, -(phi + M_PI));
    return std::polar(1.0, 0.5 * (phi + M_PI)) * std::sqrt(rot * (x - roots_.back()));
}

cx CutSystem::y0(cx x) const {
    cx y(1.0);
    for (int k = 1; k <= g_; ++k) y *= u_factor(k, x);
    return y * v_factor(x);
}

cx CutSystem::rest_excluding(int cut_k, cx x) const {
    cx y(1.0);
    for (int k = 1; k <= g_; ++k)
        if (k != cut_k) y *= u_factor(k, x);
    return y * v_factor(x);
}

double CutSystem::distance_to_cuts(cx x) const {
    double d = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= g_; ++k) {
        cx p, q;
        cut_endpoints(k, p, q);
        d = std::min(d, point_segment_distance(x, p, q));
    }
    // ray, clipped far out
    cx base = roots_.back();
    d = std::min(d, point_segment_distance(x, base, base + ray_dir_ * (100.0 * R0_ + 100.0)));
    return d;
}

bool CutSystem::segment_hits_cuts(cx p, cx q, double ignore_radius) const {
    auto shrink = [&](cx a, cx b, cx near_pt) {
        // pull an endpoint of (a,b) off near_pt by ignore_radius
        if (std::abs(a - near_pt) < ignore_radius) a = a + (b - a) * (ignore_radius / std::max(std::abs(b - a), 1e-300));
        if (std::abs(b - near_pt) < ignore_radius) b = b + (a - b) * (ignore_radius / std::max(std::abs(a - b), 1e-300));
        return std::make_pair(a, b);
    };
    for (int k = 1; k <= g_; ++k) {
        cx a, b;
        cut_endpoints(k, a, b);
        cx pp = p, qq = q;
        if (ignore_radius > 0.0) {
            auto [p1, q1] = shrink(pp, qq, a);
            auto [p2, q2] = shrink(p1, q1, b);
            pp = p2;
            qq = q2;
        }
        if (segments_intersect(pp, qq, a, b)) return true;
    }
    cx base = roots_.back();
    cx far = base + ray_dir_ * (100.0 * R0_ + 100.0);
    cx pp = p, qq = q;
    if (ignore_radius > 0.0) {
        auto [p1, q1] = shrink(pp, qq, base);
        pp = p1;
        qq = q1;
    }
    return segments_intersect(pp, qq, base, far);
}

bool CutSystem::validate(std::string* why) const {
    int n = static_cast<int>(roots_.size());
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    // spine must be simple: non-adjacent segments disjoint
    for (int m = 0; m + 1 < n; ++m)
        for (int l = m + 2; l + 1 < n; ++l) {
            cx a = roots_[m], b = roots_[m + 1], c = roots_[l], d = roots_[l + 1];
            // shrink shared endpoint-adjacent case never happens (l >= m+2),
            // but segments may still touch at a root shared through ordering
            if (segments_intersect(a, b, c, d)) {
                std::ostringstream os;
                os << "spine segments " << m << " and " << l << " intersect";
                return fail(os.str());
            }
        }
    // no root may sit on a non-incident spine segment
    for (int k = 0; k < n; ++k)
        for (int m = 0; m + 1 < n; ++m) {
            if (m == k || m + 1 == k) continue;
            if (point_segment_distance(roots_[k], roots_[m], roots_[m + 1]) < 1e-9 * scale_) {
                std::ostringstream os;
                os << "root " << k << " lies on spine segment " << m;
                return fail(os.str());
            }
        }
    // ray must clear the spine
    cx base = roots_.back();
    cx far = base + ray_dir_ * (10.0 * R0_ + 10.0);
    for (int m = 0; m + 1 < n; ++m) {
        cx p = roots_[m], q = roots_[m + 1];
        if (m + 1 == n - 1) q = q + (p - q) * 1e-9;
        cx b2 = (m + 1 == n - 1) ? base + ray_dir_ * (1e-9 * scale_) : base;
        if (segments_intersect(b2, far, p, q)) return fail("infinity ray crosses the spine");
    }
    return true;
}

cx y_on_sheet(const CutSystem& cuts, cx x, int sheet) {
    if (sheet != 0 && sheet != 1) throw CurveError("sheet must be 0 or 1");
    for (cx r : cuts.roots())
        if (std::abs(x - r) < 1e-13 * (1.0 + std::abs(r))) throw CurveError("x is a branch point");
    if (cuts.distance_to_cuts(x) < 1e-13 * (1.0 + std::abs(x)))
        throw CurveError("x lies on a branch cut; sheet value ambiguous");
    cx y = cuts.y0(x);
    return sheet == 0 ? y : -y;
}

cx continue_sqrt_f(const CurveSpec& curve, const std::vector<cx>& path, cx y_start) {
    if (path.size() < 2) return y_start;
    cx y = y_start;
    for (std::size_t i = 1; i < path.size(); ++i) {
        cx target = curve.f(path[i]);
        cx s = std::sqrt(target);
        y = (std::abs(s - y) <= std::abs(-s - y)) ? s : -s;
    }
    return y;
}

}  // namespace hypdelta
