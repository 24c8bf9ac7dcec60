#include "hypdelta/periods.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hypdelta/quadrature.hpp"

namespace hypdelta {

namespace {
constexpr int kBSign = 1;  // global orientation of the B-chains, frozen by the Thomae check
}

HomologyBasis canonical_homology(const CurveSpec& curve) {
    HomologyBasis h;
    int g = curve.genus();
    h.genus = g;
    for (int k = 1; k <= g; ++k) {
        h.a_chains.push_back({2 * k - 1});
        // only the gap segments survive: the return leg runs on the far
        // side of the spine, so the cut segments cancel between the legs
        std::vector<int> chain;
        for (int m = 2 * k; m <= 2 * g; m += 2) chain.push_back(m);
        h.b_chains.push_back(chain);
    }
    return h;
}

PeriodEngine::PeriodEngine(const CurveSpec& curve, ContourQuadConfig cfg)
    : curve_(curve), cuts_(curve), cfg_(cfg) {
    std::string why;
    if (!cuts_.validate(&why)) throw PeriodsError("invalid cut geometry: " + why);

    int g = curve_.genus();
    std::vector<VecC> seg(2 * g + 1);  // 1-based
    for (int m = 1; m <= 2 * g; ++m) seg[m] = spine_segment(m);

    data_.mu = MatC(g, g);
    data_.mu_prime = MatC(g, g);
    for (int j = 1; j <= g; ++j) {
        VecC a = 2.0 * seg[2 * j - 1];
        VecC b = VecC::Zero(g);
        for (int m = 2 * j; m <= 2 * g; m += 2) b += seg[m];
        b *= 2.0 * static_cast<double>(kBSign);
        for (int k = 0; k < g; ++k) {
            data_.mu(k, j - 1) = a(k);
            data_.mu_prime(k, j - 1) = b(k);
        }
    }
    finalize_periods();
}

PeriodEngine::PeriodEngine(const CurveSpec& curve, ContourQuadConfig cfg, const MatC& mu,
                           const MatC& mu_prime)
    : curve_(curve), cuts_(curve), cfg_(cfg) {
    std::string why;
    if (!cuts_.validate(&why)) throw PeriodsError("invalid cut geometry: " + why);
    int g = curve_.genus();
    if (mu.rows() != g || mu.cols() != g || mu_prime.rows() != g || mu_prime.cols() != g)
        throw PeriodsError("cached period matrices have the wrong shape");
    data_.mu = mu;
    data_.mu_prime = mu_prime;
    finalize_periods();
}

void PeriodEngine::finalize_periods() {
    int g = curve_.genus();
    mu_lu_ = Eigen::PartialPivLU<MatC>(data_.mu);
    data_.det_mu = mu_lu_.determinant();
    if (!std::isfinite(std::abs(data_.det_mu)) || std::abs(data_.det_mu) < 1e-300)
        throw PeriodsError("A-period matrix is numerically singular");
    data_.tau = mu_lu_.solve(data_.mu_prime);

    double sym = (data_.tau - data_.tau.transpose()).cwiseAbs().maxCoeff() /
                 std::max(1e-300, data_.tau.cwiseAbs().maxCoeff());
    data_.tau_symmetry_residual = sym;
    if (sym > cfg_.tau_symmetry_tol) {
        std::ostringstream os;
        os << "period matrix tau fails symmetry: residual " << sym;
        throw PeriodsError(os.str());
    }
    data_.tau = 0.5 * (data_.tau + data_.tau.transpose().eval());

    data_.Y = data_.tau.imag();
    Eigen::SelfAdjointEigenSolver<MatR> es(data_.Y);
    data_.lambda_min = es.eigenvalues().minCoeff();
    if (data_.lambda_min <= 0.0)
        throw PeriodsError("Im(tau) is not positive definite; homology orientation is wrong");
    data_.Yinv = data_.Y.inverse();
    Eigen::LLT<MatR> llt(data_.Y);
    data_.Ychol = llt.matrixU();
    data_.det_Y = 1.0;
    for (int i = 0; i < g; ++i) data_.det_Y *= data_.Ychol(i, i) * data_.Ychol(i, i);

    // real 2g x 2g lattice matrix for reduction
    MatR lat(2 * g, 2 * g);
    for (int j = 0; j < g; ++j)
        for (int k = 0; k < g; ++k) {
            lat(k, j) = data_.mu(k, j).real();
            lat(k + g, j) = data_.mu(k, j).imag();
            lat(k, j + g) = data_.mu_prime(k, j).real();
            lat(k + g, j + g) = data_.mu_prime(k, j).imag();
        }
    lattice_lu_ = Eigen::FullPivLU<MatR>(lat);
}

VecC PeriodEngine::spine_segment(int m) const {
    int g = curve_.genus();
    const auto& roots = curve_.roots();
    cx p = roots[m - 1], q = roots[m];
    cx c = 0.5 * (p + q), d = 0.5 * (q - p);
    bool is_cut = (m % 2 == 1);
    int cut_k = (m + 1) / 2;

    VecC prev = VecC::Zero(g);
    std::vector<double> nodes;
    for (int n = cfg_.cheb_start; n <= cfg_.cheb_max; n *= 2) {
        gauss_chebyshev(n, nodes);
        VecC acc = VecC::Zero(g);
        for (double t : nodes) {
            cx x = c + d * t;
            cx base;  // common factor of the integrand against the Chebyshev weight
            if (is_cut) {
                // left-side boundary value: y = i d sqrt(1-t^2) rest(x)
                base = 1.0 / (2.0 * cx(0.0, 1.0) * cuts_.rest_excluding(cut_k, x));
            } else {
                base = d * std::sqrt(1.0 - t * t) / (2.0 * cuts_.y0(x));
            }
            cx xp(1.0, 0.0);
            for (int k = 0; k < g; ++k) {
                acc(k) += xp * base;
                xp *= x;
            }
        }
        acc *= M_PI / n;
        if (n > cfg_.cheb_start) {
            double diff = (acc - prev).cwiseAbs().maxCoeff();
            double size = std::max(acc.cwiseAbs().maxCoeff(), 1e-300);
            if (diff / size < cfg_.rel_tol) return acc;
        }
        prev = acc;
    }
    return prev;  // best effort at the node cap
}

cx PeriodEngine::h_poly(cx t) const {
    cx h(1.0);
    for (cx a : curve_.roots()) h *= (1.0 - a * t * t);
    return h;
}

cx PeriodEngine::sqrt_h(cx t) const {
    // continuity-tracked branch along the straight segment from 0
    const int steps = 128;
    cx prev(1.0);
    for (int i = 1; i <= steps; ++i) {
        cx ti = t * (static_cast<double>(i) / steps);
        cx s = std::sqrt(h_poly(ti));
        if (std::abs(s - prev) > std::abs(s + prev)) s = -s;
        prev = s;
    }
    return prev;
}

cx PeriodEngine::y_chart(cx t) const {
    int g = curve_.genus();
    return -std::pow(t, -(2 * g + 1)) * sqrt_h(t);
}

VecC PeriodEngine::aj_from_t(cx t_end) const {
    int g = curve_.genus();
    if (std::abs(t_end) == 0.0) return VecC::Zero(g);
    VecC prev = VecC::Zero(g);
    std::vector<double> xs, ws;
    for (int n = 32; n <= 1024; n *= 2) {
        gauss_legendre(n, xs, ws);
        VecC acc = VecC::Zero(g);
        cx track(1.0);
        for (int i = 0; i < n; ++i) {
            cx t = t_end * 0.5 * (xs[i] + 1.0);
            cx s = std::sqrt(h_poly(t));
            if (std::abs(s - track) > std::abs(s + track)) s = -s;
            track = s;
            cx tp(1.0);
            // components in reverse: exponent 2(g-k) for k = 1..g
            for (int k = g - 1; k >= 0; --k) {
                acc(k) += ws[i] * tp / s;
                tp *= t * t;
            }
        }
        acc *= 0.5 * t_end;
        if (n > 32) {
            double diff = (acc - prev).cwiseAbs().maxCoeff();
            double size = std::max(acc.cwiseAbs().maxCoeff(), 1e-300);
            if (diff / size < 1e-11) return acc;
        }
        prev = acc;
    }
    return prev;
}

cx PeriodEngine::z_g_from_t(cx t) const { return aj_from_t(t)(curve_.genus() - 1); }

namespace {

// adaptive Gauss-Legendre on a parametrized leg, vector-valued
template <typename F>
VecC adaptive_gl(const F& eval, double a, double b, int dim, double abs_tol, int depth = 0) {
    std::vector<double> x16, w16, x32, w32;
    gauss_legendre(16, x16, w16);
    gauss_legendre(32, x32, w32);
    VecC c16 = VecC::Zero(dim), c32 = VecC::Zero(dim);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < 16; ++i) c16 += w16[i] * eval(mid + half * x16[i]);
    for (int i = 0; i < 32; ++i) c32 += w32[i] * eval(mid + half * x32[i]);
    c16 *= half;
    c32 *= half;
    double diff = (c32 - c16).cwiseAbs().maxCoeff();
    if (diff <= abs_tol || depth >= 16) return c32;
    return adaptive_gl(eval, a, mid, dim, 0.5 * abs_tol, depth + 1) +
           adaptive_gl(eval, mid, b, dim, 0.5 * abs_tol, depth + 1);
}

}  // namespace

VecC PeriodEngine::integrate_x_leg(cx x_from, cx x_to, int sigma) const {
    int g = curve_.genus();
    cx d = x_to - x_from;
    auto eval = [&](double s) {
        cx x = x_from + d * s;
        cx y = static_cast<double>(sigma) * cuts_.y0(x);
        VecC v(g);
        cx xp(1.0);
        for (int k = 0; k < g; ++k) {
            v(k) = xp * d / (2.0 * y);
            xp *= x;
        }
        return v;
    };
    double scale = std::max(1.0, std::abs(d));
    return adaptive_gl(eval, 0.0, 1.0, g, 1e-12 * scale);
}

VecC PeriodEngine::integrate_branch_leg(cx branch_point, cx x_to, int sigma) const {
    // integral from the branch point to x_to; x = b + w^2 removes the
    // inverse square-root endpoint singularity
    int g = curve_.genus();
    cx w1 = std::sqrt(x_to - branch_point);
    auto eval = [&](double s) {
        cx w = w1 * s;
        cx x = branch_point + w * w;
        cx y = static_cast<double>(sigma) * cuts_.y0(x);
        VecC v(g);
        cx xp(1.0);
        for (int k = 0; k < g; ++k) {
            v(k) = xp * w * w1 / y;
            xp *= x;
        }
        return v;
    };
    return adaptive_gl(eval, 0.0, 1.0, g, 1e-12);
}

VecC PeriodEngine::segment_integral(cx x0, cx x1, int sigma) const {
    double eps = 1e-11 * (1.0 + curve_.scale());
    auto is_branch = [&](cx x) {
        for (cx a : curve_.roots())
            if (std::abs(x - a) < eps) return true;
        return false;
    };
    bool b0 = is_branch(x0), b1 = is_branch(x1);
    if (b0 && b1) throw PeriodsError("segment_integral: both endpoints are branch points");
    if (b0) return integrate_branch_leg(x0, x1, sigma);
    if (b1) {
        VecC v = integrate_branch_leg(x1, x0, sigma);
        return -v;
    }
    return integrate_x_leg(x0, x1, sigma);
}

cx PeriodEngine::escape_direction(cx x) const {
    // blocked angular intervals, one per cut, as seen from x
    struct Arc {
        double lo, width;
    };
    std::vector<Arc> arcs;
    auto add_arc = [&](double alpha, double beta) {
        double w = std::remainder(beta - alpha, 2.0 * M_PI);
        double lo = alpha, width = w;
        if (width < 0.0) {
            lo = alpha + width;
            width = -width;
        }
        const double margin = 1e-4;
        lo -= margin;
        width += 2.0 * margin;
        lo = std::fmod(lo, 2.0 * M_PI);
        if (lo < 0.0) lo += 2.0 * M_PI;
        arcs.push_back({lo, width});
    };
    double eps = 1e-11 * (1.0 + curve_.scale());
    for (int k = 1; k <= cuts_.num_cuts(); ++k) {
        cx p, q;
        cuts_.cut_endpoints(k, p, q);
        if (std::abs(x - p) < eps) {
            add_arc(std::arg(q - p), std::arg(q - p));  // incident cut blocks one direction
            continue;
        }
        if (std::abs(x - q) < eps) {
            add_arc(std::arg(p - q), std::arg(p - q));
            continue;
        }
        if (point_segment_distance(x, p, q) < 1e-12 * (1.0 + std::abs(x)))
            throw PeriodsError("escape_direction: point lies on a cut");
        add_arc(std::arg(p - x), std::arg(q - x));
    }
    if (std::abs(x - cuts_.ray_base()) < eps)
        add_arc(std::arg(cuts_.ray_direction()), std::arg(cuts_.ray_direction()));
    else
        add_arc(std::arg(cuts_.ray_base() - x), std::arg(cuts_.ray_direction()));

    // find the largest free gap
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.lo < b.lo; });
    // merge on the doubled circle
    std::vector<std::pair<double, double>> merged;
    for (int pass = 0; pass < 2; ++pass)
        for (const Arc& a : arcs) {
            double lo = a.lo + pass * 2.0 * M_PI, hi = lo + a.width;
            if (!merged.empty() && lo <= merged.back().second)
                merged.back().second = std::max(merged.back().second, hi);
            else
                merged.emplace_back(lo, hi);
        }
    double best_gap = -1.0, best_dir = 0.0;
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        double gap = merged[i + 1].first - merged[i].second;
        if (gap > best_gap) {
            best_gap = gap;
            best_dir = merged[i].second + 0.5 * gap;
        }
    }
    if (merged.empty()) return cx(1.0, 0.0);
    if (best_gap < 0.01) throw PeriodsError("no clear escape direction from this point");
    return std::polar(1.0, best_dir);
}

VecC PeriodEngine::aj_finite(cx x, cx y) const {
    double R0 = cuts_.chart_radius();
    // sheet relative to the reference branch
    auto match_sigma = [&](cx yref) {
        double dp = std::abs(y - yref), dm = std::abs(y + yref);
        if (std::min(dp, dm) > 0.02 * std::max({dp, dm, 1e-300}))
            throw PeriodsError("abel_jacobi: y does not match either sheet of sqrt(f)");
        return dp <= dm ? 1 : -1;
    };

    if (std::abs(x) >= R0) {
        cx t = std::exp(-0.5 * std::log(x));
        cx yc = y_chart(t);
        double dp = std::abs(y - yc), dm = std::abs(y + yc);
        if (std::min(dp, dm) > 1e-5 * std::abs(yc))
            throw PeriodsError("abel_jacobi: chart sheet match failed");
        if (dm < dp) t = -t;
        return aj_from_t(t);
    }

    int sigma = match_sigma(cuts_.y0(x));
    cx dir = escape_direction(x);
    double b = (x * std::conj(dir)).real();
    double c = 1.1025 * R0 * R0 - std::norm(x);
    double s1 = -b + std::sqrt(b * b + c);
    cx x_far = x + s1 * dir;

    cx t = std::exp(-0.5 * std::log(x_far));
    cx y_far = static_cast<double>(sigma) * cuts_.y0(x_far);
    cx yc = y_chart(t);
    double dp = std::abs(y_far - yc), dm = std::abs(y_far + yc);
    if (std::min(dp, dm) > 1e-5 * std::abs(yc))
        throw PeriodsError("abel_jacobi: far-field sheet match failed");
    if (dm < dp) t = -t;

    return aj_from_t(t) + integrate_x_leg(x_far, x, sigma);
}

VecC PeriodEngine::abel_jacobi(const SurfacePoint& P) const {
    int g = curve_.genus();
    if (P.is_infinity()) return VecC::Zero(g);
    double eps = 1e-11 * (1.0 + curve_.scale());
    const auto& roots = curve_.roots();
    for (std::size_t k = 0; k < roots.size(); ++k)
        if (std::abs(P.x - roots[k]) < eps) return abel_jacobi_branch(static_cast<int>(k));
    return aj_finite(P.x, P.y);
}

VecC PeriodEngine::abel_jacobi_branch(int root_index) const {
    auto it = branch_aj_cache_.find(root_index);
    if (it != branch_aj_cache_.end()) return it->second;
    cx bp = curve_.roots().at(root_index);
    double R0 = cuts_.chart_radius();
    cx dir = escape_direction(bp + cx(0.0, 0.0));
    double b = (bp * std::conj(dir)).real();
    double c = 1.1025 * R0 * R0 - std::norm(bp);
    double s1 = -b + std::sqrt(b * b + c);
    cx x_far = bp + s1 * dir;

    cx t = std::exp(-0.5 * std::log(x_far));
    cx y_far = cuts_.y0(x_far);
    cx yc = y_chart(t);
    double dp = std::abs(y_far - yc), dm = std::abs(y_far + yc);
    if (std::min(dp, dm) > 1e-5 * std::abs(yc))
        throw PeriodsError("abel_jacobi_branch: far-field sheet match failed");
    if (dm < dp) t = -t;

    VecC z = aj_from_t(t) - integrate_branch_leg(bp, x_far, 1);
    branch_aj_cache_.emplace(root_index, z);
    return z;
}

VecC PeriodEngine::reduce_mod_lattice(const VecC& z, Eigen::VectorXd* int_coeffs,
                                      Eigen::VectorXd* raw_coords) const {
    int g = curve_.genus();
    Eigen::VectorXd rhs(2 * g);
    for (int k = 0; k < g; ++k) {
        rhs(k) = z(k).real();
        rhs(k + g) = z(k).imag();
    }
    Eigen::VectorXd coeff = lattice_lu_.solve(rhs);
    if (raw_coords) *raw_coords = coeff;
    Eigen::VectorXd rounded(2 * g);
    for (int i = 0; i < 2 * g; ++i) rounded(i) = std::round(coeff(i));
    if (int_coeffs) *int_coeffs = rounded;
    VecC out = z;
    for (int j = 0; j < g; ++j) {
        for (int k = 0; k < g; ++k) {
            out(k) -= rounded(j) * data_.mu(k, j);
            out(k) -= rounded(j + g) * data_.mu_prime(k, j);
        }
    }
    return out;
}

double PeriodEngine::lattice_distance(const VecC& z) const {
    VecC r = reduce_mod_lattice(z);
    return r.cwiseAbs().maxCoeff();
}

std::vector<double> PeriodEngine::local_coordinate_residual(cx t) const {
    int g = curve_.genus();
    VecC z = aj_from_t(t);
    cx zg = z(g - 1);
    std::vector<double> res;
    for (int k = 1; k < g; ++k) {
        int e = 2 * (g - k) + 1;
        cx zp(1.0);
        for (int i = 0; i < e; ++i) zp *= zg;
        res.push_back(std::abs(z(k - 1) - zp / static_cast<double>(e)));
    }
    return res;
}

MatC PeriodEngine::gram_hodge() const {
    const MatC& m = data_.mu;
    const MatC& mp = data_.mu_prime;
    return cx(0.0, 0.5) * (m * mp.adjoint() - mp * m.adjoint());
}

}  // namespace hypdelta
