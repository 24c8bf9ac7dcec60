#include "hypdelta/invariants.hpp"

#include <algorithm>
#include <cmath>

namespace hypdelta {

// ---------------------------------------------------------------------------
// Richardson extrapolation

LimitResult richardson_limit(const std::vector<double>& values, int order0, int step,
                             const std::vector<double>* rel_noise, double noise_cut) {
    LimitResult out;
    out.ladder = values;
    std::vector<double> v = values;
    if (rel_noise) {
        // ladders are ordered by decreasing h: noise grows toward the tail
        std::size_t keep = 0;
        while (keep < v.size() && (*rel_noise)[keep] <= noise_cut) ++keep;
        keep = std::max<std::size_t>(keep, std::min<std::size_t>(3, v.size()));
        v.resize(keep);
    }
    int J = static_cast<int>(v.size());
    if (J == 0) throw InvariantsError("richardson_limit: empty ladder");
    if (J == 1) {
        out.value = v[0];
        out.measured_order = 0.0;
        out.error_estimate = std::abs(v[0]);
        return out;
    }

    // leading-order estimate from consecutive first differences
    std::vector<double> orders;
    for (int j = 0; j + 2 < J; ++j) {
        double d0 = v[j + 1] - v[j];
        double d1 = v[j + 2] - v[j + 1];
        if (d0 != 0.0 && d1 != 0.0 && std::abs(d1) < std::abs(d0)) orders.push_back(std::log2(std::abs(d0 / d1)));
    }
    if (orders.empty()) {
        out.measured_order = 10.0;  // differences at the noise floor: converged
    } else {
        std::sort(orders.begin(), orders.end());
        out.measured_order = orders[orders.size() / 2];
    }

    // triangular elimination at correction orders order0, order0+step, ...
    std::vector<double> tab = v;
    double best = v.back();
    double best_update = std::abs(v[J - 1] - v[J - 2]);
    double prev = v.back();
    for (int k = 1; k < J; ++k) {
        double f = std::pow(2.0, order0 + static_cast<double>(k - 1) * step);
        for (int j = 0; j + k < J; ++j) tab[j] = (f * tab[j + 1] - tab[j]) / (f - 1.0);
        double cand = tab[J - 1 - k];
        double update = std::abs(cand - prev);
        if (update <= best_update) {
            best_update = update;
            best = cand;
        }
        prev = cand;
    }
    out.value = best;
    out.error_estimate = best_update;
    return out;
}

// ---------------------------------------------------------------------------
// Moebius retarget

CurveSpec mobius_infinity_model(const CurveSpec& curve, int root_index) {
    const auto& a = curve.roots();
    if (root_index < 0 || root_index >= static_cast<int>(a.size()))
        throw InvariantsError("mobius_infinity_model: bad root index");
    std::vector<cx> roots = {cx(0.0)};  // image of infinity
    for (int k = 0; k < static_cast<int>(a.size()); ++k) {
        if (k == root_index) continue;
        roots.push_back(1.0 / (a[k] - a[root_index]));
    }
    return build_curve_from_roots(roots);
}

// ---------------------------------------------------------------------------
// InvariantContext

InvariantContext::InvariantContext(const CurveSpec& curve, ContourQuadConfig pcfg, ThetaConfig tcfg)
    : curve_(curve), pe_(curve, pcfg), th_(pe_.periods().tau, tcfg), table_(curve.genus()),
      delta_(riemann_characteristic(pe_, th_)), g_(curve.genus()) {
    for (int k = 0; k < 2 * g_ + 1; ++k) aj_w_.push_back(pe_.abel_jacobi_branch(k));
    aj_w_.push_back(VecC::Zero(g_));
    gram_inv_ = pe_.gram_hodge().inverse();
}

InvariantContext::InvariantContext(const CurveSpec& curve, ContourQuadConfig pcfg, ThetaConfig tcfg,
                                   const MatC& mu, const MatC& mu_prime)
    : curve_(curve), pe_(curve, pcfg, mu, mu_prime), th_(pe_.periods().tau, tcfg),
      table_(curve.genus()), delta_(riemann_characteristic(pe_, th_)), g_(curve.genus()) {
    for (int k = 0; k < 2 * g_ + 1; ++k) aj_w_.push_back(pe_.abel_jacobi_branch(k));
    aj_w_.push_back(VecC::Zero(g_));
    gram_inv_ = pe_.gram_hodge().inverse();
}

SurfacePoint InvariantContext::generic_point(int k) const {
    const CutSystem& cuts = pe_.cuts();
    double scale = curve_.scale();
    cx centroid(0.0);
    for (cx a : curve_.roots()) centroid += a;
    centroid /= static_cast<double>(curve_.degree());
    int found = 0;
    for (int i = 0; i < 512; ++i) {
        cx cand = centroid + (0.31 + 0.11 * (i % 3)) * scale * std::polar(1.0, 0.7 + 0.53 * i);
        double dmin = std::numeric_limits<double>::infinity();
        for (cx a : curve_.roots()) dmin = std::min(dmin, std::abs(cand - a));
        if (dmin > 0.15 * scale && cuts.distance_to_cuts(cand) > 0.1 * scale) {
            if (found == k) return SurfacePoint{0, cand, cuts.y0(cand)};
            ++found;
        }
    }
    throw InvariantsError("generic_point: no candidate found");
}

double InvariantContext::log_phi() const {
    if (!log_phi_cache_) log_phi_cache_ = log_phi_g(th_, table_).log_abs;
    return *log_phi_cache_;
}

double InvariantContext::log_petersson() const {
    return 2.0 * table_.r() * std::log(th_.det_Y()) + log_phi();
}

double InvariantContext::log_delta_norm() const {
    return -(4.0 * g_ + 4.0) * table_.n() * std::log(2.0) + log_petersson();
}

double InvariantContext::mu_density_x(cx x) const {
    VecC psi(g_);
    cx xp(1.0);
    for (int k = 0; k < g_; ++k) {
        psi(k) = xp;
        xp *= x;
    }
    double form = (psi.adjoint() * gram_inv_ * psi)(0).real();
    return form / (4.0 * g_ * std::abs(curve_.f(x)));
}

double InvariantContext::mu_density_t(cx t) const {
    VecC psi(g_);
    cx tp(1.0);
    for (int k = g_ - 1; k >= 0; --k) {
        psi(k) = tp;
        tp *= t * t;
    }
    double form = (psi.adjoint() * gram_inv_ * psi)(0).real();
    return form / (g_ * std::abs(pe_.h_poly(t)));
}

namespace {

// deterministic nudge away from branch points and cuts
cx nudge_point(const CurveSpec& curve, const CutSystem& cuts, cx x) {
    double eps = 1e-8 * (1.0 + curve.scale());
    double dmin = std::numeric_limits<double>::infinity();
    for (cx a : curve.roots()) dmin = std::min(dmin, std::abs(x - a));
    if (dmin < eps || cuts.distance_to_cuts(x) < eps) x += 3.0 * eps * std::polar(1.0, 0.777);
    return x;
}

}  // namespace

Quad2DResult InvariantContext::mu_mass(const QuadConfig& qc) const {
    const CutSystem& cuts = pe_.cuts();
    double R0 = cuts.chart_radius();
    double tR = 1.0 / std::sqrt(R0);

    Quad2DConfig q1;
    q1.abs_tol = 0.45 * qc.rel_tol;
    q1.max_evals = qc.budget / 2;

    auto fx = [&](double r, double th) {
        cx x = std::polar(r, th);
        x = nudge_point(curve_, cuts, x);
        return r * 2.0 * mu_density_x(x);  // both sheets
    };
    auto ft = [&](double r, double th) {
        cx t = std::polar(r, th);
        return r * mu_density_t(t);
    };

    Quad2DResult res;
    if (qc.method == "mc") {
        Quad2DResult r1 = integrate_rect_mc(fx, 0.0, R0, 0.0, 2.0 * M_PI, qc.budget / 2, qc.seed);
        Quad2DResult r2 = integrate_rect_mc(ft, 0.0, tR, 0.0, 2.0 * M_PI, qc.budget / 2, qc.seed + 1);
        res.value = r1.value + r2.value;
        res.err_estimate = r1.err_estimate + r2.err_estimate;
        res.evals = r1.evals + r2.evals;
        res.converged = true;
        return res;
    }
    Quad2DResult r1 = integrate_rect(fx, 0.0, R0, 0.0, 2.0 * M_PI, q1);
    Quad2DResult r2 = integrate_rect(ft, 0.0, tR, 0.0, 2.0 * M_PI, q1);
    res.value = r1.value + r2.value;
    res.err_estimate = r1.err_estimate + r2.err_estimate;
    res.evals = r1.evals + r2.evals;
    res.converged = r1.converged && r2.converged;
    return res;
}

SXResult InvariantContext::log_S(const QuadConfig& qc, std::optional<SurfacePoint> Q) const {
    const CutSystem& cuts = pe_.cuts();
    double R0 = cuts.chart_radius();
    double tR = 1.0 / std::sqrt(R0);
    double scale = curve_.scale();

    SurfacePoint q;
    if (Q) {
        q = *Q;
    } else {
        // deterministic generic point away from roots and cuts
        cx centroid(0.0);
        for (cx a : curve_.roots()) centroid += a;
        centroid /= static_cast<double>(curve_.degree());
        for (int k = 0; k < 64; ++k) {
            cx cand = centroid + 0.37 * scale * std::polar(1.0, 0.9 + 0.37 * k);
            double dmin = std::numeric_limits<double>::infinity();
            for (cx a : curve_.roots()) dmin = std::min(dmin, std::abs(cand - a));
            if (dmin > 0.1 * scale && cuts.distance_to_cuts(cand) > 0.05 * scale) {
                q = SurfacePoint{0, cand, cuts.y0(cand)};
                break;
            }
        }
        if (q.x == cx(0.0) && q.y == cx(0.0)) throw InvariantsError("log_S: no generic Q found");
    }
    VecC zq = pe_.abel_jacobi(q);

    auto fx = [&](double r, double th) {
        cx x = std::polar(r, th);
        x = nudge_point(curve_, cuts, x);
        VecC z = pe_.abel_jacobi(SurfacePoint{0, x, cuts.y0(x)});
        double l0 = log_norm(static_cast<double>(g_) * z - zq);
        double l1 = log_norm(-static_cast<double>(g_) * z - zq);
        return r * mu_density_x(x) * (l0 + l1);
    };
    auto ft = [&](double r, double th) {
        cx t = std::polar(r, th);
        VecC z = pe_.aj_from_t(t);
        double l = log_norm(static_cast<double>(g_) * z - zq);
        return r * mu_density_t(t) * l;
    };

    SXResult out;
    if (qc.method == "mc") {
        Quad2DResult r1 = integrate_rect_mc(fx, 0.0, R0, 0.0, 2.0 * M_PI, (3 * qc.budget) / 4, qc.seed);
        Quad2DResult r2 = integrate_rect_mc(ft, 0.0, tR, 0.0, 2.0 * M_PI, qc.budget / 4, qc.seed + 1);
        out.log_S = -(r1.value + r2.value);
        out.err_estimate = r1.err_estimate + r2.err_estimate;
        out.evals = r1.evals + r2.evals;
        return out;
    }

    Quad2DConfig q1;
    q1.abs_tol = 0.45 * qc.rel_tol;
    q1.max_evals = qc.budget / 2;
    Quad2DResult r1 = integrate_rect(fx, 0.0, R0, 0.0, 2.0 * M_PI, q1);
    Quad2DResult r2 = integrate_rect(ft, 0.0, tR, 0.0, 2.0 * M_PI, q1);
    out.log_S = -(r1.value + r2.value);
    out.err_estimate = r1.err_estimate + r2.err_estimate;
    out.evals = r1.evals + r2.evals;
    return out;
}

double InvariantContext::green_log(const SurfacePoint& P, const SurfacePoint& Q,
                                   double log_S_value) const {
    double eps = 1e-9 * (1.0 + curve_.scale());
    if (P.is_infinity()) throw InvariantsError("green_log: P must not be a Weierstrass point");
    for (cx a : curve_.roots())
        if (std::abs(P.x - a) < eps) throw InvariantsError("green_log: P must not be a Weierstrass point");

    VecC zp = pe_.abel_jacobi(P);
    VecC zq = pe_.abel_jacobi(Q);
    double w = weierstrass_weight();
    double sum_w = 0.0;
    for (int idx = 0; idx < 2 * g_ + 2; ++idx)
        sum_w += log_norm(static_cast<double>(g_) * zp - aj_w_[idx]);
    double num = log_norm(static_cast<double>(g_) * zp - zq);
    return (log_S_value / (g_ * g_) + num - (w / (g_ * g_ * g_)) * sum_w) / g_;
}

Quad2DResult InvariantContext::green_normalization(const SurfacePoint& P, double log_S_value,
                                                   const QuadConfig& qc) const {
    const CutSystem& cuts = pe_.cuts();
    double R0 = cuts.chart_radius();
    double tR = 1.0 / std::sqrt(R0);

    VecC zp = pe_.abel_jacobi(P);
    double w = weierstrass_weight();
    double sum_w = 0.0;
    for (int idx = 0; idx < 2 * g_ + 2; ++idx)
        sum_w += log_norm(static_cast<double>(g_) * zp - aj_w_[idx]);
    double constant = (log_S_value / (g_ * g_) - (w / (g_ * g_ * g_)) * sum_w) / g_;

    // integral over Q of log||theta||(g P - Q), both sheets in the finite chart
    auto fx = [&](double r, double th) {
        cx x = std::polar(r, th);
        x = nudge_point(curve_, cuts, x);
        VecC z = pe_.abel_jacobi(SurfacePoint{0, x, cuts.y0(x)});
        double l0 = log_norm(static_cast<double>(g_) * zp - z);
        double l1 = log_norm(static_cast<double>(g_) * zp + z);
        return r * mu_density_x(x) * (l0 + l1);
    };
    auto ft = [&](double r, double th) {
        cx t = std::polar(r, th);
        VecC z = pe_.aj_from_t(t);
        return r * mu_density_t(t) * log_norm(static_cast<double>(g_) * zp - z);
    };

    Quad2DConfig q1;
    q1.abs_tol = 0.45 * qc.rel_tol;
    q1.max_evals = qc.budget / 2;
    Quad2DResult r1 = integrate_rect(fx, 0.0, R0, 0.0, 2.0 * M_PI, q1);
    Quad2DResult r2 = integrate_rect(ft, 0.0, tR, 0.0, 2.0 * M_PI, q1);

    Quad2DResult out;
    out.value = constant + (r1.value + r2.value) / g_;
    out.err_estimate = (r1.err_estimate + r2.err_estimate) / g_;
    out.evals = r1.evals + r2.evals;
    out.converged = r1.converged && r2.converged;
    return out;
}

LimitResult InvariantContext::f_norm_log(const SurfacePoint& P, LimitConfig lc) const {
    const CutSystem& cuts = pe_.cuts();
    double eps = 1e-7 * (1.0 + curve_.scale());
    for (cx a : curve_.roots())
        if (std::abs(P.x - a) < 100.0 * eps)
            throw InvariantsError("f_norm_log: P too close to a Weierstrass point");

    cx y0p = cuts.y0(P.x);
    int sigma = (std::abs(P.y - y0p) <= std::abs(P.y + y0p)) ? 1 : -1;
    VecC zp = pe_.abel_jacobi(P);

    double clearance = std::min(cuts.distance_to_cuts(P.x), curve_.scale());
    double h0 = std::min(lc.h0, 0.5 * clearance);
    if (h0 <= 0.0) throw InvariantsError("f_norm_log: no clearance around P");

    double noise_abs = 2.0 * (th_.config().abs_tol + 1e-15);
    std::vector<double> ladder, noise;
    for (int j = 0; j < lc.levels; ++j) {
        double h = h0 * std::pow(2.0, -j);
        cx xq = P.x + std::polar(h, lc.ray_angle);
        VecC zq = zp + pe_.segment_integral(P.x, xq, sigma);
        double l = log_norm(static_cast<double>(g_) * zp - zq);
        ladder.push_back(std::exp(l - g_ * std::log(h)));
        noise.push_back(noise_abs / std::exp(l - 0.25 * std::log(pe_.periods().det_Y)));
    }
    LimitResult res = richardson_limit(ladder, 1, 1, &noise);
    if (res.value <= 0.0) throw InvariantsError("f_norm_log: extrapolation failed");
    return res;
}

double InvariantContext::wronskian_x_log(const SurfacePoint& P) const {
    return std::log(std::abs(wronskian_x(curve_, P.x, P.y)));
}

LeadingLimits InvariantContext::leading_limits(LimitConfig lc) const {
    LeadingLimits out;
    int npts = 2 * g_ + 2;
    double w = weierstrass_weight();
    double log_scaleB = -0.5 * std::log(pe_.periods().det_Y) - std::log(std::abs(pe_.periods().det_mu));

    double noise_abs = 2.0 * (th_.config().abs_tol + 1e-15);
    std::vector<std::vector<double>> ladders(npts), noises(npts);
    std::vector<double> ladderB;
    for (int j = 0; j < lc.levels; ++j) {
        cx t = std::polar(lc.h0 * std::pow(2.0, -j), lc.ray_angle);
        VecC z = pe_.aj_from_t(t);
        double log_zg = std::log(std::abs(z(g_ - 1)));
        for (int idx = 0; idx < npts; ++idx) {
            double pow = (idx == npts - 1) ? (w + g_) : w;
            double l = log_norm(static_cast<double>(g_) * z - aj_w_[idx]);
            ladders[idx].push_back(std::exp(l - pow * log_zg));
            double theta_mag = std::exp(l - 0.25 * std::log(pe_.periods().det_Y));
            noises[idx].push_back(noise_abs / theta_mag);
        }
        double lw = std::log(std::abs(wronskian_zg(pe_, t)));
        ladderB.push_back(std::exp(lw + log_scaleB - w * log_zg));
    }

    out.min_order = std::numeric_limits<double>::infinity();
    for (int idx = 0; idx < npts; ++idx) {
        // corrections at W itself are even in z_g; shifted classes generic
        bool even = (idx == npts - 1);
        LimitResult r = richardson_limit(ladders[idx], even ? 2 : 1, even ? 2 : 1, &noises[idx]);
        if (r.value <= 0.0) throw InvariantsError("leading_limits: A-extrapolation failed");
        out.log_A.push_back(std::log(r.value));
        out.min_order = std::min(out.min_order, r.measured_order);
    }
    LimitResult rb = richardson_limit(ladderB, 2, 2);
    if (rb.value <= 0.0) throw InvariantsError("leading_limits: B-extrapolation failed");
    out.log_B = std::log(rb.value);
    out.order_B = rb.measured_order;

    out.log_A_closed_residual = std::abs(std::expm1(out.log_A[npts - 1] - log_A_closed()));
    out.log_B_closed_residual = std::abs(std::expm1(out.log_B - log_B_closed()));
    return out;
}

double InvariantContext::log_A_closed() const {
    double w = weierstrass_weight();
    long r = table_.r(), n = table_.n();
    return w * std::log(2.0) + (g_ * (r - n) / (2.0 * n)) * std::log(M_PI) +
           0.25 * std::log(pe_.periods().det_Y) -
           ((r - n) / (2.0 * n)) * std::log(std::abs(pe_.periods().det_mu)) + log_phi() / (8.0 * n);
}

double InvariantContext::log_B_closed() const {
    double w = weierstrass_weight();
    return w * std::log(2.0) - 0.5 * std::log(pe_.periods().det_Y) -
           std::log(std::abs(pe_.periods().det_mu));
}

double InvariantContext::t_def_log(const SurfacePoint& P, LimitConfig lc) const {
    LimitResult F = f_norm_log(P, lc);
    double w = weierstrass_weight();
    VecC zp = pe_.abel_jacobi(P);
    double sum_w = 0.0;
    for (int idx = 0; idx < 2 * g_ + 2; ++idx)
        sum_w += log_norm(static_cast<double>(g_) * zp - aj_w_[idx]);
    double log_w_ortho = wronskian_x_log(P) - 0.5 * std::log(pe_.periods().det_Y) -
                         std::log(std::abs(pe_.periods().det_mu));
    return -(g_ + 1.0) * std::log(F.value) + (w * (g_ - 1.0) / (g_ * g_ * g_)) * sum_w +
           2.0 * log_w_ortho;
}

double InvariantContext::t_closed_log() const {
    long n = table_.n();
    return -2.0 * g_ * std::log(2.0 * M_PI) -
           ((3.0 * g_ - 1.0) / (8.0 * n * g_)) * log_delta_norm();
}

double InvariantContext::delta_closed(double log_S_value) const {
    long n = table_.n();
    return 4.0 * (-2.0 * g_ * std::log(2.0 * M_PI) - ((g_ - 1.0) / (g_ * g_)) * log_S_value -
                  ((3.0 * g_ - 1.0) / (8.0 * n * g_)) * log_delta_norm());
}

double InvariantContext::delta_from_T(double log_S_value, double t_def_log_value) const {
    return 4.0 * (-((g_ - 1.0) / (g_ * g_)) * log_S_value + t_def_log_value);
}

double InvariantContext::green_prime_log_infinity(int root_index, const LeadingLimits& ll) const {
    double w = weierstrass_weight();
    double sum = 0.0;
    for (double la : ll.log_A) sum += la;
    return (ll.log_A[root_index] - (w / (g_ * g_ * g_)) * sum) / g_;
}

double InvariantContext::green_prime_log_sum(const LeadingLimits& ll) const {
    double w = weierstrass_weight();
    double sum = 0.0;
    for (double la : ll.log_A) sum += la;
    double finite_sum = sum - ll.log_A[2 * g_ + 1];
    return (finite_sum - (2.0 * g_ + 1.0) * (w / (g_ * g_ * g_)) * sum) / g_;
}

// ---------------------------------------------------------------------------
// TheoremChecker

TheoremChecker::TheoremChecker(const CurveSpec& curve, ContourQuadConfig pcfg, ThetaConfig tcfg,
                               LimitConfig lc)
    : pcfg_(pcfg), tcfg_(tcfg), lc_(lc) {
    base_ = std::make_unique<InvariantContext>(curve, pcfg, tcfg);
    int npts = 2 * curve.genus() + 2;
    models_.resize(npts);
    limits_.resize(npts);
}

const InvariantContext& TheoremChecker::model(int w_index) const {
    int g = base_->genus();
    if (w_index == 2 * g + 1) return *base_;
    if (!models_[w_index]) {
        CurveSpec m = mobius_infinity_model(base_->curve(), w_index);
        models_[w_index] = std::make_unique<InvariantContext>(m, pcfg_, tcfg_);
    }
    return *models_[w_index];
}

const LeadingLimits& TheoremChecker::limits(int w_index) const {
    if (!limits_[w_index]) {
        limits_[w_index] = std::make_unique<LeadingLimits>(model(w_index).leading_limits(lc_));
    }
    return *limits_[w_index];
}

ThmMainResult TheoremChecker::thm_main(double t_log) const {
    int g = base_->genus();
    long n = base_->table().n();
    ThmMainResult out;
    out.rhs_log = (g - 1.0) * (g - 1.0) * std::log(2.0) + (2.0 * g + 2.0) * std::log(M_PI) +
                  ((g + 1.0) / g) * t_log + base_->log_petersson() / (2.0 * n);
    out.min_order = std::numeric_limits<double>::infinity();
    for (int wi = 0; wi < 2 * g + 2; ++wi) {
        double lhs = (g - 1.0) * (g - 1.0) * model(wi).green_prime_log_sum(limits(wi));
        out.lhs_log.push_back(lhs);
        out.residual = std::max(out.residual, std::abs(std::expm1(lhs - out.rhs_log)));
        out.min_order = std::min(out.min_order, limits(wi).min_order);
    }
    double lo = *std::min_element(out.lhs_log.begin(), out.lhs_log.end());
    double hi = *std::max_element(out.lhs_log.begin(), out.lhs_log.end());
    out.spread = hi - lo;
    return out;
}

ThmSecondResult TheoremChecker::thm_second(double t_log) const {
    int g = base_->genus();
    long n = base_->table().n(), m = base_->table().m();
    ThmSecondResult out;
    double sum = 0.0;
    for (int wi = 0; wi < 2 * g + 2; ++wi) sum += model(wi).green_prime_log_sum(limits(wi));
    out.lhs_log = n * (g - 1.0) * sum;
    out.rhs_log = -2.0 * g * (g + 2.0) * m * std::log(M_PI) - (g + 2.0) * m * t_log -
                  1.5 * (g + 1.0) * base_->log_petersson();
    out.residual = std::abs(std::expm1(out.lhs_log - out.rhs_log));
    return out;
}

double TheoremChecker::g2_remark_residual(int w_prime_index) const {
    int g = base_->genus();
    if (g != 2) throw InvariantsError("g2_remark_residual: genus must be 2");
    double lhs = 2.0 * base_->green_prime_log_infinity(w_prime_index, limits(2 * g + 1));
    double rhs = 0.25 * std::log(2.0) - (3.0 / 64.0) * base_->log_petersson();
    const VecC& zwp = base_->aj_weierstrass(w_prime_index);
    for (int idx = 0; idx < 2 * g + 1; ++idx) {
        if (idx == w_prime_index) continue;
        rhs += base_->log_norm(base_->aj_weierstrass(idx) - zwp);
    }
    return std::abs(std::expm1(lhs - rhs));
}

double TheoremChecker::exploratory_ratio_log(int w_prime_index) const {
    int g = base_->genus();
    double lhs = g * base_->green_prime_log_infinity(w_prime_index, limits(2 * g + 1));
    // product over (g-1)-subsets of the Weierstrass points other than W, W'
    std::vector<int> pool;
    for (int idx = 0; idx < 2 * g + 1; ++idx)
        if (idx != w_prime_index) pool.push_back(idx);
    double sum = 0.0;
    std::vector<int> sel(g - 1);
    std::function<void(int, int)> rec = [&](int start, int chosen) {
        if (chosen == g - 1) {
            VecC z = -base_->aj_weierstrass(w_prime_index);
            for (int i = 0; i < g - 1; ++i) z += base_->aj_weierstrass(sel[i]);
            sum += base_->log_norm(z);
            return;
        }
        for (int i = start; i < static_cast<int>(pool.size()); ++i) {
            sel[chosen] = pool[i];
            rec(i + 1, chosen + 1);
        }
    };
    rec(0, 0);
    return lhs - sum;
}

}  // namespace hypdelta
