#include "hypdelta/theta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace hypdelta {

ThetaChar ThetaChar::from_index(unsigned idx, int g) {
    ThetaChar c = ThetaChar::zero(g);
    for (int k = 0; k < g; ++k) {
        c.top[k] = (idx >> k) & 1u;
        c.bottom[k] = (idx >> (g + k)) & 1u;
    }
    return c;
}

unsigned ThetaChar::index() const {
    unsigned idx = 0;
    int g = genus();
    for (int k = 0; k < g; ++k) {
        idx |= static_cast<unsigned>(top[k]) << k;
        idx |= static_cast<unsigned>(bottom[k]) << (g + k);
    }
    return idx;
}

ThetaEngine::ThetaEngine(const MatC& tau, ThetaConfig cfg) : tau_(tau), cfg_(cfg) {
    g_ = static_cast<int>(tau.rows());
    if (tau.cols() != g_) throw ThetaError("tau must be square");
    if (cfg_.precision_bits < 53) throw ThetaError("precision must be at least 53 bits");
    double sym = (tau - tau.transpose()).cwiseAbs().maxCoeff();
    if (sym > 1e-8 * std::max(1.0, tau.cwiseAbs().maxCoeff()))
        throw ThetaError("tau must be symmetric");
    tau_ = 0.5 * (tau + tau.transpose().eval());
    Y_ = tau_.imag();
    Eigen::SelfAdjointEigenSolver<MatR> es(Y_);
    lmin_ = es.eigenvalues().minCoeff();
    if (lmin_ <= 0.0) throw ThetaError("Im(tau) must be positive definite");
    Yinv_ = Y_.inverse();
    Eigen::LLT<MatR> llt(Y_);
    R_ = llt.matrixU();
    detY_ = 1.0;
    for (int i = 0; i < g_; ++i) detY_ *= R_(i, i) * R_(i, i);
}

ThetaValue ThetaEngine::theta(const ThetaChar& eta, const VecC& z) const {
    if (eta.genus() != g_ || z.size() != g_) throw ThetaError("theta: dimension mismatch");

    Eigen::VectorXd v(g_), etop(g_), ebot(g_);
    for (int k = 0; k < g_; ++k) {
        v(k) = z(k).imag();
        etop(k) = 0.5 * eta.top[k];
        ebot(k) = 0.5 * eta.bottom[k];
    }
    Eigen::VectorXd c = -(Yinv_ * v);  // Gaussian weight center in m-space
    double log_scale = M_PI * v.dot(Yinv_ * v);

    // Cut on the quadratic form Q(m - c): generous slack covers the point
    // count so the dropped terms stay under the tolerance.
    double tol = std::max(cfg_.abs_tol, 1e-15);
    double q_cut = (std::log(1.0 / tol) + g_ * std::log(40.0) + 5.0) / M_PI;

    // enumerate n with Q(n + eta' - c) <= q_cut by recursive bounding
    // Q(u) = sum_i (R_ii u_i + sum_{j>i} R_ij u_j)^2
    cx sum(0.0);
    long count = 0;
    Eigen::VectorXd m(g_);
    std::function<void(int, double, const Eigen::VectorXd&)> recurse =
        [&](int i, double q_used, const Eigen::VectorXd& partial) {
            // partial(j) = sum_{k>i} R_jk u_k for j <= i
            double budget = q_cut - q_used;
            if (budget < 0.0) return;
            double rii = R_(i, i);
            // u_i range: |R_ii u_i + partial(i)| <= sqrt(budget)
            double center = (etop(i) - c(i));
            double rad = std::sqrt(budget);
            double lo_u = (-partial(i) - rad) / rii;
            double hi_u = (-partial(i) + rad) / rii;
            // u_i = n_i + center
            long lo = static_cast<long>(std::ceil(lo_u - center - 1e-12));
            long hi = static_cast<long>(std::floor(hi_u - center + 1e-12));
            for (long ni = lo; ni <= hi; ++ni) {
                double ui = ni + center;
                double term = rii * ui + partial(i);
                double q_new = q_used + term * term;
                if (q_new > q_cut) continue;
                m(i) = ni + etop(i);
                if (i == 0) {
                    if (++count > cfg_.max_lattice_points)
                        throw ThetaError("theta: lattice enumeration exceeded the configured cap");
                    // exponent: pi i m^T tau m + 2 pi i m^T (z + eta'') - log_scale
                    cx e(0.0);
                    for (int a = 0; a < g_; ++a) {
                        double ma = m(a);
                        e += tau_(a, a) * (ma * ma);
                        for (int b = a + 1; b < g_; ++b) e += 2.0 * tau_(a, b) * ma * m(b);
                    }
                    e *= cx(0.0, M_PI);
                    cx lin(0.0);
                    for (int a = 0; a < g_; ++a) lin += m(a) * (z(a) + ebot(a));
                    e += cx(0.0, 2.0 * M_PI) * lin;
                    e -= log_scale;
                    sum += std::exp(e);
                } else {
                    Eigen::VectorXd next = partial;
                    for (int j = 0; j < i; ++j) next(j) += R_(j, i) * ui;
                    recurse(i - 1, q_new, next);
                }
            }
        };
    recurse(g_ - 1, 0.0, Eigen::VectorXd::Zero(g_));

    // shell bound on everything outside the cut
    double B = 0.0;
    for (int k = 0; k < g_; ++k) B = std::max(B, std::abs(etop(k) - c(k)));
    double s0 = std::sqrt(q_cut / lmin_) + B + 1.0;
    double tail = static_cast<double>(count) * std::exp(-M_PI * q_cut);
    for (double s = std::ceil(s0); s < s0 + 60.0; s += 1.0) {
        double shell = std::pow(2.0 * s + 1.0, g_) - std::pow(2.0 * s - 1.0, g_);
        double d = std::max(0.0, s - B);
        double contrib = shell * std::exp(-M_PI * lmin_ * d * d);
        tail += contrib;
        if (contrib < 1e-300) break;
    }

    ThetaValue out;
    out.normalized = sum;
    out.log_scale = log_scale;
    out.tail_bound = tail;
    return out;
}

cx ThetaEngine::theta_constant(const ThetaChar& eta) const {
    return theta(eta, VecC::Zero(g_)).normalized;
}

// ---------------------------------------------------------------------------
// characteristic table

namespace {
long binom_long(int a, int b) {
    if (b < 0 || b > a) return 0;
    long r = 1;
    for (int i = 0; i < b; ++i) {
        r = r * (a - i) / (i + 1);
    }
    return r;
}
}  // namespace

CharTable::CharTable(int g) : g_(g) {
    if (g < 1) throw ThetaError("CharTable: genus must be >= 1");
    r_ = binom_long(2 * g + 1, g + 1);
    n_ = binom_long(2 * g, g + 1);
    m_ = binom_long(2 * g + 2, g);
    eta_.resize(2 * g + 2, ThetaChar::zero(g));
    for (int k = 1; k <= g + 1; ++k) {
        ThetaChar& e = eta_[2 * k - 1];
        if (k <= g) e.top[k - 1] = 1;  // k = g+1 has no slot: top row stays zero
        for (int j = 0; j < k - 1; ++j) e.bottom[j] = 1;
    }
    for (int k = 1; k <= g; ++k) {
        ThetaChar& e = eta_[2 * k];
        e.top[k - 1] = 1;
        for (int j = 0; j < k; ++j) e.bottom[j] = 1;
    }
    for (int k = 1; k <= 2 * g + 1; k += 2) U_.push_back(k);
    // all (g+1)-subsets of {1..2g+1}
    std::vector<int> idx(g + 1);
    for (int i = 0; i <= g; ++i) idx[i] = i + 1;
    while (true) {
        subsets_.push_back(idx);
        int i = g;
        while (i >= 0 && idx[i] == 2 * g + 1 - g + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j <= g; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (static_cast<long>(subsets_.size()) != r_) throw ThetaError("CharTable: subset count mismatch");
}

ThetaChar CharTable::eta_S(const std::vector<int>& S) const {
    ThetaChar acc = ThetaChar::zero(g_);
    for (int k : S) {
        if (k < 1 || k > 2 * g_ + 1) throw ThetaError("eta_S: index out of range");
        acc = acc + eta_[k];
    }
    return acc;
}

ThetaChar CharTable::eta_TU(const std::vector<int>& T) const {
    std::vector<int> sym;
    std::size_t i = 0, j = 0;
    while (i < T.size() || j < U_.size()) {
        if (i < T.size() && (j == U_.size() || T[i] < U_[j])) {
            sym.push_back(T[i++]);
        } else if (j < U_.size() && (i == T.size() || U_[j] < T[i])) {
            sym.push_back(U_[j++]);
        } else {
            ++i;
            ++j;
        }
    }
    return eta_S(sym);
}

// ---------------------------------------------------------------------------
// identities

double log_residual(const LogComplex& a, const LogComplex& b) {
    double dl = a.log_abs - b.log_abs;
    double da = std::remainder(a.arg - b.arg, 2.0 * M_PI);
    if (dl > 50.0) return std::exp(50.0);
    return std::abs(std::exp(cx(dl, da)) - 1.0);
}

LogComplex log_phi_g(const ThetaEngine& th, const CharTable& table) {
    LogComplex acc;
    for (const auto& T : table.subsets_T()) {
        ThetaChar e = table.eta_TU(T);
        if (e.parity() != 1) throw ThetaError("phi_g: eta_{T o U} is not even");
        cx t = th.theta_constant(e);
        if (std::abs(t) < 1e3 * th.config().abs_tol)
            throw ThetaError("phi_g: a theta constant vanishes; tau is not consistent with the ordering");
        acc.log_abs += 8.0 * std::log(std::abs(t));
        acc.arg += 8.0 * std::arg(t);
    }
    acc.arg = std::remainder(acc.arg, 2.0 * M_PI);
    return acc;
}

double log_petersson_phi(const ThetaEngine& th, const CharTable& table) {
    return 2.0 * table.r() * std::log(th.det_Y()) + log_phi_g(th, table).log_abs;
}

double thomae_residual(const CurveSpec& curve, const PeriodData& periods, const ThetaEngine& th) {
    int g = curve.genus();
    cx t0 = th.theta_constant(ThetaChar::zero(g));
    LogComplex lhs{8.0 * std::log(std::abs(t0)), std::remainder(8.0 * std::arg(t0), 2.0 * M_PI)};

    LogComplex rhs;
    rhs.log_abs = 4.0 * std::log(std::abs(periods.det_mu)) - 4.0 * g * std::log(M_PI);
    rhs.arg = 4.0 * std::arg(periods.det_mu);
    const auto& a = curve.roots();
    int nn = static_cast<int>(a.size());
    for (int k = 0; k < nn; ++k)
        for (int l = k + 1; l < nn; ++l) {
            bool ku = (k % 2 == 0), lu = (l % 2 == 0);  // 1-based odd indices = 0-based even
            if (ku == lu) {
                cx d = a[k] - a[l];
                rhs.log_abs += 2.0 * std::log(std::abs(d));
                rhs.arg += 2.0 * std::arg(d);
            }
        }
    rhs.arg = std::remainder(rhs.arg, 2.0 * M_PI);
    return log_residual(lhs, rhs);
}

double disc_identity_residual(const CurveSpec& curve, const PeriodData& periods, const ThetaEngine& th,
                              const CharTable& table) {
    int g = curve.genus();
    long r = table.r(), n = table.n();
    double dlog, darg;
    curve.discriminant_log(dlog, darg);
    LogComplex lhs{n * dlog, std::remainder(n * darg, 2.0 * M_PI)};

    LogComplex phi = log_phi_g(th, table);
    LogComplex rhs;
    rhs.log_abs = 4.0 * g * r * std::log(M_PI) - 4.0 * r * std::log(std::abs(periods.det_mu)) + phi.log_abs;
    rhs.arg = std::remainder(-4.0 * r * std::arg(periods.det_mu) + phi.arg, 2.0 * M_PI);
    return log_residual(lhs, rhs);
}

GammaResult gamma_constant(const CurveSpec& curve, const PeriodData& periods, const ThetaEngine& th,
                           const CharTable& table) {
    int g = curve.genus();
    double dlog, darg;
    curve.discriminant_log(dlog, darg);
    double log_gamma8 = dlog - 4.0 * g * std::log(M_PI) + 4.0 * std::log(std::abs(periods.det_mu));
    GammaResult out;
    out.abs_gamma = std::exp(log_gamma8 / 8.0);

    long r = table.r(), n = table.n();
    LogComplex phi = log_phi_g(th, table);
    double log_gamma8n = 4.0 * g * (r - n) * std::log(M_PI) -
                         4.0 * (r - n) * std::log(std::abs(periods.det_mu)) + phi.log_abs;
    out.consistency_residual =
        std::abs(std::exp(log_gamma8n / (8.0 * n) - log_gamma8 / 8.0) - 1.0);
    return out;
}

// ---------------------------------------------------------------------------
// Riemann characteristic and the Faltings norm

ThetaChar riemann_characteristic(const PeriodEngine& pe, const ThetaEngine& th, double vanish_tol_rel) {
    int g = pe.curve().genus();
    // Abel-Jacobi images of all effective divisors of g-1 Weierstrass points
    // (the 2g+2 points include infinity, whose image is 0)
    std::vector<VecC> ws;
    int npts = 2 * g + 2;
    std::vector<int> idx(g - 1);
    std::vector<VecC> aj(npts);
    for (int k = 0; k < 2 * g + 1; ++k) aj[k] = pe.abel_jacobi_branch(k);
    aj[2 * g + 1] = VecC::Zero(g);
    if (g - 1 == 0) {
        ws.push_back(VecC::Zero(g));
    } else {
        for (int i = 0; i < g - 1; ++i) idx[i] = i;
        while (true) {
            VecC z = VecC::Zero(g);
            for (int i : idx) z += aj[i];
            ws.push_back(pe.normalize(z));
            int i = g - 2;
            while (i >= 0 && idx[i] == npts - (g - 1) + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < g - 1; ++j) idx[j] = idx[j - 1] + 1;
        }
    }

    double tol = vanish_tol_rel;
    std::vector<ThetaChar> survivors;
    for (unsigned e = 0; e < (1u << (2 * g)); ++e) {
        ThetaChar cand = ThetaChar::from_index(e, g);
        double worst = 0.0;
        for (const VecC& w : ws) {
            ThetaValue tv = th.theta(cand, w);
            worst = std::max(worst, std::abs(tv.normalized));
            if (worst > tol) break;
        }
        if (worst <= tol) survivors.push_back(cand);
    }
    if (survivors.size() != 1) {
        std::ostringstream os;
        os << "riemann_characteristic: expected one vanishing characteristic, found " << survivors.size();
        throw ThetaError(os.str());
    }
    return survivors[0];
}

double faltings_norm_log(const PeriodEngine& pe, const ThetaEngine& th, const ThetaChar& delta,
                         const VecC& z) {
    VecC w = pe.normalize(z);
    ThetaValue tv = th.theta(delta, w);
    // (det Y)^{1/4} e^{-pi v Yinv v} |theta| and the engine's normalized
    // value is exactly e^{-pi v Yinv v} theta
    return 0.25 * std::log(th.det_Y()) + std::log(std::abs(tv.normalized));
}

double faltings_norm(const PeriodEngine& pe, const ThetaEngine& th, const ThetaChar& delta,
                     const VecC& z) {
    double l = faltings_norm_log(pe, th, delta, z);
    return std::isfinite(l) ? std::exp(l) : 0.0;
}

}  // namespace hypdelta
