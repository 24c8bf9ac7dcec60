#pragma once

#include <Eigen/Dense>

#include "hypdelta/curve.hpp"
#include "hypdelta/periods.hpp"

namespace hypdelta {

struct ThetaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Half-integer theta characteristic [eta'; eta'']. Entries are stored as
/// 0/1 ints standing for 0 and 1/2; addition is componentwise mod 1 (xor).
struct ThetaChar {
    std::vector<int> top;     // eta'
    std::vector<int> bottom;  // eta''

    static ThetaChar zero(int g) { return ThetaChar{std::vector<int>(g, 0), std::vector<int>(g, 0)}; }
    static ThetaChar from_index(unsigned idx, int g);  // 2g bits: top | bottom
    unsigned index() const;

    int genus() const { return static_cast<int>(top.size()); }
    /// exp(4 pi i eta'.eta'') = (-1)^{sum top_k bottom_k}
    int parity() const {
        int s = 0;
        for (std::size_t k = 0; k < top.size(); ++k) s += top[k] * bottom[k];
        return (s % 2 == 0) ? 1 : -1;
    }
    ThetaChar operator+(const ThetaChar& o) const {
        ThetaChar r = *this;
        for (std::size_t k = 0; k < top.size(); ++k) {
            r.top[k] ^= o.top[k];
            r.bottom[k] ^= o.bottom[k];
        }
        return r;
    }
    bool operator==(const ThetaChar& o) const { return top == o.top && bottom == o.bottom; }
};

struct ThetaConfig {
    double abs_tol = 1e-12;           // absolute, on the peak-normalized value
    long max_lattice_points = 40000000;
    int precision_bits = 53;          // >= 53; IEEE double is the working precision
};

/// One theta evaluation. `normalized` = theta * exp(-log_scale) with
/// log_scale = pi v^T Y^{-1} v, v = Im z; |normalized| <= #terms, so the
/// representation never overflows.
struct ThetaValue {
    cx normalized{};
    double log_scale = 0.0;
    double tail_bound = 0.0;  // bound on the truncation error of `normalized`

    cx value() const { return normalized * std::exp(log_scale); }
    double log_abs() const { return std::log(std::abs(normalized)) + log_scale; }
};

/// Evaluator of theta[eta](z; tau) for fixed tau with Im(tau) > 0.
/// Truncation: all lattice points with Gaussian weight above the tolerance
/// cut are enumerated by recursive coordinate bounding on the Im(tau)
/// ellipsoid; the remainder is controlled by a shell bound.
class ThetaEngine {
public:
    explicit ThetaEngine(const MatC& tau, ThetaConfig cfg = {});

    int genus() const { return g_; }
    const MatC& tau() const { return tau_; }
    const MatR& Y() const { return Y_; }
    const MatR& Yinv() const { return Yinv_; }
    double det_Y() const { return detY_; }
    double lambda_min() const { return lmin_; }
    const ThetaConfig& config() const { return cfg_; }

    ThetaValue theta(const ThetaChar& eta, const VecC& z) const;
    cx theta_constant(const ThetaChar& eta) const;

private:
    MatC tau_;
    MatR Y_, Yinv_, R_;  // Y = R^T R, R upper triangular
    double detY_ = 0.0, lmin_ = 0.0;
    ThetaConfig cfg_;
    int g_ = 0;
};

/// The eta_k table (k = 1..2g+1) and the subset algebra behind the modular
/// discriminant. For eta_{2k-1} with k = g+1 the half would land outside the
/// g-vector; that top row is zero.
class CharTable {
public:
    explicit CharTable(int g);

    int genus() const { return g_; }
    long r() const { return r_; }  // C(2g+1, g+1)
    long n() const { return n_; }  // C(2g, g+1)
    long m() const { return m_; }  // C(2g+2, g)

    const ThetaChar& eta(int k) const { return eta_.at(k); }  // 1-based
    ThetaChar eta_S(const std::vector<int>& S) const;
    /// eta_{T o U} with U = {1,3,...,2g+1} and o the symmetric difference.
    ThetaChar eta_TU(const std::vector<int>& T) const;
    const std::vector<std::vector<int>>& subsets_T() const { return subsets_; }
    const std::vector<int>& U() const { return U_; }

private:
    int g_;
    long r_, n_, m_;
    std::vector<ThetaChar> eta_;  // index 0 unused
    std::vector<int> U_;
    std::vector<std::vector<int>> subsets_;
};

/// Complex quantity kept as exp(log_abs + i arg).
struct LogComplex {
    double log_abs = 0.0;
    double arg = 0.0;
};

/// Relative residual |exp(a - b) - 1| with the phase difference wrapped.
double log_residual(const LogComplex& a, const LogComplex& b);

/// log of phi_g(tau) = prod_T theta[eta_{T o U}](0)^8. Throws if one of the
/// r factors vanishes beyond tolerance.
LogComplex log_phi_g(const ThetaEngine& th, const CharTable& table);

/// log of the Petersson norm (det Im tau)^{2r} |phi_g|.
double log_petersson_phi(const ThetaEngine& th, const CharTable& table);

/// Relative residual of theta(0;tau)^8 against the branch-point product
/// form (det mu)^4 pi^{-4g} prod_{k<l in U} (a_k-a_l)^2 prod_{k<l not in U}.
double thomae_residual(const CurveSpec& curve, const PeriodData& periods, const ThetaEngine& th);

/// Relative residual of D^n = pi^{4gr} (det mu)^{-4r} phi_g(tau).
double disc_identity_residual(const CurveSpec& curve, const PeriodData& periods, const ThetaEngine& th,
                              const CharTable& table);

struct GammaResult {
    double abs_gamma = 0.0;          // |D pi^{-4g} (det mu)^4|^{1/8}
    double consistency_residual = 0.0;  // against |gamma|^{8n} from phi_g
};
GammaResult gamma_constant(const CurveSpec& curve, const PeriodData& periods, const ThetaEngine& th,
                           const CharTable& table);

/// The unique characteristic delta with ||theta[delta]|| vanishing at the
/// Abel-Jacobi images of all effective divisors of g-1 Weierstrass points.
/// Scans all 2^{2g} candidates; throws unless exactly one survives.
ThetaChar riemann_characteristic(const PeriodEngine& pe, const ThetaEngine& th,
                                 double vanish_tol_rel = 1e-6);

/// log ||theta||(z) for z in mu-coordinates:
/// (det Y)^{1/4} exp(-pi Im(w)^T Y^{-1} Im(w)) |theta[delta](w; tau)|, w = mu^{-1} z.
/// Returns -inf on the theta divisor.
double faltings_norm_log(const PeriodEngine& pe, const ThetaEngine& th, const ThetaChar& delta,
                         const VecC& z);
double faltings_norm(const PeriodEngine& pe, const ThetaEngine& th, const ThetaChar& delta,
                     const VecC& z);

}  // namespace hypdelta
