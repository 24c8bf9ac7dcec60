#include "hypdelta/wronskian.hpp"

#include <Eigen/Dense>

#include <map>

namespace hypdelta {

namespace {

using Poly = std::vector<cx>;  // coefficients, low degree first

Poly derive(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(static_cast<double>(i) * p[i]);
    return d;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, cx(0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly add_scaled(Poly a, const Poly& b, cx s) {
    if (a.size() < b.size()) a.resize(b.size(), cx(0.0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += s * b[i];
    return a;
}

cx eval(const Poly& p, cx x) {
    cx v(0.0);
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

}  // namespace

cx wronskian_x(const CurveSpec& curve, cx x, cx y) {
    int g = curve.genus();
    if (std::abs(y) < 1e-12 * (1.0 + curve.scale()))
        throw CurveError("wronskian_x: derivative blows up at a branch point");
    // f and f' as coefficient vectors
    int n = curve.degree();
    Poly f(n + 1, cx(0.0));
    f[n] = 1.0;
    for (int k = 0; k < n; ++k) f[n - 1 - k] = curve.coefficients()[k];
    Poly fp = derive(f);

    // row k (0-based): (1/k!) d^k [x^{l-1}/(2y)] = (1/k!) Q_{k,l}(x) y^{-(2k+1)} / 2
    // with Q_{0,l} = x^{l-1} and Q_{k+1} = Q_k' f - ((2k+1)/2) Q_k f'
    Eigen::MatrixXcd M(g, g);
    double kfact = 1.0;
    for (int l = 1; l <= g; ++l) {
        Poly q(l, cx(0.0));
        q[l - 1] = 1.0;
        cx ypow = 1.0 / y;  // y^{-(2k+1)} at k = 0
        kfact = 1.0;
        for (int k = 0; k < g; ++k) {
            if (k > 0) kfact *= k;
            M(k, l - 1) = eval(q, x) * ypow / (2.0 * kfact);
            q = add_scaled(mul(derive(q), f), mul(q, fp), cx(-(2.0 * k + 1.0) / 2.0));
            ypow /= y * y;
        }
    }
    return M.determinant();
}

cx wronskian_zg(const PeriodEngine& pe, cx t) {
    int g = pe.curve().genus();
    // h(t) = prod (1 - a_k t^2) and h'
    int n = pe.curve().degree();
    Poly h = {cx(1.0)};
    for (cx a : pe.curve().roots()) {
        Poly f2 = {cx(1.0), cx(0.0), -a};
        h = mul(h, f2);
    }
    (void)n;
    Poly hp = derive(h);

    cx s = pe.sqrt_h(t);

    // elements are sums P_j(t) h^{j/2}; D = sqrt(h) d/dt maps
    // P h^{j/2} -> P' h^{(j+1)/2} + (j/2) P h' h^{(j-1)/2}
    using Elem = std::map<int, Poly>;
    auto apply_D = [&](const Elem& e) {
        Elem out;
        for (const auto& [j, p] : e) {
            Poly dp = derive(p);
            if (!dp.empty()) {
                auto& slot = out[j + 1];
                slot = add_scaled(slot, dp, cx(1.0));
            }
            if (j != 0) {
                Poly term = mul(p, hp);
                auto& slot = out[j - 1];
                slot = add_scaled(slot, term, cx(0.5 * j));
            }
        }
        return out;
    };
    auto eval_elem = [&](const Elem& e) {
        cx v(0.0);
        for (const auto& [j, p] : e) {
            cx sj(1.0);
            for (int i = 0; i < j; ++i) sj *= s;
            v += eval(p, t) * sj;
        }
        return v;
    };

    Eigen::MatrixXcd M(g, g);
    for (int l = 1; l <= g; ++l) {
        Elem e;
        Poly base(2 * (g - l) + 1, cx(0.0));
        base[2 * (g - l)] = 1.0;
        e[0] = base;
        double kfact = 1.0;
        for (int k = 0; k < g; ++k) {
            if (k > 0) kfact *= k;
            M(k, l - 1) = eval_elem(e) / kfact;
            e = apply_D(e);
        }
    }
    return M.determinant();
}

}  // namespace hypdelta
