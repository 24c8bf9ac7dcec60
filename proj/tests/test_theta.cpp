#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hypdelta/theta.hpp"

using namespace hypdelta;

namespace {

CurveSpec curve_x5_minus_1() {
    std::vector<cx> r;
    for (int k = 0; k < 5; ++k) r.push_back(std::polar(1.0, 2 * M_PI * k / 5));
    return build_curve_from_roots(r);
}

CurveSpec curve_x5_minus_x() {
    return build_curve_from_roots({cx(0, 0), cx(1, 0), cx(-1, 0), cx(0, 1), cx(0, -1)});
}

CurveSpec curve_x7_minus_x() {
    std::vector<cx> r = {cx(0, 0)};
    for (int k = 0; k < 6; ++k) r.push_back(std::polar(1.0, M_PI * k / 3.0));
    return build_curve_from_roots(r);
}

}  // namespace

TEST_CASE("genus-1 theta constant against the direct series") {
    MatC tau(1, 1);
    tau(0, 0) = cx(0.0, 1.0);
    ThetaEngine th(tau);
    // sum over n of exp(-pi n^2), frozen from the rapidly convergent series
    double expect = 1.0864348112133080;
    cx v = th.theta_constant(ThetaChar::zero(1));
    CHECK(std::abs(v - cx(expect)) < 1e-12);

    // odd characteristic vanishes at z = 0
    ThetaChar odd{{1}, {1}};
    CHECK(odd.parity() == -1);
    CHECK(std::abs(th.theta_constant(odd)) < 1e-12);
}

TEST_CASE("quasi-periodicity under z -> z + tau e_1") {
    MatC tau(2, 2);
    tau << cx(0.3, 1.1), cx(0.1, 0.2), cx(0.1, 0.2), cx(-0.2, 0.9);
    ThetaEngine th(tau);
    VecC z(2);
    z << cx(0.21, 0.13), cx(-0.17, 0.05);
    ThetaChar zero = ThetaChar::zero(2);

    VecC zs = z;
    zs(0) += tau(0, 0);
    zs(1) += tau(1, 0);
    cx lhs = th.theta(zero, zs).value();
    cx factor = std::exp(cx(0, -M_PI) * tau(0, 0) + cx(0, -2.0 * M_PI) * z(0));
    cx rhs = factor * th.theta(zero, z).value();
    CHECK(std::abs(lhs - rhs) < 1e-9 * std::abs(rhs));

    // plain periodicity under z -> z + e_2
    VecC ze = z;
    ze(1) += 1.0;
    CHECK(std::abs(th.theta(zero, ze).value() - th.theta(zero, z).value()) < 1e-10);
}

TEST_CASE("tail bound is honest: tolerance vs tolerance/100") {
    CurveSpec c = curve_x5_minus_1();
    PeriodEngine pe(c);
    ThetaEngine coarse(pe.periods().tau, ThetaConfig{1e-8, 40000000, 53});
    ThetaEngine fine(pe.periods().tau, ThetaConfig{1e-10, 40000000, 53});
    VecC z(2);
    z << cx(0.3, 0.4), cx(-0.2, 0.1);
    for (unsigned e : {0u, 5u, 9u, 15u}) {
        ThetaChar ch = ThetaChar::from_index(e, 2);
        cx a = coarse.theta(ch, z).normalized;
        cx b = fine.theta(ch, z).normalized;
        CHECK(std::abs(a - b) < 1e-8);
        CHECK(coarse.theta(ch, z).tail_bound < 1e-7);
    }
}

TEST_CASE("enumeration cap raises the radius-overflow error") {
    MatC tau(1, 1);
    tau(0, 0) = cx(0.0, 1e-4);  // tiny Im tau forces a huge ellipsoid
    CHECK_THROWS_AS(ThetaEngine(tau, ThetaConfig{1e-12, 100, 53}).theta_constant(ThetaChar::zero(1)),
                    ThetaError);
    CHECK_THROWS_AS(ThetaEngine(tau, ThetaConfig{1e-12, 100, 52}), ThetaError);  // precision < 53
}

TEST_CASE("characteristic table: counts, parity, subset algebra") {
    for (int g : {2, 3}) {
        CharTable tab(g);
        CHECK(tab.r() == (g == 2 ? 10 : 35));
        CHECK(tab.n() == (g == 2 ? 4 : 15));
        CHECK(tab.m() == (g == 2 ? 15 : 56));
        CHECK(static_cast<long>(tab.subsets_T().size()) == tab.r());

        // eta_{S o S'} = eta_S + eta_{S'} on disjoint-support examples
        ThetaChar a = tab.eta_S({1, 2});
        ThetaChar b = tab.eta_S({3});
        CHECK(tab.eta_S({1, 2, 3}) == a + b);
        CHECK(tab.eta_S({}) == ThetaChar::zero(g));
        // S o S' with overlap: {1,2} o {2,3} = {1,3}
        CHECK(tab.eta_S({1, 3}) == tab.eta_S({1, 2}) + tab.eta_S({2, 3}));

        // all eta_{T o U} are even
        for (const auto& T : tab.subsets_T()) CHECK(tab.eta_TU(T).parity() == 1);
    }
}

TEST_CASE("hyperelliptic vanishing scan: theta constant vanishes iff the characteristic is odd") {
    for (const CurveSpec& c : {curve_x5_minus_1(), curve_x5_minus_x()}) {
        PeriodEngine pe(c);
        ThetaEngine th(pe.periods().tau);
        int g = c.genus();
        for (unsigned e = 0; e < (1u << (2 * g)); ++e) {
            ThetaChar ch = ThetaChar::from_index(e, g);
            double v = std::abs(th.theta_constant(ch));
            if (ch.parity() == -1)
                CHECK(v < 1e-10);
            else
                CHECK(v > 1e-3);
        }
    }
}

TEST_CASE("branch points sit at their table half-periods") {
    CurveSpec c = curve_x5_minus_1();
    PeriodEngine pe(c);
    const PeriodData& pd = pe.periods();
    CharTable tab(c.genus());
    int g = c.genus();
    for (int k = 1; k <= 2 * g + 1; ++k) {
        VecC w = pe.normalize(pe.abel_jacobi_branch(k - 1));
        const ThetaChar& et = tab.eta(k);
        VecC pred = VecC::Zero(g);
        for (int a = 0; a < g; ++a) {
            pred(a) += 0.5 * et.bottom[a];
            for (int b = 0; b < g; ++b) pred(a) += pd.tau(a, b) * (0.5 * et.top[b]);
        }
        VecC zdiff = pd.mu * (w - pred);
        CHECK(pe.lattice_distance(zdiff) < 1e-8);
    }
}

TEST_CASE("riemann characteristic: unique, odd at g=2, vanishing where it must") {
    CurveSpec c = curve_x5_minus_1();
    PeriodEngine pe(c);
    ThetaEngine th(pe.periods().tau);
    ThetaChar delta = riemann_characteristic(pe, th);
    CHECK(delta.parity() == -1);  // g = 2: the linear system has odd dimension 1

    // vanishes at the class of every single Weierstrass point, including infinity
    for (int k = 0; k < 5; ++k) {
        double n = faltings_norm(pe, th, delta, pe.abel_jacobi_branch(k));
        CHECK(n < 1e-6);
    }
    CHECK(std::abs(th.theta_constant(delta)) < 1e-8);

    // does not vanish at a generic translate
    VecC z = pe.abel_jacobi_branch(0);
    CutSystem cuts(c);
    cx x(0.4, 0.2);
    VecC zp = pe.abel_jacobi(SurfacePoint{0, x, cuts.y0(x)});
    double v = faltings_norm(pe, th, delta, 2.0 * zp - z);
    CHECK(v > 1e-4);
}

TEST_CASE("faltings norm: lattice invariance and evenness") {
    CurveSpec c = curve_x5_minus_x();
    PeriodEngine pe(c);
    ThetaEngine th(pe.periods().tau);
    ThetaChar delta = riemann_characteristic(pe, th);
    const PeriodData& pd = pe.periods();

    std::mt19937 rng(20240901);
    std::uniform_real_distribution<double> U(-0.8, 0.8);
    for (int trial = 0; trial < 6; ++trial) {
        VecC z(2);
        z << cx(U(rng), U(rng)), cx(U(rng), U(rng));
        double base = faltings_norm(pe, th, delta, z);
        double even = faltings_norm(pe, th, delta, -z);
        CHECK(even == doctest::Approx(base).epsilon(1e-8));
        for (int j = 0; j < 2; ++j) {
            double s1 = faltings_norm(pe, th, delta, z + pd.mu.col(j));
            double s2 = faltings_norm(pe, th, delta, z + pd.mu_prime.col(j));
            CHECK(s1 == doctest::Approx(base).epsilon(1e-8));
            CHECK(s2 == doctest::Approx(base).epsilon(1e-8));
        }
    }
}

TEST_CASE("thomae identity on the standard curves") {
    for (const CurveSpec& c : {curve_x5_minus_1(), curve_x5_minus_x(), curve_x7_minus_x()}) {
        PeriodEngine pe(c);
        ThetaEngine th(pe.periods().tau);
        CHECK(thomae_residual(c, pe.periods(), th) < 1e-8);
    }
}

TEST_CASE("thomae negative control: mislabeled roots break the identity") {
    CurveSpec c = curve_x5_minus_1();
    PeriodEngine pe(c);
    ThetaEngine th(pe.periods().tau);
    // same curve with two roots swapped, periods NOT recomputed
    std::vector<int> swapped = {1, 0, 2, 3, 4};
    CurveSpec cs = build_curve_from_roots(c.roots(), BuildOptions{1e-8, swapped});
    CHECK(thomae_residual(cs, pe.periods(), th) > 1e-3);
}

TEST_CASE("discriminant identity and gamma constant") {
    for (const CurveSpec& c : {curve_x5_minus_1(), curve_x5_minus_x(), curve_x7_minus_x()}) {
        PeriodEngine pe(c);
        ThetaEngine th(pe.periods().tau);
        CharTable tab(c.genus());
        CHECK(disc_identity_residual(c, pe.periods(), th, tab) < 1e-6);
        GammaResult gr = gamma_constant(c, pe.periods(), th, tab);
        CHECK(gr.abs_gamma > 0.0);
        CHECK(gr.consistency_residual < 1e-6);
    }
}

TEST_CASE("petersson norm is finite and positive") {
    CurveSpec c = curve_x5_minus_1();
    PeriodEngine pe(c);
    ThetaEngine th(pe.periods().tau);
    CharTable tab(2);
    double lp = log_petersson_phi(th, tab);
    CHECK(std::isfinite(lp));
    // weight bookkeeping: phi_2 is a product of 10 eighth powers
    CHECK(tab.subsets_T().size() == 10);
}
