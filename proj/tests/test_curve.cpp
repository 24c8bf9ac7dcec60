#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <complex>

#include "hypdelta/curve.hpp"

using namespace hypdelta;

namespace {

std::vector<cx> quintic_x5_minus_x() {
    return {cx(0, 0), cx(1, 0), cx(-1, 0), cx(0, 1), cx(0, -1)};
}

}  // namespace

TEST_CASE("build from coefficients of x^5 - x recovers the roots") {
    // x^5 - x: full coefficient list, leading first
    std::vector<cx> coeffs = {1, 0, 0, 0, -1, 0};
    CurveSpec c = build_curve_from_coefficients(coeffs);
    CHECK(c.genus() == 2);
    CHECK(c.origin() == "coefficients");
    auto expect = quintic_x5_minus_x();
    for (cx e : expect) {
        double best = 1e9;
        for (cx r : c.roots()) best = std::min(best, std::abs(r - e));
        CHECK(best < 1e-10);
    }
}

TEST_CASE("degree and separability validation") {
    // x^6 + 1: even degree
    CHECK_THROWS_AS(build_curve_from_coefficients({1, 0, 0, 0, 0, 0, 1}), CurveError);
    // x^5 - 2x^4 + x^3 = x^3 (x-1)^2: repeated roots
    CHECK_THROWS_AS(build_curve_from_coefficients({1, -2, 1, 0, 0, 0}), CurveError);
    // non-monic
    CHECK_THROWS_AS(build_curve_from_coefficients({2, 0, 0, 0, -1, 0}), CurveError);
    // degree 3 is too small here
    CHECK_THROWS_AS(build_curve_from_roots({cx(0), cx(1), cx(2)}), CurveError);
}

TEST_CASE("coefficients <-> roots round trip") {
    CurveSpec c = build_curve_from_roots(quintic_x5_minus_x());
    // expanding prod (x - a_k) must reproduce x^5 - x
    std::vector<cx> expect = {0, 0, 0, -1, 0};  // lambda_1..lambda_5
    for (int i = 0; i < 5; ++i) CHECK(std::abs(c.coefficients()[i] - expect[i]) < 1e-10);

    // generic curve: rebuild from computed coefficients, compare coefficient vectors
    std::vector<cx> roots = {cx(0.3, 0.1), cx(-1.2, 0.4), cx(0.9, -1.1), cx(-0.2, -0.8), cx(1.4, 0.6)};
    CurveSpec a = build_curve_from_roots(roots);
    std::vector<cx> full = {cx(1.0)};
    for (cx l : a.coefficients()) full.push_back(l);
    CurveSpec b = build_curve_from_coefficients(full);
    for (int i = 0; i < 5; ++i)
        CHECK(std::abs(a.coefficients()[i] - b.coefficients()[i]) < 1e-10 * (1.0 + std::abs(a.coefficients()[i])));
}

TEST_CASE("discriminant") {
    CurveSpec c = build_curve_from_roots(quintic_x5_minus_x());
    cx d = c.discriminant();
    CHECK(std::abs(d - cx(-256.0)) < 1e-9);

    // equals the product of f'(a_k) up to the standard sign, brute force
    cx prod(1.0);
    for (cx r : c.roots()) prod *= c.fprime(r);
    CHECK(std::abs(d - prod) < 1e-9);  // (-1)^{n(n-1)/2} = +1 for n = 5

    // translation invariance
    std::vector<cx> shifted;
    for (cx r : c.roots()) shifted.push_back(r + cx(0.37, -0.21));
    CurveSpec ct = build_curve_from_roots(shifted);
    CHECK(std::abs(ct.discriminant() - d) < 1e-9);

    // x^5 - 1: |D| = 5^5
    std::vector<cx> r5;
    for (int k = 0; k < 5; ++k) r5.push_back(std::polar(1.0, 2 * M_PI * k / 5));
    CurveSpec c5 = build_curve_from_roots(r5);
    CHECK(std::abs(std::abs(c5.discriminant()) - 3125.0) < 1e-8);

    double la, arg;
    c5.discriminant_log(la, arg);
    CHECK(la == doctest::Approx(std::log(3125.0)).epsilon(1e-12));
}

TEST_CASE("weierstrass points carry the right weights") {
    CurveSpec g2 = build_curve_from_roots(quintic_x5_minus_x());
    WeierstrassSet w2 = weierstrass_points(g2);
    CHECK(w2.points.size() == 6);
    CHECK(w2.weight_each == 1);
    CHECK(w2.total_weight == 6);  // g^3 - g for g = 2
    CHECK(w2.points.back().is_infinity());

    std::vector<cx> r7 = {cx(0, 0), cx(1, 0),  cx(-1, 0), cx(0.5, 0.866025403784439),
                          cx(0.5, -0.866025403784439), cx(-0.5, 0.866025403784439),
                          cx(-0.5, -0.866025403784439)};
    CurveSpec g3 = build_curve_from_roots(r7);
    WeierstrassSet w3 = weierstrass_points(g3);
    CHECK(w3.points.size() == 8);
    CHECK(w3.weight_each == 3);
    CHECK(w3.total_weight == 24);
}

TEST_CASE("y_on_sheet and square-root monodromy") {
    CurveSpec c = build_curve_from_roots(quintic_x5_minus_x());
    CutSystem cuts(c);

    cx y = y_on_sheet(cuts, cx(-2.0, 0.0), 0);
    CHECK(std::abs(y * y - cx(-30.0)) < 1e-10);
    CHECK(std::abs(y_on_sheet(cuts, cx(-2.0, 0.0), 1) + y) < 1e-12);
    CHECK_THROWS_AS(y_on_sheet(cuts, cx(1.0, 0.0), 0), CurveError);  // branch point
    CHECK_THROWS_AS(y_on_sheet(cuts, cx(2.0, 0.0), 0), CurveError);  // on the infinity ray cut

    // continuation around a single branch point negates y
    {
        cx center(0.0, 1.0);  // the root i
        double rad = 0.4;
        std::vector<cx> loop;
        int N = 400;
        for (int i = 0; i <= N; ++i) loop.push_back(center + std::polar(rad, 2 * M_PI * i / N));
        cx y0 = std::sqrt(c.f(loop[0]));
        cx y1 = continue_sqrt_f(c, loop, y0);
        CHECK(std::abs(y1 + y0) < 1e-8 * std::abs(y0));
    }
    // continuation around two branch points preserves y
    {
        cx center(0.0, 0.5);  // encloses roots 0 and i
        double rad = 0.8;
        std::vector<cx> loop;
        int N = 800;
        for (int i = 0; i <= N; ++i) loop.push_back(center + std::polar(rad, 2 * M_PI * i / N));
        cx y0 = std::sqrt(c.f(loop[0]));
        cx y1 = continue_sqrt_f(c, loop, y0);
        CHECK(std::abs(y1 - y0) < 1e-8 * std::abs(y0));
    }
    // crossing a branch cut flips the reference branch sign
    {
        cx p, q;
        cuts.cut_endpoints(1, p, q);
        cx mid = 0.5 * (p + q);
        cx n = cx(0, 1) * (q - p) / std::abs(q - p);
        cx above = cuts.y0(mid + 1e-6 * n);
        cx below = cuts.y0(mid - 1e-6 * n);
        CHECK(std::abs(above + below) < 1e-4 * std::abs(above));
    }
}

TEST_CASE("user ordering is honored and recorded") {
    auto roots = quintic_x5_minus_x();
    CurveSpec c = build_curve_from_roots(roots, BuildOptions{1e-8, std::vector<int>{4, 2, 0, 3, 1}});
    CHECK(c.ordering_kind() == "user");
    CHECK(c.roots()[0] == roots[4]);
    CHECK_THROWS_AS(build_curve_from_roots(roots, BuildOptions{1e-8, std::vector<int>{0, 0, 1, 2, 3}}),
                    CurveError);
    // an ordering whose spine passes through another root is rejected
    CHECK_THROWS_AS(build_curve_from_roots(roots, BuildOptions{1e-8, std::vector<int>{4, 3, 2, 1, 0}}),
                    CurveError);
}
