#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypdelta/periods.hpp"

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

}  // namespace

TEST_CASE("canonical homology chain shapes") {
    CurveSpec c = curve_x5_minus_x();
    HomologyBasis h = canonical_homology(c);
    CHECK(h.genus == 2);
    CHECK(h.a_chains.size() == 2);
    CHECK(h.b_chains.size() == 2);
    CHECK(h.a_chains[0] == std::vector<int>{1});
    CHECK(h.a_chains[1] == std::vector<int>{3});
    CHECK(h.b_chains[0] == std::vector<int>{2, 4});
    CHECK(h.b_chains[1] == std::vector<int>{4});
}

TEST_CASE("tau is symmetric with positive definite imaginary part") {
    for (const CurveSpec& c : {curve_x5_minus_1(), curve_x5_minus_x()}) {
        PeriodEngine pe(c);
        const PeriodData& pd = pe.periods();
        CHECK(pd.tau.rows() == 2);
        CHECK(pd.tau_symmetry_residual < 1e-8);
        CHECK(pd.lambda_min > 0.0);
        CHECK(pd.det_Y > 0.0);
        CHECK(std::abs(pd.det_mu) > 0.0);
    }
}

TEST_CASE("x -> c^2 x rescales the periods deterministically, tau invariant") {
    CurveSpec c = curve_x5_minus_1();
    PeriodEngine pe(c);

    double c2 = 1.7;  // positive scaling preserves the lexicographic ordering
    std::vector<cx> scaled;
    for (cx r : c.roots()) scaled.push_back(c2 * r);
    CurveSpec cs = build_curve_from_roots(scaled);
    PeriodEngine ps(cs);

    CHECK((ps.periods().tau - pe.periods().tau).cwiseAbs().maxCoeff() < 1e-9);

    int g = c.genus();
    // mu_k row scales by c^{2k - 2g - 1}; det mu by c^{-g^2}
    double cc = std::sqrt(c2);
    double expect = std::pow(cc, -g * g);
    double got = std::abs(ps.periods().det_mu) / std::abs(pe.periods().det_mu);
    CHECK(got == doctest::Approx(expect).epsilon(1e-9));
    for (int k = 1; k <= g; ++k) {
        double rowscale = std::pow(cc, 2 * k - 2 * g - 1);
        for (int j = 0; j < g; ++j) {
            cx ratio = ps.periods().mu(k - 1, j) / pe.periods().mu(k - 1, j);
            CHECK(std::abs(ratio - cx(rowscale)) < 1e-8 * rowscale);
        }
    }
}

TEST_CASE("abel-jacobi basics") {
    CurveSpec c = curve_x5_minus_1();
    PeriodEngine pe(c);
    int g = c.genus();

    // base point maps to zero
    CHECK(pe.abel_jacobi(SurfacePoint::infinity()).cwiseAbs().maxCoeff() == 0.0);

    // branch points are 2-torsion
    for (int k = 0; k < 2 * g + 1; ++k) {
        VecC z = 2.0 * pe.abel_jacobi_branch(k);
        CHECK(pe.lattice_distance(z) < 1e-8);
    }

    // path independence modulo the lattice: escape route vs branch-point route
    cx x(0.7, -0.3);
    CutSystem cuts(c);
    REQUIRE(!cuts.segment_hits_cuts(c.roots()[4], x, 1e-9));
    cx y = cuts.y0(x);
    VecC z1 = pe.abel_jacobi(SurfacePoint{0, x, y});
    VecC z2 = pe.abel_jacobi_branch(4) + pe.segment_integral(c.roots()[4], x, 1);
    CHECK(pe.lattice_distance(z1 - z2) < 1e-8);

    // the hyperelliptic involution negates the class
    VecC zm = pe.abel_jacobi(SurfacePoint{0, x, -y});
    CHECK(pe.lattice_distance(z1 + zm) < 1e-8);
}

TEST_CASE("local coordinate expansion about infinity") {
    // generic (asymmetric) curve, so the first correction term is present
    CurveSpec c = build_curve_from_roots(
        {cx(0.3, 0.1), cx(-1.2, 0.4), cx(0.9, -1.1), cx(-0.2, -0.8), cx(1.4, 0.6)});
    PeriodEngine pe(c);
    int g = c.genus();

    CHECK(pe.aj_from_t(cx(0.0)).cwiseAbs().maxCoeff() == 0.0);

    // z_g / t -> 1
    cx t(1e-3, 0.0);
    CHECK(std::abs(pe.z_g_from_t(t) / t - 1.0) < 1e-5);

    // residual orders: the expansion guarantees order at least 2(g-k)+2;
    // the odd model has only odd powers of t, so the measured slope is
    // 2(g-k)+3 for a generic curve
    cx t0(3e-2, 0.0);
    auto r1 = pe.local_coordinate_residual(t0);
    auto r2 = pe.local_coordinate_residual(0.5 * t0);
    REQUIRE(r1.size() == static_cast<std::size_t>(g - 1));
    for (int k = 1; k < g; ++k) {
        double order = std::log2(r1[k - 1] / r2[k - 1]);
        CHECK(order > 2.0 * (g - k) + 2.0 - 0.2);
        CHECK(std::abs(order - (2.0 * (g - k) + 3.0)) < 0.2);
    }
}

TEST_CASE("hodge norm positive and consistent with the bilinear-relation Gram matrix") {
    CurveSpec c = curve_x5_minus_1();
    PeriodEngine pe(c);
    double hn = pe.hodge_norm();
    CHECK(hn > 0.0);

    MatC gram = pe.gram_hodge();
    // Hermitian positive definite with det = hodge norm
    CHECK((gram - gram.adjoint()).cwiseAbs().maxCoeff() < 1e-10 * gram.cwiseAbs().maxCoeff());
    cx dg = gram.determinant();
    CHECK(std::abs(dg.imag()) < 1e-8 * std::abs(dg));
    CHECK(dg.real() == doctest::Approx(hn).epsilon(1e-8));

    // invariance under a change of homology basis induced by reordering
    std::vector<int> rev = {4, 3, 2, 1, 0};
    CurveSpec cr = build_curve_from_roots(c.roots(), BuildOptions{1e-8, rev});
    PeriodEngine per(cr);
    CHECK(per.hodge_norm() == doctest::Approx(hn).epsilon(1e-8));
}

TEST_CASE("lattice reduction is exact for lattice vectors") {
    CurveSpec c = curve_x5_minus_x();
    PeriodEngine pe(c);
    const PeriodData& pd = pe.periods();
    int g = c.genus();
    VecC z = 3.0 * pd.mu.col(0) - 2.0 * pd.mu_prime.col(1) + pd.mu.col(1);
    Eigen::VectorXd coeffs;
    VecC r = pe.reduce_mod_lattice(z, &coeffs);
    CHECK(r.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(coeffs(0) == 3.0);
    CHECK(coeffs(1) == 1.0);
    CHECK(coeffs(g + 1) == -2.0);
}
