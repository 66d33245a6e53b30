#include "octa/cfmaps.hpp"
#include "octa/errors.hpp"
#include "octa/projline.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <cmath>

using namespace octa;

TEST_CASE("sector boundaries") {
    const auto& b = sector_boundaries();
    CHECK(b[0].is_inf());
    CHECK(b[8].is_inf());
    CHECK(b[1] == ProjPoint(QSqrt2(1, 1)));
    CHECK(b[2] == ProjPoint(QSqrt2(1)));
    CHECK(b[3] == ProjPoint(QSqrt2(-1, 1)));
    for (int k = 1; k < 8; ++k)
        CHECK(b[k].to_double() == doctest::Approx(1.0 / std::tan(k * M_PI / 8)).epsilon(1e-12));
}

TEST_CASE("sector_of") {
    CHECK(sector_of(ProjPoint(QSqrt2(3))) == 0);
    CHECK(sector_of(ProjPoint(QSqrt2(0))) == 4);
    CHECK(sector_of(ProjPoint(QSqrt2(-1, -1))) == 7);
    CHECK(sector_of(ProjPoint(QSqrt2(1, 1))) == 1);
    CHECK(sector_of(ProjPoint(QSqrt2(1))) == 2);
    CHECK(sector_of(ProjPoint::infinity()) == 0);
    CHECK(sector_in_domain(ProjPoint::infinity()) == 7);
    // the boundary cot(k pi/8) belongs to sector k
    const auto& b = sector_boundaries();
    for (int k = 1; k < 8; ++k) CHECK(sector_of(b[k]) == k);
}

TEST_CASE("nu_k maps sector k into sector 0") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 400; ++t) {
        ProjPoint u(testutil::rand_q(rng, 40, 11));
        int k = sector_of(u);
        ProjPoint v = nu(k).apply_left(u);
        CHECK(in_closed_sector(v, 0));
        CHECK(sector_of(v) == 0);
    }
}

TEST_CASE("angle conversions") {
    CHECK(angle_from_u(ProjPoint(QSqrt2(1))) == doctest::Approx(M_PI / 4));
    CHECK(std::abs(u_from_angle(M_PI / 2)) < 1e-15);
    CHECK(std::abs(angle_from_u(ProjPoint(QSqrt2(1, 1))) - M_PI / 8) < 1e-12);
    for (double th = 1e-6; th < M_PI - 1e-6; th += 0.001)
        CHECK(std::abs(angle_from_u(u_from_angle(th)) - th) < 1e-12);
}

TEST_CASE("gauss_sector_of") {
    CHECK(gauss_sector_of(ProjPoint(QSqrt2(0))) == GaussSector{4, 0});
    CHECK_THROWS_AS(gauss_sector_of(ProjPoint(QSqrt2(1, 1))), ParabolicFixedPoint);
    CHECK_THROWS_AS(gauss_sector_of(ProjPoint::infinity()), ParabolicFixedPoint);
    CHECK_THROWS_AS(gauss_sector_of(ProjPoint(QSqrt2(5))), OutOfDomain);
    // u = 1 is in sector 2
    CHECK(gauss_sector_of(ProjPoint(QSqrt2(1))) == GaussSector{2, 0});
    // u slightly above 1: F(u) leaves sector 1 at once
    ProjPoint u(QSqrt2::frac(11, 10));
    CHECK(sector_of(farey(u)) != 1);
    CHECK(gauss_sector_of(u) == GaussSector{1, 1});
}

TEST_CASE("n_1 and n_7 agree with direct iteration") {
    std::mt19937_64 rng(8);
    const QSqrt2 p = cot_pi8();
    for (int t = 0; t < 300; ++t) {
        bool one = t % 2 == 0;
        // sample near the parabolic points too
        double lo = one ? 1.0 : -60.0, hi = one ? 2.414 : -2.4143;
        ProjPoint u(testutil::rand_generic(rng, lo, hi));
        int k = sector_of(u);
        if (k != 1 && k != 7) continue;
        if (u.u() == p) continue;
        GaussSector gs = gauss_sector_of(u);
        REQUIRE(gs.k == k);
        ProjPoint x = u;
        for (long j = 1; j < gs.n; ++j) {
            x = farey(x);
            CHECK(sector_in_domain(x) == k);
        }
        x = farey(x);
        CHECK(sector_in_domain(x) != k);
    }
}
