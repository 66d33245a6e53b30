#include "octa/errors.hpp"
#include "octa/mat2.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <cmath>

using namespace octa;

TEST_CASE("sign examples") {
    CHECK(sign(QSqrt2(1, 1)) == 1);
    CHECK(sign(QSqrt2(0, 0)) == 0);
    CHECK(sign(QSqrt2(3, -2)) == 1);
    CHECK(sign(QSqrt2(-3, 2)) == -1);
    CHECK(sign(QSqrt2(-1, 1)) == 1);
    CHECK(sign(QSqrt2(1, -1)) == -1);
}

TEST_CASE("sign agrees with floating point away from zero") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 2000; ++t) {
        QSqrt2 x = testutil::rand_q(rng);
        double f = x.a().get_d() + x.b().get_d() * std::sqrt(2.0);
        if (std::abs(f) > 1e-9) CHECK(sign(x) == (f > 0 ? 1 : -1));
    }
}

TEST_CASE("field axioms") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 500; ++t) {
        QSqrt2 x = testutil::rand_q(rng), y = testutil::rand_q(rng), z = testutil::rand_q(rng);
        CHECK((x * y) * z == x * (y * z));
        CHECK((x + y) + z == x + (y + z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x * y == y * x);
        if (!x.is_zero()) CHECK(x.inverse() * x == QSqrt2(1));
        if (!y.is_zero()) CHECK((x / y) * y == x);
        CHECK(sign(x * y) == sign(x) * sign(y));
    }
}

TEST_CASE("to_float") {
    CHECK(to_float(QSqrt2(1, 1)) == doctest::Approx(2.41421356237));
    CHECK(to_float(QSqrt2(0)) == 0.0);
    CHECK(to_float(QSqrt2(3, 3)) == doctest::Approx(7.2426406871));
    // cancellation-free evaluation of a tiny value
    QSqrt2 tiny = QSqrt2(mpz_class("665857"), mpz_class("-470832"));
    double ref = 1.0 / (665857.0 + 470832.0 * std::sqrt(2.0));
    CHECK(std::abs(to_float(tiny) - ref) < 1e-20);
}

TEST_CASE("floor and ceil") {
    CHECK(QSqrt2(1, 1).floor() == 2);
    CHECK(QSqrt2(1, 1).ceil() == 3);
    CHECK(QSqrt2(-1, -1).floor() == -3);
    CHECK(QSqrt2(5).floor() == 5);
    CHECK(QSqrt2(5).ceil() == 5);
    CHECK(QSqrt2(mpq_class(-7, 2)).floor() == -4);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 500; ++t) {
        QSqrt2 x = testutil::rand_q(rng, 1000000, 3);
        mpz_class f = x.floor();
        CHECK(QSqrt2(mpq_class(f)) <= x);
        CHECK(QSqrt2(mpq_class(f + 1)) > x);
    }
}

TEST_CASE("serialization round trip") {
    QSqrt2 x = QSqrt2::frac(3, 2, -5, 7);
    CHECK(x.str() == "3/2-5/7*sqrt2");
    CHECK(QSqrt2::parse(x.str()) == x);
    CHECK(QSqrt2::parse("1+sqrt2") == QSqrt2(1, 1));
    CHECK(QSqrt2::parse("2*sqrt2-1") == QSqrt2(-1, 2));
    CHECK(QSqrt2::parse("-1-sqrt2") == QSqrt2(-1, -1));
    CHECK(QSqrt2::parse("3/2+1*sqrt2") == QSqrt2::frac(3, 2, 1, 1));
    CHECK(QSqrt2::parse("0.25") == QSqrt2::frac(1, 4));
    CHECK(QSqrt2::parse("3") == QSqrt2(3));
    CHECK_THROWS_AS(QSqrt2::parse("abc"), ParseError);
    CHECK_THROWS_AS(QSqrt2::parse(""), ParseError);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 200; ++t) {
        QSqrt2 y = testutil::rand_q(rng);
        CHECK(QSqrt2::parse(y.str()) == y);
    }
}

TEST_CASE("matrix identities") {
    const Mat2 I;
    CHECK(gamma_mat() * gamma_mat() == I);
    CHECK(nu(1) * nu(1) == I);
    CHECK(gamma_mat() * nu(7) == sigma_mat());
    CHECK(equal_up_to_sign(nu(4), -nu(4)));
    CHECK(equal_up_to_sign(nu(3) * nu(1), nu(6)));
    CHECK(nu(3) * nu_inv(1) == -nu(6));
    CHECK_FALSE(equal_up_to_sign(nu(1), nu(2)));
    CHECK(gamma_mat().det() == QSqrt2(-1));
    CHECK(sigma_mat().det() == QSqrt2(1));
    for (int i = 0; i < 8; ++i) {
        CHECK(nu(i).det() == QSqrt2(i % 2 ? -1 : 1));
        CHECK(nu(i) * nu_inv(i) == I);
        CHECK(gamma_i(i) * gamma_i(i) == I);
    }
    CHECK(beta_mat() == nu(1));
}

TEST_CASE("D4 closure in PGL") {
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            Mat2 q = nu(j) * nu_inv(i);
            int count = 0;
            for (int k = 0; k < 8; ++k) count += equal_up_to_sign(q, nu(k));
            CHECK(count == 1);
            int k = nu_quotient(j, i);
            CHECK(equal_up_to_sign(q, nu(k)));
            if (i != j) CHECK(k != 0);
        }
    CHECK(nu_quotient(3, 1) == 6);
}

TEST_CASE("moebius actions") {
    ProjPoint three(QSqrt2(3));
    CHECK(gamma_mat().apply_left(three) == ProjPoint(QSqrt2(-1, 2)));
    ProjPoint p(QSqrt2(1, 1));
    CHECK(gamma_mat().apply_left(nu(1).apply_left(p)) == p);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        ProjPoint u(testutil::rand_q(rng));
        CHECK(Mat2().apply_left(u) == u);
        // composition laws
        Mat2 m = nu(t % 8) * gamma_mat(), n = gamma_i((t + 3) % 8);
        CHECK((m * n).apply_left(u) == m.apply_left(n.apply_left(u)));
        CHECK((m * n).apply_right(u) == n.apply_right(m.apply_right(u)));
    }
    CHECK(gamma_mat().apply_left(ProjPoint::infinity()) == ProjPoint::infinity());
    CHECK(sigma_mat().apply_left(ProjPoint::infinity()).is_inf());
    // (x:y) with y = 0 canonicalizes to (1:0)
    CHECK(ProjPoint(QSqrt2(-3), QSqrt2(0)) == ProjPoint::infinity());
}
