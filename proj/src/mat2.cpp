#include "octa/mat2.hpp"

#include "octa/errors.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace octa {

ProjPoint::ProjPoint(const QSqrt2& x, const QSqrt2& y) {
    if (y.is_zero()) {
        if (x.is_zero()) throw std::invalid_argument("ProjPoint: (0:0)");
        x_ = QSqrt2(1);
        y_ = QSqrt2(0);
    } else {
        x_ = x / y;
        y_ = QSqrt2(1);
    }
}

const QSqrt2& ProjPoint::u() const {
    if (is_inf()) throw std::domain_error("ProjPoint: infinite coordinate");
    return x_;
}

double ProjPoint::to_double() const {
    return is_inf() ? std::numeric_limits<double>::infinity() : x_.to_double();
}

std::string ProjPoint::str() const { return is_inf() ? std::string("inf") : x_.str(); }

ProjPoint ProjPoint::parse(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t == "inf" || t == "+inf" || t == "-inf" || t == "oo" || t == "infinity") return infinity();
    auto colon = t.find(':');
    if (colon != std::string::npos)
        return {QSqrt2::parse(t.substr(0, colon)), QSqrt2::parse(t.substr(colon + 1))};
    return {QSqrt2::parse(t)};
}

bool Mat2::unimodular() const {
    QSqrt2 dt = det();
    return dt == QSqrt2(1) || dt == QSqrt2(-1);
}

Mat2 Mat2::inverse() const {
    QSqrt2 dt = det();
    if (dt.is_zero()) throw std::domain_error("Mat2: singular");
    QSqrt2 r = dt.inverse();
    return {d_ * r, -b_ * r, -c_ * r, a_ * r};
}

Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_,
            m.c_ * n.a_ + m.d_ * n.c_, m.c_ * n.b_ + m.d_ * n.d_};
}

ProjPoint Mat2::apply_left(const ProjPoint& p) const {
    return {a_ * p.x() + b_ * p.y(), c_ * p.x() + d_ * p.y()};
}

ProjPoint Mat2::apply_right(const ProjPoint& p) const {
    return {a_ * p.x() + c_ * p.y(), b_ * p.x() + d_ * p.y()};
}

bool equal_up_to_sign(const Mat2& m, const Mat2& n) { return m == n || m == -n; }

namespace {

struct Tables {
    std::array<Mat2, 8> nu, nu_inv, gi, fb, fbi;
    Mat2 gamma, sigma, alpha, beta;
    int quot[8][8];

    Tables() {
        const QSqrt2 s = QSqrt2::frac(0, 1, 1, 2);  // sqrt2/2
        const QSqrt2 z(0), one(1);
        nu[0] = Mat2(one, z, z, one);
        nu[1] = Mat2(s, s, s, -s);
        nu[2] = Mat2(s, s, -s, s);
        nu[3] = Mat2(z, one, one, z);
        nu[4] = Mat2(z, one, -one, z);
        nu[5] = Mat2(-s, s, s, s);
        nu[6] = Mat2(-s, s, -s, -s);
        nu[7] = Mat2(-one, z, z, one);
        const QSqrt2 t(2, 2);
        gamma = Mat2(-one, t, z, one);
        sigma = Mat2(one, t, z, one);
        alpha = Mat2(one, z, z, -one);
        beta = Mat2(s, s, s, -s);
        for (int i = 0; i < 8; ++i) {
            nu_inv[i] = nu[i].inverse();
            gi[i] = nu_inv[i] * gamma * nu[i];
            fb[i] = gamma * nu[i];
            fbi[i] = nu_inv[i] * gamma;
        }
        for (int j = 0; j < 8; ++j)
            for (int i = 0; i < 8; ++i) {
                Mat2 q = nu[j] * nu_inv[i];
                quot[j][i] = -1;
                for (int k = 0; k < 8; ++k)
                    if (equal_up_to_sign(q, nu[k])) quot[j][i] = k;
            }
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

void check_index(int i) {
    if (i < 0 || i > 7) throw OutOfRange("sector index " + std::to_string(i));
}

}  // namespace

const Mat2& nu(int i) { check_index(i); return tables().nu[i]; }
const Mat2& nu_inv(int i) { check_index(i); return tables().nu_inv[i]; }
const Mat2& gamma_mat() { return tables().gamma; }
const Mat2& sigma_mat() { return tables().sigma; }
const Mat2& alpha_mat() { return tables().alpha; }
const Mat2& beta_mat() { return tables().beta; }
const Mat2& gamma_i(int i) { check_index(i); return tables().gi[i]; }
const Mat2& farey_branch(int i) { check_index(i); return tables().fb[i]; }
const Mat2& farey_branch_inv(int i) { check_index(i); return tables().fbi[i]; }

int nu_quotient(int j, int i) {
    check_index(i);
    check_index(j);
    return tables().quot[j][i];
}

}  // namespace octa

namespace octa {

Mat2 power(const Mat2& m, unsigned long n) {
    Mat2 r, b = m;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

}  // namespace octa
