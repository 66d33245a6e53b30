#pragma once

#include "octa/qsqrt2.hpp"

#include <array>
#include <string>

namespace octa {

// Point of RP^1 in homogeneous coordinates (x : y); u = x/y.
// Kept canonical: (u : 1) for finite points, (1 : 0) for infinity.
class ProjPoint {
public:
    ProjPoint() : x_(0), y_(1) {}
    ProjPoint(const QSqrt2& u) : x_(u), y_(1) {}  // NOLINT(google-explicit-constructor)
    ProjPoint(const QSqrt2& x, const QSqrt2& y);
    static ProjPoint infinity() { return {QSqrt2(1), QSqrt2(0)}; }

    bool is_inf() const { return y_.is_zero(); }
    const QSqrt2& x() const { return x_; }
    const QSqrt2& y() const { return y_; }
    // finite coordinate; throws on infinity
    const QSqrt2& u() const;
    double to_double() const;  // +inf for infinity

    friend bool operator==(const ProjPoint& p, const ProjPoint& q) {
        return p.x_ == q.x_ && p.y_ == q.y_;
    }
    std::string str() const;  // "inf" or QSqrt2 string
    static ProjPoint parse(const std::string& s);

private:
    QSqrt2 x_, y_;
};

class Mat2 {
public:
    Mat2() : a_(1), b_(0), c_(0), d_(1) {}
    Mat2(QSqrt2 a, QSqrt2 b, QSqrt2 c, QSqrt2 d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

    const QSqrt2& a() const { return a_; }
    const QSqrt2& b() const { return b_; }
    const QSqrt2& c() const { return c_; }
    const QSqrt2& d() const { return d_; }

    QSqrt2 det() const { return a_ * d_ - b_ * c_; }
    // true when det is +1 or -1
    bool unimodular() const;
    Mat2 inverse() const;
    Mat2 operator-() const { return {-a_, -b_, -c_, -d_}; }
    friend Mat2 operator*(const Mat2& m, const Mat2& n);
    friend bool operator==(const Mat2& m, const Mat2& n) {
        return m.a_ == n.a_ && m.b_ == n.b_ && m.c_ == n.c_ && m.d_ == n.d_;
    }

    // (x:y) -> (ax+by : cx+dy)
    ProjPoint apply_left(const ProjPoint& p) const;
    // boundary coordinate x -> (ax+c)/(bx+d), i.e. the row vector (x 1) times m
    ProjPoint apply_right(const ProjPoint& p) const;
    // linear map on a plane vector
    std::array<QSqrt2, 2> apply(const std::array<QSqrt2, 2>& v) const {
        return {a_ * v[0] + b_ * v[1], c_ * v[0] + d_ * v[1]};
    }

    std::array<std::string, 4> str() const { return {a_.str(), b_.str(), c_.str(), d_.str()}; }
    std::array<double, 4> to_double() const {
        return {a_.to_double(), b_.to_double(), c_.to_double(), d_.to_double()};
    }

private:
    QSqrt2 a_, b_, c_, d_;
};

enum class ActionSide { Left, Right };

inline ProjPoint moebius_apply(const Mat2& m, const ProjPoint& p, ActionSide side = ActionSide::Left) {
    return side == ActionSide::Left ? m.apply_left(p) : m.apply_right(p);
}

bool equal_up_to_sign(const Mat2& m, const Mat2& n);
Mat2 power(const Mat2& m, unsigned long n);

// Generators. nu(i) maps the closed sector i onto sector 0.
const Mat2& nu(int i);
const Mat2& nu_inv(int i);
const Mat2& gamma_mat();  // [[-1, 2(1+r2)], [0, 1]]
const Mat2& sigma_mat();  // [[1, 2(1+r2)], [0, 1]]
const Mat2& alpha_mat();  // diag(1, -1)
const Mat2& beta_mat();   // reflection in the line at angle pi/8
const Mat2& gamma_i(int i);  // nu_i^-1 gamma nu_i
const Mat2& farey_branch(int i);  // gamma nu_i
const Mat2& farey_branch_inv(int i);  // nu_i^-1 gamma
// the k with nu_j nu_i^-1 = +-nu_k
int nu_quotient(int j, int i);

}  // namespace octa
