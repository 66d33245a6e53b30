#pragma once

#include <gmpxx.h>

#include <array>
#include <iosfwd>
#include <string>

namespace octa {

// a + b*sqrt(2), a and b rational.
class QSqrt2 {
public:
    QSqrt2() = default;
    QSqrt2(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
    QSqrt2(mpq_class a, mpq_class b = 0);
    static QSqrt2 frac(long num, long den, long snum = 0, long sden = 1);
    static QSqrt2 sqrt2() { return {0, 1}; }

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }

    int sign() const;
    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_rational() const { return sgn(b_) == 0; }
    QSqrt2 conj() const { return {a_, -b_}; }
    mpq_class norm() const { return a_ * a_ - 2 * b_ * b_; }
    QSqrt2 inverse() const;
    QSqrt2 abs() const { return sign() < 0 ? -*this : *this; }
    double to_double() const;
    // exact floor as an integer
    mpz_class floor() const;
    mpz_class ceil() const;

    QSqrt2 operator-() const { return {-a_, -b_}; }
    QSqrt2& operator+=(const QSqrt2& o);
    QSqrt2& operator-=(const QSqrt2& o);
    QSqrt2& operator*=(const QSqrt2& o);
    QSqrt2& operator/=(const QSqrt2& o);

    friend QSqrt2 operator+(QSqrt2 x, const QSqrt2& y) { return x += y; }
    friend QSqrt2 operator-(QSqrt2 x, const QSqrt2& y) { return x -= y; }
    friend QSqrt2 operator*(QSqrt2 x, const QSqrt2& y) { return x *= y; }
    friend QSqrt2 operator/(QSqrt2 x, const QSqrt2& y) { return x /= y; }

    friend bool operator==(const QSqrt2& x, const QSqrt2& y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator<(const QSqrt2& x, const QSqrt2& y) { return (x - y).sign() < 0; }
    friend bool operator>(const QSqrt2& x, const QSqrt2& y) { return y < x; }
    friend bool operator<=(const QSqrt2& x, const QSqrt2& y) { return !(y < x); }
    friend bool operator>=(const QSqrt2& x, const QSqrt2& y) { return !(x < y); }

    // "p/q+r/s*sqrt2"
    std::string str() const;
    // accepts "3", "-1/2", "1+sqrt2", "3/2+1*sqrt2", "2*sqrt2-1", "p/q+r/s*sqrt2"
    static QSqrt2 parse(const std::string& s);

private:
    mpq_class a_, b_;
};

std::ostream& operator<<(std::ostream& os, const QSqrt2& x);

inline int sign(const QSqrt2& x) { return x.sign(); }
inline double to_float(const QSqrt2& x) { return x.to_double(); }

// 1 + sqrt2 = cot(pi/8)
inline QSqrt2 cot_pi8() { return {1, 1}; }

}  // namespace octa
