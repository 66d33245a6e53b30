#include "octa/qsqrt2.hpp"

#include "octa/errors.hpp"

#include <cctype>
#include <algorithm>
#include <cmath>
#include <ostream>

namespace octa {

QSqrt2::QSqrt2(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
}

QSqrt2 QSqrt2::frac(long num, long den, long snum, long sden) {
    return {mpq_class(num, den), mpq_class(snum, sden)};
}

int QSqrt2::sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sa >= 0 && sb >= 0) return (sa || sb) ? 1 : 0;
    if (sa <= 0 && sb <= 0) return -1;
    // opposite signs: compare a^2 with 2 b^2
    const int c = cmp(mpq_class(a_ * a_), mpq_class(2 * b_ * b_));
    return sa > 0 ? c : -c;
}

QSqrt2 QSqrt2::inverse() const {
    mpq_class n = norm();
    if (sgn(n) == 0) throw std::domain_error("QSqrt2: division by zero");
    return {a_ / n, -b_ / n};
}

double QSqrt2::to_double() const {
    static const double r2 = std::sqrt(2.0);
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sa * sb >= 0) return a_.get_d() + b_.get_d() * r2;
    // cancellation: a + b r2 = N / (a - b r2)
    mpq_class n = norm();
    double den = a_.get_d() - b_.get_d() * r2;
    return n.get_d() / den;
}

mpz_class QSqrt2::floor() const {
    size_t bits = 64;
    bits += mpz_sizeinbase(a_.get_num_mpz_t(), 2) + mpz_sizeinbase(a_.get_den_mpz_t(), 2);
    bits += mpz_sizeinbase(b_.get_num_mpz_t(), 2) + mpz_sizeinbase(b_.get_den_mpz_t(), 2);
    mpf_class r2(2, bits);
    r2 = sqrt(r2);
    mpf_class v(a_, bits);
    mpf_class w(b_, bits);
    v += w * r2;
    mpf_class f(0, bits);
    mpf_floor(f.get_mpf_t(), v.get_mpf_t());
    mpz_class n(f);
    while (QSqrt2(mpq_class(n)) > *this) --n;
    while (QSqrt2(mpq_class(n + 1)) <= *this) ++n;
    return n;
}

mpz_class QSqrt2::ceil() const {
    mpz_class f = floor();
    if (QSqrt2(mpq_class(f)) == *this) return f;
    return f + 1;
}

QSqrt2& QSqrt2::operator+=(const QSqrt2& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

QSqrt2& QSqrt2::operator-=(const QSqrt2& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

QSqrt2& QSqrt2::operator*=(const QSqrt2& o) {
    mpq_class na = a_ * o.a_ + 2 * b_ * o.b_;
    mpq_class nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

QSqrt2& QSqrt2::operator/=(const QSqrt2& o) {
    if (o.is_rational()) {
        if (sgn(o.a_) == 0) throw std::domain_error("QSqrt2: division by zero");
        a_ /= o.a_;
        b_ /= o.a_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string QSqrt2::str() const {
    std::string s = a_.get_str();
    if (sgn(b_) >= 0) s += "+";
    s += b_.get_str();
    s += "*sqrt2";
    return s;
}

std::ostream& operator<<(std::ostream& os, const QSqrt2& x) { return os << x.str(); }

namespace {

mpq_class parse_rational(const std::string& t, const std::string& whole) {
    if (t.empty()) throw ParseError("empty number in '" + whole + "'");
    mpq_class q;
    auto dot = t.find('.');
    try {
        if (dot != std::string::npos) {
            std::string digits = t.substr(0, dot) + t.substr(dot + 1);
            digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
            mpz_class den = 1;
            for (size_t i = dot + 1; i < t.size(); ++i) den *= 10;
            q = mpq_class(mpz_class(digits.empty() ? "0" : digits), den);
        } else {
            for (char c : t)
                if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/'))
                    throw ParseError("bad number '" + t + "' in '" + whole + "'");
            q = mpq_class(t, 10);
        }
    } catch (const std::invalid_argument&) {
        throw ParseError("bad number '" + t + "' in '" + whole + "'");
    }
    if (sgn(q.get_den()) == 0) throw ParseError("zero denominator in '" + whole + "'");
    q.canonicalize();
    return q;
}

}  // namespace

QSqrt2 QSqrt2::parse(const std::string& input) {
    std::string s;
    for (char c : input)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    for (const std::string alt : {"sqrt(2)", "√2"}) {
        for (auto pos = s.find(alt); pos != std::string::npos; pos = s.find(alt))
            s.replace(pos, alt.size(), "sqrt2");
    }
    if (s.empty()) throw ParseError("empty expression");
    mpq_class a = 0, b = 0;
    size_t i = 0;
    while (i < s.size()) {
        int sg = 1;
        if (s[i] == '+' || s[i] == '-') {
            sg = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw ParseError("expected sign in '" + input + "'");
        }
        size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        i = j;
        auto r = term.find("sqrt2");
        if (r == std::string::npos) {
            a += sg * parse_rational(term, input);
            continue;
        }
        std::string coef = term.substr(0, r) + term.substr(r + 5);
        if (!coef.empty() && coef.front() == '*') coef.erase(0, 1);
        if (!coef.empty() && coef.back() == '*') coef.pop_back();
        b += sg * (coef.empty() ? mpq_class(1) : parse_rational(coef, input));
    }
    return {a, b};
}

}  // namespace octa
