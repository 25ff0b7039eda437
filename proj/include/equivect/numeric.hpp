/// Exact scalar types used throughout the engine: rationals, the real
/// quadratic field Q(sqrt 5) (needed for icosahedral geometry), and small
/// exact 3-vectors / 3x3 matrices over that field.
#pragma once

#include <array>
#include <boost/rational.hpp>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace equivect {

using Rational = boost::rational<long long>;

/// Canonical representative of q modulo 1 in [0, 1).
inline Rational mod1(const Rational& q) {
    long long num = q.numerator(), den = q.denominator();  // den > 0
    long long m = ((num % den) + den) % den;
    return Rational(m, den);
}

inline long long modll(long long a, long long m) {
    return ((a % m) + m) % m;
}

inline std::string ratStr(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

/// Element a + b*sqrt(5) of the real quadratic field Q(sqrt 5).
struct QSqrt5 {
    Rational a{0}, b{0};

    QSqrt5() = default;
    QSqrt5(Rational ra) : a(std::move(ra)) {}
    QSqrt5(long long n) : a(n) {}
    QSqrt5(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

    friend QSqrt5 operator+(const QSqrt5& x, const QSqrt5& y) { return {x.a + y.a, x.b + y.b}; }
    friend QSqrt5 operator-(const QSqrt5& x, const QSqrt5& y) { return {x.a - y.a, x.b - y.b}; }
    friend QSqrt5 operator-(const QSqrt5& x) { return {-x.a, -x.b}; }
    friend QSqrt5 operator*(const QSqrt5& x, const QSqrt5& y) {
        return {x.a * y.a + Rational(5) * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    QSqrt5 inverse() const {
        Rational norm = a * a - Rational(5) * b * b;
        if (norm == Rational(0)) throw std::domain_error("QSqrt5: division by zero");
        return {a / norm, -b / norm};
    }
    friend QSqrt5 operator/(const QSqrt5& x, const QSqrt5& y) { return x * y.inverse(); }
    friend bool operator==(const QSqrt5& x, const QSqrt5& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const QSqrt5& x, const QSqrt5& y) { return !(x == y); }

    bool isZero() const { return a == Rational(0) && b == Rational(0); }

    /// Sign of a + b*sqrt5 as a real number (exact).
    int sign() const {
        auto sgn = [](const Rational& r) { return r > Rational(0) ? 1 : (r < Rational(0) ? -1 : 0); };
        int sa = sgn(a), sb = sgn(b);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // a and b have opposite signs: compare a^2 with 5 b^2.
        Rational d = a * a - Rational(5) * b * b;
        int sd = sgn(d);
        return sd == 0 ? 0 : sd * sa;
    }

    double toDouble() const {
        return boost::rational_cast<double>(a) + boost::rational_cast<double>(b) * 2.2360679774997896;
    }

    /// Ordering compatible with the real embedding (used for canonical sorts).
    friend bool operator<(const QSqrt5& x, const QSqrt5& y) { return (x - y).sign() < 0; }

    std::string str() const {
        if (b == Rational(0)) return ratStr(a);
        return ratStr(a) + "+" + ratStr(b) + "*sqrt5";
    }
};

using Vec3 = std::array<QSqrt5, 3>;

inline Vec3 operator+(const Vec3& u, const Vec3& v) { return {u[0] + v[0], u[1] + v[1], u[2] + v[2]}; }
inline Vec3 operator-(const Vec3& u, const Vec3& v) { return {u[0] - v[0], u[1] - v[1], u[2] - v[2]}; }
inline Vec3 operator-(const Vec3& u) { return {-u[0], -u[1], -u[2]}; }
inline Vec3 operator*(const QSqrt5& c, const Vec3& v) { return {c * v[0], c * v[1], c * v[2]}; }
inline bool operator==(const Vec3& u, const Vec3& v) { return u[0] == v[0] && u[1] == v[1] && u[2] == v[2]; }
inline QSqrt5 dot(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }
inline Vec3 cross(const Vec3& u, const Vec3& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

inline bool vecLess(const Vec3& u, const Vec3& v) {
    for (int i = 0; i < 3; ++i) {
        if (u[i] < v[i]) return true;
        if (v[i] < u[i]) return false;
    }
    return false;
}

/// 3x3 matrix over Q(sqrt 5), row-major.
struct Mat3 {
    std::array<QSqrt5, 9> m{};

    static Mat3 identity() {
        Mat3 r;
        r.m[0] = r.m[4] = r.m[8] = QSqrt5(1);
        return r;
    }
    QSqrt5& at(int i, int j) { return m[3 * i + j]; }
    const QSqrt5& at(int i, int j) const { return m[3 * i + j]; }

    friend Mat3 operator*(const Mat3& A, const Mat3& B) {
        Mat3 C;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                QSqrt5 s;
                for (int k = 0; k < 3; ++k) s = s + A.at(i, k) * B.at(k, j);
                C.at(i, j) = s;
            }
        return C;
    }
    friend Vec3 operator*(const Mat3& A, const Vec3& v) {
        Vec3 w;
        for (int i = 0; i < 3; ++i) w[i] = A.at(i, 0) * v[0] + A.at(i, 1) * v[1] + A.at(i, 2) * v[2];
        return w;
    }
    friend Mat3 operator-(const Mat3& A) {
        Mat3 C;
        for (int i = 0; i < 9; ++i) C.m[i] = -A.m[i];
        return C;
    }
    friend bool operator==(const Mat3& A, const Mat3& B) { return A.m == B.m; }

    QSqrt5 det() const {
        return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
               at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
               at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    }
    /// Transpose equals inverse for orthogonal matrices (all group elements).
    Mat3 transpose() const {
        Mat3 C;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) C.at(i, j) = at(j, i);
        return C;
    }

    friend bool matLess(const Mat3& A, const Mat3& B) {
        for (int i = 0; i < 9; ++i) {
            if (A.m[i] < B.m[i]) return true;
            if (B.m[i] < A.m[i]) return false;
        }
        return false;
    }
};

}  // namespace equivect
