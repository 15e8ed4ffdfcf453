// geometry.hpp - small fixed-size vector/matrix types used throughout.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace astk {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return (&x)[i]; }
    double operator[](int i) const { return (&x)[i]; }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator*(Vec3 a, double s) { return s * a; }
inline Vec3 operator/(Vec3 a, double s) { return {a.x / s, a.y / s, a.z / s}; }
inline Vec3& operator+=(Vec3& a, Vec3 b) { a = a + b; return a; }
inline Vec3& operator-=(Vec3& a, Vec3 b) { a = a - b; return a; }
inline Vec3& operator*=(Vec3& a, double s) { a = s * a; return a; }

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm2(Vec3 a) { return dot(a, a); }
inline double norm(Vec3 a) { return std::sqrt(norm2(a)); }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline Vec3 normalized(Vec3 a) {
    double n = norm(a);
    if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
    return a / n;
}

/// 3x3 matrix, row-major.
struct Mat3 {
    std::array<double, 9> m{};

    double& operator()(int i, int j) { return m[3 * i + j]; }
    double operator()(int i, int j) const { return m[3 * i + j]; }

    static Mat3 identity() {
        Mat3 r;
        r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
        return r;
    }
    static Mat3 zero() { return {}; }
};

inline Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = a.m[i] + b.m[i];
    return r;
}
inline Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = a.m[i] - b.m[i];
    return r;
}
inline Mat3 operator*(double s, const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = s * a.m[i];
    return r;
}
inline Mat3& operator+=(Mat3& a, const Mat3& b) { a = a + b; return a; }
inline Mat3& operator-=(Mat3& a, const Mat3& b) { a = a - b; return a; }

inline Vec3 operator*(const Mat3& A, Vec3 v) {
    return {A(0, 0) * v.x + A(0, 1) * v.y + A(0, 2) * v.z,
            A(1, 0) * v.x + A(1, 1) * v.y + A(1, 2) * v.z,
            A(2, 0) * v.x + A(2, 1) * v.y + A(2, 2) * v.z};
}
inline Mat3 operator*(const Mat3& A, const Mat3& B) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = A(i, 0) * B(0, j) + A(i, 1) * B(1, j) + A(i, 2) * B(2, j);
    return r;
}

inline Mat3 outer(Vec3 a, Vec3 b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = a[i] * b[j];
    return r;
}
inline Mat3 transpose(const Mat3& A) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = A(j, i);
    return r;
}
inline double trace(const Mat3& A) { return A(0, 0) + A(1, 1) + A(2, 2); }
inline Mat3 sym(const Mat3& A) { return 0.5 * (A + transpose(A)); }
inline Mat3 deviator(const Mat3& A) { return A - (trace(A) / 3.0) * Mat3::identity(); }

/// double contraction A:B
inline double ddot(const Mat3& A, const Mat3& B) {
    double s = 0.0;
    for (int i = 0; i < 9; ++i) s += A.m[i] * B.m[i];
    return s;
}
inline double frobenius_norm(const Mat3& A) { return std::sqrt(ddot(A, A)); }

/// quadratic form x . A x
inline double quad_form(const Mat3& A, Vec3 v) { return dot(v, A * v); }

/// Rotation matrix from unit axis and angle.
inline Mat3 rotation(Vec3 axis, double angle) {
    Vec3 u = normalized(axis);
    double c = std::cos(angle), s = std::sin(angle);
    Mat3 R = c * Mat3::identity() + (1.0 - c) * outer(u, u);
    R(0, 1) -= s * u.z; R(0, 2) += s * u.y;
    R(1, 0) += s * u.z; R(1, 2) -= s * u.x;
    R(2, 0) -= s * u.y; R(2, 1) += s * u.x;
    return R;
}

inline bool all_finite(Vec3 v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}
inline bool all_finite(const Mat3& A) {
    for (double v : A.m)
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace astk
