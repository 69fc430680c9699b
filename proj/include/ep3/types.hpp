// types.hpp - core value types shared by all modules: the physical
// configuration, live control parameters, and small fixed-size complex
// linear algebra for the 3x3 problem.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace ep3 {

using cplx = std::complex<double>;

// Three decaying levels (real part eps_j, width tau_j) plus the two fixed
// couplings. The tunable parameters live in ControlPoint; everything here is
// held constant during a sweep or encirclement.
struct SystemConfig {
    std::array<double, 3> eps{0.76, 0.65, 0.30};
    std::array<double, 3> tau{0.005, 0.0025, 0.0002};
    double gamma = 0.95;
    double kappa = 0.30;

    cplx passive(int j) const { return {eps[j], tau[j]}; }

    // Throws std::invalid_argument on a configuration the model cannot use
    // (coincident levels or gamma == kappa, which kills the delta control).
    void validate() const;
};

// Affine map lambda_im = scale * lambda_re + offset. The default mirrors
// lambda_re exactly.
struct LambdaImPolicy {
    double scale = 1.0;
    double offset = 0.0;

    double im(double lambda_re) const { return scale * lambda_re + offset; }
    cplx lambda(double lambda_re) const { return {lambda_re, im(lambda_re)}; }
};

// One point of the control space: the real coupling control delta and the
// complex perturbation strength lambda.
struct ControlPoint {
    double delta = 0.0;
    double lambda_re = 0.0;
    double lambda_im = 0.0;

    cplx lambda() const { return {lambda_re, lambda_im}; }

    static ControlPoint from_policy(double delta, double lambda_re,
                                    const LambdaImPolicy& policy) {
        return {delta, lambda_re, policy.im(lambda_re)};
    }
};

// Coefficients of the monic secular cubic E^3 + a1 E^2 + a2 E + a3.
struct SecularCoeffs {
    cplx a1, a2, a3;

    cplx eval(cplx e) const { return ((e + a1) * e + a2) * e + a3; }
};

// Dense complex 3-vector / 3x3 matrix. Only the handful of operations the
// project needs; row-major storage.
struct Vec3 {
    std::array<cplx, 3> v{};

    cplx& operator[](int i) { return v[i]; }
    const cplx& operator[](int i) const { return v[i]; }

    double norm() const {
        return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
    }
};

// Conjugating inner product <a, b> = sum conj(a_i) b_i.
inline cplx dot(const Vec3& a, const Vec3& b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}

// Algebraic (unconjugated) cross product; orthogonal to both factors under
// the unconjugated pairing, which is what null-space extraction needs.
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {{{a[1] * b[2] - a[2] * b[1],
              a[2] * b[0] - a[0] * b[2],
              a[0] * b[1] - a[1] * b[0]}}};
}

inline Vec3 operator*(cplx s, const Vec3& a) {
    return {{{s * a[0], s * a[1], s * a[2]}}};
}

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {{{a[0] - b[0], a[1] - b[1], a[2] - b[2]}}};
}

struct Mat3 {
    std::array<cplx, 9> m{};

    cplx& operator()(int r, int c) { return m[3 * r + c]; }
    const cplx& operator()(int r, int c) const { return m[3 * r + c]; }

    Vec3 row(int r) const { return {{{m[3 * r], m[3 * r + 1], m[3 * r + 2]}}}; }

    Vec3 apply(const Vec3& x) const {
        Vec3 y;
        for (int r = 0; r < 3; ++r)
            y[r] = m[3 * r] * x[0] + m[3 * r + 1] * x[1] + m[3 * r + 2] * x[2];
        return y;
    }

    cplx trace() const { return m[0] + m[4] + m[8]; }

    static Mat3 identity() {
        Mat3 i;
        i(0, 0) = i(1, 1) = i(2, 2) = 1.0;
        return i;
    }
};

inline cplx det3(const Mat3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

}  // namespace ep3
