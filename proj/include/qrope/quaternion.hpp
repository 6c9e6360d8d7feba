#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace qrope {

/// Hamilton quaternion w + x*i + y*j + z*k, double precision throughout.
/// Unit quaternions built by the rotor factories below represent 3-D
/// rotations acting on pure quaternions (w == 0) via the sandwich product.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion identity() { return {1.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion pure(double vx, double vy, double vz) {
        return {0.0, vx, vy, vz};
    }

    [[nodiscard]] constexpr Quaternion conjugate() const { return {w, -x, -y, -z}; }

    [[nodiscard]] constexpr double norm_sq() const {
        return w * w + x * x + y * y + z * z;
    }
    [[nodiscard]] double norm() const { return std::sqrt(norm_sq()); }

    [[nodiscard]] Quaternion normalized() const {
        const double n = norm();
        return {w / n, x / n, y / n, z / n};
    }

    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

    friend constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend constexpr Quaternion operator*(double s, const Quaternion& q) {
        return {s * q.w, s * q.x, s * q.y, s * q.z};
    }

    // Hamilton product, i*j = k convention.
    friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }
};

constexpr Quaternion hamilton_product(const Quaternion& a, const Quaternion& b) {
    return a * b;
}

/// 3-D point in scene coordinates (length units; meters by convention).
struct Position3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr Position3 operator+(const Position3& a, const Position3& b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend constexpr Position3 operator-(const Position3& a, const Position3& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend constexpr Position3 operator*(double s, const Position3& p) {
        return {s * p.x, s * p.y, s * p.z};
    }
    [[nodiscard]] double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

enum class Axis { X, Y, Z };

/// Per-axis rotation frequencies in radians per length unit.
struct FrequencySpec {
    double fx = 0.3;
    double fy = 0.3;
    double fz = 0.3;

    [[nodiscard]] constexpr double along(Axis a) const {
        switch (a) {
            case Axis::X: return fx;
            case Axis::Y: return fy;
            case Axis::Z: return fz;
        }
        return fx;
    }

    [[nodiscard]] constexpr bool positive() const {
        return fx > 0.0 && fy > 0.0 && fz > 0.0;
    }

    // Angle aliasing check: rotations stay in one semicircle as long as
    // frequency * coordinate span does not exceed pi on any axis.
    [[nodiscard]] bool wrap_safe(double max_span) const {
        const double pi = 3.14159265358979323846;
        return fx * max_span <= pi && fy * max_span <= pi && fz * max_span <= pi;
    }

    friend constexpr FrequencySpec operator*(double s, const FrequencySpec& f) {
        return {s * f.fx, s * f.fy, s * f.fz};
    }
};

/// Single-axis rotor with half angle coordinate*frequency/2 on the axis'
/// imaginary unit; axis_rotor(X, c, f) rotates pure quaternions by c*f about x.
Quaternion axis_rotor(Axis axis, double coordinate, double frequency);

/// Ordered rotor product Qz(pz*fz) * Qy(py*fy) * Qx(px*fx).  The z*y*x
/// order is fixed; renormalizes when accumulated norm drift exceeds 1e-13.
Quaternion compose_rotor(const Position3& p, const FrequencySpec& f);

/// Sandwich product Q v Q^-1 for a unit rotor and pure v.  The result's
/// real part is clamped to exactly 0 when |w| <= 1e-12.  Throws
/// std::invalid_argument when the rotor norm deviates from 1 by more than 1e-9.
Quaternion rotate_pure(const Quaternion& rotor, const Quaternion& v);

/// Distance between rotors under the antipodal identification q ~ -q:
/// min(|a - b|, |a + b|) component-wise L2.
double rotor_distance(const Quaternion& a, const Quaternion& b);

/// How far the composed rotor is from satisfying
/// Q(m - n) == Q(n)^-1 Q(m) exactly.  Zero when m == n or when the
/// displacement and both endpoints live on a single axis; grows as the
/// square of the frequency otherwise.
double relative_rotor_residual(const Position3& m, const Position3& n,
                               const FrequencySpec& f);

}  // namespace qrope
