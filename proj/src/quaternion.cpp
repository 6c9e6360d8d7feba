#include "qrope/quaternion.hpp"

#include <algorithm>
#include <cmath>

namespace qrope {

Quaternion axis_rotor(Axis axis, double coordinate, double frequency) {
    const double half = 0.5 * coordinate * frequency;
    const double c = std::cos(half);
    const double s = std::sin(half);
    switch (axis) {
        case Axis::X: return {c, s, 0.0, 0.0};
        case Axis::Y: return {c, 0.0, s, 0.0};
        case Axis::Z: return {c, 0.0, 0.0, s};
    }
    return Quaternion::identity();
}

Quaternion compose_rotor(const Position3& p, const FrequencySpec& f) {
    const Quaternion qx = axis_rotor(Axis::X, p.x, f.fx);
    const Quaternion qy = axis_rotor(Axis::Y, p.y, f.fy);
    const Quaternion qz = axis_rotor(Axis::Z, p.z, f.fz);
    Quaternion q = qz * qy * qx;
    if (std::abs(q.norm_sq() - 1.0) > 2e-13) {
        q = q.normalized();
    }
    return q;
}

Quaternion rotate_pure(const Quaternion& rotor, const Quaternion& v) {
    if (std::abs(rotor.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("rotate_pure: rotor is not unit norm");
    }
    Quaternion r = rotor * v * rotor.conjugate();
    if (std::abs(r.w) <= 1e-12) {
        r.w = 0.0;
    }
    return r;
}

double rotor_distance(const Quaternion& a, const Quaternion& b) {
    const double dm = (a - b).norm();
    const double dp = (a + b).norm();
    return std::min(dm, dp);
}

double relative_rotor_residual(const Position3& m, const Position3& n,
                               const FrequencySpec& f) {
    const Position3 d = m - n;
    if (d.x == 0.0 && d.y == 0.0 && d.z == 0.0) {
        return 0.0;  // Q(0) = 1 and Q(m)^-1 Q(m) = 1 identically
    }
    const Quaternion direct = compose_rotor(d, f);
    const Quaternion chained = compose_rotor(n, f).conjugate() * compose_rotor(m, f);
    return rotor_distance(direct, chained);
}

}  // namespace qrope
