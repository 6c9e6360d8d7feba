#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "qrope/quaternion.hpp"
#include "qrope/rng.hpp"

using namespace qrope;

namespace {

// Oracle: Hamilton product as the explicit 4x4 left-multiplication matrix
// acting on (w, x, y, z).  Kept independent of the Quaternion operator.
Quaternion matrix_product_oracle(const Quaternion& a, const Quaternion& b) {
    const double L[4][4] = {
        {a.w, -a.x, -a.y, -a.z},
        {a.x, a.w, -a.z, a.y},
        {a.y, a.z, a.w, -a.x},
        {a.z, -a.y, a.x, a.w},
    };
    const double v[4] = {b.w, b.x, b.y, b.z};
    double r[4] = {0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            r[i] += L[i][j] * v[j];
        }
    }
    return {r[0], r[1], r[2], r[3]};
}

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
            r[i][j] = s;
        }
    }
    return r;
}

Mat3 rot_x(double a) {
    const double c = std::cos(a), s = std::sin(a);
    return {{{1, 0, 0}, {0, c, -s}, {0, s, c}}};
}
Mat3 rot_y(double a) {
    const double c = std::cos(a), s = std::sin(a);
    return {{{c, 0, s}, {0, 1, 0}, {-s, 0, c}}};
}
Mat3 rot_z(double a) {
    const double c = std::cos(a), s = std::sin(a);
    return {{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
}

// Oracle: the z*y*x Euler rotation matrix for position p and frequencies f.
Mat3 euler_matrix_oracle(const Position3& p, const FrequencySpec& f) {
    return mat_mul(rot_z(p.z * f.fz), mat_mul(rot_y(p.y * f.fy), rot_x(p.x * f.fx)));
}

Quaternion random_quaternion(Rng& rng, double scale = 2.0) {
    return {rng.uniform(-scale, scale), rng.uniform(-scale, scale),
            rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
}

Quaternion random_unit(Rng& rng) {
    Quaternion q = random_quaternion(rng);
    while (q.norm() < 1e-3) q = random_quaternion(rng);
    return q.normalized();
}

}  // namespace

TEST_CASE("hamilton product follows the i*j = k algebra") {
    const Quaternion i = Quaternion::pure(1, 0, 0);
    const Quaternion j = Quaternion::pure(0, 1, 0);
    const Quaternion k = Quaternion::pure(0, 0, 1);

    auto near = [](const Quaternion& a, const Quaternion& b) {
        return (a - b).norm() < 1e-15;
    };
    CHECK(near(i * j, k));
    CHECK(near(j * k, i));
    CHECK(near(k * i, j));
    CHECK((i * i - Quaternion{-1, 0, 0, 0}).norm() < 1e-15);
    CHECK((j * j - Quaternion{-1, 0, 0, 0}).norm() < 1e-15);
    CHECK((k * k - Quaternion{-1, 0, 0, 0}).norm() < 1e-15);

    Rng rng(derive_seed(1, "identity"));
    for (int t = 0; t < 100; ++t) {
        const Quaternion q = random_quaternion(rng);
        CHECK((Quaternion::identity() * q - q).norm() == 0.0);
        CHECK((q * Quaternion::identity() - q).norm() == 0.0);
    }
}

TEST_CASE("hamilton product matches the 4x4 matrix oracle") {
    Rng rng(derive_seed(2, "hamilton-oracle"));
    double worst = 0.0;
    for (int t = 0; t < 10000; ++t) {
        const Quaternion a = random_quaternion(rng);
        const Quaternion b = random_quaternion(rng);
        const Quaternion got = hamilton_product(a, b);
        const Quaternion want = matrix_product_oracle(a, b);
        worst = std::max(worst, (got - want).norm());
    }
    CHECK(worst <= 1e-13);
}

TEST_CASE("conjugate flips the vector part and inverts unit rotors") {
    const Quaternion q{0, 1, 2, 3};
    const Quaternion c = q.conjugate();
    CHECK(c.w == 0.0);
    CHECK(c.x == -1.0);
    CHECK(c.y == -2.0);
    CHECK(c.z == -3.0);

    Rng rng(derive_seed(3, "conjugate"));
    for (int t = 0; t < 200; ++t) {
        const Quaternion u = random_unit(rng);
        CHECK((u * u.conjugate() - Quaternion::identity()).norm() < 1e-12);
        const Quaternion r = random_quaternion(rng);
        const Quaternion cc = r.conjugate().conjugate();
        CHECK((cc - r).norm() == 0.0);
    }
}

TEST_CASE("axis rotors hit the expected angles") {
    // full angle pi about z -> half angle pi/2
    const Quaternion qz = axis_rotor(Axis::Z, 1.0, 3.14159265358979323846);
    CHECK(std::abs(qz.w) < 1e-15);
    CHECK(qz.x == 0.0);
    CHECK(qz.y == 0.0);
    CHECK(qz.z == doctest::Approx(1.0).epsilon(1e-15));

    for (const Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        const Quaternion q0 = axis_rotor(a, 0.0, 0.7);
        CHECK((q0 - Quaternion::identity()).norm() == 0.0);
    }

    // coordinate 2.0 at frequency 0.3: half angle 0.3
    const Quaternion qx = axis_rotor(Axis::X, 2.0, 0.3);
    CHECK(qx.w == doctest::Approx(std::cos(0.3)).epsilon(1e-15));
    CHECK(qx.x == doctest::Approx(std::sin(0.3)).epsilon(1e-15));
    CHECK(qx.y == 0.0);
    CHECK(qx.z == 0.0);
}

TEST_CASE("composed rotor reduces to the single-axis rotor") {
    const FrequencySpec f{0.3, 0.3, 0.3};
    const Quaternion q = compose_rotor({1, 0, 0}, f);
    const Quaternion want = axis_rotor(Axis::X, 1.0, 0.3);
    CHECK((q - want).norm() < 1e-15);

    const Quaternion at_origin = compose_rotor({0, 0, 0}, f);
    CHECK((at_origin - Quaternion::identity()).norm() == 0.0);
}

TEST_CASE("sandwich action matches composed 3x3 Euler matrices") {
    Rng rng(derive_seed(4, "euler-oracle"));
    double worst = 0.0;
    for (int t = 0; t < 2000; ++t) {
        const Position3 p{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)};
        const FrequencySpec f{rng.uniform(0.05, 0.4), rng.uniform(0.05, 0.4),
                              rng.uniform(0.05, 0.4)};
        const Quaternion rotor = compose_rotor(p, f);
        const Mat3 R = euler_matrix_oracle(p, f);
        // rotate the three basis vectors and compare columns
        const Quaternion basis[3] = {Quaternion::pure(1, 0, 0), Quaternion::pure(0, 1, 0),
                                     Quaternion::pure(0, 0, 1)};
        for (int c = 0; c < 3; ++c) {
            const Quaternion r = rotate_pure(rotor, basis[c]);
            worst = std::max(worst, std::abs(r.x - R[0][c]));
            worst = std::max(worst, std::abs(r.y - R[1][c]));
            worst = std::max(worst, std::abs(r.z - R[2][c]));
        }
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("rotate_pure basics") {
    const Quaternion v = Quaternion::pure(0.3, -0.7, 1.1);
    const Quaternion id = Quaternion::identity();
    CHECK((rotate_pure(id, v) - v).norm() == 0.0);

    // quarter turn about z maps x-axis to y-axis
    const Quaternion qz = axis_rotor(Axis::Z, 1.0, 3.14159265358979323846 / 2.0);
    const Quaternion r = rotate_pure(qz, Quaternion::pure(1, 0, 0));
    CHECK(r.w == 0.0);
    CHECK(r.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r.y == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.z == 0.0);

    CHECK_THROWS_AS(rotate_pure(Quaternion{1.1, 0, 0, 0}, v), std::invalid_argument);
}

TEST_CASE("rotation preserves norms, dot products, and real parts") {
    Rng rng(derive_seed(5, "invariants"));
    for (int t = 0; t < 2000; ++t) {
        const Quaternion rotor = random_unit(rng);
        const Quaternion a = Quaternion::pure(rng.normal(), rng.normal(), rng.normal());
        const Quaternion b = Quaternion::pure(rng.normal(), rng.normal(), rng.normal());
        const Quaternion ra = rotate_pure(rotor, a);
        const Quaternion rb = rotate_pure(rotor, b);
        CHECK(std::abs(ra.norm() - a.norm()) < 1e-12);
        const double dot_before = a.x * b.x + a.y * b.y + a.z * b.z;
        const double dot_after = ra.x * rb.x + ra.y * rb.y + ra.z * rb.z;
        CHECK(std::abs(dot_before - dot_after) < 1e-12);

        // real part of Q^-1 k Q equals Re(k) for arbitrary k
        const Quaternion k = random_quaternion(rng);
        const Quaternion rk = rotor.conjugate() * k * rotor;
        CHECK(std::abs(rk.w - k.w) < 1e-13);
    }
}

TEST_CASE("unit-norm closure under products") {
    Rng rng(derive_seed(6, "closure"));
    Quaternion chain = Quaternion::identity();
    for (int t = 0; t < 5000; ++t) {
        const Position3 p{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)};
        const FrequencySpec f{0.3, 0.3, 0.3};
        const Quaternion rotor = compose_rotor(p, f);
        CHECK(std::abs(rotor.norm() - 1.0) < 1e-12);
        chain = (chain * rotor);
        if (std::abs(chain.norm_sq() - 1.0) > 2e-13) chain = chain.normalized();
        CHECK(std::abs(chain.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("relative rotor residual vanishes in the exact cases") {
    const FrequencySpec f{0.3, 0.3, 0.3};
    CHECK(relative_rotor_residual({1.2, -3.4, 0.5}, {1.2, -3.4, 0.5}, f) == 0.0);

    // single-axis displacement with the other two coordinates zero
    CHECK(relative_rotor_residual({2.5, 0, 0}, {-1.0, 0, 0}, f) < 1e-12);
    CHECK(relative_rotor_residual({0, 4.5, 0}, {0, 0.5, 0}, f) < 1e-12);
    CHECK(relative_rotor_residual({0, 0, -2.0}, {0, 0, 3.0}, f) < 1e-12);
}

TEST_CASE("relative rotor residual scales quadratically with frequency") {
    Rng rng(derive_seed(7, "residual-scaling"));
    const double freqs[] = {0.3, 0.15, 0.075, 0.0375};
    double mean_res[4] = {0, 0, 0, 0};
    // positions small enough that f * coordinate stays in the quadratic regime
    const int pairs = 100;
    for (int t = 0; t < pairs; ++t) {
        const Position3 m{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const Position3 n{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        for (int i = 0; i < 4; ++i) {
            const FrequencySpec f{freqs[i], freqs[i], freqs[i]};
            mean_res[i] += relative_rotor_residual(m, n, f) / pairs;
        }
    }
    // halving the frequency should roughly quarter the residual
    CHECK(mean_res[1] <= 0.27 * mean_res[0]);
    CHECK(mean_res[2] <= 0.27 * mean_res[1]);

    // log-log slope across the frequency decade
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < 4; ++i) {
        const double lx = std::log(freqs[i]);
        const double ly = std::log(mean_res[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
    CHECK(slope > 1.8);
    CHECK(slope < 2.2);
}
