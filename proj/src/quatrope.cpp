#include "qrope/quatrope.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qrope/rng.hpp"

namespace qrope {

namespace {

constexpr double kPi = 3.14159265358979323846;

Axis axis_of_segment(std::size_t s) {
    switch (s % 3) {
        case 0: return Axis::X;
        case 1: return Axis::Y;
        default: return Axis::Z;
    }
}

double coordinate_along(const Position3& p, Axis a) {
    switch (a) {
        case Axis::X: return p.x;
        case Axis::Y: return p.y;
        case Axis::Z: return p.z;
    }
    return p.x;
}

void check_plan(const SegmentedVector& v, const SegmentFrequencyPlan& plan) {
    if (plan.size() != segment_count(v)) {
        throw std::invalid_argument("frequency plan length does not match segment count");
    }
}

}  // namespace

std::size_t segment_count(const SegmentedVector& v) {
    if (v.empty() || v.size() % 3 != 0) {
        throw std::invalid_argument("segmented vector length must be a positive multiple of 3");
    }
    return v.size() / 3;
}

SegmentedVector apply_quatrope(const SegmentedVector& v, const Position3& p,
                               const SegmentFrequencyPlan& plan) {
    const std::size_t segs = segment_count(v);
    check_plan(v, plan);
    SegmentedVector out(v.size());
    for (std::size_t s = 0; s < segs; ++s) {
        const Quaternion rotor = compose_rotor(p, plan.per_segment[s]);
        const Quaternion r =
            rotate_pure(rotor, Quaternion::pure(v[3 * s], v[3 * s + 1], v[3 * s + 2]));
        out[3 * s] = r.x;
        out[3 * s + 1] = r.y;
        out[3 * s + 2] = r.z;
    }
    return out;
}

double pair_score(const SegmentedVector& q, const SegmentedVector& k,
                  const Position3& m, const Position3& n,
                  const SegmentFrequencyPlan& plan) {
    if (q.size() != k.size()) {
        throw std::invalid_argument("pair_score: q and k length mismatch");
    }
    const SegmentedVector rq = apply_quatrope(q, m, plan);
    const SegmentedVector rk = apply_quatrope(k, n, plan);
    double acc = 0.0;
    for (std::size_t i = 0; i < rq.size(); ++i) {
        acc += rq[i] * rk[i];
    }
    return acc;
}

SegmentedVector apply_per_axis_baseline(const SegmentedVector& v, const Position3& p,
                                        const SegmentFrequencyPlan& plan) {
    const std::size_t segs = segment_count(v);
    if (segs % 3 != 0) {
        throw std::invalid_argument("per-axis baseline needs a segment count divisible by 3");
    }
    check_plan(v, plan);
    SegmentedVector out(v.size());
    for (std::size_t s = 0; s < segs; ++s) {
        const Axis a = axis_of_segment(s);
        const double angle =
            coordinate_along(p, a) * plan.per_segment[s].along(a);
        const double c = std::cos(angle);
        const double sn = std::sin(angle);
        const double v0 = v[3 * s];
        const double v1 = v[3 * s + 1];
        out[3 * s] = c * v0 - sn * v1;
        out[3 * s + 1] = sn * v0 + c * v1;
        out[3 * s + 2] = v[3 * s + 2];
    }
    return out;
}

double per_axis_pair_score(const SegmentedVector& q, const SegmentedVector& k,
                           const Position3& m, const Position3& n,
                           const SegmentFrequencyPlan& plan) {
    if (q.size() != k.size()) {
        throw std::invalid_argument("per_axis_pair_score: q and k length mismatch");
    }
    const SegmentedVector rq = apply_per_axis_baseline(q, m, plan);
    const SegmentedVector rk = apply_per_axis_baseline(k, n, plan);
    double acc = 0.0;
    for (std::size_t i = 0; i < rq.size(); ++i) {
        acc += rq[i] * rk[i];
    }
    return acc;
}

std::optional<double> aspect_ratio_delta(const Position3& d) {
    const double ax = std::abs(d.x);
    const double ay = std::abs(d.y);
    const double hi = std::max(ax, ay);
    if (hi == 0.0) {
        return std::nullopt;
    }
    return std::min(ax, ay) / hi;
}

PairScoreReport score_pair_report(const SegmentedVector& q, const SegmentedVector& k,
                                  const Position3& m, const Position3& n,
                                  const SegmentFrequencyPlan& plan) {
    PairScoreReport r;
    r.quatrope_score = pair_score(q, k, m, n, plan);
    r.per_axis_score = per_axis_pair_score(q, k, m, n, plan);
    r.true_distance = (m - n).norm();
    if (const auto d = aspect_ratio_delta(m - n)) {
        r.aspect_ratio = *d;
        r.aspect_defined = true;
    }
    return r;
}

FalseNearbyCase false_nearby_case(double near_distance, double far_distance,
                                  Axis shared_axis) {
    if (!(near_distance > 0.0) || !(near_distance < far_distance)) {
        throw std::invalid_argument("false_nearby_case requires 0 < near < far");
    }
    FalseNearbyCase c;
    c.shared_axis = shared_axis;
    c.near_distance = near_distance;
    c.far_distance = far_distance;

    const double far_leg = far_distance / std::sqrt(2.0);
    Position3 far_disp{far_leg, far_leg, far_leg};
    switch (shared_axis) {
        case Axis::X: far_disp.x = 0.0; break;
        case Axis::Y: far_disp.y = 0.0; break;
        case Axis::Z: far_disp.z = 0.0; break;
    }
    const double near_leg = near_distance / std::sqrt(3.0);

    c.pair_far = {Position3{}, far_disp};
    c.pair_near = {Position3{}, Position3{near_leg, near_leg, near_leg}};
    return c;
}

FalseNearbyVerdict evaluate_false_nearby(const FalseNearbyCase& c, const FrequencySpec& f) {
    // Three segments, round-robin x/y/z for the baseline.  The shared-axis
    // probe puts all-ones on the segment assigned to the shared axis and
    // zeros elsewhere; the uniform probe is all-ones everywhere.
    const std::size_t seg_index = static_cast<std::size_t>(c.shared_axis);
    SegmentedVector shared_probe(9, 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
        shared_probe[3 * seg_index + i] = 1.0;
    }
    const SegmentedVector uniform_probe(9, 1.0);
    const SegmentFrequencyPlan plan = SegmentFrequencyPlan::constant(3, f);

    FalseNearbyVerdict v;
    v.quatrope_far = pair_score(shared_probe, shared_probe, c.pair_far.first,
                                c.pair_far.second, plan);
    v.quatrope_near = pair_score(shared_probe, shared_probe, c.pair_near.first,
                                 c.pair_near.second, plan);
    v.per_axis_far = per_axis_pair_score(shared_probe, shared_probe, c.pair_far.first,
                                         c.pair_far.second, plan);
    v.per_axis_near = per_axis_pair_score(shared_probe, shared_probe, c.pair_near.first,
                                          c.pair_near.second, plan);
    v.per_axis_far_uniform = per_axis_pair_score(uniform_probe, uniform_probe,
                                                 c.pair_far.first, c.pair_far.second, plan);
    v.per_axis_near_uniform = per_axis_pair_score(uniform_probe, uniform_probe,
                                                  c.pair_near.first, c.pair_near.second, plan);
    return v;
}

std::vector<std::pair<double, double>> decay_profile(Axis axis,
                                                     const std::vector<double>& deltas,
                                                     const FrequencySpec& f) {
    // Probe orthogonal to the axis so the single-axis rotor moves it fully.
    SegmentedVector probe(3, 0.0);
    switch (axis) {
        case Axis::X: probe[1] = 1.0; break;
        case Axis::Y: probe[2] = 1.0; break;
        case Axis::Z: probe[0] = 1.0; break;
    }
    const SegmentFrequencyPlan plan = SegmentFrequencyPlan::constant(1, f);
    std::vector<std::pair<double, double>> out;
    out.reserve(deltas.size());
    for (const double d : deltas) {
        Position3 m{};
        Position3 n{};
        switch (axis) {
            case Axis::X: m.x = d; break;
            case Axis::Y: m.y = d; break;
            case Axis::Z: m.z = d; break;
        }
        out.emplace_back(d, pair_score(probe, probe, m, n, plan));
    }
    return out;
}

const std::vector<double>& delta_thresholds() {
    static const std::vector<double> kThresholds{1.0, 0.5, 0.3, 0.2, 0.1, 0.05};
    return kThresholds;
}

namespace {

// Room-like unit direction: uniform in the xy plane (optionally at a fixed
// xy aspect ratio), z small relative to the dominant planar component.
Position3 roomlike_direction(Rng& rng, double aspect_ratio, bool fixed_ratio) {
    double dx;
    double dy;
    if (fixed_ratio) {
        const double big = 1.0;
        const double small = aspect_ratio;
        if (rng.below(2) == 0) {
            dx = big;
            dy = small;
        } else {
            dx = small;
            dy = big;
        }
        dx *= rng.sign();
        dy *= rng.sign();
    } else {
        const double theta = rng.uniform(0.0, 2.0 * kPi);
        dx = std::cos(theta);
        dy = std::sin(theta);
    }
    const double dz = rng.uniform(-0.25, 0.25) * std::max(std::abs(dx), std::abs(dy));
    Position3 d{dx, dy, dz};
    const double n = d.norm();
    return {d.x / n, d.y / n, d.z / n};
}

}  // namespace

std::vector<StratumAgreement> ranking_agreement_by_stratum(const AgreementConfig& cfg) {
    Rng rng(derive_seed(cfg.seed, "ranking-agreement"));
    const auto& thresholds = delta_thresholds();

    std::vector<StratumAgreement> acc(thresholds.size());
    std::vector<std::int64_t> q_hits(thresholds.size(), 0);
    std::vector<std::int64_t> p_hits(thresholds.size(), 0);
    std::vector<std::int64_t> counts(thresholds.size(), 0);

    const SegmentFrequencyPlan plan = SegmentFrequencyPlan::constant(3, cfg.frequencies);

    for (std::int64_t t = 0; t < cfg.trials; ++t) {
        const double aspect = rng.uniform(0.0, cfg.max_aspect_ratio);
        const Position3 dir_probe = roomlike_direction(rng, aspect, true);
        const Position3 dir_ref = roomlike_direction(rng, 0.0, false);

        // the probe pair is the farther one; the reference is strictly nearer
        const double r_far = rng.uniform(3.0, 8.0);
        const double r_near = r_far * rng.uniform(0.75, 0.98);

        const Position3 anchor{rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0),
                               rng.uniform(0.0, 2.0)};
        const Position3 far_pos = anchor + r_far * dir_probe;
        const Position3 near_pos = anchor + r_near * dir_ref;

        double q_far = 0.0;
        double q_near = 0.0;
        double p_far = 0.0;
        double p_near = 0.0;
        for (int d = 0; d < cfg.probe_draws; ++d) {
            SegmentedVector probe(9);
            for (std::size_t s = 0; s < 3; ++s) {
                double vx = rng.normal();
                double vy = rng.normal();
                double vz = rng.normal();
                const double n = std::sqrt(vx * vx + vy * vy + vz * vz);
                probe[3 * s] = vx / n;
                probe[3 * s + 1] = vy / n;
                probe[3 * s + 2] = vz / n;
            }
            q_far += pair_score(probe, probe, anchor, far_pos, plan);
            q_near += pair_score(probe, probe, anchor, near_pos, plan);
            p_far += per_axis_pair_score(probe, probe, anchor, far_pos, plan);
            p_near += per_axis_pair_score(probe, probe, anchor, near_pos, plan);
        }

        const bool q_ok = q_near > q_far;
        const bool p_ok = p_near > p_far;
        for (std::size_t i = 0; i < thresholds.size(); ++i) {
            if (aspect <= thresholds[i]) {
                counts[i] += 1;
                q_hits[i] += q_ok ? 1 : 0;
                p_hits[i] += p_ok ? 1 : 0;
            }
        }
    }

    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        acc[i].threshold = thresholds[i];
        acc[i].n = counts[i];
        if (counts[i] > 0) {
            acc[i].quatrope_agreement = static_cast<double>(q_hits[i]) / counts[i];
            acc[i].per_axis_agreement = static_cast<double>(p_hits[i]) / counts[i];
        }
    }
    return acc;
}

}  // namespace qrope
