#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qrope/quaternion.hpp"

namespace qrope {

/// Flat list of reals interpreted as consecutive 3-component segments,
/// each treated as a pure quaternion.  Length must be a positive multiple of 3.
using SegmentedVector = std::vector<double>;

/// One frequency triple per segment; the default is the same triple repeated.
struct SegmentFrequencyPlan {
    std::vector<FrequencySpec> per_segment;

    static SegmentFrequencyPlan constant(std::size_t segments,
                                         const FrequencySpec& f = {}) {
        SegmentFrequencyPlan plan;
        plan.per_segment.assign(segments, f);
        return plan;
    }
    [[nodiscard]] std::size_t size() const { return per_segment.size(); }
};

std::size_t segment_count(const SegmentedVector& v);

/// Rotates every 3-segment of v by the rotor of position p under the
/// segment's frequency triple.  Norm preserving.
SegmentedVector apply_quatrope(const SegmentedVector& v, const Position3& p,
                               const SegmentFrequencyPlan& plan);

/// Dot product of the two rotated vectors, summed across segments.
double pair_score(const SegmentedVector& q, const SegmentedVector& k,
                  const Position3& m, const Position3& n,
                  const SegmentFrequencyPlan& plan);

/// Per-axis comparator: segments are assigned round-robin to axes x, y, z
/// (segment count must be a multiple of 3), and each segment's first two
/// components are rotated in-plane by coordinate * frequency of the assigned
/// axis; the third component passes through.
SegmentedVector apply_per_axis_baseline(const SegmentedVector& v, const Position3& p,
                                        const SegmentFrequencyPlan& plan);

double per_axis_pair_score(const SegmentedVector& q, const SegmentedVector& k,
                           const Position3& m, const Position3& n,
                           const SegmentFrequencyPlan& plan);

/// xy aspect ratio min{|dx|,|dy|}/max{|dx|,|dy|} of a displacement.
/// Undefined (nullopt) when dx == dy == 0.
std::optional<double> aspect_ratio_delta(const Position3& displacement);

/// Scores for one (m, n) pair under both encoders plus the geometry that
/// the stratified diagnostics bucket on.
struct PairScoreReport {
    double quatrope_score = 0.0;
    double per_axis_score = 0.0;
    double true_distance = 0.0;
    double aspect_ratio = 0.0;
    bool aspect_defined = false;
};

PairScoreReport score_pair_report(const SegmentedVector& q, const SegmentedVector& k,
                                  const Position3& m, const Position3& n,
                                  const SegmentFrequencyPlan& plan);

/// Two deterministic position pairs: pair_far spans far_distance but shares
/// one coordinate axis (displacement split evenly over the other two axes);
/// pair_near spans near_distance with displacement spread evenly over all
/// three axes.  Requires 0 < near_distance < far_distance.
struct FalseNearbyCase {
    std::pair<Position3, Position3> pair_far;   // shared-axis, distant
    std::pair<Position3, Position3> pair_near;  // spread, close
    Axis shared_axis = Axis::X;
    double near_distance = 0.0;
    double far_distance = 0.0;
};

FalseNearbyCase false_nearby_case(double near_distance, double far_distance,
                                  Axis shared_axis);

/// Evaluates a constructed case with all-ones probe segments.  The probe for
/// the headline comparison carries weight only on the segment group assigned
/// to the shared axis, which is where the per-axis encoding collapses the
/// pair's distance to zero.
struct FalseNearbyVerdict {
    double quatrope_far = 0.0;
    double quatrope_near = 0.0;
    double per_axis_far = 0.0;        // shared-axis segment group only
    double per_axis_near = 0.0;
    double per_axis_far_uniform = 0.0;   // all segments, uniform probe
    double per_axis_near_uniform = 0.0;
    [[nodiscard]] bool quatrope_prefers_near() const { return quatrope_near > quatrope_far; }
    [[nodiscard]] bool per_axis_inflates_far() const { return per_axis_far > per_axis_near; }
};

FalseNearbyVerdict evaluate_false_nearby(const FalseNearbyCase& c, const FrequencySpec& f);

/// (delta, score) samples for matched unit segments displaced along one axis,
/// probe chosen orthogonal to the axis so the score is exactly cos(delta * f).
std::vector<std::pair<double, double>> decay_profile(Axis axis,
                                                     const std::vector<double>& deltas,
                                                     const FrequencySpec& f);

/// Proximity-ranking agreement, stratified by the aspect ratio of the probe
/// pair.  Each trial anchors two candidates: one displaced with a sampled
/// aspect ratio at distance r, one in a reference direction strictly nearer.
/// Agreement means the encoder scores the nearer candidate higher.  Room-like
/// sampling: z components stay small relative to the xy plane.
struct StratumAgreement {
    double threshold = 0.0;   // stratum tau: trials with aspect ratio <= tau
    double quatrope_agreement = 0.0;
    double per_axis_agreement = 0.0;
    std::int64_t n = 0;
};

struct AgreementConfig {
    std::uint64_t seed = 0;
    std::int64_t trials = 4000;
    double max_aspect_ratio = 1.0;  // sampled aspect ratio range [0, max]
    FrequencySpec frequencies{};
    int probe_draws = 4;            // random probe vectors averaged per trial
};

std::vector<StratumAgreement> ranking_agreement_by_stratum(const AgreementConfig& cfg);

/// The stratum thresholds used by the stratified reports.
const std::vector<double>& delta_thresholds();

}  // namespace qrope
