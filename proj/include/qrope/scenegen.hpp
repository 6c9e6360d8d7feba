#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qrope/quatrope.hpp"

namespace qrope {

// Axis convention: +x is "right", +y is "front", +z is "up".  Scenes are
// camera-free, so the convention is fixed and recorded in emitted files.

struct SceneObject {
    int object_id = 0;
    int category = 0;
    Position3 center{};
};

struct SceneExtent {
    double x = 10.0;
    double y = 10.0;
    double z = 3.0;
};

struct Scene {
    std::uint64_t scene_id = 0;
    std::vector<SceneObject> objects;
    SceneExtent extent{};
};

enum class Relation {
    left_of,
    right_of,
    in_front_of,
    behind,
    above,
    below,
    nearest_to,
    between,
};

const char* relation_name(Relation r);
std::optional<Relation> relation_from_name(const std::string& name);
constexpr int kRelationCount = 8;

struct SpatialQuery {
    Relation relation = Relation::nearest_to;
    std::vector<int> anchor_ids;  // 1 anchor, 2 for between
    int target_id = -1;
    double margin = 0.0;  // ranking-key gap between best and runner-up
};

struct SceneGenConfig {
    int n_objects = 8;
    SceneExtent extent{};
    int n_categories = 5;
    double min_separation = 0.05;
    // fraction of placements that snap one of x/y to an already placed
    // object, producing the wall/row structure real scans have
    double axis_align_fraction = 0.0;
    int max_attempts_per_object = 256;
};

/// Deterministic scene generation.  Categories are assigned so every used
/// category appears at least twice.  Throws std::runtime_error when the
/// extent cannot host n_objects at the required separation.
Scene gen_scene(std::uint64_t seed, const SceneGenConfig& cfg);

/// Ranked candidates for a relation query, best first.
/// Directional relations admit only candidates whose displacement from the
/// anchor has the correct sign and is dominated by the relation axis
/// (|d_axis| is the largest magnitude component); ranked by signed
/// displacement along the axis, closest first.  nearest_to ranks by
/// distance, between by distance to the anchor midpoint.  Ties break by
/// object id.  Returns (ranking_key, object_id) pairs.
std::vector<std::pair<double, int>> relation_oracle(const Scene& scene, Relation rel,
                                                    const std::vector<int>& anchor_ids);

struct QueryGenConfig {
    double min_margin = 0.3;
    int max_attempts = 64;
    // sampling weights per relation, indexed by Relation; empty = uniform
    std::vector<double> relation_weights;
};

/// Samples a query whose oracle answer is unique with margin and whose
/// target category is duplicated in the scene (attribute-free guarantee).
std::optional<SpatialQuery> gen_query(const Scene& scene, std::uint64_t seed,
                                      const QueryGenConfig& cfg);

struct RelationBudget {
    std::int64_t n_objects = 0;
    std::int64_t full_pair_count = 0;   // n(n-1)/2
    std::int64_t knn_edge_count = 0;    // directed, n * min(k, n-1)
};

RelationBudget relation_budget(std::int64_t n_objects, std::int64_t k);

/// Directed KNN edges: for each object, its k nearest others (ties by id).
std::vector<std::pair<int, int>> knn_edges(const Scene& scene, int k);

/// Fraction of queries whose (anchor, target) pair is covered by the KNN
/// graph: covered when either endpoint lists the other among its k nearest.
/// Queries with two anchors count as covered when either anchor-target pair
/// is covered.
double knn_relation_recall(const Scene& scene, const std::vector<SpatialQuery>& queries,
                           int k);

/// Buckets queries by the xy aspect ratio of the (first) anchor-target
/// displacement, cumulatively: stratum tau holds queries with ratio <= tau.
/// Queries with undefined ratio (dx == dy == 0) are excluded.
std::map<double, std::vector<std::size_t>> delta_stratify(
    const std::vector<SpatialQuery>& queries, const Scene& scene);

/// Scene with queries attached, as emitted and consumed by the JSONL files.
struct SceneRecord {
    Scene scene;
    std::vector<SpatialQuery> queries;
};

/// JSONL serialization: first line is a header object carrying the format
/// version ("asr-synthetic/1"), axis convention, and generation config; each
/// following line holds one {"scene": ..., "queries": [...]} record.
std::string scenes_to_jsonl(const std::vector<SceneRecord>& records,
                            const std::string& config_echo_json);
std::vector<SceneRecord> scenes_from_jsonl(const std::string& text);

}  // namespace qrope
