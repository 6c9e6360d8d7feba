#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qrope/quatrope.hpp"

namespace qrope {

/// Attention input role: object tokens carry a scene position and id,
/// everything else (prompt, question, relation words) is NonObject.
struct TokenRole {
    bool is_object = false;
    Position3 position{};
    int object_id = -1;

    static TokenRole object(const Position3& p, int id) { return {true, p, id}; }
    static TokenRole non_object() { return {}; }
};

enum class ScaleMode { base_only, total };
enum class MaskKind { full, causal };

struct AttentionConfig {
    int base_dim = 16;                  // per-head width carrying language rotary
    int ext_dim = 6;                    // extension width, multiple of 3
    FrequencySpec ext_frequencies{};    // constant plan applied to every segment
    double lang_rope_base = 10000.0;
    std::array<double, 3> base_vector{1.0, 0.0, 0.0};
    ScaleMode scale_mode = ScaleMode::base_only;

    [[nodiscard]] int ext_segments() const { return ext_dim / 3; }
    void validate() const;
};

/// Standard rotary embedding: component pairs (2i, 2i+1) rotated by
/// seq_index * base^(-2i/dim).  Norm preserving; throws on odd dimension.
std::vector<double> lang_rope(std::span<const double> v, std::int64_t seq_index,
                              double base);

/// Object tokens: v ++ (ext_dim/3) copies of the base vector, each segment
/// rotated by the token position's rotor.  Non-object tokens: v ++ zeros.
std::vector<double> extend_qk(std::span<const double> v, const TokenRole& role,
                              const AttentionConfig& cfg);

/// Comparator extension used by the toy model's per-axis mode: same gating
/// and padding, but segments are planar-rotated per axis instead of
/// rotor-rotated.  Segment count must be a multiple of 3.
std::vector<double> extend_qk_per_axis(std::span<const double> v, const TokenRole& role,
                                       const AttentionConfig& cfg);

struct TokenInput {
    std::vector<double> vec;   // base_dim components
    TokenRole role;
    std::int64_t seq_index = 0;
};

/// Dense logit matrix with an explicit mask; masked entries hold the finite
/// sentinel rather than the computed value.
struct ScoreMatrix {
    std::size_t size = 0;
    std::vector<double> logits;        // row-major size*size
    std::vector<std::uint8_t> masked;  // 1 where masked
    double mask_sentinel = -1e30;

    [[nodiscard]] double at(std::size_t i, std::size_t j) const {
        return logits[i * size + j];
    }
    [[nodiscard]] bool is_masked(std::size_t i, std::size_t j) const {
        return masked[i * size + j] != 0;
    }

    /// Heatmap-ready JSON: header with roles/positions, then row-major logits.
    [[nodiscard]] std::string to_json(const std::vector<TokenInput>& tokens) const;
};

/// logits[i][j] = <extend(rope(v_i)), extend(rope(v_j))> / scale with
/// scale = sqrt(base_dim) (base_only) or sqrt(base_dim + ext_dim) (total).
/// Fixed left-to-right summation order, so results are bit-stable.
ScoreMatrix attention_logits(const std::vector<TokenInput>& tokens,
                             const AttentionConfig& cfg, MaskKind mask);

/// attention_logits(cfg) minus attention_logits(ext_dim = 0), with the scale
/// pinned to the base_only value of cfg.base_dim.  Exactly 0.0 wherever
/// either token is NonObject.
std::vector<double> gating_delta(const std::vector<TokenInput>& tokens,
                                 const AttentionConfig& cfg);

/// Optional comparator: language rotary and a coordinate rotary applied to
/// the same base dimensions (no extension, no gating).  The coordinate
/// schedule reuses the language angle schedule with reciprocal frequencies;
/// this is a documented local choice, not a tuned reference.
ScoreMatrix trans_additive_logits(const std::vector<TokenInput>& tokens,
                                  const AttentionConfig& cfg, MaskKind mask);

}  // namespace qrope
