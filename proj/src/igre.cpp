#include "qrope/igre.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qrope {

void AttentionConfig::validate() const {
    if (base_dim <= 0 || base_dim % 2 != 0) {
        throw std::invalid_argument("base_dim must be positive and even");
    }
    if (ext_dim < 0 || ext_dim % 3 != 0) {
        throw std::invalid_argument("ext_dim must be a non-negative multiple of 3");
    }
    const double b = base_vector[0] * base_vector[0] + base_vector[1] * base_vector[1] +
                     base_vector[2] * base_vector[2];
    if (ext_dim > 0 && b == 0.0) {
        throw std::invalid_argument("base_vector must be nonzero");
    }
    if (!ext_frequencies.positive()) {
        throw std::invalid_argument("extension frequencies must be positive");
    }
}

std::vector<double> lang_rope(std::span<const double> v, std::int64_t seq_index,
                              double base) {
    if (v.size() % 2 != 0) {
        throw std::invalid_argument("lang_rope needs an even dimension");
    }
    std::vector<double> out(v.size());
    const double dim = static_cast<double>(v.size());
    for (std::size_t i = 0; i < v.size() / 2; ++i) {
        const double theta = std::pow(base, -2.0 * static_cast<double>(i) / dim);
        const double angle = static_cast<double>(seq_index) * theta;
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        const double a = v[2 * i];
        const double b = v[2 * i + 1];
        out[2 * i] = c * a - s * b;
        out[2 * i + 1] = s * a + c * b;
    }
    return out;
}

std::vector<double> extend_qk(std::span<const double> v, const TokenRole& role,
                              const AttentionConfig& cfg) {
    std::vector<double> out(v.begin(), v.end());
    out.resize(v.size() + static_cast<std::size_t>(cfg.ext_dim), 0.0);
    if (!role.is_object || cfg.ext_dim == 0) {
        return out;
    }
    const int segs = cfg.ext_segments();
    SegmentedVector tiled(static_cast<std::size_t>(cfg.ext_dim));
    for (int s = 0; s < segs; ++s) {
        tiled[3 * s] = cfg.base_vector[0];
        tiled[3 * s + 1] = cfg.base_vector[1];
        tiled[3 * s + 2] = cfg.base_vector[2];
    }
    const auto plan = SegmentFrequencyPlan::constant(static_cast<std::size_t>(segs),
                                                     cfg.ext_frequencies);
    const SegmentedVector rotated = apply_quatrope(tiled, role.position, plan);
    std::copy(rotated.begin(), rotated.end(), out.begin() + static_cast<long>(v.size()));
    return out;
}

std::vector<double> extend_qk_per_axis(std::span<const double> v, const TokenRole& role,
                                       const AttentionConfig& cfg) {
    std::vector<double> out(v.begin(), v.end());
    out.resize(v.size() + static_cast<std::size_t>(cfg.ext_dim), 0.0);
    if (!role.is_object || cfg.ext_dim == 0) {
        return out;
    }
    const int segs = cfg.ext_segments();
    SegmentedVector tiled(static_cast<std::size_t>(cfg.ext_dim));
    for (int s = 0; s < segs; ++s) {
        tiled[3 * s] = cfg.base_vector[0];
        tiled[3 * s + 1] = cfg.base_vector[1];
        tiled[3 * s + 2] = cfg.base_vector[2];
    }
    const auto plan = SegmentFrequencyPlan::constant(static_cast<std::size_t>(segs),
                                                     cfg.ext_frequencies);
    const SegmentedVector rotated = apply_per_axis_baseline(tiled, role.position, plan);
    std::copy(rotated.begin(), rotated.end(), out.begin() + static_cast<long>(v.size()));
    return out;
}

namespace {

void check_tokens(const std::vector<TokenInput>& tokens, const AttentionConfig& cfg) {
    std::int64_t prev = -1;
    bool first = true;
    for (const auto& t : tokens) {
        if (static_cast<int>(t.vec.size()) != cfg.base_dim) {
            throw std::invalid_argument("token vector width does not match base_dim");
        }
        if (!first && t.seq_index <= prev) {
            throw std::invalid_argument("seq_index must be strictly increasing");
        }
        prev = t.seq_index;
        first = false;
    }
}

ScoreMatrix logits_with(const std::vector<TokenInput>& tokens, const AttentionConfig& cfg,
                        MaskKind mask, double scale) {
    const std::size_t n = tokens.size();
    std::vector<std::vector<double>> extended(n);
    for (std::size_t i = 0; i < n; ++i) {
        extended[i] = extend_qk(lang_rope(tokens[i].vec, tokens[i].seq_index,
                                          cfg.lang_rope_base),
                                tokens[i].role, cfg);
    }
    ScoreMatrix sm;
    sm.size = n;
    sm.logits.assign(n * n, 0.0);
    sm.masked.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (mask == MaskKind::causal && j > i) {
                sm.logits[i * n + j] = sm.mask_sentinel;
                sm.masked[i * n + j] = 1;
                continue;
            }
            double acc = 0.0;  // fixed left-to-right order
            for (std::size_t d = 0; d < extended[i].size(); ++d) {
                acc += extended[i][d] * extended[j][d];
            }
            sm.logits[i * n + j] = acc / scale;
        }
    }
    return sm;
}

}  // namespace

ScoreMatrix attention_logits(const std::vector<TokenInput>& tokens,
                             const AttentionConfig& cfg, MaskKind mask) {
    cfg.validate();
    check_tokens(tokens, cfg);
    const double scale = cfg.scale_mode == ScaleMode::base_only
                             ? std::sqrt(static_cast<double>(cfg.base_dim))
                             : std::sqrt(static_cast<double>(cfg.base_dim + cfg.ext_dim));
    return logits_with(tokens, cfg, mask, scale);
}

std::vector<double> gating_delta(const std::vector<TokenInput>& tokens,
                                 const AttentionConfig& cfg) {
    cfg.validate();
    check_tokens(tokens, cfg);
    const double scale = std::sqrt(static_cast<double>(cfg.base_dim));
    const ScoreMatrix with_ext = logits_with(tokens, cfg, MaskKind::full, scale);
    AttentionConfig no_ext = cfg;
    no_ext.ext_dim = 0;
    const ScoreMatrix without_ext = logits_with(tokens, no_ext, MaskKind::full, scale);
    std::vector<double> delta(with_ext.logits.size());
    for (std::size_t i = 0; i < delta.size(); ++i) {
        delta[i] = with_ext.logits[i] - without_ext.logits[i];
    }
    return delta;
}

ScoreMatrix trans_additive_logits(const std::vector<TokenInput>& tokens,
                                  const AttentionConfig& cfg, MaskKind mask) {
    cfg.validate();
    check_tokens(tokens, cfg);
    const std::size_t n = tokens.size();
    const double scale = std::sqrt(static_cast<double>(cfg.base_dim));
    std::vector<std::vector<double>> rotated(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> v =
            lang_rope(tokens[i].vec, tokens[i].seq_index, cfg.lang_rope_base);
        if (tokens[i].role.is_object) {
            // reciprocal of the language schedule, coordinates cycled per pair
            const double dim = static_cast<double>(v.size());
            for (std::size_t p = 0; p < v.size() / 2; ++p) {
                const double theta =
                    std::pow(cfg.lang_rope_base, 2.0 * static_cast<double>(p) / dim);
                const double coord = (p % 3 == 0)   ? tokens[i].role.position.x
                                     : (p % 3 == 1) ? tokens[i].role.position.y
                                                    : tokens[i].role.position.z;
                const double angle = coord / theta;
                const double c = std::cos(angle);
                const double s = std::sin(angle);
                const double a = v[2 * p];
                const double b = v[2 * p + 1];
                v[2 * p] = c * a - s * b;
                v[2 * p + 1] = s * a + c * b;
            }
        }
        rotated[i] = std::move(v);
    }
    ScoreMatrix sm;
    sm.size = n;
    sm.logits.assign(n * n, 0.0);
    sm.masked.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (mask == MaskKind::causal && j > i) {
                sm.logits[i * n + j] = sm.mask_sentinel;
                sm.masked[i * n + j] = 1;
                continue;
            }
            double acc = 0.0;
            for (std::size_t d = 0; d < rotated[i].size(); ++d) {
                acc += rotated[i][d] * rotated[j][d];
            }
            sm.logits[i * n + j] = acc / scale;
        }
    }
    return sm;
}

std::string ScoreMatrix::to_json(const std::vector<TokenInput>& tokens) const {
    nlohmann::json j;
    j["size"] = size;
    j["mask_sentinel"] = mask_sentinel;
    nlohmann::json toks = nlohmann::json::array();
    for (const auto& t : tokens) {
        nlohmann::json tok;
        tok["is_object"] = t.role.is_object;
        tok["seq_index"] = t.seq_index;
        if (t.role.is_object) {
            tok["object_id"] = t.role.object_id;
            tok["position"] = {t.role.position.x, t.role.position.y, t.role.position.z};
        }
        toks.push_back(tok);
    }
    j["tokens"] = toks;
    j["logits"] = logits;
    nlohmann::json m = nlohmann::json::array();
    for (const auto b : masked) m.push_back(b != 0);
    j["masked"] = m;
    return j.dump(2);
}

}  // namespace qrope
