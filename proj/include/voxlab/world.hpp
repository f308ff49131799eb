// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXLAB_WORLD_HPP_
#define VOXLAB_WORLD_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "voxlab/rng.hpp"
#include "voxlab/tensor.hpp"

namespace voxlab {

struct Speaker {
    std::vector<double> voice;  // unit vector, the speaker's additive signature
    double rate;                // frames per token, >= 1
    double rate_jitter;         // >= 0, per-token length spread
};

struct Utterance {
    Tensor frames;  // L x d
    std::vector<int> tokens;
    int speaker_id = -1;
    size_t true_duration = 0;         // == frames.rows()
    std::vector<size_t> block_ends;   // cumulative end frame of each token's block
};

struct WorldConfig {
    size_t vocab = 16;
    size_t dim = 8;
    size_t max_frames = 128;
    size_t n_speakers = 8;
    double rate_min = 3.0;
    double rate_max = 7.0;
    double rate_jitter = 0.3;
    double frame_noise = 0.05;    // iid per-frame Gaussian std
    double prosody_scale = 0.35;  // stationary std of the coord-0 drift across token blocks
    double prosody_rho = 0.9;     // AR(1) coefficient of that drift
    double embed_scale = 2.5;     // codebook embedding norm
    size_t tokens_min = 3;
    size_t tokens_max = 10;
};

// The synthetic speech world: a token codebook plus a speaker roster. Frames
// are token embeddings shifted by the speaker voice, with a slowly drifting
// prosody offset on coordinate 0 and iid frame noise.
class SpeechWorld {
  public:
    SpeechWorld() = default;
    static SpeechWorld build(const WorldConfig& cfg, RngStream rng);

    const WorldConfig& config() const { return cfg_; }
    const std::vector<std::vector<double>>& codebook() const { return codebook_; }
    const std::vector<Speaker>& speakers() const { return speakers_; }
    const Speaker& speaker(int id) const { return speakers_.at(static_cast<size_t>(id)); }

    std::vector<int> random_tokens(RngStream& rng) const;
    std::vector<int> random_tokens(RngStream& rng, size_t count) const;

    // Ground-truth synthesis: per token, round(rate + jitter*noise) copies of
    // (embedding + voice + prosody-drift on coord 0 + frame noise).
    Utterance synth_utterance(const std::vector<int>& tokens, int speaker_id,
                              RngStream& rng) const;

    // Token block length at jitter 0 and the natural rendered length.
    size_t block_len(double rate) const;
    size_t natural_length(size_t n_tokens, double rate) const;

    // Compresses a natural frame sequence to `len` rows with an overlapping
    // centered smear, so faster-than-natural reading always bleeds adjacent
    // content together.
    static Tensor squeeze_frames(const Tensor& natural, size_t len);

    // Embedding track for `tokens` read at `rate`, forced to exactly `len`
    // frames: squeezed when too short, padded with silence when too long.
    // No voice, no noise.
    Tensor render_track(const std::vector<int>& tokens, double rate, size_t len) const;

    // Forced-duration synthesis: render_track content plus voice (silence padding
    // stays voiceless), with optional prosody/frame noise. The data-side model
    // of "this text spoken by this speaker squeezed or stretched into len frames".
    Utterance render_forced(const std::vector<int>& tokens, int speaker_id, size_t len,
                            RngStream& rng) const;

    std::string to_json() const;
    static SpeechWorld from_json(const std::string& text);
    void save(const std::string& path) const;
    static SpeechWorld load(const std::string& path);

  private:
    WorldConfig cfg_;
    std::vector<std::vector<double>> codebook_;
    std::vector<Speaker> speakers_;
};

}  // namespace voxlab

#endif  // VOXLAB_WORLD_HPP_
