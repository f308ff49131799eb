// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXLAB_SCORERS_HPP_
#define VOXLAB_SCORERS_HPP_

#include <functional>
#include <vector>

#include "voxlab/rng.hpp"
#include "voxlab/tensor.hpp"
#include "voxlab/world.hpp"

namespace voxlab {

// Alignment-based recognizer score. Frames are matched to tokens by the best
// monotone partition into ordered contiguous blocks (every token >= 1 frame);
// per-frame residuals are taken against embedding + voice estimate, where the
// voice estimate is the mean deviation of frames from their nearest codebook
// embeddings. Score = -(total residual)/L; higher is better, 0 is the maximum.
struct AsrScore {
    double score = 0.0;           // -inf sentinel when infeasible
    bool infeasible = false;      // L < token count
    std::vector<size_t> alignment;  // token index per frame (empty if infeasible)
};

AsrScore asr_loglik(const Tensor& frames, const std::vector<int>& tokens,
                    const SpeechWorld& world);

// d(-score)/d(frames) holding the discrete alignment and nearest-embedding
// matches fixed; the voice-estimate dependence on frames is differentiated.
Tensor asr_loglik_grad(const Tensor& frames, const std::vector<int>& tokens,
                       const SpeechWorld& world, const AsrScore& score);

// Best token sequence under the same residual model with a fixed per-switch
// penalty; deterministic with lowest-index tie-breaking.
std::vector<int> asr_decode(const Tensor& frames, const SpeechWorld& world,
                            double switch_penalty = 0.5);

// Levenshtein distance with unit costs divided by reference length.
double token_error_rate(const std::vector<int>& reference, const std::vector<int>& decoded);

// Cosine similarity of mean-frame embeddings; 0 with degenerate flag for
// zero-norm inputs.
double sv_similarity(const Tensor& frames_a, const Tensor& frames_b,
                     bool* degenerate = nullptr);

std::vector<double> mean_frame(const Tensor& frames);

struct RewardWeights {
    double lambda_sim = 3.0;
};

// Finite penalty substituted for infeasible alignments so group statistics
// stay well-defined.
inline constexpr double kInfeasibleRewardPenalty = -1e3;

struct RewardBreakdown {
    double total = 0.0;
    double asr = 0.0;
    double sim = 0.0;
    bool infeasible = false;
};

RewardBreakdown reward(const SpeechWorld& world, const std::vector<int>& text_tokens,
                       const Utterance& prompt, const Utterance& candidate,
                       const RewardWeights& w);

// Exhaustive best-of-N oracle over a candidate duration set.
struct OracleResult {
    size_t best_duration = 0;
    double best_reward = 0.0;
};

using DurationGenerator = std::function<Tensor(size_t duration, RngStream& rng)>;

OracleResult oracle_best_duration(const SpeechWorld& world, const std::vector<int>& text_tokens,
                                  const Utterance& prompt, const DurationGenerator& generator,
                                  const std::vector<size_t>& duration_set, size_t n_noise,
                                  const RewardWeights& w, RngStream rng);

}  // namespace voxlab

#endif  // VOXLAB_SCORERS_HPP_
