// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXLAB_CONDITION_HPP_
#define VOXLAB_CONDITION_HPP_

#include <vector>

#include "voxlab/tensor.hpp"
#include "voxlab/world.hpp"

namespace voxlab {

// Generation condition: the text to render, a clamped prompt prefix, and the
// total duration. The prompt occupies rows [0, prompt_len); the remaining
// rows are generated.
struct Condition {
    std::vector<int> tokens;         // text of the generated region
    Tensor prompt;                   // prompt_len x d (prompt_len may be 0)
    size_t total_len = 0;            // prompt_len + generated length
    size_t prompt_len = 0;
    Tensor layout;                   // (total_len - prompt_len) x d embedding track
    std::vector<double> voice_hint;  // speaker signature estimate from the prompt
    double rate_hint = 1.0;          // frames per token used to lay the text out

    size_t gen_len() const { return total_len - prompt_len; }
};

// Builds the condition for "render `tokens` after `prompt` in `gen_len`
// frames". The voice hint subtracts the prompt transcript's embedding mix
// from the prompt's mean frame, mirroring how a prompt transcript is
// available alongside prompt audio.
Condition make_condition(const SpeechWorld& world, const std::vector<int>& tokens,
                         const Tensor& prompt, const std::vector<int>& prompt_tokens,
                         double rate_hint, size_t gen_len);

// Splits a ground-truth utterance at a token-block boundary into (prompt,
// continuation) and builds the condition whose generated region matches the
// continuation exactly.
struct SplitExample {
    Condition cond;
    Tensor target;  // total_len x d: prompt rows then the true continuation
    std::vector<int> target_tokens;
    size_t true_gen_len = 0;
};

SplitExample split_utterance(const SpeechWorld& world, const Utterance& u, size_t prompt_tokens,
                             size_t forced_gen_len = 0);

}  // namespace voxlab

#endif  // VOXLAB_CONDITION_HPP_
