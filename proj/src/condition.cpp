// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "voxlab/condition.hpp"

#include <algorithm>

#include "voxlab/mathops.hpp"

namespace voxlab {

Condition make_condition(const SpeechWorld& world, const std::vector<int>& tokens,
                         const Tensor& prompt, const std::vector<int>& prompt_tokens,
                         double rate_hint, size_t gen_len) {
    require(!tokens.empty(), "make_condition: tokens must be non-empty");
    require(gen_len >= 1, "make_condition: gen_len must be >= 1");
    size_t d = world.config().dim;
    Condition c;
    c.tokens = tokens;
    c.prompt = prompt;
    c.prompt_len = prompt.numel() == 0 ? 0 : prompt.rows();
    c.total_len = c.prompt_len + gen_len;
    c.layout = world.render_track(tokens, rate_hint, gen_len);
    c.rate_hint = rate_hint;
    c.voice_hint.assign(d, 0.0);
    if (c.prompt_len > 0) {
        for (size_t f = 0; f < c.prompt_len; ++f)
            for (size_t i = 0; i < d; ++i) c.voice_hint[i] += prompt.at(f, i);
        for (double& v : c.voice_hint) v /= static_cast<double>(c.prompt_len);
        if (!prompt_tokens.empty()) {
            std::vector<double> mix(d, 0.0);
            for (int t : prompt_tokens) {
                const auto& emb = world.codebook().at(static_cast<size_t>(t));
                for (size_t i = 0; i < d; ++i) mix[i] += emb[i];
            }
            for (size_t i = 0; i < d; ++i)
                c.voice_hint[i] -= mix[i] / static_cast<double>(prompt_tokens.size());
        }
    }
    return c;
}

SplitExample split_utterance(const SpeechWorld& world, const Utterance& u, size_t prompt_tokens,
                             size_t forced_gen_len) {
    require(!u.tokens.empty() && u.block_ends.size() == u.tokens.size(),
            "split_utterance: utterance lacks block structure");
    require(prompt_tokens < u.tokens.size(), "split_utterance: prompt must leave text to render");
    size_t d = u.frames.cols();
    size_t prompt_frames = prompt_tokens == 0 ? 0 : u.block_ends[prompt_tokens - 1];
    size_t true_gen = u.true_duration - prompt_frames;
    size_t gen_len = forced_gen_len == 0 ? true_gen : forced_gen_len;

    Tensor prompt = prompt_frames == 0 ? Tensor() : Tensor({prompt_frames, d});
    for (size_t f = 0; f < prompt_frames; ++f)
        for (size_t i = 0; i < d; ++i) prompt.at(f, i) = u.frames.at(f, i);

    std::vector<int> ptoks(u.tokens.begin(), u.tokens.begin() + static_cast<long>(prompt_tokens));
    std::vector<int> ttoks(u.tokens.begin() + static_cast<long>(prompt_tokens), u.tokens.end());

    SplitExample ex;
    ex.target_tokens = ttoks;
    ex.true_gen_len = true_gen;
    ex.cond = make_condition(world, ttoks, prompt, ptoks,
                             world.speaker(u.speaker_id).rate, gen_len);
    if (gen_len == true_gen) {
        ex.target = Tensor({ex.cond.total_len, d});
        for (size_t f = 0; f < u.true_duration; ++f)
            for (size_t i = 0; i < d; ++i) ex.target.at(f, i) = u.frames.at(f, i);
    }
    return ex;
}

}  // namespace voxlab
