// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "voxlab/scorers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "voxlab/mathops.hpp"

namespace voxlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<size_t> nearest_embeddings(const Tensor& frames, const SpeechWorld& world) {
    size_t L = frames.rows(), d = frames.cols();
    const auto& cb = world.codebook();
    std::vector<size_t> match(L, 0);
    for (size_t f = 0; f < L; ++f) {
        double best = kInf;
        for (size_t k = 0; k < cb.size(); ++k) {
            double dist = 0.0;
            for (size_t i = 0; i < d; ++i) {
                double diff = frames.at(f, i) - cb[k][i];
                dist += diff * diff;
            }
            if (dist < best) {
                best = dist;
                match[f] = k;
            }
        }
    }
    return match;
}

std::vector<double> voice_estimate(const Tensor& frames, const SpeechWorld& world,
                                   const std::vector<size_t>& match) {
    size_t L = frames.rows(), d = frames.cols();
    const auto& cb = world.codebook();
    std::vector<double> v(d, 0.0);
    for (size_t f = 0; f < L; ++f)
        for (size_t i = 0; i < d; ++i) v[i] += frames.at(f, i) - cb[match[f]][i];
    for (double& x : v) x /= static_cast<double>(L);
    return v;
}

double residual_cost(const Tensor& frames, size_t f, const std::vector<double>& emb,
                     const std::vector<double>& voice) {
    double c = 0.0;
    for (size_t i = 0; i < frames.cols(); ++i) {
        double diff = frames.at(f, i) - emb[i] - voice[i];
        c += diff * diff;
    }
    return 0.5 * c;
}

}  // namespace

AsrScore asr_loglik(const Tensor& frames, const std::vector<int>& tokens,
                    const SpeechWorld& world) {
    require(frames.rows() >= 1, "asr_loglik: frames must be non-empty");
    require(!tokens.empty(), "asr_loglik: tokens must be non-empty");
    size_t L = frames.rows(), N = tokens.size();
    AsrScore out;
    if (L < N) {
        out.score = -kInf;
        out.infeasible = true;
        return out;
    }
    std::vector<size_t> match = nearest_embeddings(frames, world);
    std::vector<double> voice = voice_estimate(frames, world, match);
    const auto& cb = world.codebook();

    // cost[f][j] for frame f assigned to token j
    std::vector<std::vector<double>> cost(L, std::vector<double>(N));
    for (size_t f = 0; f < L; ++f)
        for (size_t j = 0; j < N; ++j)
            cost[f][j] = residual_cost(frames, f, cb[static_cast<size_t>(tokens[j])], voice);

    // dp[f][j]: minimal cost covering frames 0..f with tokens 0..j, frame f on token j
    std::vector<std::vector<double>> dp(L, std::vector<double>(N, kInf));
    dp[0][0] = cost[0][0];
    for (size_t f = 1; f < L; ++f) {
        for (size_t j = 0; j < N && j <= f; ++j) {
            double stay = dp[f - 1][j];
            double advance = j > 0 ? dp[f - 1][j - 1] : kInf;
            double prev = std::min(stay, advance);
            if (prev < kInf) dp[f][j] = cost[f][j] + prev;
        }
    }
    out.score = -dp[L - 1][N - 1] / static_cast<double>(L);

    out.alignment.assign(L, 0);
    size_t j = N - 1;
    out.alignment[L - 1] = j;
    for (size_t f = L - 1; f-- > 0;) {
        if (j > 0 && dp[f][j - 1] <= dp[f][j]) --j;  // prefer the earlier block on ties
        out.alignment[f] = j;
    }
    return out;
}

Tensor asr_loglik_grad(const Tensor& frames, const std::vector<int>& tokens,
                       const SpeechWorld& world, const AsrScore& score) {
    require(!score.infeasible && score.alignment.size() == frames.rows(),
            "asr_loglik_grad: needs a feasible score for these frames");
    size_t L = frames.rows(), d = frames.cols();
    const auto& cb = world.codebook();
    std::vector<size_t> match = nearest_embeddings(frames, world);
    std::vector<double> voice = voice_estimate(frames, world, match);

    // loss = (1/(2L)) sum_f ||f - emb_align(f) - voice(frames)||^2 with the
    // alignment and nearest-embedding assignments frozen.
    Tensor grad({L, d});
    std::vector<double> rmean(d, 0.0);
    std::vector<std::vector<double>> resid(L, std::vector<double>(d));
    for (size_t f = 0; f < L; ++f) {
        const auto& emb = cb[static_cast<size_t>(tokens[score.alignment[f]])];
        for (size_t i = 0; i < d; ++i) {
            resid[f][i] = frames.at(f, i) - emb[i] - voice[i];
            rmean[i] += resid[f][i];
        }
    }
    for (double& x : rmean) x /= static_cast<double>(L);
    for (size_t f = 0; f < L; ++f)
        for (size_t i = 0; i < d; ++i)
            grad.at(f, i) = (resid[f][i] - rmean[i]) / static_cast<double>(L);
    return grad;
}

std::vector<int> asr_decode(const Tensor& frames, const SpeechWorld& world,
                            double switch_penalty) {
    require(frames.rows() >= 1, "asr_decode: frames must be non-empty");
    size_t L = frames.rows();
    size_t V = world.codebook().size();
    const auto& cb = world.codebook();
    std::vector<size_t> match = nearest_embeddings(frames, world);
    std::vector<double> voice = voice_estimate(frames, world, match);

    std::vector<std::vector<double>> dp(L, std::vector<double>(V));
    std::vector<std::vector<size_t>> back(L, std::vector<size_t>(V, 0));
    for (size_t k = 0; k < V; ++k) dp[0][k] = residual_cost(frames, 0, cb[k], voice);
    for (size_t f = 1; f < L; ++f) {
        size_t best_prev = 0;
        for (size_t k = 1; k < V; ++k)
            if (dp[f - 1][k] < dp[f - 1][best_prev]) best_prev = k;
        for (size_t k = 0; k < V; ++k) {
            double stay = dp[f - 1][k];
            double switched = dp[f - 1][best_prev] + switch_penalty;
            if (stay <= switched) {
                dp[f][k] = stay;
                back[f][k] = k;
            } else {
                dp[f][k] = switched;
                back[f][k] = best_prev;
            }
            dp[f][k] += residual_cost(frames, f, cb[k], voice);
        }
    }
    size_t k = 0;
    for (size_t c = 1; c < V; ++c)
        if (dp[L - 1][c] < dp[L - 1][k]) k = c;
    std::vector<size_t> labels(L);
    labels[L - 1] = k;
    for (size_t f = L - 1; f-- > 0;) {
        k = back[f + 1][k];
        labels[f] = k;
    }
    std::vector<int> decoded;
    for (size_t f = 0; f < L; ++f)
        if (f == 0 || labels[f] != labels[f - 1]) decoded.push_back(static_cast<int>(labels[f]));
    return decoded;
}

double token_error_rate(const std::vector<int>& reference, const std::vector<int>& decoded) {
    require(!reference.empty(), "token_error_rate: empty reference");
    size_t n = reference.size(), m = decoded.size();
    std::vector<size_t> prev(m + 1), cur(m + 1);
    for (size_t j = 0; j <= m; ++j) prev[j] = j;
    for (size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= m; ++j) {
            size_t sub = prev[j - 1] + (reference[i - 1] == decoded[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return static_cast<double>(prev[m]) / static_cast<double>(n);
}

std::vector<double> mean_frame(const Tensor& frames) {
    require(frames.rows() >= 1, "mean_frame: empty frames");
    std::vector<double> m(frames.cols(), 0.0);
    for (size_t f = 0; f < frames.rows(); ++f)
        for (size_t i = 0; i < frames.cols(); ++i) m[i] += frames.at(f, i);
    for (double& x : m) x /= static_cast<double>(frames.rows());
    return m;
}

double sv_similarity(const Tensor& frames_a, const Tensor& frames_b, bool* degenerate) {
    return cosine(mean_frame(frames_a), mean_frame(frames_b), degenerate);
}

RewardBreakdown reward(const SpeechWorld& world, const std::vector<int>& text_tokens,
                       const Utterance& prompt, const Utterance& candidate,
                       const RewardWeights& w) {
    require(candidate.frames.rows() >= 1, "reward: candidate frames must be non-empty");
    RewardBreakdown r;
    AsrScore asr = asr_loglik(candidate.frames, text_tokens, world);
    r.infeasible = asr.infeasible;
    r.asr = asr.infeasible ? kInfeasibleRewardPenalty : asr.score;
    r.sim = sv_similarity(prompt.frames, candidate.frames);
    r.total = r.asr + w.lambda_sim * r.sim;
    return r;
}

OracleResult oracle_best_duration(const SpeechWorld& world, const std::vector<int>& text_tokens,
                                  const Utterance& prompt, const DurationGenerator& generator,
                                  const std::vector<size_t>& duration_set, size_t n_noise,
                                  const RewardWeights& w, RngStream rng) {
    require(!duration_set.empty(), "oracle_best_duration: duration set must be non-empty");
    require(n_noise >= 1, "oracle_best_duration: n_noise must be >= 1");
    OracleResult best;
    best.best_reward = -kInf;
    size_t draw = 0;
    for (size_t dur : duration_set) {
        for (size_t i = 0; i < n_noise; ++i, ++draw) {
            RngStream sub = rng.child(draw);
            Utterance cand;
            try {
                cand.frames = generator(dur, sub);
            } catch (const std::exception& e) {
                throw NumericError("oracle_best_duration: generator failed at duration " +
                                   std::to_string(dur) + ": " + e.what());
            }
            cand.tokens = text_tokens;
            cand.true_duration = cand.frames.rows();
            double r = reward(world, text_tokens, prompt, cand, w).total;
            if (r > best.best_reward) {
                best.best_reward = r;
                best.best_duration = dur;
            }
        }
    }
    return best;
}

}  // namespace voxlab
