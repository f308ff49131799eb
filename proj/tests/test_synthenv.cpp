// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "voxlab/dataset.hpp"
#include "voxlab/mathops.hpp"
#include "voxlab/scorers.hpp"
#include "voxlab/world.hpp"

using namespace voxlab;

namespace {

WorldConfig noiseless_config() {
    WorldConfig cfg;
    cfg.rate_jitter = 0.0;
    cfg.frame_noise = 0.0;
    cfg.prosody_scale = 0.0;
    return cfg;
}

SpeechWorld noiseless_world(uint64_t seed = 100) {
    return SpeechWorld::build(noiseless_config(), RngStream(seed));
}

// Exhaustive minimum-edit-path search, independent of the DP implementation.
size_t edit_distance_oracle(const std::vector<int>& a, const std::vector<int>& b, size_t i,
                            size_t j) {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    size_t best = edit_distance_oracle(a, b, i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
    best = std::min(best, edit_distance_oracle(a, b, i + 1, j) + 1);
    best = std::min(best, edit_distance_oracle(a, b, i, j + 1) + 1);
    return best;
}

}  // namespace

TEST_CASE("synth_utterance noiseless construction") {
    SpeechWorld w = noiseless_world();
    RngStream rng(1);

    // One token at rate 4: exactly 4 identical frames of embedding + voice.
    WorldConfig cfg = noiseless_config();
    cfg.rate_min = cfg.rate_max = 4.0;
    SpeechWorld w4 = SpeechWorld::build(cfg, RngStream(3));
    Utterance u = w4.synth_utterance({2}, 0, rng);
    REQUIRE(u.true_duration == 4);
    for (size_t f = 0; f < 4; ++f)
        for (size_t i = 0; i < w4.config().dim; ++i)
            CHECK(u.frames.at(f, i) ==
                  doctest::Approx(w4.codebook()[2][i] + w4.speaker(0).voice[i]).epsilon(1e-15));

    Utterance u3 = w4.synth_utterance({1, 2, 3}, 0, rng);
    CHECK(u3.true_duration == 12);

    // Duration is monotone nondecreasing in token count at jitter 0.
    size_t prev = 0;
    for (size_t n = 1; n <= 8; ++n) {
        Utterance un = w4.synth_utterance(w4.random_tokens(rng, n), 1, rng);
        CHECK(un.true_duration >= prev);
        prev = un.true_duration;
    }

    CHECK_THROWS_AS(w4.synth_utterance({}, 0, rng), ContractViolation);
}

TEST_CASE("synth_utterance mean duration per token tracks the rate") {
    WorldConfig cfg;
    cfg.rate_min = cfg.rate_max = 6.0;
    cfg.rate_jitter = 0.5;
    SpeechWorld w = SpeechWorld::build(cfg, RngStream(17));
    RngStream rng(18);
    double total_frames = 0.0, total_tokens = 0.0;
    for (int k = 0; k < 10; ++k) {
        auto toks = w.random_tokens(rng);
        Utterance u = w.synth_utterance(toks, 0, rng);
        total_frames += static_cast<double>(u.true_duration);
        total_tokens += static_cast<double>(toks.size());
    }
    double per_token = total_frames / total_tokens;
    CHECK(per_token >= 5.0);
    CHECK(per_token <= 7.0);
}

TEST_CASE("speaker invariants") {
    SpeechWorld w = SpeechWorld::build(WorldConfig{}, RngStream(5));
    for (const Speaker& s : w.speakers()) {
        CHECK(std::fabs(norm(s.voice) - 1.0) < 1e-9);
        CHECK(s.rate >= 1.0);
    }
}

TEST_CASE("asr_loglik: noiseless self is the maximum and beats decoys") {
    SpeechWorld w = noiseless_world(7);
    RngStream rng(8);
    auto tokens = w.random_tokens(rng, 5);
    Utterance u = w.synth_utterance(tokens, 2, rng);

    AsrScore self = asr_loglik(u.frames, tokens, w);
    CHECK_FALSE(self.infeasible);
    CHECK(self.score == doctest::Approx(0.0).epsilon(1e-12));

    int strictly_below = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> decoy = w.random_tokens(rng, tokens.size());
        if (decoy == tokens) continue;
        AsrScore ds = asr_loglik(u.frames, decoy, w);
        if (ds.score < self.score) ++strictly_below;
    }
    CHECK(strictly_below >= 19);  // at most one skipped duplicate draw
}

TEST_CASE("asr_loglik: trivial identities and infeasible sentinel") {
    SpeechWorld w = noiseless_world(9);
    size_t d = w.config().dim;

    // Single frame equal to its embedding with voice 0 scores exactly 0.
    Tensor one({1, d});
    for (size_t i = 0; i < d; ++i) one.at(0, i) = w.codebook()[3][i];
    AsrScore s = asr_loglik(one, {3}, w);
    CHECK(s.score == doctest::Approx(0.0).epsilon(1e-12));

    Tensor two({2, d});
    AsrScore inf = asr_loglik(two, {0, 1, 2}, w);
    CHECK(inf.infeasible);
    CHECK(std::isinf(inf.score));
}

TEST_CASE("asr_loglik: invariant to uniform frame duplication (noiseless)") {
    SpeechWorld w = noiseless_world(10);
    RngStream rng(11);
    auto tokens = w.random_tokens(rng, 4);
    Utterance u = w.synth_utterance(tokens, 1, rng);
    size_t L = u.frames.rows(), d = u.frames.cols();
    Tensor doubled({2 * L, d});
    for (size_t f = 0; f < L; ++f)
        for (size_t r = 0; r < 2; ++r)
            for (size_t i = 0; i < d; ++i) doubled.at(2 * f + r, i) = u.frames.at(f, i);
    double a = asr_loglik(u.frames, tokens, w).score;
    double b = asr_loglik(doubled, tokens, w).score;
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("asr_loglik is maximized by the true tokens over all short sequences") {
    WorldConfig cfg = noiseless_config();
    cfg.vocab = 4;
    cfg.rate_min = cfg.rate_max = 3.0;
    cfg.tokens_min = 3;
    cfg.tokens_max = 3;
    SpeechWorld w = SpeechWorld::build(cfg, RngStream(21));
    RngStream rng(22);
    std::vector<int> tokens = {0, 2, 1};
    Utterance u = w.synth_utterance(tokens, 0, rng);
    double best = asr_loglik(u.frames, tokens, w).score;

    std::vector<std::vector<int>> all;
    for (int a = 0; a < 4; ++a) {
        all.push_back({a});
        for (int b = 0; b < 4; ++b) {
            all.push_back({a, b});
            for (int c = 0; c < 4; ++c) all.push_back({a, b, c});
        }
    }
    for (const auto& seq : all) {
        if (seq == tokens) continue;
        CHECK(asr_loglik(u.frames, seq, w).score < best);
    }
}

TEST_CASE("asr_decode recovers noiseless token runs") {
    WorldConfig cfg = noiseless_config();
    cfg.rate_min = cfg.rate_max = 4.0;
    SpeechWorld w = SpeechWorld::build(cfg, RngStream(31));
    RngStream rng(32);

    Utterance u = w.synth_utterance({5, 7, 5}, 3, rng);
    CHECK(asr_decode(u.frames, w) == std::vector<int>{5, 7, 5});

    // Constant frames decode as a single token.
    size_t d = w.config().dim;
    Tensor constant({9, d});
    for (size_t f = 0; f < 9; ++f)
        for (size_t i = 0; i < d; ++i)
            constant.at(f, i) = w.codebook()[4][i] + w.speaker(1).voice[i];
    CHECK(asr_decode(constant, w) == std::vector<int>{4});

    // Pure noise still terminates with at most one token per frame.
    Tensor noise({14, d});
    for (double& v : noise.data) v = rng.gaussian() * 2.0;
    auto decoded = asr_decode(noise, w);
    CHECK(decoded.size() >= 1);
    CHECK(decoded.size() <= 14);
}

TEST_CASE("token_error_rate basics and exhaustive oracle") {
    CHECK(token_error_rate({1, 2, 3}, {1, 2, 3}) == doctest::Approx(0.0));
    CHECK(token_error_rate({1, 2, 3}, {1, 9, 3}) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(token_error_rate({}, {1}), ContractViolation);

    RngStream rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        size_t na = 1 + rng.uniform_index(6);
        size_t nb = rng.uniform_index(7);
        std::vector<int> a(na), b(nb);
        for (int& v : a) v = static_cast<int>(rng.uniform_index(3));
        for (int& v : b) v = static_cast<int>(rng.uniform_index(3));
        double want = static_cast<double>(edit_distance_oracle(a, b, 0, 0)) /
                      static_cast<double>(na);
        CHECK(token_error_rate(a, b) == doctest::Approx(want));
    }
}

TEST_CASE("sv_similarity identities and speaker discrimination") {
    SpeechWorld w = SpeechWorld::build(WorldConfig{}, RngStream(51));
    RngStream rng(52);
    Utterance u = w.synth_utterance(w.random_tokens(rng, 6), 0, rng);
    CHECK(sv_similarity(u.frames, u.frames) == doctest::Approx(1.0));

    size_t d = w.config().dim;
    Tensor a({3, d}), b({5, d});
    for (size_t f = 0; f < 3; ++f) a.at(f, 0) = 1.0;
    for (size_t f = 0; f < 5; ++f) b.at(f, 1) = 2.0;
    CHECK(sv_similarity(a, b) == doctest::Approx(0.0));

    bool degenerate = false;
    Tensor z({2, d});
    CHECK(sv_similarity(z, a, &degenerate) == doctest::Approx(0.0));
    CHECK(degenerate);

    // Voices >= 60 degrees apart, same text: same-speaker pairs win every trial.
    int sa = -1, sb = -1;
    for (size_t i = 0; i < w.speakers().size() && sa < 0; ++i)
        for (size_t j = i + 1; j < w.speakers().size(); ++j)
            if (dot(w.speaker(static_cast<int>(i)).voice, w.speaker(static_cast<int>(j)).voice) <
                0.5) {
                sa = static_cast<int>(i);
                sb = static_cast<int>(j);
                break;
            }
    REQUIRE(sa >= 0);
    for (int trial = 0; trial < 50; ++trial) {
        auto text = w.random_tokens(rng, 6);
        Utterance u1 = w.synth_utterance(text, sa, rng);
        Utterance u2 = w.synth_utterance(text, sa, rng);
        Utterance u3 = w.synth_utterance(text, sb, rng);
        double same = sv_similarity(u1.frames, u2.frames);
        double diff = sv_similarity(u1.frames, u3.frames);
        CHECK(same > diff);
        CHECK(same <= 1.0);
        CHECK(diff >= -1.0);
    }
}

TEST_CASE("reward identities and penalty path") {
    SpeechWorld w = noiseless_world(61);
    RngStream rng(62);
    auto tokens = w.random_tokens(rng, 5);
    Utterance u = w.synth_utterance(tokens, 1, rng);
    RewardWeights weights;

    double asr_max = asr_loglik(u.frames, tokens, w).score;
    RewardBreakdown r = reward(w, tokens, u, u, weights);
    CHECK(r.total == doctest::Approx(asr_max + weights.lambda_sim * 1.0).epsilon(1e-9));

    // Shorter than the token count: finite penalty plus the sim term.
    Utterance shorty;
    shorty.frames = Tensor({2, w.config().dim});
    for (size_t i = 0; i < w.config().dim; ++i)
        shorty.frames.at(0, i) = shorty.frames.at(1, i) = w.speaker(1).voice[i];
    shorty.tokens = tokens;
    shorty.true_duration = 2;
    RewardBreakdown rp = reward(w, tokens, u, shorty, weights);
    CHECK(rp.infeasible);
    CHECK(rp.total == doctest::Approx(-1e3 + weights.lambda_sim * rp.sim));
}

TEST_CASE("reward sweep over forced durations is unimodal with the peak at truth") {
    SpeechWorld w = noiseless_world(71);
    RngStream rng(72);
    auto text = w.random_tokens(rng, 6);
    auto prompt_text = w.random_tokens(rng, 5);
    int speaker = 2;
    Utterance prompt = w.synth_utterance(prompt_text, speaker, rng);
    size_t natural = w.natural_length(text.size(), w.speaker(speaker).rate);
    RewardWeights weights;

    std::vector<double> curve;
    size_t lo = text.size(), hi = natural + 30;
    for (size_t L = lo; L <= hi; ++L) {
        RngStream sub(0);
        Utterance cand = w.render_forced(text, speaker, L, sub);
        curve.push_back(reward(w, text, prompt, cand, weights).total);
    }
    size_t arg = 0;
    for (size_t i = 1; i < curve.size(); ++i)
        if (curve[i] > curve[arg]) arg = i;
    size_t peak_L = lo + arg;
    CHECK(peak_L >= natural - 1);
    CHECK(peak_L <= natural + 1);

    // Unimodal: nondecreasing up to the peak, nonincreasing after (tiny slack
    // for floating-point plateaus).
    for (size_t i = 0; i + 1 < curve.size(); ++i) {
        if (i + 1 <= arg)
            CHECK(curve[i] <= curve[i + 1] + 1e-9);
        else
            CHECK(curve[i] >= curve[i + 1] - 1e-9);
    }
}

TEST_CASE("duration sensitivity: +-25 percent strictly hurts the mean reward") {
    SpeechWorld w = SpeechWorld::build(WorldConfig{}, RngStream(81));
    RngStream rng(82);
    RewardWeights weights;
    double at_true = 0.0, minus = 0.0, plus = 0.0;
    int n = 40;
    for (int k = 0; k < n; ++k) {
        auto text = w.random_tokens(rng, 6);
        int sp = static_cast<int>(rng.uniform_index(w.speakers().size()));
        Utterance prompt = w.synth_utterance(w.random_tokens(rng, 5), sp, rng);
        size_t natural = w.natural_length(text.size(), w.speaker(sp).rate);
        auto eval_at = [&](double mult) {
            size_t L = std::max<size_t>(text.size(),
                                        static_cast<size_t>(std::llround(mult * natural)));
            RngStream sub = rng.child(1000 + k);
            Utterance cand = w.render_forced(text, sp, L, sub);
            return reward(w, text, prompt, cand, weights).total;
        };
        at_true += eval_at(1.0);
        minus += eval_at(0.75);
        plus += eval_at(1.25);
    }
    CHECK(at_true / n > minus / n);
    CHECK(at_true / n > plus / n);
}

TEST_CASE("oracle_best_duration: singleton, analytic curve, dominance") {
    SpeechWorld w = noiseless_world(91);
    RngStream rng(92);
    auto text = w.random_tokens(rng, 5);
    int sp = 0;
    Utterance prompt = w.synth_utterance(w.random_tokens(rng, 4), sp, rng);
    RewardWeights weights;

    auto gen = [&](size_t dur, RngStream& r) { return w.render_forced(text, sp, dur, r).frames; };

    OracleResult single =
        oracle_best_duration(w, text, prompt, gen, {w.natural_length(5, w.speaker(sp).rate)}, 1,
                             weights, RngStream(1));
    CHECK(single.best_duration == w.natural_length(5, w.speaker(sp).rate));

    // Exhaustive over all feasible durations: the oracle lands on the argmax
    // of the directly computed reward curve.
    std::vector<size_t> all;
    for (size_t L = text.size(); L <= 60; ++L) all.push_back(L);
    OracleResult best = oracle_best_duration(w, text, prompt, gen, all, 1, weights, RngStream(2));
    double expect_best = -1e18;
    size_t expect_arg = 0;
    for (size_t L : all) {
        RngStream sub = RngStream(2).child(L - text.size());
        Utterance cand;
        cand.frames = gen(L, sub);
        cand.tokens = text;
        cand.true_duration = L;
        double r = reward(w, text, prompt, cand, weights).total;
        if (r > expect_best) {
            expect_best = r;
            expect_arg = L;
        }
    }
    CHECK(best.best_duration == expect_arg);
    CHECK(best.best_reward == doctest::Approx(expect_best));

    // The oracle's max dominates any single draw on the same inputs.
    for (int trial = 0; trial < 100; ++trial) {
        size_t dur = text.size() + rng.uniform_index(50);
        RngStream sub = rng.child(trial);
        Utterance cand;
        cand.frames = gen(dur, sub);
        cand.tokens = text;
        cand.true_duration = dur;
        CHECK(best.best_reward >= reward(w, text, prompt, cand, weights).total - 1e-12);
    }
}

TEST_CASE("reward ordering: best-of-8 >= ground truth >= random duration") {
    SpeechWorld w = SpeechWorld::build(WorldConfig{}, RngStream(101));
    RngStream rng(102);
    RewardWeights weights;
    double bo8 = 0.0, gt = 0.0, rnd = 0.0;
    const int n = 50;
    for (int k = 0; k < n; ++k) {
        auto text = w.random_tokens(rng, 6);
        int sp = static_cast<int>(rng.uniform_index(w.speakers().size()));
        Utterance prompt = w.synth_utterance(w.random_tokens(rng, 5), sp, rng);
        size_t natural = w.natural_length(text.size(), w.speaker(sp).rate);
        auto gen = [&](size_t dur, RngStream& r) {
            return w.render_forced(text, sp, dur, r).frames;
        };
        auto reward_at = [&](size_t dur, RngStream r) {
            Utterance cand;
            cand.frames = gen(dur, r);
            cand.tokens = text;
            cand.true_duration = dur;
            return reward(w, text, prompt, cand, weights).total;
        };

        // Eight proposals jittered around the natural duration.
        std::vector<size_t> proposals;
        for (int i = 0; i < 8; ++i) {
            long dur = std::llround(static_cast<double>(natural) + 3.0 * rng.gaussian());
            dur = std::max<long>(static_cast<long>(text.size()), dur);
            proposals.push_back(static_cast<size_t>(dur));
        }
        bo8 += oracle_best_duration(w, text, prompt, gen, proposals, 1, weights, rng.child(k))
                   .best_reward;
        gt += reward_at(natural, rng.child(10000 + k));
        size_t random_dur = text.size() + rng.uniform_index(w.config().max_frames - text.size());
        rnd += reward_at(random_dur, rng.child(20000 + k));
    }
    CHECK(bo8 / n >= gt / n);
    CHECK(gt / n >= rnd / n);
}

TEST_CASE("dataset dump and load round trip") {
    SpeechWorld w = SpeechWorld::build(WorldConfig{}, RngStream(111));
    auto items = make_dataset(w, 12, RngStream(112));
    REQUIRE(items.size() == 12);
    for (const auto& u : items) CHECK(u.true_duration <= w.config().max_frames);

    auto dir = std::filesystem::temp_directory_path() / "voxlab_dataset_test";
    std::filesystem::remove_all(dir);
    dump_dataset(dir.string(), "train", items);
    auto loaded = load_dataset(dir.string(), "train", w.config().dim);
    REQUIRE(loaded.size() == items.size());
    for (size_t n = 0; n < items.size(); ++n) {
        CHECK(loaded[n].tokens == items[n].tokens);
        CHECK(loaded[n].speaker_id == items[n].speaker_id);
        CHECK(loaded[n].true_duration == items[n].true_duration);
        CHECK(loaded[n].block_ends == items[n].block_ends);
        for (size_t i = 0; i < items[n].frames.numel(); ++i)
            CHECK(loaded[n].frames.data[i] ==
                  static_cast<double>(static_cast<float>(items[n].frames.data[i])));
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("world json round trip") {
    SpeechWorld w = SpeechWorld::build(WorldConfig{}, RngStream(121));
    SpeechWorld w2 = SpeechWorld::from_json(w.to_json());
    CHECK(w2.codebook() == w.codebook());
    CHECK(w2.speakers().size() == w.speakers().size());
    for (size_t i = 0; i < w.speakers().size(); ++i) {
        CHECK(w2.speakers()[i].voice == w.speakers()[i].voice);
        CHECK(w2.speakers()[i].rate == w.speakers()[i].rate);
    }
}
