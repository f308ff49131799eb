// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "voxlab/world.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "voxlab/mathops.hpp"

namespace voxlab {

namespace {

std::vector<double> random_unit(size_t dim, RngStream& rng) {
    std::vector<double> v(dim);
    double n = 0.0;
    do {
        for (double& x : v) x = rng.gaussian();
        n = norm(v);
    } while (n < 1e-6);
    for (double& x : v) x /= n;
    return v;
}

}  // namespace

SpeechWorld SpeechWorld::build(const WorldConfig& cfg, RngStream rng) {
    require(cfg.vocab >= 2 && cfg.dim >= 1, "world: vocab >= 2 and dim >= 1 required");
    require(cfg.rate_min >= 1.0 && cfg.rate_max >= cfg.rate_min, "world: bad rate range");
    SpeechWorld w;
    w.cfg_ = cfg;
    // Resample codebook vectors until pairwise unit-sphere separation holds,
    // so nearest-embedding matching keeps a margin against voice offsets.
    double min_sep = (cfg.dim >= 4) ? 1.0 : 0.5;
    for (size_t k = 0; k < cfg.vocab; ++k) {
        std::vector<double> e;
        for (int attempt = 0; attempt < 1000; ++attempt) {
            e = random_unit(cfg.dim, rng);
            bool ok = true;
            for (const auto& prev : w.codebook_) {
                std::vector<double> diff(cfg.dim);
                for (size_t i = 0; i < cfg.dim; ++i) diff[i] = e[i] - prev[i];
                if (norm(diff) < min_sep) {
                    ok = false;
                    break;
                }
            }
            if (ok) break;
        }
        for (double& x : e) x *= cfg.embed_scale;
        w.codebook_.push_back(std::move(e));
    }
    for (size_t s = 0; s < cfg.n_speakers; ++s) {
        Speaker sp;
        sp.voice = random_unit(cfg.dim, rng);
        sp.rate = rng.uniform(cfg.rate_min, cfg.rate_max);
        sp.rate_jitter = cfg.rate_jitter;
        w.speakers_.push_back(std::move(sp));
    }
    return w;
}

std::vector<int> SpeechWorld::random_tokens(RngStream& rng) const {
    size_t count = cfg_.tokens_min + rng.uniform_index(cfg_.tokens_max - cfg_.tokens_min + 1);
    return random_tokens(rng, count);
}

std::vector<int> SpeechWorld::random_tokens(RngStream& rng, size_t count) const {
    require(count >= 1, "random_tokens: count must be >= 1");
    std::vector<int> toks(count);
    for (int& t : toks) t = static_cast<int>(rng.uniform_index(cfg_.vocab));
    return toks;
}

Utterance SpeechWorld::synth_utterance(const std::vector<int>& tokens, int speaker_id,
                                       RngStream& rng) const {
    require(!tokens.empty(), "synth_utterance: tokens must be non-empty");
    const Speaker& sp = speaker(speaker_id);
    std::vector<size_t> blocks(tokens.size());
    std::vector<double> prosody(tokens.size(), 0.0);
    double eta = 0.0;
    double sigma_w = cfg_.prosody_scale * std::sqrt(1.0 - cfg_.prosody_rho * cfg_.prosody_rho);
    size_t total = 0;
    for (size_t j = 0; j < tokens.size(); ++j) {
        double len = sp.rate;
        if (sp.rate_jitter > 0.0) len += sp.rate_jitter * rng.gaussian();
        long rounded = std::llround(len);
        blocks[j] = rounded < 1 ? 1 : static_cast<size_t>(rounded);
        total += blocks[j];
        if (cfg_.prosody_scale > 0.0) {
            if (j == 0)
                eta = cfg_.prosody_scale * rng.gaussian();
            else
                eta = cfg_.prosody_rho * eta + sigma_w * rng.gaussian();
        }
        prosody[j] = eta;
    }
    Utterance u;
    u.tokens = tokens;
    u.speaker_id = speaker_id;
    u.true_duration = total;
    u.frames = Tensor({total, cfg_.dim});
    u.block_ends.resize(tokens.size());
    size_t row = 0;
    for (size_t j = 0; j < tokens.size(); ++j) {
        u.block_ends[j] = (j == 0 ? 0 : u.block_ends[j - 1]) + blocks[j];
        const std::vector<double>& emb = codebook_.at(static_cast<size_t>(tokens[j]));
        for (size_t rep = 0; rep < blocks[j]; ++rep, ++row) {
            for (size_t i = 0; i < cfg_.dim; ++i) {
                double v = emb[i] + sp.voice[i];
                if (i == 0) v += prosody[j];
                if (cfg_.frame_noise > 0.0) v += cfg_.frame_noise * rng.gaussian();
                u.frames.at(row, i) = v;
            }
        }
    }
    return u;
}

size_t SpeechWorld::block_len(double rate) const {
    long r = std::llround(rate);
    return r < 1 ? 1 : static_cast<size_t>(r);
}

size_t SpeechWorld::natural_length(size_t n_tokens, double rate) const {
    return n_tokens * block_len(rate);
}

void SpeechWorld::coarticulation_blend(Tensor& rows, double strength) {
    if (strength <= 0.0) return;
    // Kernel [g/2, 1-g, g/2] with clamped edges: rushed reading smears each
    // frame into its neighbors, so compression degrades with the compression
    // fraction alone rather than with divisibility accidents.
    size_t L = rows.rows(), d = rows.cols();
    Tensor src = rows;
    for (size_t f = 0; f < L; ++f) {
        size_t fm = f == 0 ? 0 : f - 1;
        size_t fp = f + 1 >= L ? L - 1 : f + 1;
        for (size_t i = 0; i < d; ++i)
            rows.at(f, i) = (1.0 - strength) * src.at(f, i) +
                            0.5 * strength * (src.at(fm, i) + src.at(fp, i));
    }
}

std::vector<size_t> SpeechWorld::forced_layout(size_t n_blocks, size_t len) {
    require(len >= n_blocks, "forced_layout: need at least one frame per block");
    // Proportional split: frame f reads block f*n/len; every block gets >= 1 frame.
    std::vector<size_t> idx(len);
    for (size_t f = 0; f < len; ++f) idx[f] = (f * n_blocks) / len;
    return idx;
}

Tensor SpeechWorld::render_track(const std::vector<int>& tokens, double rate, size_t len) const {
    require(!tokens.empty(), "render_track: tokens must be non-empty");
    require(len >= 1, "render_track: len must be >= 1");
    size_t b = block_len(rate);
    size_t natural = tokens.size() * b;
    if (len >= natural) {
        // Natural reading followed by silence padding.
        Tensor out({len, cfg_.dim});
        for (size_t row = 0; row < natural; ++row) {
            const auto& emb = codebook_.at(static_cast<size_t>(tokens[row / b]));
            for (size_t i = 0; i < cfg_.dim; ++i) out.at(row, i) = emb[i];
        }
        return out;
    }
    if (len < tokens.size()) {
        // Too short for the text even at one frame per token: render the
        // squeezed prefix that fits.
        std::vector<int> prefix(tokens.begin(), tokens.begin() + static_cast<long>(len));
        return render_track(prefix, rate, len);
    }
    Tensor out({len, cfg_.dim});
    std::vector<size_t> idx = forced_layout(tokens.size(), len);
    for (size_t f = 0; f < len; ++f) {
        const auto& emb = codebook_.at(static_cast<size_t>(tokens[idx[f]]));
        for (size_t i = 0; i < cfg_.dim; ++i) out.at(f, i) = emb[i];
    }
    coarticulation_blend(out, 1.0 - static_cast<double>(len) / static_cast<double>(natural));
    return out;
}

Utterance SpeechWorld::render_forced(const std::vector<int>& tokens, int speaker_id, size_t len,
                                     RngStream& rng) const {
    require(!tokens.empty(), "render_forced: tokens must be non-empty");
    require(len >= 1, "render_forced: len must be >= 1");
    const Speaker& sp = speaker(speaker_id);
    size_t b = block_len(sp.rate);
    size_t natural = tokens.size() * b;

    std::vector<double> prosody(tokens.size(), 0.0);
    double eta = 0.0;
    double sigma_w = cfg_.prosody_scale * std::sqrt(1.0 - cfg_.prosody_rho * cfg_.prosody_rho);
    if (cfg_.prosody_scale > 0.0) {
        for (size_t j = 0; j < tokens.size(); ++j) {
            if (j == 0)
                eta = cfg_.prosody_scale * rng.gaussian();
            else
                eta = cfg_.prosody_rho * eta + sigma_w * rng.gaussian();
            prosody[j] = eta;
        }
    }
    auto block_content = [&](size_t j, size_t i) {
        double v = codebook_.at(static_cast<size_t>(tokens[j]))[i] + sp.voice[i];
        if (i == 0) v += prosody[j];
        return v;
    };

    Utterance u;
    u.tokens = tokens;
    u.speaker_id = speaker_id;
    u.true_duration = len;
    u.block_ends.resize(tokens.size());
    for (size_t j = 0; j < tokens.size(); ++j)
        u.block_ends[j] = std::min(len, (j + 1) * b);

    u.frames = Tensor({len, cfg_.dim});
    if (len >= natural) {
        // Natural reading; the padding tail is voiceless silence.
        for (size_t f = 0; f < natural; ++f)
            for (size_t i = 0; i < cfg_.dim; ++i) u.frames.at(f, i) = block_content(f / b, i);
    } else {
        size_t n_read = std::min(tokens.size(), len);  // drop tail tokens that cannot fit
        std::vector<size_t> idx = forced_layout(n_read, len);
        for (size_t f = 0; f < len; ++f)
            for (size_t i = 0; i < cfg_.dim; ++i) u.frames.at(f, i) = block_content(idx[f], i);
        coarticulation_blend(u.frames,
                             1.0 - static_cast<double>(len) / static_cast<double>(natural));
    }
    if (cfg_.frame_noise > 0.0)
        for (double& v : u.frames.data) v += cfg_.frame_noise * rng.gaussian();
    return u;
}

std::string SpeechWorld::to_json() const {
    nlohmann::json j;
    j["vocab"] = cfg_.vocab;
    j["dim"] = cfg_.dim;
    j["max_frames"] = cfg_.max_frames;
    j["n_speakers"] = cfg_.n_speakers;
    j["rate_min"] = cfg_.rate_min;
    j["rate_max"] = cfg_.rate_max;
    j["rate_jitter"] = cfg_.rate_jitter;
    j["frame_noise"] = cfg_.frame_noise;
    j["prosody_scale"] = cfg_.prosody_scale;
    j["prosody_rho"] = cfg_.prosody_rho;
    j["embed_scale"] = cfg_.embed_scale;
    j["tokens_min"] = cfg_.tokens_min;
    j["tokens_max"] = cfg_.tokens_max;
    j["codebook"] = codebook_;
    nlohmann::json sp = nlohmann::json::array();
    for (const auto& s : speakers_)
        sp.push_back({{"voice", s.voice}, {"rate", s.rate}, {"rate_jitter", s.rate_jitter}});
    j["speakers"] = sp;
    return j.dump(2);
}

SpeechWorld SpeechWorld::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SpeechWorld w;
    w.cfg_.vocab = j.at("vocab");
    w.cfg_.dim = j.at("dim");
    w.cfg_.max_frames = j.at("max_frames");
    w.cfg_.n_speakers = j.at("n_speakers");
    w.cfg_.rate_min = j.at("rate_min");
    w.cfg_.rate_max = j.at("rate_max");
    w.cfg_.rate_jitter = j.at("rate_jitter");
    w.cfg_.frame_noise = j.at("frame_noise");
    w.cfg_.prosody_scale = j.at("prosody_scale");
    w.cfg_.prosody_rho = j.at("prosody_rho");
    w.cfg_.embed_scale = j.at("embed_scale");
    w.cfg_.tokens_min = j.at("tokens_min");
    w.cfg_.tokens_max = j.at("tokens_max");
    w.codebook_ = j.at("codebook").get<std::vector<std::vector<double>>>();
    for (const auto& s : j.at("speakers")) {
        Speaker sp;
        sp.voice = s.at("voice").get<std::vector<double>>();
        sp.rate = s.at("rate");
        sp.rate_jitter = s.at("rate_jitter");
        w.speakers_.push_back(std::move(sp));
    }
    return w;
}

void SpeechWorld::save(const std::string& path) const {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    require(out.good(), "cannot write world file: " + path);
    out << to_json() << "\n";
}

SpeechWorld SpeechWorld::load(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot read world file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json(text);
}

}  // namespace voxlab
