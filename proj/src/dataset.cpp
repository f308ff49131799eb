// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "voxlab/dataset.hpp"

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "voxlab/f32io.hpp"

namespace voxlab {

std::vector<Utterance> make_dataset(const SpeechWorld& world, size_t count, RngStream rng) {
    std::vector<Utterance> items;
    items.reserve(count);
    size_t attempts = 0;
    while (items.size() < count) {
        require(++attempts < count * 20 + 1000, "make_dataset: too many oversized utterances");
        RngStream sub = rng.child(attempts);
        std::vector<int> tokens = world.random_tokens(sub);
        int speaker = static_cast<int>(sub.uniform_index(world.speakers().size()));
        Utterance u = world.synth_utterance(tokens, speaker, sub);
        if (u.true_duration > world.config().max_frames) continue;
        items.push_back(std::move(u));
    }
    return items;
}

void dump_dataset(const std::string& dir, const std::string& name,
                  const std::vector<Utterance>& items) {
    std::filesystem::create_directories(std::filesystem::path(dir) / "frames");
    std::ofstream out(std::filesystem::path(dir) / (name + ".jsonl"));
    require(out.good(), "cannot write dataset index in " + dir);
    for (size_t n = 0; n < items.size(); ++n) {
        const Utterance& u = items[n];
        std::string rel = "frames/" + name + "_" + std::to_string(n) + ".f32";
        nlohmann::json j;
        j["id"] = n;
        j["tokens"] = u.tokens;
        j["speaker"] = u.speaker_id;
        j["duration"] = u.true_duration;
        j["block_ends"] = u.block_ends;
        j["frames"] = rel;
        out << j.dump() << "\n";
        save_f32_blob((std::filesystem::path(dir) / rel).string(), u.frames);
    }
}

std::vector<Utterance> load_dataset(const std::string& dir, const std::string& name,
                                    size_t frame_dim) {
    std::ifstream in(std::filesystem::path(dir) / (name + ".jsonl"));
    require(in.good(), "cannot read dataset index " + name + ".jsonl in " + dir);
    std::vector<Utterance> items;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        Utterance u;
        u.tokens = j.at("tokens").get<std::vector<int>>();
        u.speaker_id = j.at("speaker");
        u.true_duration = j.at("duration");
        u.block_ends = j.at("block_ends").get<std::vector<size_t>>();
        std::string rel = j.at("frames");
        u.frames = load_f32_blob((std::filesystem::path(dir) / rel).string(), u.true_duration,
                                 frame_dim);
        items.push_back(std::move(u));
    }
    return items;
}

}  // namespace voxlab
