// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXLAB_DATASET_HPP_
#define VOXLAB_DATASET_HPP_

#include <string>
#include <vector>

#include "voxlab/rng.hpp"
#include "voxlab/world.hpp"

namespace voxlab {

// Draws utterances with random texts and speakers, rejecting any longer than
// the world's frame budget.
std::vector<Utterance> make_dataset(const SpeechWorld& world, size_t count, RngStream rng);

// One JSONL record per utterance (tokens, speaker id, duration, relative blob
// path); frames live in per-utterance little-endian f32 blobs next to it.
void dump_dataset(const std::string& dir, const std::string& name,
                  const std::vector<Utterance>& items);
std::vector<Utterance> load_dataset(const std::string& dir, const std::string& name,
                                    size_t frame_dim);

}  // namespace voxlab

#endif  // VOXLAB_DATASET_HPP_
