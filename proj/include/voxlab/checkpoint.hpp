// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXLAB_CHECKPOINT_HPP_
#define VOXLAB_CHECKPOINT_HPP_

#include <map>
#include <string>

#include "voxlab/net.hpp"

namespace voxlab {

// Checkpoints are a plain-text manifest (<prefix>.manifest) plus a binary blob
// (<prefix>.bin) of little-endian 32-bit floats. Parameters are downcast to
// f32 on save and upcast on load; a save/load round trip preserves values to
// f32 precision exactly.
//
// Manifest format, one entry per line:
//   meta <key> <value>
//   tensor <name> f32 <ndim> <extent...> <byte-offset>

void save_checkpoint(const std::string& prefix, const ParamModel& model,
                     const std::map<std::string, std::string>& meta = {});

// Loads into an already-constructed model; tensor names and shapes must match.
std::map<std::string, std::string> load_checkpoint(const std::string& prefix, ParamModel& model);

// Reads only the meta section (model geometry etc.) so callers can construct
// the model before loading tensors.
std::map<std::string, std::string> read_checkpoint_meta(const std::string& prefix);

bool checkpoint_exists(const std::string& prefix);

}  // namespace voxlab

#endif  // VOXLAB_CHECKPOINT_HPP_
