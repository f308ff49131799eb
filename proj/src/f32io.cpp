// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "voxlab/f32io.hpp"

#include <filesystem>
#include <fstream>

namespace voxlab {

void save_f32_blob(const std::string& path, const Tensor& t) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    require(out.good(), "cannot write blob: " + path);
    for (double v : t.data) write_f32_le(out, static_cast<float>(v));
}

Tensor load_f32_blob(const std::string& path, size_t rows, size_t cols) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot read blob: " + path);
    Tensor t({rows, cols});
    for (double& v : t.data) v = static_cast<double>(read_f32_le(in));
    require(in.good(), "truncated blob: " + path);
    return t;
}

}  // namespace voxlab
