// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "voxlab/checkpoint.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "voxlab/f32io.hpp"

namespace voxlab {

void save_checkpoint(const std::string& prefix, const ParamModel& model,
                     const std::map<std::string, std::string>& meta) {
    std::filesystem::path p(prefix);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream manifest(prefix + ".manifest");
    std::ofstream blob(prefix + ".bin", std::ios::binary);
    require(manifest.good() && blob.good(), "cannot open checkpoint files at " + prefix);
    for (const auto& [k, v] : meta) manifest << "meta " << k << " " << v << "\n";
    size_t offset = 0;
    for (const auto& [name, t] : model.params) {
        manifest << "tensor " << name << " f32 " << t.shape.size();
        for (size_t e : t.shape) manifest << " " << e;
        manifest << " " << offset << "\n";
        for (double v : t.data) write_f32_le(blob, static_cast<float>(v));
        offset += 4 * t.numel();
    }
}

namespace {

struct ManifestEntry {
    std::string name;
    std::vector<size_t> shape;
    size_t offset;
};

void parse_manifest(const std::string& prefix, std::map<std::string, std::string>& meta,
                    std::vector<ManifestEntry>& entries) {
    std::ifstream in(prefix + ".manifest");
    require(in.good(), "missing checkpoint manifest: " + prefix + ".manifest");
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string kind;
        ss >> kind;
        if (kind == "meta") {
            std::string k, v;
            ss >> k;
            std::getline(ss, v);
            if (!v.empty() && v.front() == ' ') v.erase(0, 1);
            meta[k] = v;
        } else if (kind == "tensor") {
            ManifestEntry e;
            std::string dtype;
            size_t ndim = 0;
            ss >> e.name >> dtype >> ndim;
            require(dtype == "f32", "unsupported checkpoint dtype: " + dtype);
            e.shape.resize(ndim);
            for (size_t i = 0; i < ndim; ++i) ss >> e.shape[i];
            ss >> e.offset;
            require(!ss.fail(), "malformed manifest line: " + line);
            entries.push_back(std::move(e));
        } else {
            throw ContractViolation("unknown manifest entry kind: " + kind);
        }
    }
}

}  // namespace

std::map<std::string, std::string> load_checkpoint(const std::string& prefix, ParamModel& model) {
    std::map<std::string, std::string> meta;
    std::vector<ManifestEntry> entries;
    parse_manifest(prefix, meta, entries);
    std::ifstream blob(prefix + ".bin", std::ios::binary);
    require(blob.good(), "missing checkpoint blob: " + prefix + ".bin");
    size_t loaded = 0;
    for (const auto& e : entries) {
        auto it = model.params.find(e.name);
        require(it != model.params.end(), "checkpoint tensor not in model: " + e.name);
        require(it->second.shape == e.shape, "checkpoint shape mismatch for " + e.name);
        blob.seekg(static_cast<std::streamoff>(e.offset));
        for (double& v : it->second.data) v = static_cast<double>(read_f32_le(blob));
        require(blob.good(), "truncated checkpoint blob at tensor " + e.name);
        ++loaded;
    }
    require(loaded == model.params.size(), "checkpoint missing tensors for this model");
    return meta;
}

std::map<std::string, std::string> read_checkpoint_meta(const std::string& prefix) {
    std::map<std::string, std::string> meta;
    std::vector<ManifestEntry> entries;
    parse_manifest(prefix, meta, entries);
    return meta;
}

bool checkpoint_exists(const std::string& prefix) {
    return std::filesystem::exists(prefix + ".manifest") &&
           std::filesystem::exists(prefix + ".bin");
}

}  // namespace voxlab
