// Copyright (c) 2026 voxlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXLAB_F32IO_HPP_
#define VOXLAB_F32IO_HPP_

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "voxlab/tensor.hpp"

namespace voxlab {

// Explicit little-endian f32 serialization, independent of host byte order.

inline void write_f32_le(std::ostream& out, float v) {
    uint32_t bits;
    std::memcpy(&bits, &v, 4);
    unsigned char b[4] = {static_cast<unsigned char>(bits & 0xff),
                          static_cast<unsigned char>((bits >> 8) & 0xff),
                          static_cast<unsigned char>((bits >> 16) & 0xff),
                          static_cast<unsigned char>((bits >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

inline float read_f32_le(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    uint32_t bits = static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
                    (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

void save_f32_blob(const std::string& path, const Tensor& t);
Tensor load_f32_blob(const std::string& path, size_t rows, size_t cols);

}  // namespace voxlab

#endif  // VOXLAB_F32IO_HPP_
