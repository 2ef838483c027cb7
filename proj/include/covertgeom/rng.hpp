/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <random>

namespace covertgeom {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter scheme: substream seed = splitmix64(splitmix64(root ^ tag) + index).
// Every parallel loop indexes its work items, so results do not depend on
// how items are spread across workers.
inline std::uint64_t substream_seed(std::uint64_t root, std::uint64_t tag,
                                    std::uint64_t index) {
  return splitmix64(splitmix64(root ^ splitmix64(tag)) + index);
}

inline Rng make_stream(std::uint64_t root, std::uint64_t tag,
                       std::uint64_t index) {
  return Rng(substream_seed(root, tag, index));
}

// Stream tags, one per consumer.
namespace tag {
inline constexpr std::uint64_t placement = 0x706c6163ULL;
inline constexpr std::uint64_t inner_mc = 0x696e6e72ULL;
inline constexpr std::uint64_t detector = 0x64657463ULL;
inline constexpr std::uint64_t codebook = 0x636f6465ULL;
inline constexpr std::uint64_t jammer = 0x6a616d6dULL;
inline constexpr std::uint64_t moments = 0x6d6f6d73ULL;
}  // namespace tag

}  // namespace covertgeom
