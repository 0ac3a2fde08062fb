#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "visus/image.hpp"

// Bit-plane secret sharing. A stego image is split into 7 shares, each
// keeping a fixed subset of the 8 bit planes of every channel; the most
// significant plane is kept by every share. Reconstruction is a plain
// bitwise OR, lossless exactly when the union of the keep masks covers
// all 8 planes, which every subset of 4 or more shares does.

namespace visus::shares {

inline constexpr int kShareCount = 7;

// Keep mask for share i+1; bits absent from a mask are stored as 0.
inline constexpr std::array<uint8_t, kShareCount> kKeepMasks{0xD5, 0xAB, 0xCF, 0xB2,
                                                             0xD9, 0xB6, 0xEC};

struct Share {
    int index;  // 1..7
    RasterImage image;
};

struct SubsetReport {
    std::vector<int> members;  // ascending share indices
    uint8_t union_mask = 0;
    bool complete = false;  // union_mask == 0xFF
};

uint8_t union_mask(std::span<const int> members);

std::vector<Share> make_shares(const RasterImage& stego);

// OR of any non-empty share subset plus its completeness report. The
// result equals the original image only when the report says complete.
std::pair<RasterImage, SubsetReport> reconstruct(std::span<const Share> parts);

// Completeness of all 127 non-empty subsets of {1..7}, ordered by subset
// size and then lexicographically.
std::vector<SubsetReport> verify_threshold();

// Smallest k such that every subset of size >= k is complete.
int guaranteed_subset_size();

}  // namespace visus::shares
