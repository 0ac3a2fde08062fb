#include "visus/shares.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "visus/kernels.hpp"

namespace visus::shares {

namespace {

void check_index(int index) {
    if (index < 1 || index > kShareCount)
        throw std::invalid_argument("share index " + std::to_string(index) +
                                    " outside 1.." + std::to_string(kShareCount));
}

}  // namespace

uint8_t union_mask(std::span<const int> members) {
    uint8_t mask = 0;
    for (int idx : members) {
        check_index(idx);
        mask |= kKeepMasks[idx - 1];
    }
    return mask;
}

std::vector<Share> make_shares(const RasterImage& stego) {
    std::vector<Share> out;
    out.reserve(kShareCount);
    const auto src = stego.bytes();
    const auto& k = kernels::active();
    for (int i = 0; i < kShareCount; ++i) {
        RasterImage img(stego.width(), stego.height());
        k.and_mask(img.bytes().data(), src.data(), kKeepMasks[i], src.size());
        out.push_back({i + 1, std::move(img)});
    }
    return out;
}

std::pair<RasterImage, SubsetReport> reconstruct(std::span<const Share> parts) {
    if (parts.empty()) throw std::invalid_argument("reconstruct needs at least one share");

    SubsetReport report;
    for (const Share& s : parts) {
        check_index(s.index);
        if (s.image.width() != parts[0].image.width() ||
            s.image.height() != parts[0].image.height())
            fail(Errc::dimension_mismatch,
                 "share " + std::to_string(s.index) + " is " + std::to_string(s.image.width()) +
                     "x" + std::to_string(s.image.height()) + ", expected " +
                     std::to_string(parts[0].image.width()) + "x" +
                     std::to_string(parts[0].image.height()));
        if (std::find(report.members.begin(), report.members.end(), s.index) !=
            report.members.end())
            fail(Errc::duplicate_share_index,
                 "share index " + std::to_string(s.index) + " given more than once");
        report.members.push_back(s.index);
    }
    std::sort(report.members.begin(), report.members.end());
    report.union_mask = union_mask(report.members);
    report.complete = report.union_mask == 0xFF;

    RasterImage out = parts[0].image;
    const auto& k = kernels::active();
    for (size_t i = 1; i < parts.size(); ++i)
        k.or_into(out.bytes().data(), parts[i].image.bytes().data(), out.bytes().size());
    return {std::move(out), std::move(report)};
}

std::vector<SubsetReport> verify_threshold() {
    std::vector<SubsetReport> reports;
    reports.reserve(127);
    for (int size = 1; size <= kShareCount; ++size) {
        for (unsigned bits = 1; bits < (1u << kShareCount); ++bits) {
            if (std::popcount(bits) != size) continue;
            SubsetReport r;
            for (int i = 0; i < kShareCount; ++i)
                if (bits & (1u << i)) r.members.push_back(i + 1);
            r.union_mask = union_mask(r.members);
            r.complete = r.union_mask == 0xFF;
            reports.push_back(std::move(r));
        }
    }
    return reports;
}

int guaranteed_subset_size() {
    int largest_incomplete = 0;
    for (const SubsetReport& r : verify_threshold())
        if (!r.complete) largest_incomplete = std::max(largest_incomplete,
                                                       static_cast<int>(r.members.size()));
    return largest_incomplete + 1;
}

}  // namespace visus::shares
