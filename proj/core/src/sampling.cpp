#include "rmap/sampling.hpp"

namespace rmap {

SplitMix64 point_stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(seed ^ (index * 0xD1B54A32D192ED03ULL));
}

std::vector<Interval> shrink_box(const std::vector<Interval>& box, double shrink) {
    std::vector<Interval> out;
    out.reserve(box.size());
    for (const auto& iv : box) {
        const double c = iv.center();
        const double h = iv.half_width() * (1.0 - shrink);
        out.push_back({c - h, c + h});
    }
    return out;
}

std::vector<Vector> sample_box(const std::vector<Interval>& box, std::size_t count, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Vector> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Vector p(static_cast<Eigen::Index>(box.size()));
        for (std::size_t i = 0; i < box.size(); ++i) {
            p(static_cast<Eigen::Index>(i)) = rng.uniform(box[i].lo, box[i].hi);
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace rmap
