#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace rmap {

// Dense row-major array of fixed rank with per-axis extents.
template <std::size_t Rank>
class DenseTensor {
public:
    DenseTensor() = default;

    explicit DenseTensor(std::array<std::size_t, Rank> extents) : extents_(extents) {
        std::size_t total = 1;
        for (auto e : extents_) {
            total *= e;
        }
        data_.assign(total, 0.0);
    }

    template <class... Idx>
    double& operator()(Idx... idx) {
        static_assert(sizeof...(Idx) == Rank);
        return data_[offset({static_cast<std::size_t>(idx)...})];
    }

    template <class... Idx>
    double operator()(Idx... idx) const {
        static_assert(sizeof...(Idx) == Rank);
        return data_[offset({static_cast<std::size_t>(idx)...})];
    }

    std::size_t extent(std::size_t axis) const { return extents_[axis]; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t offset(std::array<std::size_t, Rank> idx) const {
        std::size_t off = 0;
        for (std::size_t a = 0; a < Rank; ++a) {
            off = off * extents_[a] + idx[a];
        }
        return off;
    }

    std::array<std::size_t, Rank> extents_{};
    std::vector<double> data_;
};

using Tensor3 = DenseTensor<3>;
using Tensor4 = DenseTensor<4>;

}  // namespace rmap
