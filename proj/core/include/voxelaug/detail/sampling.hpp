#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "voxelaug/volume.hpp"

namespace voxelaug::detail {

/// Source coordinates for each output index along one axis.
struct AxisSamples {
    std::vector<int> lo;
    std::vector<int> hi;
    std::vector<float> weight;  // of `hi`
    std::vector<int> nearest;

    /// Output index i samples source coordinate i * ratio (clamped to the grid).
    static AxisSamples scaled(int n_out, int n_in, double ratio);
    /// Corner-aligned: output 0 and n_out-1 hit source 0 and n_in-1.
    static AxisSamples aligned(int n_out, int n_in);
    /// Builds the tables from explicit coordinates.
    static AxisSamples from_coords(const std::vector<double>& coords, int n_in);
};

inline AxisSamples AxisSamples::from_coords(const std::vector<double>& coords, int n_in) {
    AxisSamples s;
    const std::size_t n = coords.size();
    s.lo.resize(n);
    s.hi.resize(n);
    s.weight.resize(n);
    s.nearest.resize(n);
    const double top = static_cast<double>(n_in - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::clamp(coords[i], 0.0, top);
        const int lo = static_cast<int>(std::floor(x));
        s.lo[i] = lo;
        s.hi[i] = std::min(lo + 1, n_in - 1);
        s.weight[i] = static_cast<float>(x - lo);
        s.nearest[i] = std::clamp(static_cast<int>(std::lround(x)), 0, n_in - 1);
    }
    return s;
}

inline AxisSamples AxisSamples::scaled(int n_out, int n_in, double ratio) {
    std::vector<double> coords(static_cast<std::size_t>(n_out));
    for (int i = 0; i < n_out; ++i) {
        coords[static_cast<std::size_t>(i)] = static_cast<double>(i) * ratio;
    }
    return from_coords(coords, n_in);
}

inline AxisSamples AxisSamples::aligned(int n_out, int n_in) {
    std::vector<double> coords(static_cast<std::size_t>(n_out), 0.0);
    if (n_out > 1) {
        const double step = static_cast<double>(n_in - 1) / static_cast<double>(n_out - 1);
        for (int i = 0; i < n_out; ++i) {
            coords[static_cast<std::size_t>(i)] = static_cast<double>(i) * step;
        }
        coords.back() = static_cast<double>(n_in - 1);
    }
    return from_coords(coords, n_in);
}

/// Trilinear sampling on a separable grid of source coordinates.
inline std::vector<float> sample_separable_linear(const Volume& v,
                                                  const std::array<AxisSamples, 3>& axes) {
    const std::size_t nx = axes[0].lo.size(), ny = axes[1].lo.size(), nz = axes[2].lo.size();
    std::vector<float> out(nx * ny * nz);
    const std::size_t sx = static_cast<std::size_t>(v.dims()[0]);
    const std::size_t sxy = sx * static_cast<std::size_t>(v.dims()[1]);
    const float* src = v.voxels().data();
    std::size_t n = 0;
    for (std::size_t z = 0; z < nz; ++z) {
        const float wz = axes[2].weight[z];
        const std::size_t z0 = static_cast<std::size_t>(axes[2].lo[z]) * sxy;
        const std::size_t z1 = static_cast<std::size_t>(axes[2].hi[z]) * sxy;
        for (std::size_t y = 0; y < ny; ++y) {
            const float wy = axes[1].weight[y];
            const std::size_t y0 = static_cast<std::size_t>(axes[1].lo[y]) * sx;
            const std::size_t y1 = static_cast<std::size_t>(axes[1].hi[y]) * sx;
            const float* r00 = src + z0 + y0;
            const float* r01 = src + z0 + y1;
            const float* r10 = src + z1 + y0;
            const float* r11 = src + z1 + y1;
            for (std::size_t x = 0; x < nx; ++x, ++n) {
                const auto x0 = static_cast<std::size_t>(axes[0].lo[x]);
                const auto x1 = static_cast<std::size_t>(axes[0].hi[x]);
                const float wx = axes[0].weight[x];
                const float c00 = r00[x0] + wx * (r00[x1] - r00[x0]);
                const float c01 = r01[x0] + wx * (r01[x1] - r01[x0]);
                const float c10 = r10[x0] + wx * (r10[x1] - r10[x0]);
                const float c11 = r11[x0] + wx * (r11[x1] - r11[x0]);
                const float c0 = c00 + wy * (c01 - c00);
                const float c1 = c10 + wy * (c11 - c10);
                out[n] = c0 + wz * (c1 - c0);
            }
        }
    }
    return out;
}

template <typename T>
std::vector<T> sample_separable_nearest(const Grid<T>& v, const std::array<AxisSamples, 3>& axes) {
    const std::size_t nx = axes[0].nearest.size(), ny = axes[1].nearest.size(),
                      nz = axes[2].nearest.size();
    std::vector<T> out(nx * ny * nz);
    std::size_t n = 0;
    for (std::size_t z = 0; z < nz; ++z) {
        for (std::size_t y = 0; y < ny; ++y) {
            for (std::size_t x = 0; x < nx; ++x, ++n) {
                out[n] = v(axes[0].nearest[x], axes[1].nearest[y], axes[2].nearest[z]);
            }
        }
    }
    return out;
}

}  // namespace voxelaug::detail
