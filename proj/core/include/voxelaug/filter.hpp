#pragma once

#include <span>
#include <vector>

#include "voxelaug/volume.hpp"

namespace voxelaug {

/// Normalized 1D Gaussian with radius ceil(3 sigma). sigma <= 0 gives {1}.
std::vector<float> gaussian_kernel(double sigma);

/// Correlates along one axis with an odd-length kernel centered on each
/// voxel. Borders replicate the edge voxel.
Volume filter_axis(const Volume& v, int axis, std::span<const float> kernel);

/// filter_axis along axes 0, 1, 2 in turn.
Volume filter_separable(const Volume& v, std::span<const float> k0, std::span<const float> k1,
                        std::span<const float> k2);

/// Separable Gaussian smoothing with one sigma per axis (in voxels).
Volume gaussian_smooth(const Volume& v, const std::array<double, 3>& sigma);

/// Dense 3D correlation with a size^3 kernel stored x-fastest. Borders
/// replicate the edge voxel. `size` must be odd.
Volume filter_dense(const Volume& v, std::span<const float> kernel, int size);

}  // namespace voxelaug
