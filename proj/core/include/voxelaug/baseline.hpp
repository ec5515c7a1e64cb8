#pragma once

#include <array>

#include "voxelaug/params.hpp"
#include "voxelaug/rng.hpp"
#include "voxelaug/volume.hpp"

namespace voxelaug {

/// One concrete draw of the spatial map: rotation (radians, about grid axes
/// 0, 1, 2 in that order), isotropic scale, and per-axis mirroring.
struct SpatialDraw {
    std::array<double, 3> angles{0.0, 0.0, 0.0};
    double scale = 1.0;
    std::array<bool, 3> flip{false, false, false};

    [[nodiscard]] bool is_identity() const;
    [[nodiscard]] bool is_pure_flip() const;
};

SpatialDraw draw_spatial(RngStream& rng, const SpatialParams& p);

/// Applies one spatial map about the volume center (in mm) to image
/// (trilinear, outside filled with the image minimum) and labels (nearest,
/// outside filled with 0). Output grid equals the input grid.
Sample apply_spatial(const Sample& s, const SpatialDraw& draw);

Sample random_spatial(const Sample& s, RngStream& rng, const SpatialParams& p);

/// Adds i.i.d. N(0, sigma^2) noise with sigma drawn from the range.
Volume gaussian_noise(const Volume& v, RngStream& rng, const Interval& sigma_range);

/// Separable blur; sigma drawn independently per axis (voxels).
Volume gaussian_blur(const Volume& v, RngStream& rng, const Interval& sigma_range);

/// Nearest downsample by `factor` then trilinear upsample to the input dims.
Volume apply_low_resolution(const Volume& v, double factor);
Volume simulate_low_resolution(const Volume& v, RngStream& rng, const Interval& factor_range);

/// mean + c (v - mean) + b (max - min).
Volume apply_brightness_contrast(const Volume& v, double brightness, double contrast);
Volume brightness_contrast(const Volume& v, RngStream& rng, const Interval& brightness_range,
                           const Interval& contrast_range);

/// Normalize to [0,1], raise to gamma, restore the original range.
Volume apply_gamma(const Volume& v, double gamma);
Volume gamma_correction(const Volume& v, RngStream& rng, const Interval& gamma_range);

}  // namespace voxelaug
