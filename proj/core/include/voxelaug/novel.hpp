#pragma once

#include <span>
#include <vector>

#include "voxelaug/params.hpp"
#include "voxelaug/rng.hpp"
#include "voxelaug/volume.hpp"

namespace voxelaug {

// Appearance transforms. All of them act on intensities only: dims,
// spacing and affine are untouched and label maps are never written.
// Randomized transforms come in two flavours: a `draw_*` / `apply_*` pair
// that separates sampling from application, and a one-call form taking the
// stream.

/// v' = min + max - v.
Volume intensity_inversion(const Volume& v);

/// 3D Scharr gradient magnitude before renormalization. Each axis uses the
/// derivative kernel [-1,0,1]/2 and smooths the other two with [3,10,3]/16.
/// Throws SizeError if any axis has fewer than 3 voxels.
Volume scharr_gradient_magnitude(const Volume& v);

/// Gradient magnitude rescaled onto the input's [min, max].
Volume scharr_filter(const Volume& v);

/// Per-region intensity shift by a scaled, smoothed intensity density.
/// `alphas[label]` is the scale for that region; regions not listed in
/// `active` are left untouched.
struct RedistributeDraw {
    std::array<double, 256> alpha{};
    std::array<bool, 256> active{};
};

RedistributeDraw draw_redistribute(const LabelMap& labels, RngStream& rng,
                                   const RedistributeSegParams& p);
Sample apply_redistribute(const Sample& s, const RedistributeDraw& draw, int bins);
Sample redistribute_seg(const Sample& s, RngStream& rng, const RedistributeSegParams& p);

struct ConvKernel {
    int size = 1;
    std::vector<float> weights{1.0f};  // size^3, x fastest
};

ConvKernel draw_conv_kernel(RngStream& rng, const RandomConvParams& p);
/// Dense correlation with edge replication, rescaled onto the input range.
Volume apply_conv_kernel(const Volume& v, const ConvKernel& kernel);
Volume random_conv(const Volume& v, RngStream& rng, const RandomConvParams& p);

/// Remaps each voxel to min + CDF(bin(v)) (max - min) where CDF counts
/// voxels in bins up to and including the voxel's own. Constant input is
/// returned unchanged.
Volume histogram_equalization(const Volume& v, int bins);

/// Number of monomials x^a y^b z^c with a + b + c <= order.
int bias_basis_size(int order);
/// Multiplicative field exp(sum_i c_i b_i) over coordinates normalized to
/// [-1, 1] per axis; the exponent is clamped to [-20, 20]. Coefficients are
/// ordered by total degree, then by descending power of x, then of y.
Volume bias_field_map(const Geometry& g, int order, std::span<const double> coeffs);
std::vector<double> draw_bias_coefficients(RngStream& rng, const BiasFieldParams& p);
Volume apply_bias_field(const Volume& v, int order, std::span<const double> coeffs);
Volume bias_field(const Volume& v, RngStream& rng, const BiasFieldParams& p);

/// v + amount (v - G_sigma(v)), isotropic sigma in voxels.
Volume apply_unsharp(const Volume& v, double sigma, double amount);
Volume unsharp_masking(const Volume& v, RngStream& rng, const UnsharpParams& p);

/// Evaluates a catalog function on x in [0, 1].
double evaluate(IntensityFunction f, double x);
/// Normalize, apply f, restore the original range.
Volume apply_function(const Volume& v, IntensityFunction f);
Volume function_transform(const Volume& v, RngStream& rng, const FunctionTransformParams& p);

/// Clamps to [min - R, max + R] of `reference`, R = max - min.
Volume clamp_to_extended_range(Volume v, ValueRange reference);

}  // namespace voxelaug
