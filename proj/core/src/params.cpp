#include "voxelaug/params.hpp"

#include <cmath>
#include <string>

namespace voxelaug {

void Interval::validate(std::string_view what) const {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
        throw ArgumentError(std::string(what) + ": interval must be finite with lo <= hi");
    }
}

void validate_probability(double p, std::string_view what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ArgumentError(std::string(what) + ": probability must lie in [0, 1]");
    }
}

void SpatialParams::validate() const {
    validate_probability(rotation_prob, "spatial.rotation_prob");
    validate_probability(scale_prob, "spatial.scale_prob");
    for (int a = 0; a < 3; ++a) {
        validate_probability(flip_prob[a], "spatial.flip_prob");
        if (!(max_angle_deg[a] >= 0.0) || !std::isfinite(max_angle_deg[a])) {
            throw ArgumentError("spatial.max_angle_deg must be non-negative");
        }
    }
    scale_range.validate("spatial.scale_range");
    if (!(scale_range.lo > 0.0)) {
        throw ArgumentError("spatial.scale_range must be positive");
    }
}

void NoiseParams::validate() const {
    sigma_range.validate("gaussian_noise.sigma_range");
    if (sigma_range.lo < 0.0) {
        throw ArgumentError("gaussian_noise.sigma_range must be >= 0");
    }
}

void BlurParams::validate() const {
    sigma_range.validate("gaussian_blur.sigma_range");
    if (sigma_range.lo < 0.0) {
        throw ArgumentError("gaussian_blur.sigma_range must be >= 0");
    }
}

void LowResParams::validate() const {
    factor_range.validate("low_resolution.factor_range");
    if (factor_range.lo < 1.0) {
        throw ArgumentError("low_resolution.factor_range must be >= 1");
    }
}

void BrightnessContrastParams::validate() const {
    brightness_range.validate("brightness_contrast.brightness_range");
    contrast_range.validate("brightness_contrast.contrast_range");
}

void GammaParams::validate() const {
    gamma_range.validate("gamma.gamma_range");
    if (!(gamma_range.lo > 0.0)) {
        throw ArgumentError("gamma.gamma_range must be > 0");
    }
}

void RedistributeSegParams::validate() const {
    alpha_range.validate("redistribute_seg.alpha_range");
    if (bins < 2) {
        throw ArgumentError("redistribute_seg.bins must be >= 2");
    }
}

void RandomConvParams::validate() const {
    if (kernel_sizes.empty()) {
        throw ArgumentError("random_conv.kernel_sizes must not be empty");
    }
    for (int k : kernel_sizes) {
        if (k < 1 || k % 2 == 0) {
            throw ArgumentError("random_conv.kernel_sizes must be odd positive integers");
        }
    }
    if (!(weight_sigma > 0.0) || !std::isfinite(weight_sigma)) {
        throw ArgumentError("random_conv.weight_sigma must be positive");
    }
}

void HistEqParams::validate() const {
    if (bins < 2) {
        throw ArgumentError("histogram_equalization.bins must be >= 2");
    }
}

void BiasFieldParams::validate() const {
    if (order < 1) {
        throw ArgumentError("bias_field.order must be >= 1");
    }
    coeff_range.validate("bias_field.coeff_range");
}

void UnsharpParams::validate() const {
    sigma_range.validate("unsharp_masking.sigma_range");
    amount_range.validate("unsharp_masking.amount_range");
    if (sigma_range.lo < 0.0 || amount_range.lo < 0.0) {
        throw ArgumentError("unsharp_masking ranges must be non-negative");
    }
}

std::string_view function_name(IntensityFunction f) {
    switch (f) {
        case IntensityFunction::Identity: return "identity";
        case IntensityFunction::Square: return "square";
        case IntensityFunction::Sqrt: return "sqrt";
        case IntensityFunction::LogCompress: return "log";
        case IntensityFunction::Sigmoid: return "sigmoid";
        case IntensityFunction::Sine: return "sine";
    }
    return "?";
}

const std::vector<IntensityFunction>& function_catalog() {
    static const std::vector<IntensityFunction> catalog{
        IntensityFunction::Identity, IntensityFunction::Square,  IntensityFunction::Sqrt,
        IntensityFunction::LogCompress, IntensityFunction::Sigmoid, IntensityFunction::Sine};
    return catalog;
}

IntensityFunction parse_function(std::string_view name) {
    for (IntensityFunction f : function_catalog()) {
        if (function_name(f) == name) {
            return f;
        }
    }
    throw ArgumentError("unknown intensity function '" + std::string(name) + "'");
}

void FunctionTransformParams::validate() const {
    if (functions.empty()) {
        throw ArgumentError("function_transform.functions must not be empty");
    }
}

}  // namespace voxelaug
