#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "voxelaug/error.hpp"

namespace voxelaug {

/// Closed real interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    /// Throws ArgumentError unless lo <= hi and both are finite.
    void validate(std::string_view what) const;
    friend bool operator==(const Interval&, const Interval&) = default;
};

void validate_probability(double p, std::string_view what);

// Geometric ---------------------------------------------------------------

struct SpatialParams {
    double rotation_prob = 0.2;  // per axis
    std::array<double, 3> max_angle_deg{30.0, 30.0, 30.0};
    std::array<double, 3> flip_prob{0.5, 0.5, 0.5};
    double scale_prob = 0.2;
    Interval scale_range{0.7, 1.4};

    void validate() const;
    friend bool operator==(const SpatialParams&, const SpatialParams&) = default;
};

// Baseline intensity --------------------------------------------------------

struct NoiseParams {
    Interval sigma_range{0.0, 0.1};
    void validate() const;
    friend bool operator==(const NoiseParams&, const NoiseParams&) = default;
};

struct BlurParams {
    Interval sigma_range{0.5, 1.0};
    void validate() const;
    friend bool operator==(const BlurParams&, const BlurParams&) = default;
};

struct LowResParams {
    Interval factor_range{1.0, 2.0};
    void validate() const;
    friend bool operator==(const LowResParams&, const LowResParams&) = default;
};

struct BrightnessContrastParams {
    Interval brightness_range{-0.25, 0.25};
    Interval contrast_range{0.75, 1.25};
    void validate() const;
    friend bool operator==(const BrightnessContrastParams&, const BrightnessContrastParams&) = default;
};

struct GammaParams {
    Interval gamma_range{0.7, 1.5};
    void validate() const;
    friend bool operator==(const GammaParams&, const GammaParams&) = default;
};

// Appearance transforms -----------------------------------------------------

struct RedistributeSegParams {
    Interval alpha_range{-1.0, 1.0};
    int bins = 64;
    bool include_background = true;
    void validate() const;
    friend bool operator==(const RedistributeSegParams&, const RedistributeSegParams&) = default;
};

struct RandomConvParams {
    std::vector<int> kernel_sizes{1, 3, 5, 7};
    double weight_sigma = 1.0;
    void validate() const;
    friend bool operator==(const RandomConvParams&, const RandomConvParams&) = default;
};

struct HistEqParams {
    int bins = 256;
    void validate() const;
    friend bool operator==(const HistEqParams&, const HistEqParams&) = default;
};

struct BiasFieldParams {
    int order = 3;
    Interval coeff_range{-0.5, 0.5};
    void validate() const;
    friend bool operator==(const BiasFieldParams&, const BiasFieldParams&) = default;
};

struct UnsharpParams {
    Interval sigma_range{0.5, 1.5};
    Interval amount_range{0.5, 1.5};
    void validate() const;
    friend bool operator==(const UnsharpParams&, const UnsharpParams&) = default;
};

/// Monotone maps of [0,1] onto itself.
enum class IntensityFunction { Identity, Square, Sqrt, LogCompress, Sigmoid, Sine };

/// Catalog name ("identity", "square", "sqrt", "log", "sigmoid", "sine").
std::string_view function_name(IntensityFunction f);
/// Throws ArgumentError for names outside the catalog.
IntensityFunction parse_function(std::string_view name);
const std::vector<IntensityFunction>& function_catalog();

struct FunctionTransformParams {
    std::vector<IntensityFunction> functions = function_catalog();
    void validate() const;
    friend bool operator==(const FunctionTransformParams&, const FunctionTransformParams&) = default;
};

}  // namespace voxelaug
