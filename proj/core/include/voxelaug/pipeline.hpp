#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "voxelaug/params.hpp"
#include "voxelaug/rng.hpp"
#include "voxelaug/volume.hpp"

namespace voxelaug {

enum class TransformCategory { Spatial, Novel, BaselineIntensity };

/// Parameter-free transforms (intensity inversion, Scharr).
struct NoParams {
    friend bool operator==(const NoParams&, const NoParams&) = default;
};

using TransformParams =
    std::variant<NoParams, SpatialParams, NoiseParams, BlurParams, LowResParams,
                 BrightnessContrastParams, GammaParams, RedistributeSegParams, RandomConvParams,
                 HistEqParams, BiasFieldParams, UnsharpParams, FunctionTransformParams>;

struct TransformSpec {
    std::string name;
    double probability = 0.0;
    TransformParams params;

    /// Spec for a registered transform with its default parameters.
    /// Throws ConfigError for unknown names.
    static TransformSpec make(std::string_view name, double probability);

    friend bool operator==(const TransformSpec&, const TransformSpec&) = default;
};

struct TransformInfo {
    std::string_view name;
    TransformCategory category;
    TransformParams defaults;
};

/// Registered transforms: the spatial transform, the appearance transforms in
/// canonical order, then the baseline intensity transforms.
const std::vector<TransformInfo>& transform_registry();
/// nullptr when unknown.
const TransformInfo* find_transform(std::string_view name);
/// Canonical order of the eight appearance transforms.
const std::vector<std::string>& novel_transform_names();

/// Applies one transform unconditionally (no probability gate). Intensity
/// transforms leave the labels untouched.
Sample apply_transform(const Sample& s, const TransformSpec& spec, RngStream& rng);

enum class OrderMode { Fixed, ShuffleNonGeometric };

std::string_view order_mode_name(OrderMode m);
OrderMode parse_order_mode(std::string_view name);

struct PipelineConfig {
    std::uint64_t global_seed = 0;
    OrderMode order_mode = OrderMode::Fixed;
    std::vector<TransformSpec> geometric;
    std::vector<TransformSpec> novel;
    std::vector<TransformSpec> baseline_intensity;

    /// Throws ConfigError (naming the offending spec) on unknown names,
    /// misplaced transforms, parameter blocks of the wrong type, or
    /// out-of-range values.
    void validate() const;

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Built-in defaults; identical to configs/default.json.
PipelineConfig default_config();

/// Every spec probability set to 1, including the spatial transform's
/// internal rotation/scale/flip probabilities.
PipelineConfig force_all_probabilities(PipelineConfig cfg);

/// Reported once per spec in application order.
struct TransformEvent {
    std::size_t position;  // index in geometric ++ novel ++ baseline_intensity
    std::string_view name;
    TransformCategory category;
    bool applied;
    std::chrono::nanoseconds elapsed;
};

using PipelineObserver = std::function<void(const TransformEvent&)>;

/// Substream key of the spec at `position` for one (sample, epoch).
std::uint64_t spec_substream(std::uint64_t sample_id, std::uint64_t epoch, std::uint64_t position);

/// Positions in application order for one (sample, epoch).
std::vector<std::size_t> application_order(const PipelineConfig& cfg, std::uint64_t sample_id,
                                           std::uint64_t epoch);

/// Runs geometric, then appearance, then baseline intensity transforms
/// (or geometric followed by a seeded permutation of the rest). Each spec
/// is gated by its own Bernoulli draw. Output depends only on the
/// arguments.
Sample apply_pipeline(const Sample& s, const PipelineConfig& cfg, std::uint64_t sample_id,
                      std::uint64_t epoch, const PipelineObserver& observer = {});

/// Names accepted by make_ablation_config.
std::vector<std::string> ablation_variants();

/// base, ours, ours_base_disabled, ours_random_order, base_plus_<novel>.
/// Throws ArgumentError for any other name.
PipelineConfig make_ablation_config(std::uint64_t base_seed, std::string_view variant);

}  // namespace voxelaug
