#include "voxelaug/pipeline.hpp"

#include <algorithm>
#include <string>

#include "voxelaug/baseline.hpp"
#include "voxelaug/novel.hpp"

namespace voxelaug {
namespace {

constexpr std::uint64_t kShuffleKey = 0x53485546464C45ull;  // "SHUFFLE"

template <typename P>
const P& params_as(const TransformSpec& spec) {
    const P* p = std::get_if<P>(&spec.params);
    if (p == nullptr) {
        throw ConfigError("transform '" + spec.name + "' has a parameter block of the wrong type");
    }
    return *p;
}

void validate_params(const TransformParams& params) {
    std::visit(
        [](const auto& p) {
            if constexpr (!std::is_same_v<std::decay_t<decltype(p)>, NoParams>) {
                p.validate();
            }
        },
        params);
}

std::string spec_label(std::string_view list, std::size_t index, const std::string& name) {
    return std::string(list) + "[" + std::to_string(index) + "] ('" + name + "')";
}

}  // namespace

const std::vector<TransformInfo>& transform_registry() {
    static const std::vector<TransformInfo> registry{
        {"spatial", TransformCategory::Spatial, SpatialParams{}},
        {"intensity_inversion", TransformCategory::Novel, NoParams{}},
        {"scharr", TransformCategory::Novel, NoParams{}},
        {"redistribute_seg", TransformCategory::Novel, RedistributeSegParams{}},
        {"random_conv", TransformCategory::Novel, RandomConvParams{}},
        {"histogram_equalization", TransformCategory::Novel, HistEqParams{}},
        {"bias_field", TransformCategory::Novel, BiasFieldParams{}},
        {"unsharp_masking", TransformCategory::Novel, UnsharpParams{}},
        {"function_transform", TransformCategory::Novel, FunctionTransformParams{}},
        {"gaussian_noise", TransformCategory::BaselineIntensity, NoiseParams{}},
        {"gaussian_blur", TransformCategory::BaselineIntensity, BlurParams{}},
        {"brightness_contrast", TransformCategory::BaselineIntensity, BrightnessContrastParams{}},
        {"low_resolution", TransformCategory::BaselineIntensity, LowResParams{}},
        {"gamma", TransformCategory::BaselineIntensity, GammaParams{}},
    };
    return registry;
}

const TransformInfo* find_transform(std::string_view name) {
    for (const auto& info : transform_registry()) {
        if (info.name == name) {
            return &info;
        }
    }
    return nullptr;
}

const std::vector<std::string>& novel_transform_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& info : transform_registry()) {
            if (info.category == TransformCategory::Novel) {
                out.emplace_back(info.name);
            }
        }
        return out;
    }();
    return names;
}

TransformSpec TransformSpec::make(std::string_view name, double probability) {
    const TransformInfo* info = find_transform(name);
    if (info == nullptr) {
        throw ConfigError("unknown transform '" + std::string(name) + "'");
    }
    return {std::string(name), probability, info->defaults};
}

namespace {

/// Image of a non-spatial transform; labels are never touched.
Volume transform_image(const Sample& s, const TransformSpec& spec, std::string_view name, RngStream& rng) {
    if (name == "intensity_inversion") {
        return intensity_inversion(s.image);
    }
    if (name == "scharr") {
        return scharr_filter(s.image);
    }
    if (name == "redistribute_seg") {
        return redistribute_seg(s, rng, params_as<RedistributeSegParams>(spec)).image;
    }
    if (name == "random_conv") {
        return random_conv(s.image, rng, params_as<RandomConvParams>(spec));
    }
    if (name == "histogram_equalization") {
        const auto& p = params_as<HistEqParams>(spec);
        p.validate();
        return histogram_equalization(s.image, p.bins);
    }
    if (name == "bias_field") {
        return bias_field(s.image, rng, params_as<BiasFieldParams>(spec));
    }
    if (name == "unsharp_masking") {
        return unsharp_masking(s.image, rng, params_as<UnsharpParams>(spec));
    }
    if (name == "function_transform") {
        return function_transform(s.image, rng, params_as<FunctionTransformParams>(spec));
    }
    if (name == "gaussian_noise") {
        return gaussian_noise(s.image, rng, params_as<NoiseParams>(spec).sigma_range);
    }
    if (name == "gaussian_blur") {
        return gaussian_blur(s.image, rng, params_as<BlurParams>(spec).sigma_range);
    }
    if (name == "brightness_contrast") {
        const auto& p = params_as<BrightnessContrastParams>(spec);
        return brightness_contrast(s.image, rng, p.brightness_range, p.contrast_range);
    }
    if (name == "low_resolution") {
        return simulate_low_resolution(s.image, rng, params_as<LowResParams>(spec).factor_range);
    }
    if (name == "gamma") {
        return gamma_correction(s.image, rng, params_as<GammaParams>(spec).gamma_range);
    }
    throw ConfigError("transform '" + spec.name + "' has no implementation");
}

const TransformInfo& require_transform(const TransformSpec& spec) {
    const TransformInfo* info = find_transform(spec.name);
    if (info == nullptr) {
        throw ConfigError("unknown transform '" + spec.name + "'");
    }
    return *info;
}

}  // namespace

Sample apply_transform(const Sample& s, const TransformSpec& spec, RngStream& rng) {
    const TransformInfo& info = require_transform(spec);
    if (info.category == TransformCategory::Spatial) {
        return random_spatial(s, rng, params_as<SpatialParams>(spec));
    }
    return {transform_image(s, spec, info.name, rng), s.labels};
}

std::string_view order_mode_name(OrderMode m) {
    return m == OrderMode::Fixed ? "fixed" : "shuffle_non_geometric";
}

OrderMode parse_order_mode(std::string_view name) {
    if (name == "fixed") {
        return OrderMode::Fixed;
    }
    if (name == "shuffle_non_geometric") {
        return OrderMode::ShuffleNonGeometric;
    }
    throw ConfigError("unknown order_mode '" + std::string(name) + "'");
}

void PipelineConfig::validate() const {
    auto check_list = [](std::string_view list, const std::vector<TransformSpec>& specs,
                         bool want_spatial) {
        for (std::size_t i = 0; i < specs.size(); ++i) {
            const auto& spec = specs[i];
            const TransformInfo* info = find_transform(spec.name);
            if (info == nullptr) {
                throw ConfigError(spec_label(list, i, spec.name) + ": unknown transform");
            }
            if ((info->category == TransformCategory::Spatial) != want_spatial) {
                throw ConfigError(spec_label(list, i, spec.name) +
                                  (want_spatial ? ": only spatial transforms may appear here"
                                                : ": spatial transforms belong in 'geometric'"));
            }
            if (spec.params.index() != info->defaults.index()) {
                throw ConfigError(spec_label(list, i, spec.name) +
                                  ": parameter block does not match the transform");
            }
            try {
                validate_probability(spec.probability, "probability");
                validate_params(spec.params);
            } catch (const ArgumentError& e) {
                throw ConfigError(spec_label(list, i, spec.name) + ": " + e.what());
            }
        }
    };
    check_list("geometric", geometric, true);
    check_list("novel", novel, false);
    check_list("baseline_intensity", baseline_intensity, false);
}

PipelineConfig default_config() {
    PipelineConfig cfg;
    cfg.geometric.push_back(TransformSpec::make("spatial", 1.0));
    for (const auto& name : novel_transform_names()) {
        cfg.novel.push_back(TransformSpec::make(name, 0.2));
    }
    cfg.baseline_intensity = {
        TransformSpec::make("gaussian_noise", 0.1),
        TransformSpec::make("gaussian_blur", 0.2),
        TransformSpec::make("brightness_contrast", 0.15),
        TransformSpec::make("low_resolution", 0.25),
        TransformSpec::make("gamma", 0.3),
    };
    return cfg;
}

PipelineConfig force_all_probabilities(PipelineConfig cfg) {
    for (auto* list : {&cfg.geometric, &cfg.novel, &cfg.baseline_intensity}) {
        for (auto& spec : *list) {
            spec.probability = 1.0;
            if (auto* sp = std::get_if<SpatialParams>(&spec.params)) {
                sp->rotation_prob = 1.0;
                sp->scale_prob = 1.0;
                sp->flip_prob = {1.0, 1.0, 1.0};
            }
        }
    }
    return cfg;
}

std::uint64_t spec_substream(std::uint64_t sample_id, std::uint64_t epoch, std::uint64_t position) {
    return hash_keys({sample_id, epoch, position});
}

std::vector<std::size_t> application_order(const PipelineConfig& cfg, std::uint64_t sample_id,
                                           std::uint64_t epoch) {
    const std::size_t n_geo = cfg.geometric.size();
    const std::size_t total = n_geo + cfg.novel.size() + cfg.baseline_intensity.size();
    std::vector<std::size_t> order(total);
    for (std::size_t i = 0; i < total; ++i) {
        order[i] = i;
    }
    if (cfg.order_mode == OrderMode::ShuffleNonGeometric && total - n_geo > 1) {
        RngStream rng(cfg.global_seed, spec_substream(sample_id, epoch, kShuffleKey));
        for (std::size_t i = total - 1; i > n_geo; --i) {
            const std::size_t j = n_geo + rng.below(i - n_geo + 1);
            std::swap(order[i], order[j]);
        }
    }
    return order;
}

Sample apply_pipeline(const Sample& s, const PipelineConfig& cfg, std::uint64_t sample_id,
                      std::uint64_t epoch, const PipelineObserver& observer) {
    cfg.validate();
    s.validate();
    std::vector<const TransformSpec*> specs;
    for (const auto* list : {&cfg.geometric, &cfg.novel, &cfg.baseline_intensity}) {
        for (const auto& spec : *list) {
            specs.push_back(&spec);
        }
    }

    Sample current = s;
    for (std::size_t position : application_order(cfg, sample_id, epoch)) {
        const TransformSpec& spec = *specs[position];
        const TransformInfo& info = *find_transform(spec.name);
        RngStream rng(cfg.global_seed, spec_substream(sample_id, epoch, position));
        // The gate always consumes one draw from the spec's own stream.
        const bool applied = rng.bernoulli(spec.probability);
        const auto start = std::chrono::steady_clock::now();
        if (applied) {
            if (info.category == TransformCategory::Spatial) {
                current = apply_transform(current, spec, rng);
            } else if (info.category == TransformCategory::Novel) {
                const ValueRange before = value_range(current.image);
                current.image = clamp_to_extended_range(transform_image(current, spec, info.name, rng), before);
            } else {
                current.image = transform_image(current, spec, info.name, rng);
            }
        }
        if (observer) {
            observer({position, info.name, info.category, applied,
                      std::chrono::steady_clock::now() - start});
        }
    }
    return current;
}

std::vector<std::string> ablation_variants() {
    std::vector<std::string> out{"base", "ours", "ours_base_disabled", "ours_random_order"};
    for (const auto& name : novel_transform_names()) {
        out.push_back("base_plus_" + name);
    }
    return out;
}

PipelineConfig make_ablation_config(std::uint64_t base_seed, std::string_view variant) {
    PipelineConfig cfg = default_config();
    cfg.global_seed = base_seed;
    if (variant == "ours") {
        return cfg;
    }
    if (variant == "base") {
        cfg.novel.clear();
        return cfg;
    }
    if (variant == "ours_base_disabled") {
        for (auto& spec : cfg.baseline_intensity) {
            spec.probability = 0.0;
        }
        return cfg;
    }
    if (variant == "ours_random_order") {
        cfg.order_mode = OrderMode::ShuffleNonGeometric;
        return cfg;
    }
    constexpr std::string_view prefix = "base_plus_";
    if (variant.starts_with(prefix)) {
        const std::string_view name = variant.substr(prefix.size());
        const auto& novel = novel_transform_names();
        if (std::find(novel.begin(), novel.end(), name) != novel.end()) {
            cfg.novel = {TransformSpec::make(name, 0.5)};
            return cfg;
        }
    }
    throw ArgumentError("unknown ablation variant '" + std::string(variant) + "'");
}

}  // namespace voxelaug
