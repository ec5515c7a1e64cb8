#include "voxelaug/config.hpp"

#include <fstream>
#include <set>
#include <string>

namespace voxelaug::config {
namespace {

using nlohmann::json;

/// Wraps an object and rejects any key the caller did not ask for.
class StrictObject {
public:
    StrictObject(const json& obj, std::string context) : obj_(obj), context_(std::move(context)) {
        if (!obj_.is_object()) {
            throw ConfigError(context_ + ": expected a JSON object");
        }
    }

    template <typename T>
    T required(const std::string& key) {
        seen_.insert(key);
        if (!obj_.contains(key)) {
            throw ConfigError(context_ + ": missing key '" + key + "'");
        }
        return convert<T>(key);
    }

    template <typename T>
    void optional(const std::string& key, T& target) {
        seen_.insert(key);
        if (obj_.contains(key)) {
            target = convert<T>(key);
        }
    }

    const json* child(const std::string& key) {
        seen_.insert(key);
        return obj_.contains(key) ? &obj_.at(key) : nullptr;
    }

    void finish() const {
        for (const auto& [key, value] : obj_.items()) {
            if (!seen_.contains(key)) {
                throw ConfigError(context_ + ": unknown key '" + key + "'");
            }
        }
    }

    [[nodiscard]] const std::string& context() const { return context_; }

private:
    template <typename T>
    T convert(const std::string& key) {
        try {
            return obj_.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(context_ + ": bad value for '" + key + "': " + e.what());
        } catch (const ArgumentError& e) {
            throw ConfigError(context_ + ": bad value for '" + key + "': " + e.what());
        }
    }

    const json& obj_;
    std::string context_;
    std::set<std::string> seen_;
};

}  // namespace
}  // namespace voxelaug::config

namespace voxelaug {

// ADL hooks for the parameter primitives.
void from_json(const nlohmann::json& j, Interval& iv) {
    if (!j.is_array() || j.size() != 2) {
        throw ArgumentError("interval must be a [lo, hi] array");
    }
    iv.lo = j[0].get<double>();
    iv.hi = j[1].get<double>();
}

void to_json(nlohmann::json& j, const Interval& iv) { j = nlohmann::json::array({iv.lo, iv.hi}); }

}  // namespace voxelaug

namespace voxelaug::config {
namespace {

TransformParams parse_params(const TransformInfo& info, const json& params, const std::string& ctx) {
    StrictObject o(params, ctx + ".params");
    TransformParams out = info.defaults;
    std::visit(
        [&](auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, SpatialParams>) {
                o.optional("rotation_prob", p.rotation_prob);
                o.optional("max_angle_deg", p.max_angle_deg);
                o.optional("flip_prob", p.flip_prob);
                o.optional("scale_prob", p.scale_prob);
                o.optional("scale_range", p.scale_range);
            } else if constexpr (std::is_same_v<P, NoiseParams> || std::is_same_v<P, BlurParams>) {
                o.optional("sigma_range", p.sigma_range);
            } else if constexpr (std::is_same_v<P, LowResParams>) {
                o.optional("factor_range", p.factor_range);
            } else if constexpr (std::is_same_v<P, BrightnessContrastParams>) {
                o.optional("brightness_range", p.brightness_range);
                o.optional("contrast_range", p.contrast_range);
            } else if constexpr (std::is_same_v<P, GammaParams>) {
                o.optional("gamma_range", p.gamma_range);
            } else if constexpr (std::is_same_v<P, RedistributeSegParams>) {
                o.optional("alpha_range", p.alpha_range);
                o.optional("bins", p.bins);
                o.optional("include_background", p.include_background);
            } else if constexpr (std::is_same_v<P, RandomConvParams>) {
                o.optional("kernel_sizes", p.kernel_sizes);
                o.optional("weight_sigma", p.weight_sigma);
            } else if constexpr (std::is_same_v<P, HistEqParams>) {
                o.optional("bins", p.bins);
            } else if constexpr (std::is_same_v<P, BiasFieldParams>) {
                o.optional("order", p.order);
                o.optional("coeff_range", p.coeff_range);
            } else if constexpr (std::is_same_v<P, UnsharpParams>) {
                o.optional("sigma_range", p.sigma_range);
                o.optional("amount_range", p.amount_range);
            } else if constexpr (std::is_same_v<P, FunctionTransformParams>) {
                std::vector<std::string> names;
                bool given = false;
                if (const json* f = o.child("functions")) {
                    given = true;
                    try {
                        names = f->get<std::vector<std::string>>();
                    } catch (const json::exception& e) {
                        throw ConfigError(ctx + ".params: bad value for 'functions': " + e.what());
                    }
                }
                if (given) {
                    p.functions.clear();
                    for (const auto& n : names) {
                        try {
                            p.functions.push_back(parse_function(n));
                        } catch (const ArgumentError& e) {
                            throw ConfigError(ctx + ".params: " + e.what());
                        }
                    }
                }
            }
        },
        out);
    o.finish();
    return out;
}

std::vector<TransformSpec> parse_list(const json* list, const std::string& key) {
    if (list == nullptr) {
        throw ConfigError("config: missing key '" + key + "'");
    }
    if (!list->is_array()) {
        throw ConfigError("config: '" + key + "' must be an array");
    }
    std::vector<TransformSpec> specs;
    for (std::size_t i = 0; i < list->size(); ++i) {
        const std::string ctx = key + "[" + std::to_string(i) + "]";
        StrictObject o(list->at(i), ctx);
        TransformSpec spec;
        spec.name = o.required<std::string>("name");
        spec.probability = o.required<double>("probability");
        const TransformInfo* info = find_transform(spec.name);
        if (info == nullptr) {
            throw ConfigError(ctx + ": unknown transform '" + spec.name + "'");
        }
        const json* params = o.child("params");
        spec.params = parse_params(*info, params ? *params : json::object(), ctx);
        o.finish();
        specs.push_back(std::move(spec));
    }
    return specs;
}

json list_to_json(const std::vector<TransformSpec>& specs) {
    json out = json::array();
    for (const auto& spec : specs) {
        out.push_back({{"name", spec.name},
                       {"probability", spec.probability},
                       {"params", params_to_json(spec.params)}});
    }
    return out;
}

}  // namespace

TransformParams params_from_json(std::string_view transform, const json& params) {
    const TransformInfo* info = find_transform(transform);
    if (info == nullptr) {
        throw ConfigError("unknown transform '" + std::string(transform) + "'");
    }
    TransformParams p = parse_params(*info, params, std::string(transform));
    std::visit(
        [&](const auto& v) {
            if constexpr (!std::is_same_v<std::decay_t<decltype(v)>, NoParams>) {
                try {
                    v.validate();
                } catch (const ArgumentError& e) {
                    throw ConfigError(e.what());
                }
            }
        },
        p);
    return p;
}

json params_to_json(const TransformParams& params) {
    json j = json::object();
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, SpatialParams>) {
                j["rotation_prob"] = p.rotation_prob;
                j["max_angle_deg"] = p.max_angle_deg;
                j["flip_prob"] = p.flip_prob;
                j["scale_prob"] = p.scale_prob;
                j["scale_range"] = p.scale_range;
            } else if constexpr (std::is_same_v<P, NoiseParams> || std::is_same_v<P, BlurParams>) {
                j["sigma_range"] = p.sigma_range;
            } else if constexpr (std::is_same_v<P, LowResParams>) {
                j["factor_range"] = p.factor_range;
            } else if constexpr (std::is_same_v<P, BrightnessContrastParams>) {
                j["brightness_range"] = p.brightness_range;
                j["contrast_range"] = p.contrast_range;
            } else if constexpr (std::is_same_v<P, GammaParams>) {
                j["gamma_range"] = p.gamma_range;
            } else if constexpr (std::is_same_v<P, RedistributeSegParams>) {
                j["alpha_range"] = p.alpha_range;
                j["bins"] = p.bins;
                j["include_background"] = p.include_background;
            } else if constexpr (std::is_same_v<P, RandomConvParams>) {
                j["kernel_sizes"] = p.kernel_sizes;
                j["weight_sigma"] = p.weight_sigma;
            } else if constexpr (std::is_same_v<P, HistEqParams>) {
                j["bins"] = p.bins;
            } else if constexpr (std::is_same_v<P, BiasFieldParams>) {
                j["order"] = p.order;
                j["coeff_range"] = p.coeff_range;
            } else if constexpr (std::is_same_v<P, UnsharpParams>) {
                j["sigma_range"] = p.sigma_range;
                j["amount_range"] = p.amount_range;
            } else if constexpr (std::is_same_v<P, FunctionTransformParams>) {
                json names = json::array();
                for (auto f : p.functions) {
                    names.push_back(std::string(function_name(f)));
                }
                j["functions"] = names;
            }
        },
        params);
    return j;
}

PipelineConfig from_json(const json& doc) {
    StrictObject o(doc, "config");
    PipelineConfig cfg;
    cfg.global_seed = o.required<std::uint64_t>("global_seed");
    cfg.order_mode = parse_order_mode(o.required<std::string>("order_mode"));
    cfg.geometric = parse_list(o.child("geometric"), "geometric");
    cfg.novel = parse_list(o.child("novel"), "novel");
    cfg.baseline_intensity = parse_list(o.child("baseline_intensity"), "baseline_intensity");
    o.finish();
    cfg.validate();
    return cfg;
}

json to_json(const PipelineConfig& cfg) {
    return {{"global_seed", cfg.global_seed},
            {"order_mode", std::string(order_mode_name(cfg.order_mode))},
            {"geometric", list_to_json(cfg.geometric)},
            {"novel", list_to_json(cfg.novel)},
            {"baseline_intensity", list_to_json(cfg.baseline_intensity)}};
}

PipelineConfig load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": invalid JSON: " + e.what());
    }
    return from_json(doc);
}

void save(const PipelineConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw WriteError("cannot write config " + path.string());
    }
    out << to_json(cfg).dump(2) << '\n';
    if (!out) {
        throw WriteError("failed writing config " + path.string());
    }
}

}  // namespace voxelaug::config
