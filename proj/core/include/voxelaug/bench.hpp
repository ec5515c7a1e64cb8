#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "voxelaug/pipeline.hpp"
#include "voxelaug/volume.hpp"

namespace voxelaug {

/// Deterministic stand-in for a spine patch: a smooth random intensity
/// field with ellipsoidal structures labeled 1 (vertebra), 2 (disc) and
/// 3 (canal), each with its own intensity offset. 1 mm spacing, PIR axes.
Sample make_synthetic_sample(const Dims& dims, std::uint64_t seed);

enum class BenchMode { Pipeline, PerTransform };

std::string_view bench_mode_name(BenchMode m);
BenchMode parse_bench_mode(std::string_view name);

struct BenchOptions {
    std::string config_name = "default";
    Dims patch_dims{128, 128, 128};
    int iterations = 50;
    int warmup = 5;
    int workers = 1;
    BenchMode mode = BenchMode::Pipeline;
    std::uint64_t seed = 0;
};

/// Training-framework epoch shape used for the per-epoch estimate.
inline constexpr int kEpochIterations = 250;
inline constexpr int kEpochBatchSize = 2;

struct BenchReport {
    std::string config_name;
    BenchMode mode = BenchMode::Pipeline;
    Dims patch_dims{};
    int iterations = 0;
    int workers = 1;
    double total_ms = 0.0;      // sum of timed per-patch intervals
    double ms_per_patch = 0.0;  // total_ms / iterations
    double patches_per_s = 0.0; // iterations over wall-clock time
    double wall_ms = 0.0;       // timed span across workers, warmup excluded
    std::map<std::string, double> per_transform_ms;  // mean per patch
    double overhead_ms = 0.0;  // ms_per_patch minus the transform means

    /// Augmentation seconds for one synthetic epoch (250 x 2 patches).
    [[nodiscard]] double epoch_estimate_s() const {
        return ms_per_patch * kEpochIterations * kEpochBatchSize / 1000.0;
    }
};

/// Times the pipeline on synthetic patches. Pipeline mode runs
/// apply_pipeline with the configured probabilities; per-transform mode
/// times every spec in isolation (probability forced to 1) on the same
/// input. Warmup iterations are excluded. Workers split the iterations and
/// each owns its samples.
///
/// Throws ArgumentError when iterations < 1, warmup < 0 or workers < 1.
BenchReport run_benchmark(const PipelineConfig& cfg, const BenchOptions& options);

nlohmann::json to_json(const BenchReport& report);
/// Human-readable table.
std::string format_report(const BenchReport& report);

}  // namespace voxelaug
