#include "voxelaug/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include "voxelaug/rng.hpp"

namespace voxelaug {
namespace {

using Clock = std::chrono::steady_clock;

double to_ms(Clock::duration d) {
    return std::chrono::duration<double, std::milli>(d).count();
}

struct WorkerTally {
    double total_ms = 0.0;
    std::map<std::string, double> transform_ms;  // summed over iterations
    int iterations = 0;
    Clock::time_point begin{}, end{};  // timed span, warmup excluded
};

void run_pipeline_worker(const PipelineConfig& cfg, const Sample& input, int first, int stride,
                         int iterations, int warmup, WorkerTally& tally) {
    // Key every spec so an empty pipeline still reports an empty map.
    for (const auto* list : {&cfg.geometric, &cfg.novel, &cfg.baseline_intensity}) {
        for (const auto& spec : *list) {
            tally.transform_ms.emplace(spec.name, 0.0);
        }
    }
    for (int w = 0; w < warmup; ++w) {
        Sample copy = input;
        static_cast<void>(apply_pipeline(copy, cfg, static_cast<std::uint64_t>(first), 1));
    }
    std::map<std::string, double> local;
    auto observer = [&local](const TransformEvent& e) {
        local[std::string(e.name)] += to_ms(e.elapsed);
    };
    tally.begin = Clock::now();
    for (int i = first; i < iterations; i += stride) {
        local.clear();
        const auto start = Clock::now();
        Sample copy = input;
        Sample out = apply_pipeline(copy, cfg, static_cast<std::uint64_t>(i), 0, observer);
        const auto stop = Clock::now();
        static_cast<void>(out);
        tally.total_ms += to_ms(stop - start);
        for (const auto& [name, ms] : local) {
            tally.transform_ms[name] += ms;
        }
        ++tally.iterations;
    }
    tally.end = Clock::now();
}

void run_per_transform_worker(const PipelineConfig& cfg, const Sample& input, int first,
                              int stride, int iterations, int warmup, WorkerTally& tally) {
    std::vector<TransformSpec> specs;
    for (const auto* list : {&cfg.geometric, &cfg.novel, &cfg.baseline_intensity}) {
        for (const auto& spec : *list) {
            specs.push_back(spec);
            specs.back().probability = 1.0;
            tally.transform_ms.emplace(spec.name, 0.0);
        }
    }
    for (int w = 0; w < warmup; ++w) {
        for (std::size_t k = 0; k < specs.size(); ++k) {
            RngStream rng(cfg.global_seed, spec_substream(static_cast<std::uint64_t>(first), 1, k));
            static_cast<void>(apply_transform(input, specs[k], rng));
        }
    }
    tally.begin = Clock::now();
    for (int i = first; i < iterations; i += stride) {
        for (std::size_t k = 0; k < specs.size(); ++k) {
            RngStream rng(cfg.global_seed, spec_substream(static_cast<std::uint64_t>(i), 0, k));
            const auto start = Clock::now();
            Sample copy = input;
            const auto mid = Clock::now();
            Sample out = apply_transform(copy, specs[k], rng);
            const auto stop = Clock::now();
            static_cast<void>(out);
            tally.total_ms += to_ms(stop - start);
            tally.transform_ms[specs[k].name] += to_ms(stop - mid);
        }
        if (specs.empty()) {
            const auto start = Clock::now();
            Sample copy = input;
            tally.total_ms += to_ms(Clock::now() - start);
            static_cast<void>(copy);
        }
        ++tally.iterations;
    }
    tally.end = Clock::now();
}

}  // namespace

Sample make_synthetic_sample(const Dims& dims, std::uint64_t seed) {
    RngStream rng(seed, 0x53594E5448ull);
    Geometry g = Geometry::make(dims);
    // PIR axes: axis 0 -> posterior, axis 1 -> inferior, axis 2 -> right.
    g.affine = Affine::Zero();
    g.affine(1, 0) = -1.0;
    g.affine(2, 1) = -1.0;
    g.affine(0, 2) = 1.0;
    g.affine(3, 3) = 1.0;

    struct Wave {
        double kx, ky, kz, phase, amp;
    };
    std::vector<Wave> waves(6);
    for (auto& w : waves) {
        w.kx = rng.uniform(-3.0, 3.0) * std::numbers::pi / dims[0];
        w.ky = rng.uniform(-3.0, 3.0) * std::numbers::pi / dims[1];
        w.kz = rng.uniform(-3.0, 3.0) * std::numbers::pi / dims[2];
        w.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        w.amp = rng.uniform(0.05, 0.2);
    }
    struct Blob {
        std::array<double, 3> center, radius;
        std::uint8_t label;
        float offset;
    };
    std::vector<Blob> blobs;
    const std::array<float, 4> offsets{0.0f, 0.8f, 0.4f, 0.6f};
    for (std::uint8_t label : {std::uint8_t{1}, std::uint8_t{1}, std::uint8_t{2}, std::uint8_t{3}}) {
        Blob b;
        for (int a = 0; a < 3; ++a) {
            b.center[a] = rng.uniform(0.25, 0.75) * (dims[a] - 1);
            b.radius[a] = std::max(1.0, rng.uniform(0.08, 0.25) * dims[a]);
        }
        b.label = label;
        b.offset = offsets[label];
        blobs.push_back(b);
    }

    Volume image(g, 0.0f);
    LabelMap labels(g, std::uint8_t{0});
    for (int z = 0; z < dims[2]; ++z) {
        for (int y = 0; y < dims[1]; ++y) {
            for (int x = 0; x < dims[0]; ++x) {
                double v = 0.0;
                for (const auto& w : waves) {
                    v += w.amp * std::cos(w.kx * x + w.ky * y + w.kz * z + w.phase);
                }
                std::uint8_t label = 0;
                for (const auto& b : blobs) {
                    const double dx = (x - b.center[0]) / b.radius[0];
                    const double dy = (y - b.center[1]) / b.radius[1];
                    const double dz = (z - b.center[2]) / b.radius[2];
                    if (dx * dx + dy * dy + dz * dz <= 1.0) {
                        label = b.label;
                    }
                }
                image(x, y, z) = static_cast<float>(v) + offsets[label];
                labels(x, y, z) = label;
            }
        }
    }
    return {std::move(image), std::move(labels)};
}

std::string_view bench_mode_name(BenchMode m) {
    return m == BenchMode::Pipeline ? "pipeline" : "per-transform";
}

BenchMode parse_bench_mode(std::string_view name) {
    if (name == "pipeline") {
        return BenchMode::Pipeline;
    }
    if (name == "per-transform") {
        return BenchMode::PerTransform;
    }
    throw ArgumentError("unknown bench mode '" + std::string(name) + "'");
}

BenchReport run_benchmark(const PipelineConfig& cfg, const BenchOptions& options) {
    if (options.iterations < 1) {
        throw ArgumentError("benchmark needs at least one iteration");
    }
    if (options.warmup < 0) {
        throw ArgumentError("warmup must be >= 0");
    }
    if (options.workers < 1) {
        throw ArgumentError("benchmark needs at least one worker");
    }
    cfg.validate();
    const int workers = std::min(options.workers, options.iterations);

    std::vector<Sample> inputs;
    for (int w = 0; w < workers; ++w) {
        inputs.push_back(make_synthetic_sample(options.patch_dims,
                                               hash_keys({options.seed, static_cast<std::uint64_t>(w)})));
    }
    std::vector<WorkerTally> tallies(static_cast<std::size_t>(workers));
    auto work = [&](int w) {
        auto& tally = tallies[static_cast<std::size_t>(w)];
        const auto& input = inputs[static_cast<std::size_t>(w)];
        if (options.mode == BenchMode::Pipeline) {
            run_pipeline_worker(cfg, input, w, workers, options.iterations, options.warmup, tally);
        } else {
            run_per_transform_worker(cfg, input, w, workers, options.iterations, options.warmup, tally);
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> threads;
        for (int w = 0; w < workers; ++w) {
            threads.emplace_back(work, w);
        }
    }
    auto begin = tallies.front().begin;
    auto end = tallies.front().end;
    for (const auto& t : tallies) {
        begin = std::min(begin, t.begin);
        end = std::max(end, t.end);
    }
    const double wall_ms = to_ms(end - begin);

    BenchReport report;
    report.config_name = options.config_name;
    report.mode = options.mode;
    report.patch_dims = options.patch_dims;
    report.iterations = options.iterations;
    report.workers = workers;
    report.wall_ms = wall_ms;
    std::map<std::string, double> sums;
    for (const auto& t : tallies) {
        report.total_ms += t.total_ms;
        for (const auto& [name, ms] : t.transform_ms) {
            sums[name] += ms;
        }
    }
    report.ms_per_patch = report.total_ms / options.iterations;
    report.patches_per_s = wall_ms > 0.0 ? options.iterations / (wall_ms / 1000.0) : 0.0;
    double transform_sum = 0.0;
    for (const auto& [name, ms] : sums) {
        report.per_transform_ms[name] = ms / options.iterations;
        transform_sum += ms / options.iterations;
    }
    report.overhead_ms = std::max(0.0, report.ms_per_patch - transform_sum);
    return report;
}

nlohmann::json to_json(const BenchReport& r) {
    return {{"config_name", r.config_name},
            {"mode", std::string(bench_mode_name(r.mode))},
            {"patch_dims", r.patch_dims},
            {"iterations", r.iterations},
            {"workers", r.workers},
            {"total_ms", r.total_ms},
            {"ms_per_patch", r.ms_per_patch},
            {"patches_per_s", r.patches_per_s},
            {"wall_ms", r.wall_ms},
            {"per_transform_ms", r.per_transform_ms},
            {"overhead_ms", r.overhead_ms},
            {"epoch_estimate_s", r.epoch_estimate_s()}};
}

std::string format_report(const BenchReport& r) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "config %s | mode %s | patch %dx%dx%d | %d iterations | %d worker(s)\n",
                  r.config_name.c_str(), std::string(bench_mode_name(r.mode)).c_str(),
                  r.patch_dims[0], r.patch_dims[1], r.patch_dims[2], r.iterations, r.workers);
    out << line;
    std::snprintf(line, sizeof line, "%-26s %12s\n", "transform", "mean ms");
    out << line;
    for (const auto& [name, ms] : r.per_transform_ms) {
        std::snprintf(line, sizeof line, "%-26s %12.3f\n", name.c_str(), ms);
        out << line;
    }
    std::snprintf(line, sizeof line, "%-26s %12.3f\n", "(overhead)", r.overhead_ms);
    out << line;
    std::snprintf(line, sizeof line,
                  "total %.1f ms | %.3f ms/patch | %.2f patches/s | wall %.1f ms\n", r.total_ms,
                  r.ms_per_patch, r.patches_per_s, r.wall_ms);
    out << line;
    std::snprintf(line, sizeof line,
                  "synthetic epoch (%d x %d patches): %.1f s of augmentation\n", kEpochIterations,
                  kEpochBatchSize, r.epoch_estimate_s());
    out << line;
    return out.str();
}

}  // namespace voxelaug
