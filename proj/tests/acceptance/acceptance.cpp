// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "test_support.hpp"
#include "voxelaug/baseline.hpp"
#include "voxelaug/bench.hpp"
#include "voxelaug/metrics.hpp"
#include "voxelaug/nifti.hpp"
#include "voxelaug/novel.hpp"
#include "voxelaug/pipeline.hpp"

using namespace voxelaug;
using namespace voxelaug::testing;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and sizes.
constexpr int kCasesPerProperty = 200;
constexpr double kConstantRelTol = 1e-6;
constexpr double kScharrRelTol = 1e-4;
constexpr double kKsLimit = 0.02;
constexpr int kDicePairs = 1000;
constexpr double kAggregateTol = 1e-12;
constexpr double kWilcoxonTol = 1e-6;
constexpr double kCheckSeconds = 60.0;
constexpr double kPatchBudgetMs = 500.0;
constexpr double kBenchSeconds = 120.0;
constexpr double kPreprocessTol = 1e-5;

struct Outcome {
    bool pass = true;
    std::string detail;
};

/// Collects the first few failure messages of a criterion.
class Tally {
public:
    void require(bool ok, const std::string& what) {
        if (!ok) {
            ++failures_;
            if (messages_.size() < 3) {
                messages_.push_back(what);
            }
        }
    }
    Outcome outcome(const std::string& summary) const {
        if (failures_ == 0) {
            return {true, summary};
        }
        std::string d = std::to_string(failures_) + " failure(s)";
        for (const auto& m : messages_) {
            d += "; " + m;
        }
        return {false, d};
    }

private:
    int failures_ = 0;
    std::vector<std::string> messages_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) {
        q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    }
    return q + "'";
}

int run_cli(const std::vector<std::string>& args, const fs::path& log) {
    std::string cmd = "VOXELAUG_THREADS=4 " + quote(VOXELAUG_CLI_PATH);
    for (const auto& a : args) {
        cmd += " " + quote(a);
    }
    cmd += " > " + quote(log.string()) + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Random grid with a signed axis permutation affine and non-unit spacing.
Geometry random_geometry(std::mt19937& gen, int lo = 3, int hi = 14) {
    std::uniform_int_distribution<int> dim(lo, hi);
    std::uniform_real_distribution<double> sp(0.5, 2.0);
    Geometry g = Geometry::make({dim(gen), dim(gen), dim(gen)}, {sp(gen), sp(gen), sp(gen)});
    std::array<int, 3> perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), gen);
    std::bernoulli_distribution flip(0.5);
    g.affine = Affine::Identity();
    for (int c = 0; c < 3; ++c) {
        g.affine(c, c) = 0.0;
    }
    for (int c = 0; c < 3; ++c) {
        g.affine(perm[static_cast<std::size_t>(c)], c) = (flip(gen) ? -1.0 : 1.0) * g.spacing[static_cast<std::size_t>(c)];
        g.affine(c, 3) = sp(gen) * 10.0;
    }
    return g;
}

Sample random_sample(std::mt19937& gen, int lo = 3, int hi = 14) {
    const Geometry g = random_geometry(gen, lo, hi);
    std::uniform_real_distribution<float> offset(-500.0f, 500.0f), scale(0.1f, 1000.0f);
    const float o = offset(gen), s = scale(gen);
    return {random_volume(g, gen, o, o + s), random_labels(g, gen, 4)};
}

std::vector<TransformSpec> intensity_specs() {
    std::vector<TransformSpec> out;
    for (const auto& info : transform_registry()) {
        if (info.category != TransformCategory::Spatial) {
            out.push_back(TransformSpec::make(info.name, 1.0));
        }
    }
    return out;
}

bool non_decreasing_in(const Volume& in, const Volume& out) {
    std::vector<std::size_t> idx(in.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return in[a] < in[b]; });
    for (std::size_t i = 1; i < idx.size(); ++i) {
        if (out[idx[i]] < out[idx[i - 1]]) {
            return false;
        }
    }
    return true;
}

// ------------------------------------------------------------ criteria

Outcome transform_invariants() {
    auto gen = make_gen(20240611);
    Tally t;
    const auto specs = intensity_specs();

    for (int i = 0; i < kCasesPerProperty; ++i) {
        const Sample s = random_sample(gen);
        bool labels_kept = true, geometry_kept = true;
        for (std::size_t k = 0; k < specs.size(); ++k) {
            if (specs[k].name == "scharr" && std::min({s.image.dims()[0], s.image.dims()[1], s.image.dims()[2]}) < 3) {
                continue;
            }
            RngStream rng(static_cast<std::uint64_t>(i), k);
            const Sample out = apply_transform(s, specs[k], rng);
            labels_kept = labels_kept && out.labels.voxels().size() == s.labels.voxels().size() &&
                          std::equal(out.labels.voxels().begin(), out.labels.voxels().end(), s.labels.voxels().begin());
            geometry_kept = geometry_kept && out.image.geometry().matches(s.image.geometry()) &&
                            out.labels.geometry().matches(s.labels.geometry());
            t.require(std::all_of(out.image.voxels().begin(), out.image.voxels().end(),
                                  [](float x) { return std::isfinite(x); }),
                      specs[k].name + " produced a non-finite voxel");
        }
        t.require(labels_kept, "label map changed, case " + std::to_string(i));

        RngStream rng(static_cast<std::uint64_t>(i), 99);
        const Sample warped = apply_transform(s, TransformSpec::make("spatial", 1.0), rng);
        geometry_kept = geometry_kept && warped.image.geometry().matches(s.image.geometry()) &&
                        warped.labels.geometry().matches(s.labels.geometry());
        t.require(geometry_kept, "geometry changed, case " + std::to_string(i));
        const std::set<std::uint8_t> vocab(s.labels.voxels().begin(), s.labels.voxels().end());
        t.require(std::all_of(warped.labels.voxels().begin(), warped.labels.voxels().end(),
                              [&](std::uint8_t l) { return vocab.count(l) > 0; }),
                  "spatial introduced a label, case " + std::to_string(i));
    }

    for (int i = 0; i < kCasesPerProperty; ++i) {
        const Geometry g = random_geometry(gen);
        const Volume v = dyadic_volume(g, gen, 1 << 16);
        t.require(intensity_inversion(intensity_inversion(v)) == v, "inversion not an involution, case " + std::to_string(i));
        const ValueRange a = value_range(v), b = value_range(intensity_inversion(v));
        t.require(a.min == b.min && a.max == b.max, "inversion changed the range");
    }

    std::uniform_real_distribution<float> level(-1000.0f, 1000.0f);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < kCasesPerProperty; ++i) {
        const float c = level(gen);
        const Volume v(random_geometry(gen), c);
        RngStream rng(7, static_cast<std::uint64_t>(i));
        const double tol = kConstantRelTol * std::max(1.0f, std::abs(c));
        auto constant = [&](const Volume& out) {
            return std::all_of(out.voxels().begin(), out.voxels().end(),
                               [&](float x) { return std::abs(static_cast<double>(x) - c) <= tol; });
        };
        t.require(intensity_inversion(v) == v, "inversion moved a constant");
        // Unsharp is (1 + a) v - a G(v): the blur's rounding error scales with the gain.
        const double amount = 3.0 * u01(gen);
        const Volume sharpened = apply_unsharp(v, 0.3 + 2.0 * u01(gen), amount);
        t.require(std::all_of(sharpened.voxels().begin(), sharpened.voxels().end(),
                              [&](float x) { return std::abs(static_cast<double>(x) - c) <= tol * (1.0 + amount); }),
                  "unsharp moved a constant");
        t.require(constant(gaussian_blur(v, rng, {0.0, 2.5})), "blur moved a constant");
        t.require(constant(apply_low_resolution(v, 1.0 + 3.0 * u01(gen))), "low-res moved a constant");
    }

    for (int i = 0; i < kCasesPerProperty; ++i) {
        const Sample s = random_sample(gen);
        std::uniform_int_distribution<int> bins(2, 512);
        t.require(non_decreasing_in(s.image, histogram_equalization(s.image, bins(gen))), "hist eq not monotone");
        t.require(non_decreasing_in(s.image, apply_gamma(s.image, 0.2 + 4.8 * u01(gen))), "gamma not monotone");
        const auto& catalog = function_catalog();
        const IntensityFunction f = catalog[static_cast<std::size_t>(i) % catalog.size()];
        t.require(non_decreasing_in(s.image, apply_function(s.image, f)),
                  std::string(function_name(f)) + " not monotone");
    }

    for (int i = 0; i < kCasesPerProperty; ++i) {
        const Geometry g = random_geometry(gen, 2, 12);
        std::uniform_int_distribution<int> order(1, 5);
        const double span = 6.0 * u01(gen);
        const BiasFieldParams p{order(gen), {-span, span}};
        RngStream rng(11, static_cast<std::uint64_t>(i));
        const Volume field = bias_field_map(g, p.order, draw_bias_coefficients(rng, p));
        t.require(std::all_of(field.voxels().begin(), field.voxels().end(),
                              [](float x) { return x > 0.0f && std::isfinite(x); }),
                  "bias field not strictly positive");
    }
    return t.outcome(std::to_string(kCasesPerProperty) + " cases for each of 7 properties");
}

Outcome scharr_oracle() {
    auto gen = make_gen(33);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    Tally t;
    double worst = 0.0;
    for (int n = 9; n <= 33; ++n) {
        const double a = coef(gen), b = coef(gen), c = coef(gen);
        Volume v(Geometry::make({n, n, n}), 0.0f);
        for (int z = 0; z < n; ++z) {
            for (int y = 0; y < n; ++y) {
                for (int x = 0; x < n; ++x) {
                    v(x, y, z) = static_cast<float>(a * x + b * y + c * z);
                }
            }
        }
        const double expected = std::sqrt(a * a + b * b + c * c);
        const Volume g = scharr_gradient_magnitude(v);
        for (int z = 1; z < n - 1; ++z) {
            for (int y = 1; y < n - 1; ++y) {
                for (int x = 1; x < n - 1; ++x) {
                    worst = std::max(worst, std::abs(g(x, y, z) - expected) / expected);
                }
            }
        }
    }
    char d[96];
    std::snprintf(d, sizeof d, "grids 9^3..33^3, worst relative error %.3g", worst);
    t.require(worst <= kScharrRelTol, d);
    return t.outcome(d);
}

Outcome histogram_uniformity() {
    auto gen = make_gen(64);
    const Volume v = random_volume(Geometry::make({64, 64, 64}), gen);
    const Volume out = histogram_equalization(v, 256);
    const ValueRange r = value_range(out);
    std::vector<double> u(out.size());
    for (std::size_t n = 0; n < u.size(); ++n) {
        u[n] = (static_cast<double>(out[n]) - r.min) / (static_cast<double>(r.max) - r.min);
    }
    std::sort(u.begin(), u.end());
    const double m = static_cast<double>(u.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        ks = std::max({ks, static_cast<double>(i + 1) / m - u[i], u[i] - static_cast<double>(i) / m});
    }
    char d[64];
    std::snprintf(d, sizeof d, "KS statistic %.5f", ks);
    Tally t;
    t.require(ks <= kKsLimit, d);
    return t.outcome(d);
}

Outcome dice_oracle() {
    auto gen = make_gen(1000);
    Tally t;
    std::vector<DiceReport> reports;
    std::vector<double> hand_globals;
    std::uniform_int_distribution<int> classes(1, 5);
    for (int i = 0; i < kDicePairs; ++i) {
        const Geometry g = Geometry::make({8, 8, 8});
        const LabelMap p = random_labels(g, gen, classes(gen)), r = random_labels(g, gen, classes(gen));
        const DiceReport rep = dice_per_class(p, r);
        double sum = 0.0;
        for (int c : kSpineClasses) {
            long np = 0, nr = 0, both = 0;
            for (std::size_t n = 0; n < p.size(); ++n) {
                np += p[n] == c;
                nr += r[n] == c;
                both += p[n] == c && r[n] == c;
            }
            const double expected = np + nr == 0 ? 1.0 : 2.0 * static_cast<double>(both) / static_cast<double>(np + nr);
            t.require(rep.per_class.at(c) == expected, "pair " + std::to_string(i) + " class " + std::to_string(c));
            sum += expected;
        }
        t.require(std::abs(rep.global - sum / 3.0) <= kAggregateTol, "class mean, pair " + std::to_string(i));
        reports.push_back(rep);
        hand_globals.push_back(sum / 3.0);
    }
    const double hand = std::accumulate(hand_globals.begin(), hand_globals.end(), 0.0) / kDicePairs;
    t.require(std::abs(aggregate_subjects(reports) - hand) <= kAggregateTol, "subject mean");
    return t.outcome(std::to_string(kDicePairs) + " pairs exact, aggregation within 1e-12");
}

Outcome wilcoxon_fixture() {
    // Reference values from scipy.stats.wilcoxon (tests/oracles/wilcoxon_fixtures.py).
    const std::vector<double> a{0.912, 0.874, 0.801, 0.933, 0.765, 0.889, 0.842, 0.905, 0.798, 0.861};
    const std::vector<double> b{0.903, 0.851, 0.822, 0.899, 0.702, 0.874, 0.847, 0.861, 0.745, 0.828};
    Tally t;
    const StatResult r = wilcoxon_signed_rank(a, b);
    t.require(std::abs(r.statistic - 5.0) <= kWilcoxonTol, "W = " + std::to_string(r.statistic));
    t.require(std::abs(r.p_value - 0.01953125) <= kWilcoxonTol, "p = " + std::to_string(r.p_value));
    t.require(r.significant == (r.p_value < 0.05), "significance flag");

    const StatResult swapped = wilcoxon_signed_rank(b, a);
    t.require(swapped.statistic == r.statistic && std::abs(swapped.p_value - r.p_value) <= 1e-15, "symmetry");

    bool degenerate = false;
    try {
        wilcoxon_signed_rank(a, a);
    } catch (const DegenerateDataError&) {
        degenerate = true;
    }
    t.require(degenerate, "identical samples not reported as degenerate");

    std::vector<double> with_zero(b);
    with_zero[0] = a[0];
    const StatResult dropped = wilcoxon_signed_rank(a, with_zero);
    t.require(dropped.n_effective == 9, "zero difference not dropped");

    char d[96];
    std::snprintf(d, sizeof d, "W=%.1f p=%.8f, symmetric, degenerate rejected", r.statistic, r.p_value);
    return t.outcome(d);
}

Outcome cli_determinism() {
    TempDir dir;
    Tally t;
    const Sample s = make_synthetic_sample({48, 40, 32}, 5);
    nifti::save(s.image, dir / "img.nii.gz");
    nifti::save(s.labels, dir / "lab.nii.gz");

    double worst = 0.0;
    for (const char* tag : {"a", "b"}) {
        const auto t0 = std::chrono::steady_clock::now();
        const int code = run_cli({"pipeline", "--config", VOXELAUG_DEFAULT_CONFIG, "--seed", "42", "--sample-id", "7",
                                  "--epoch", "3", "--image", (dir / "img.nii.gz").string(), "--label",
                                  (dir / "lab.nii.gz").string(), "--out-image",
                                  (dir / (std::string("o_") + tag + ".nii.gz")).string(), "--out-label",
                                  (dir / (std::string("l_") + tag + ".nii.gz")).string()},
                                 dir / "log.txt");
        worst = std::max(worst, seconds_since(t0));
        t.require(code == 0, "pipeline exit code " + std::to_string(code) + ": " + read_bytes(dir / "log.txt"));
    }
    t.require(read_bytes(dir / "o_a.nii.gz") == read_bytes(dir / "o_b.nii.gz"), "image bytes differ");
    t.require(read_bytes(dir / "l_a.nii.gz") == read_bytes(dir / "l_b.nii.gz"), "label bytes differ");

    fs::create_directories(dir / "in" / "images");
    fs::create_directories(dir / "in" / "labels");
    for (int i = 0; i < 6; ++i) {
        const Sample c = make_synthetic_sample({40, 36, 32}, 100 + static_cast<std::uint64_t>(i));
        const std::string name = "case" + std::to_string(i) + ".nii.gz";
        nifti::save(c.image, dir / "in" / "images" / name);
        nifti::save(c.labels, dir / "in" / "labels" / name);
    }
    for (const char* workers : {"1", "3"}) {
        const auto t0 = std::chrono::steady_clock::now();
        const int code = run_cli({"pipeline", "--config", VOXELAUG_DEFAULT_CONFIG, "--seed", "42", "--epoch", "1",
                                  "--input-dir", (dir / "in").string(), "--output-dir",
                                  (dir / (std::string("w") + workers)).string(), "--workers", workers},
                                 dir / "log.txt");
        worst = std::max(worst, seconds_since(t0));
        t.require(code == 0, "batch exit code " + std::to_string(code) + ": " + read_bytes(dir / "log.txt"));
    }
    for (int i = 0; i < 6; ++i) {
        for (const char* sub : {"images", "labels"}) {
            const std::string name = "case" + std::to_string(i) + ".nii.gz";
            const std::string one = read_bytes(dir / "w1" / sub / name);
            t.require(!one.empty() && one == read_bytes(dir / "w3" / sub / name), std::string(sub) + "/" + name + " differs");
        }
    }
    t.require(worst < kCheckSeconds, "a check took " + std::to_string(worst) + " s");
    char d[128];
    std::snprintf(d, sizeof d, "byte-identical across 2 runs and workers 1 vs 3, slowest check %.2f s", worst);
    return t.outcome(d);
}

Outcome ablation_set() {
    TempDir dir;
    Tally t;
    const int code = run_cli({"ablate", "--out", (dir / "abl").string(), "--seed", "3"}, dir / "log.txt");
    t.require(code == 0, "ablate exit code " + std::to_string(code));
    std::set<std::string> expected{"base", "ours", "ours_base_disabled", "ours_random_order"};
    for (const auto& n : novel_transform_names()) {
        expected.insert("base_plus_" + n);
    }
    std::set<std::string> found;
    for (const auto& e : fs::directory_iterator(dir / "abl")) {
        found.insert(e.path().stem().string());
    }
    t.require(found == expected, "variant files differ from the expected 12");
    for (const auto& n : novel_transform_names()) {
        const auto doc = nlohmann::json::parse(read_bytes(dir / "abl" / ("base_plus_" + n + ".json")));
        t.require(doc.at("novel").size() == 1 && doc.at("novel")[0].at("name") == n &&
                      doc.at("novel")[0].at("probability").get<double>() == 0.5,
                  "base_plus_" + n + " is not a single spec at 0.5");
    }
    const auto base = nlohmann::json::parse(read_bytes(dir / "abl" / "base.json"));
    t.require(base.at("novel").empty(), "base has novel specs");
    const auto shuffled = nlohmann::json::parse(read_bytes(dir / "abl" / "ours_random_order.json"));
    t.require(shuffled.at("order_mode") == "shuffle_non_geometric", "ours_random_order is not shuffled");
    const auto disabled = nlohmann::json::parse(read_bytes(dir / "abl" / "ours_base_disabled.json"));
    for (const auto& spec : disabled.at("baseline_intensity")) {
        t.require(spec.at("probability").get<double>() == 0.0, "ours_base_disabled keeps a baseline transform");
    }
    return t.outcome("12 variants, base_plus_X at p=0.5");
}

Outcome performance() {
    TempDir dir;
    Tally t;
    const auto t0 = std::chrono::steady_clock::now();
    const int code = run_cli({"bench", "--config", VOXELAUG_DEFAULT_CONFIG, "--force-all", "--patch", "128,128,128",
                              "--iters", "50", "--warmup", "5", "--workers", "1", "--json",
                              (dir / "bench.json").string()},
                             dir / "log.txt");
    const double elapsed = seconds_since(t0);
    t.require(code == 0, "bench exit code " + std::to_string(code) + ": " + read_bytes(dir / "log.txt"));
    if (code != 0) {
        return t.outcome("");
    }
    const auto doc = nlohmann::json::parse(read_bytes(dir / "bench.json"));
    const double ms = doc.at("ms_per_patch").get<double>();
    const double total = doc.at("total_ms").get<double>();
    const double overhead = doc.at("overhead_ms").get<double>();
    const int iters = doc.at("iterations").get<int>();
    double transforms = 0.0;
    for (const auto& [name, v] : doc.at("per_transform_ms").items()) {
        transforms += v.get<double>();
    }
    t.require(doc.at("workers").get<int>() == 1, "more than one worker");
    t.require(doc.at("per_transform_ms").size() == 14, "per-transform table incomplete");
    t.require(ms <= kPatchBudgetMs, "ms per patch " + std::to_string(ms));
    t.require(std::abs(total - ms * iters) <= 1e-9 * total, "total_ms != ms_per_patch * iterations");
    t.require(overhead >= 0.0 && std::abs(transforms + overhead - ms) <= 1e-9 * ms, "transform times + overhead != ms_per_patch");
    t.require(elapsed <= kBenchSeconds, "bench took " + std::to_string(elapsed) + " s");
    char d[128];
    std::snprintf(d, sizeof d, "%.1f ms per 128^3 patch (budget %.0f), bench %.1f s, accounting holds", ms,
                  kPatchBudgetMs, elapsed);
    return t.outcome(d);
}

Outcome preprocess_identity() {
    TempDir dir;
    Tally t;
    const Sample s = make_synthetic_sample({40, 36, 28}, 9);
    nifti::save(s.image, dir / "img.nii.gz");
    nifti::save(s.labels, dir / "lab.nii.gz");
    int code = run_cli({"preprocess", "--image", (dir / "img.nii.gz").string(), "--label",
                        (dir / "lab.nii.gz").string(), "--out-image", (dir / "p.nii.gz").string(), "--out-label",
                        (dir / "pl.nii.gz").string()},
                       dir / "log.txt");
    t.require(code == 0, "preprocess exit code " + std::to_string(code) + ": " + read_bytes(dir / "log.txt"));
    double worst = 0.0;
    if (code == 0) {
        const Volume out = nifti::load_volume(dir / "p.nii.gz");
        t.require(out.geometry().matches(s.image.geometry()), "PIR 1 mm geometry changed");
        if (out.size() == s.image.size()) {
            for (std::size_t n = 0; n < out.size(); ++n) {
                worst = std::max(worst, static_cast<double>(std::abs(out[n] - s.image[n])));
            }
        }
        t.require(worst <= kPreprocessTol, "max voxel change " + std::to_string(worst));
        t.require(nifti::load_labels(dir / "pl.nii.gz") == s.labels, "labels changed");
    }

    // RAS, 2 mm, dims (21, 17, 13): PIR axes take the A, S, R extents.
    const Dims ras_dims{21, 17, 13};
    const Geometry ras = Geometry::make(ras_dims, {2.0, 2.0, 2.0});
    auto gen = make_gen(12);
    nifti::save(random_volume(ras, gen), dir / "ras.nii.gz");
    nifti::save(random_labels(ras, gen), dir / "ras_lab.nii.gz");
    code = run_cli({"preprocess", "--image", (dir / "ras.nii.gz").string(), "--label",
                    (dir / "ras_lab.nii.gz").string(), "--out-image", (dir / "r.nii.gz").string(), "--out-label",
                    (dir / "rl.nii.gz").string()},
                   dir / "log.txt");
    t.require(code == 0, "RAS preprocess exit code " + std::to_string(code) + ": " + read_bytes(dir / "log.txt"));
    if (code == 0) {
        const Volume out = nifti::load_volume(dir / "r.nii.gz");
        const Dims expected{static_cast<int>(std::lround(ras_dims[1] * 2.0)), static_cast<int>(std::lround(ras_dims[2] * 2.0)),
                            static_cast<int>(std::lround(ras_dims[0] * 2.0))};
        t.require(out.orientation().str() == "PIR", "orientation " + out.orientation().str());
        t.require(out.dims() == expected, "dims formula not satisfied");
        for (double sp : out.spacing()) {
            t.require(std::abs(sp - 1.0) <= 1e-6, "spacing not 1 mm");
        }
        t.require(nifti::load_labels(dir / "rl.nii.gz").dims() == expected, "label dims differ");
    }
    char d[96];
    std::snprintf(d, sizeof d, "PIR identity max change %.2g; RAS 2 mm -> PIR 1 mm dims ok", worst);
    return t.outcome(d);
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"transform-invariants", transform_invariants},
        {"scharr-oracle", scharr_oracle},
        {"histeq-uniformity", histogram_uniformity},
        {"dice-oracle", dice_oracle},
        {"wilcoxon-fixture", wilcoxon_fixture},
        {"cli-determinism", cli_determinism},
        {"ablation-set", ablation_set},
        {"performance", performance},
        {"preprocess-identity", preprocess_identity},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
