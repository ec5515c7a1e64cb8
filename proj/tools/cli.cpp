#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "voxelaug/bench.hpp"
#include "voxelaug/config.hpp"
#include "voxelaug/error.hpp"
#include "voxelaug/metrics.hpp"
#include "voxelaug/nifti.hpp"
#include "voxelaug/parallel.hpp"
#include "voxelaug/pipeline.hpp"
#include "voxelaug/volume_ops.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace voxelaug::cli {
namespace {

template <typename T>
std::array<T, 3> parse_triple(const std::string& text, const char* what) {
    std::array<T, 3> out{};
    std::stringstream in(text);
    std::string part;
    std::size_t n = 0;
    while (std::getline(in, part, ',')) {
        if (n == 3) {
            throw ArgumentError(std::string(what) + " needs exactly three comma-separated values");
        }
        try {
            std::size_t used = 0;
            if constexpr (std::is_integral_v<T>) {
                out[n] = static_cast<T>(std::stol(part, &used));
            } else {
                out[n] = static_cast<T>(std::stod(part, &used));
            }
            if (used != part.size()) {
                throw std::invalid_argument(part);
            }
        } catch (const std::logic_error&) {
            throw ArgumentError(std::string(what) + ": cannot parse '" + part + "'");
        }
        ++n;
    }
    if (n != 3) {
        throw ArgumentError(std::string(what) + " needs exactly three comma-separated values");
    }
    return out;
}

json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot read " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": invalid JSON: " + e.what());
    }
}

Sample load_sample(const fs::path& image, const std::optional<fs::path>& label) {
    Volume v = nifti::load_volume(image);
    LabelMap l = label ? nifti::load_labels(*label) : LabelMap(v.geometry(), std::uint8_t{0});
    Sample s{std::move(v), std::move(l)};
    s.validate();
    return s;
}

std::vector<fs::path> list_nifti(const fs::path& dir) {
    if (!fs::is_directory(dir)) {
        throw DataError("not a directory: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && nifti::is_nifti_path(entry.path())) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) {
        throw WriteError("cannot write " + path.string());
    }
}

// ---------------------------------------------------------------- preprocess

LabelMapping load_mapping(const fs::path& path) {
    const json doc = read_json_file(path);
    if (!doc.is_object()) {
        throw ConfigError(path.string() + ": mapping must be an object");
    }
    LabelMapping m;
    m.strict = false;
    for (const auto& [key, value] : doc.items()) {
        if (key == "strict") {
            if (!value.is_boolean()) {
                throw ConfigError(path.string() + ": 'strict' must be a boolean");
            }
            m.strict = value.get<bool>();
        } else if (key == "entries") {
            if (!value.is_object()) {
                throw ConfigError(path.string() + ": 'entries' must be an object");
            }
            for (const auto& [from, to] : value.items()) {
                int source = 0;
                try {
                    std::size_t used = 0;
                    source = std::stoi(from, &used);
                    if (used != from.size()) {
                        throw std::invalid_argument(from);
                    }
                } catch (const std::logic_error&) {
                    throw ConfigError(path.string() + ": bad source label '" + from + "'");
                }
                if (!to.is_number_integer() || to.get<int>() < 0 || to.get<int>() > 255) {
                    throw ConfigError(path.string() + ": target of '" + from + "' must be in [0, 255]");
                }
                m.entries[source] = static_cast<std::uint8_t>(to.get<int>());
            }
        } else {
            throw ConfigError(path.string() + ": unknown key '" + key + "'");
        }
    }
    try {
        m.validate();
    } catch (const ArgumentError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return m;
}

void add_preprocess(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("preprocess", "Reorient, resample and relabel an image/label pair");
    struct Opts {
        std::string image, label, out_image, out_label, mapping;
        std::string spacing = "1,1,1";
        std::string orientation = "PIR";
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--image", o->image, "Input image (.nii/.nii.gz)")->required();
    cmd->add_option("--label", o->label, "Input label map");
    cmd->add_option("--out-image", o->out_image, "Output image")->required();
    cmd->add_option("--out-label", o->out_label, "Output label map");
    cmd->add_option("--mapping", o->mapping, "Label mapping JSON {\"entries\":{...},\"strict\":bool}");
    cmd->add_option("--spacing", o->spacing, "Target spacing in mm")->capture_default_str();
    cmd->add_option("--orientation", o->orientation, "Target orientation code")->capture_default_str();
    cmd->callback([&action, &out, o] {
        action = [&out, o] {
            if (o->label.empty() != o->out_label.empty()) {
                throw ArgumentError("--label and --out-label must be given together");
            }
            const auto spacing = parse_triple<double>(o->spacing, "--spacing");
            const Orientation target = Orientation::parse(o->orientation);
            const LabelMapping mapping =
                o->mapping.empty() ? LabelMapping::identity() : load_mapping(o->mapping);

            Volume image = nifti::load_volume(o->image);
            image = resample(reorient(image, target), spacing, Interpolation::Trilinear);
            if (!o->label.empty()) {
                LabelMap labels = nifti::load_labels(o->label);
                labels = relabel(resample(reorient(labels, target), spacing), mapping);
                Sample{image, labels}.validate();
                nifti::save(labels, o->out_label);
            }
            nifti::save(image, o->out_image);
            const auto d = image.dims();
            out << "preprocessed " << o->image << " -> " << d[0] << "x" << d[1] << "x" << d[2] << " "
                << image.orientation().str() << "\n";
        };
    });
}

// ---------------------------------------------------------------- augment

void add_augment(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("augment", "Apply one named transform with explicit parameters");
    struct Opts {
        std::string transform, params, params_file, image, label, out_image, out_label;
        std::uint64_t seed = 0, substream = 0;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--transform", o->transform, "Transform name")->required();
    cmd->add_option("--params", o->params, "Inline JSON parameter object");
    cmd->add_option("--params-file", o->params_file, "JSON parameter file");
    cmd->add_option("--seed", o->seed, "Random seed")->capture_default_str();
    cmd->add_option("--substream", o->substream, "Random substream")->capture_default_str();
    cmd->add_option("--image", o->image, "Input image")->required();
    cmd->add_option("--label", o->label, "Input label map");
    cmd->add_option("--out-image", o->out_image, "Output image")->required();
    cmd->add_option("--out-label", o->out_label, "Output label map");
    cmd->callback([&action, &out, o] {
        action = [&out, o] {
            if (!o->params.empty() && !o->params_file.empty()) {
                throw ArgumentError("--params and --params-file are mutually exclusive");
            }
            if (!o->out_label.empty() && o->label.empty()) {
                throw ArgumentError("--out-label needs --label");
            }
            if (find_transform(o->transform) == nullptr) {
                throw ArgumentError("unknown transform '" + o->transform + "'");
            }
            json params = json::object();
            if (!o->params.empty()) {
                try {
                    params = json::parse(o->params);
                } catch (const json::exception& e) {
                    throw ArgumentError(std::string("--params is not valid JSON: ") + e.what());
                }
            } else if (!o->params_file.empty()) {
                params = read_json_file(o->params_file);
            }
            TransformSpec spec = TransformSpec::make(o->transform, 1.0);
            spec.params = config::params_from_json(o->transform, params);

            const Sample input = load_sample(
                o->image, o->label.empty() ? std::nullopt : std::optional<fs::path>(o->label));
            RngStream rng(o->seed, o->substream);
            const Sample result = apply_transform(input, spec, rng);
            nifti::save(result.image, o->out_image);
            if (!o->out_label.empty()) {
                nifti::save(result.labels, o->out_label);
            }
            out << "applied " << o->transform << " -> " << o->out_image << "\n";
        };
    });
}

// ---------------------------------------------------------------- pipeline

PipelineConfig load_config_or_default(const std::string& path) {
    return path.empty() ? default_config() : config::load(path);
}

void add_pipeline(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("pipeline", "Apply a full pipeline config");
    struct Opts {
        std::string config, image, label, out_image, out_label, input_dir, output_dir;
        std::optional<std::uint64_t> seed;
        std::uint64_t sample_id = 0, epoch = 0;
        int workers = 0;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--config", o->config, "Pipeline config JSON (default: built-in defaults)");
    cmd->add_option("--seed", o->seed, "Overrides the config's global_seed");
    cmd->add_option("--sample-id", o->sample_id, "Sample id (batch mode: id of the first file)")->capture_default_str();
    cmd->add_option("--epoch", o->epoch, "Epoch")->capture_default_str();
    cmd->add_option("--image", o->image, "Input image");
    cmd->add_option("--label", o->label, "Input label map");
    cmd->add_option("--out-image", o->out_image, "Output image");
    cmd->add_option("--out-label", o->out_label, "Output label map");
    cmd->add_option("--input-dir", o->input_dir, "Batch input with images/ and labels/ subfolders");
    cmd->add_option("--output-dir", o->output_dir, "Batch output directory");
    cmd->add_option("--workers", o->workers, "Batch workers (0: VOXELAUG_THREADS or all cores)")->capture_default_str();
    cmd->callback([&action, &out, o] {
        action = [&out, o] {
            PipelineConfig cfg = load_config_or_default(o->config);
            if (o->seed) {
                cfg.global_seed = *o->seed;
            }
            const bool batch = !o->input_dir.empty() || !o->output_dir.empty();
            const bool single = !o->image.empty() || !o->label.empty() || !o->out_image.empty() ||
                                !o->out_label.empty();
            if (batch == single) {
                throw ArgumentError("give either --image/--label/--out-image/--out-label or --input-dir/--output-dir");
            }
            if (single) {
                if (o->image.empty() || o->label.empty() || o->out_image.empty() || o->out_label.empty()) {
                    throw ArgumentError("--image, --label, --out-image and --out-label are all required");
                }
                const Sample input = load_sample(o->image, fs::path(o->label));
                const Sample result = apply_pipeline(input, cfg, o->sample_id, o->epoch);
                nifti::save(result.image, o->out_image);
                nifti::save(result.labels, o->out_label);
                out << "augmented " << o->image << "\n";
                return;
            }
            if (o->input_dir.empty() || o->output_dir.empty()) {
                throw ArgumentError("--input-dir and --output-dir must be given together");
            }
            const fs::path in_dir(o->input_dir);
            const fs::path out_dir(o->output_dir);
            const auto images = list_nifti(in_dir / "images");
            if (images.empty()) {
                throw DataError("no NIfTI images in " + (in_dir / "images").string());
            }
            for (const auto& img : images) {
                if (!fs::exists(in_dir / "labels" / img.filename())) {
                    throw DataError("missing label map for " + img.filename().string());
                }
            }
            fs::create_directories(out_dir / "images");
            fs::create_directories(out_dir / "labels");
            const int workers = resolve_workers(o->workers);
            parallel_for(images.size(), workers, [&](std::size_t i) {
                const auto name = images[i].filename();
                const Sample input = load_sample(images[i], in_dir / "labels" / name);
                const Sample result = apply_pipeline(input, cfg, o->sample_id + i, o->epoch);
                nifti::save(result.image, out_dir / "images" / name);
                nifti::save(result.labels, out_dir / "labels" / name);
            });
            out << "augmented " << images.size() << " samples with " << workers << " worker(s)\n";
        };
    });
}

// ---------------------------------------------------------------- ablate

void add_ablate(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("ablate", "Write every ablation variant config into a directory");
    struct Opts {
        std::string out_dir;
        std::uint64_t seed = 0;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--out", o->out_dir, "Output directory")->required();
    cmd->add_option("--seed", o->seed, "global_seed of every variant")->capture_default_str();
    cmd->callback([&action, &out, o] {
        action = [&out, o] {
            const fs::path dir(o->out_dir);
            fs::create_directories(dir);
            for (const auto& variant : ablation_variants()) {
                config::save(make_ablation_config(o->seed, variant), dir / (variant + ".json"));
                out << variant << "\n";
            }
        };
    });
}

// ---------------------------------------------------------------- eval

struct SetupResult {
    std::string name;
    std::map<std::string, DiceReport> subjects;  // sorted by subject id
};

void add_eval(CLI::App& app, std::function<void()>& action, std::ostream& out, std::ostream& err) {
    auto* cmd = app.add_subcommand("eval", "Dice CSVs and significance matrix from prediction directories");
    struct Opts {
        std::string ref, out_dir;
        std::vector<std::string> preds;
        int workers = 0;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--ref", o->ref, "Reference label directory")->required();
    cmd->add_option("--pred", o->preds, "Prediction setup as NAME=DIR (repeatable)")->required();
    cmd->add_option("--out", o->out_dir, "Output directory for CSVs")->required();
    cmd->add_option("--workers", o->workers, "Workers (0: VOXELAUG_THREADS or all cores)")->capture_default_str();
    cmd->callback([&action, &out, &err, o] {
        action = [&out, &err, o] {
            std::map<std::string, fs::path> refs;
            for (const auto& p : list_nifti(o->ref)) {
                refs[nifti::stem(p)] = p;
            }
            std::vector<std::pair<std::string, fs::path>> setups;
            for (const auto& spec : o->preds) {
                const auto eq = spec.find('=');
                if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
                    throw ArgumentError("--pred expects NAME=DIR, got '" + spec + "'");
                }
                const std::string name = spec.substr(0, eq);
                const bool valid = std::all_of(name.begin(), name.end(), [](char c) {
                    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
                });
                if (!valid) {
                    throw ArgumentError("setup name '" + name + "' may only use [A-Za-z0-9_.-]");
                }
                for (const auto& s : setups) {
                    if (s.first == name) {
                        throw ArgumentError("duplicate setup name '" + name + "'");
                    }
                }
                setups.emplace_back(name, spec.substr(eq + 1));
            }

            const int workers = resolve_workers(o->workers);
            std::vector<SetupResult> results;
            for (const auto& [name, dir] : setups) {
                std::map<std::string, fs::path> preds;
                for (const auto& p : list_nifti(dir)) {
                    preds[nifti::stem(p)] = p;
                }
                std::vector<std::string> paired;
                for (const auto& [stem, path] : preds) {
                    if (refs.contains(stem)) {
                        paired.push_back(stem);
                    } else {
                        err << "warning: " << name << ": no reference for " << path.filename().string() << "\n";
                    }
                }
                for (const auto& [stem, path] : refs) {
                    if (!preds.contains(stem)) {
                        err << "warning: " << name << ": no prediction for " << path.filename().string() << "\n";
                    }
                }
                if (paired.empty()) {
                    throw DataError("setup '" + name + "' has no prediction/reference pairs");
                }
                std::vector<DiceReport> reports(paired.size());
                parallel_for(paired.size(), workers, [&](std::size_t i) {
                    reports[i] = dice_per_class(nifti::load_labels(preds.at(paired[i])),
                                                nifti::load_labels(refs.at(paired[i])));
                });
                SetupResult r{name, {}};
                for (std::size_t i = 0; i < paired.size(); ++i) {
                    r.subjects[paired[i]] = reports[i];
                }
                results.push_back(std::move(r));
            }

            const fs::path dir(o->out_dir);
            fs::create_directories(dir);
            std::string summary = "setup,n_subjects,dice_vertebra,dice_ivd,dice_canal,dice_global\n";
            for (const auto& r : results) {
                std::string csv = "subject_id,dice_vertebra,dice_ivd,dice_canal,dice_global\n";
                std::vector<DiceReport> reports;
                std::array<double, 3> class_sum{};
                for (const auto& [subject, rep] : r.subjects) {
                    csv += subject;
                    for (std::size_t c = 0; c < kSpineClasses.size(); ++c) {
                        const double d = rep.per_class.at(kSpineClasses[c]);
                        class_sum[c] += d;
                        csv += "," + fixed6(d);
                    }
                    csv += "," + fixed6(rep.global) + "\n";
                    reports.push_back(rep);
                }
                write_text(dir / ("dice_" + r.name + ".csv"), csv);
                const double n = static_cast<double>(reports.size());
                summary += r.name + "," + std::to_string(reports.size());
                for (double s : class_sum) {
                    summary += "," + fixed6(s / n);
                }
                summary += "," + fixed6(aggregate_subjects(reports)) + "\n";
            }
            write_text(dir / "summary.csv", summary);

            std::string matrix = "setup";
            for (const auto& r : results) {
                matrix += "," + r.name;
            }
            matrix += "\n";
            for (const auto& a : results) {
                matrix += a.name;
                for (const auto& b : results) {
                    double p = 1.0;
                    bool sig = false;
                    if (&a != &b) {
                        std::vector<double> xa, xb;
                        for (const auto& [subject, rep] : a.subjects) {
                            if (auto it = b.subjects.find(subject); it != b.subjects.end()) {
                                xa.push_back(rep.global);
                                xb.push_back(it->second.global);
                            }
                        }
                        if (!xa.empty()) {
                            try {
                                const StatResult s = wilcoxon_signed_rank(xa, xb);
                                p = s.p_value;
                                sig = s.significant;
                            } catch (const DegenerateDataError&) {
                                // identical scores: no evidence of a difference
                            }
                        }
                    }
                    char cell[48];
                    std::snprintf(cell, sizeof cell, ",p=%.6g;sig=%d", p, sig ? 1 : 0);
                    matrix += cell;
                }
                matrix += "\n";
            }
            write_text(dir / "significance.csv", matrix);
            out << "evaluated " << results.size() << " setup(s) against " << refs.size()
                << " reference(s)\n";
        };
    });
}

// ---------------------------------------------------------------- bench

void add_bench(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("bench", "Time the pipeline on synthetic patches");
    struct Opts {
        std::string config, json_path;
        std::string patch = "128,128,128";
        std::string mode = "pipeline";
        int iters = 50, warmup = 5, workers = 1;
        std::uint64_t seed = 0;
        bool force_all = false;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--config", o->config, "Pipeline config JSON (default: built-in defaults)");
    cmd->add_option("--patch", o->patch, "Patch dims")->capture_default_str();
    cmd->add_option("--iters", o->iters, "Timed iterations")->capture_default_str();
    cmd->add_option("--warmup", o->warmup, "Untimed warmup iterations")->capture_default_str();
    cmd->add_option("--workers", o->workers, "Workers (0: VOXELAUG_THREADS or all cores)")->capture_default_str();
    cmd->add_option("--mode", o->mode, "pipeline | per-transform")->capture_default_str();
    cmd->add_option("--seed", o->seed, "Synthetic sample seed")->capture_default_str();
    cmd->add_flag("--force-all", o->force_all, "Force every probability to 1 in pipeline mode");
    cmd->add_option("--json", o->json_path, "Write the report as JSON");
    cmd->callback([&action, &out, o] {
        action = [&out, o] {
            BenchOptions opts;
            PipelineConfig cfg = load_config_or_default(o->config);
            if (o->force_all) {
                cfg = force_all_probabilities(cfg);
            }
            opts.config_name = o->config.empty() ? "default" : fs::path(o->config).stem().string();
            opts.patch_dims = parse_triple<int>(o->patch, "--patch");
            opts.iterations = o->iters;
            opts.warmup = o->warmup;
            opts.workers = resolve_workers(o->workers);
            opts.mode = parse_bench_mode(o->mode);
            opts.seed = o->seed;
            const BenchReport report = run_benchmark(cfg, opts);
            out << format_report(report);
            if (!o->json_path.empty()) {
                write_text(o->json_path, to_json(report).dump(2) + "\n");
            }
        };
    });
}

// ---------------------------------------------------------------- preview

Volume normalized_mid_slice(const Volume& v) {
    const auto d = v.dims();
    const int z = d[2] / 2;
    const ValueRange r = value_range(v);
    const double extent = r.extent();
    Volume slice(Geometry::make({d[0], d[1], 1}, {v.spacing()[0], v.spacing()[1], 1.0}), 0.0f);
    for (int y = 0; y < d[1]; ++y) {
        for (int x = 0; x < d[0]; ++x) {
            const double value = v(x, y, z);
            slice(x, y, 0) = extent > 0.0 ? static_cast<float>((value - r.min) / extent) : 0.0f;
        }
    }
    return slice;
}

void add_preview(CLI::App& app, std::function<void()>& action, std::ostream& out) {
    auto* cmd = app.add_subcommand("preview", "Mid-slice montage of the appearance transforms");
    struct Opts {
        std::string config, image, label, out_path;
        std::uint64_t seed = 0;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--config", o->config, "Config supplying the transform parameters");
    cmd->add_option("--image", o->image, "Input image")->required();
    cmd->add_option("--label", o->label, "Input label map")->required();
    cmd->add_option("--out", o->out_path, "Output montage NIfTI")->required();
    cmd->add_option("--seed", o->seed, "Random seed")->capture_default_str();
    cmd->callback([&action, &out, o] {
        action = [&out, o] {
            const PipelineConfig cfg = load_config_or_default(o->config);
            const Sample input = load_sample(o->image, fs::path(o->label));
            std::vector<Volume> tiles{normalized_mid_slice(input.image)};
            std::vector<std::string> names{"original"};
            for (std::size_t k = 0; k < cfg.novel.size(); ++k) {
                RngStream rng(o->seed, k);
                tiles.push_back(normalized_mid_slice(apply_transform(input, cfg.novel[k], rng).image));
                names.push_back(cfg.novel[k].name);
            }
            const auto d = tiles.front().dims();
            const int count = static_cast<int>(tiles.size());
            Volume montage(Geometry::make({d[0] * count, d[1], 1}, tiles.front().spacing()), 0.0f);
            for (int t = 0; t < count; ++t) {
                for (int y = 0; y < d[1]; ++y) {
                    for (int x = 0; x < d[0]; ++x) {
                        montage(t * d[0] + x, y, 0) = tiles[static_cast<std::size_t>(t)](x, y, 0);
                    }
                }
            }
            nifti::save(montage, o->out_path);
            out << "montage tiles along axis 0:";
            for (const auto& n : names) {
                out << " " << n;
            }
            out << "\n";
        };
    });
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Volumetric augmentation toolkit for spine CT/MRI", "voxelaug"};
    app.require_subcommand(1);
    std::function<void()> action;
    add_preprocess(app, action, out);
    add_augment(app, action, out);
    add_pipeline(app, action, out);
    add_ablate(app, action, out);
    add_eval(app, action, out, err);
    add_bench(app, action, out);
    add_preview(app, action, out);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (action) {
            action();
        }
        return kExitOk;
    } catch (const ArgumentError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const fs::filesystem_error& e) {
        err << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace voxelaug::cli
