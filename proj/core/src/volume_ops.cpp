#include "voxelaug/volume_ops.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "voxelaug/detail/sampling.hpp"

namespace voxelaug {
namespace {

template <typename T>
Grid<T> reorient_impl(const Grid<T>& v, const Orientation& target) {
    const Orientation source = v.orientation();
    if (source == target) {
        return v;
    }
    const Dims& old_dims = v.dims();
    std::array<int, 3> src_axis{};
    std::array<bool, 3> flip{};
    Dims new_dims{};
    for (int k = 0; k < 3; ++k) {
        const char want = target.letter(k);
        for (int j = 0; j < 3; ++j) {
            if (Orientation::world_axis(source.letter(j)) == Orientation::world_axis(want)) {
                src_axis[k] = j;
                flip[k] = source.letter(j) != want;
            }
        }
        new_dims[k] = old_dims[src_axis[k]];
    }

    // old_index = P * new_index + t
    Affine p = Affine::Zero();
    p(3, 3) = 1.0;
    Spacing new_spacing{};
    for (int k = 0; k < 3; ++k) {
        const int j = src_axis[k];
        p(j, k) = flip[k] ? -1.0 : 1.0;
        p(j, 3) = flip[k] ? static_cast<double>(old_dims[j] - 1) : 0.0;
        new_spacing[k] = v.spacing()[j];
    }
    Geometry g;
    g.dims = new_dims;
    g.spacing = new_spacing;
    g.affine = v.affine() * p;

    std::vector<T> out(v.size());
    std::array<long, 3> stride_old{1, old_dims[0], static_cast<long>(old_dims[0]) * old_dims[1]};
    // Per new axis: start offset and step in the old buffer.
    long base = 0;
    std::array<long, 3> step{};
    for (int k = 0; k < 3; ++k) {
        const int j = src_axis[k];
        if (flip[k]) {
            base += stride_old[j] * (old_dims[j] - 1);
            step[k] = -stride_old[j];
        } else {
            step[k] = stride_old[j];
        }
    }
    std::size_t n = 0;
    for (int z = 0; z < new_dims[2]; ++z) {
        for (int y = 0; y < new_dims[1]; ++y) {
            long src = base + step[2] * z + step[1] * y;
            for (int x = 0; x < new_dims[0]; ++x, ++n, src += step[0]) {
                out[n] = v[static_cast<std::size_t>(src)];
            }
        }
    }
    return Grid<T>(g, std::move(out));
}

Geometry resampled_geometry(const Geometry& in, const Spacing& target) {
    Geometry g = in;
    for (int a = 0; a < 3; ++a) {
        const double t = target[a];
        if (!(t > 0.0) || !std::isfinite(t)) {
            throw ArgumentError("target spacing must be positive on every axis");
        }
        const double extent = static_cast<double>(in.dims[a]) * in.spacing[a] / t;
        g.dims[a] = std::max(1, static_cast<int>(std::lround(extent)));
        g.spacing[a] = t;
        const double ratio = t / in.spacing[a];
        g.affine.col(a).head<3>() = in.affine.col(a).head<3>() * ratio;
    }
    return g;
}

}  // namespace

Volume reorient(const Volume& v, const Orientation& target) { return reorient_impl(v, target); }
LabelMap reorient(const LabelMap& v, const Orientation& target) { return reorient_impl(v, target); }

Volume resample(const Volume& v, const Spacing& target, Interpolation mode) {
    const Geometry g = resampled_geometry(v.geometry(), target);
    std::array<detail::AxisSamples, 3> axes;
    for (int a = 0; a < 3; ++a) {
        const double ratio = target[a] / v.spacing()[a];
        axes[a] = detail::AxisSamples::scaled(g.dims[a], v.dims()[a], ratio);
    }
    std::vector<float> out = mode == Interpolation::Trilinear
                                 ? detail::sample_separable_linear(v, axes)
                                 : detail::sample_separable_nearest(v, axes);
    return Volume(g, std::move(out));
}

LabelMap resample(const LabelMap& v, const Spacing& target, Interpolation mode) {
    if (mode != Interpolation::Nearest) {
        throw ArgumentError("label maps can only be resampled with nearest-neighbour");
    }
    const Geometry g = resampled_geometry(v.geometry(), target);
    std::array<detail::AxisSamples, 3> axes;
    for (int a = 0; a < 3; ++a) {
        const double ratio = target[a] / v.spacing()[a];
        axes[a] = detail::AxisSamples::scaled(g.dims[a], v.dims()[a], ratio);
    }
    return LabelMap(g, detail::sample_separable_nearest(v, axes));
}

void LabelMapping::validate() const {
    for (const auto& [from, to] : entries) {
        if (to > 3) {
            throw ArgumentError("label mapping target " + std::to_string(to) + " for source " +
                                std::to_string(from) + " is outside {0,1,2,3}");
        }
    }
}

LabelMapping LabelMapping::identity() {
    return LabelMapping{{{0, 0}, {1, 1}, {2, 2}, {3, 3}}, true};
}

LabelMap relabel(const LabelMap& labels, const LabelMapping& mapping) {
    mapping.validate();
    std::array<int, 256> lut{};
    lut.fill(mapping.strict ? -1 : 0);
    for (const auto& [from, to] : mapping.entries) {
        if (from >= 0 && from < 256) {
            lut[static_cast<std::size_t>(from)] = to;
        }
    }
    std::vector<std::uint8_t> out(labels.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
        const int mapped = lut[labels[n]];
        if (mapped < 0) {
            throw UnmappedLabelError(labels[n], "label " + std::to_string(labels[n]) +
                                                    " has no entry in the label mapping");
        }
        out[n] = static_cast<std::uint8_t>(mapped);
    }
    return labels.with_voxels(std::move(out));
}

Normalized min_max_normalize(const Volume& v) {
    const ValueRange range = value_range(v);
    std::vector<float> out(v.size(), 0.0f);
    const double extent = static_cast<double>(range.max) - static_cast<double>(range.min);
    if (extent > 0.0) {
        const double scale = 1.0 / extent;
        for (std::size_t n = 0; n < out.size(); ++n) {
            const double x = (static_cast<double>(v[n]) - range.min) * scale;
            out[n] = static_cast<float>(std::clamp(x, 0.0, 1.0));
        }
    }
    return {v.with_voxels(std::move(out)), range};
}

Volume restore_range(const Volume& normalized, ValueRange range) {
    const double extent = static_cast<double>(range.max) - static_cast<double>(range.min);
    std::vector<float> out(normalized.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = static_cast<float>(static_cast<double>(normalized[n]) * extent + range.min);
    }
    return normalized.with_voxels(std::move(out));
}

Sample extract_patch(const Sample& s, const std::array<int, 3>& origin, const Dims& size) {
    s.validate();
    for (int d : size) {
        if (d < 1) {
            throw ArgumentError("patch size must be >= 1 on every axis");
        }
    }
    Geometry g = s.image.geometry();
    g.dims = size;
    Affine shift = Affine::Identity();
    for (int a = 0; a < 3; ++a) {
        shift(a, 3) = origin[a];
    }
    g.affine = s.image.affine() * shift;

    const float fill = value_range(s.image).min;
    Volume image(g, fill);
    LabelMap labels(g, std::uint8_t{0});
    const Dims& src = s.image.dims();
    // Overlap in patch coordinates.
    std::array<int, 3> lo{}, hi{};
    for (int a = 0; a < 3; ++a) {
        lo[a] = std::clamp(-origin[a], 0, size[a]);
        hi[a] = std::clamp(src[a] - origin[a], 0, size[a]);
    }
    for (int z = lo[2]; z < hi[2]; ++z) {
        for (int y = lo[1]; y < hi[1]; ++y) {
            for (int x = lo[0]; x < hi[0]; ++x) {
                image(x, y, z) = s.image(x + origin[0], y + origin[1], z + origin[2]);
                labels(x, y, z) = s.labels(x + origin[0], y + origin[1], z + origin[2]);
            }
        }
    }
    return {std::move(image), std::move(labels)};
}

}  // namespace voxelaug
