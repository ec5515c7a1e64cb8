#pragma once

#include <array>
#include <cstdint>
#include <map>

#include "voxelaug/volume.hpp"

namespace voxelaug {

/// Permutes and flips grid axes so the result has orientation `target`.
/// No interpolation; world coordinates of every voxel are preserved.
Volume reorient(const Volume& v, const Orientation& target);
LabelMap reorient(const LabelMap& v, const Orientation& target);

enum class Interpolation { Trilinear, Nearest };

/// Resamples onto a grid with `target` spacing. New dims are
/// round(dim * spacing / target) (at least 1); voxel 0 keeps its world
/// position. Samples past the last source voxel replicate the edge.
Volume resample(const Volume& v, const Spacing& target, Interpolation mode);
/// Label maps only support nearest-neighbour; Trilinear is an ArgumentError.
LabelMap resample(const LabelMap& v, const Spacing& target,
                  Interpolation mode = Interpolation::Nearest);

/// Source label -> target class in {0,1,2,3}. Unmapped labels become 0
/// unless `strict`, in which case relabel throws UnmappedLabelError.
struct LabelMapping {
    std::map<int, std::uint8_t> entries;
    bool strict = false;

    /// Throws ArgumentError if any target is outside {0,1,2,3}.
    void validate() const;

    /// {0->0, 1->1, 2->2, 3->3}, strict.
    static LabelMapping identity();
};

LabelMap relabel(const LabelMap& labels, const LabelMapping& mapping);

struct Normalized {
    Volume volume;
    ValueRange range;  // of the input
};

/// Maps voxels to [0,1] by (v - min) / (max - min). A constant volume maps
/// to all zeros.
Normalized min_max_normalize(const Volume& v);

/// Inverse of min_max_normalize: v * (max - min) + min.
Volume restore_range(const Volume& normalized, ValueRange range);

/// Copies a `size` sub-grid starting at `origin` (may lie outside the
/// source). Image voxels outside the source take the source minimum,
/// labels take 0. The affine is shifted so shared voxels keep their world
/// position.
Sample extract_patch(const Sample& s, const std::array<int, 3>& origin, const Dims& size);

}  // namespace voxelaug
