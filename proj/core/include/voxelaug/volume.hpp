#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "voxelaug/error.hpp"

namespace voxelaug {

using Dims = std::array<int, 3>;
using Spacing = std::array<double, 3>;
using Affine = Eigen::Matrix4d;

/// Three-letter anatomical axis code, one letter per grid axis. Each letter
/// names the direction the axis points toward ("PIR": axis 0 runs toward
/// posterior, axis 1 toward inferior, axis 2 toward right).
class Orientation {
public:
    Orientation() : code_{'R', 'A', 'S'} {}

    /// Throws ArgumentError unless the code has three letters from
    /// {R,L,A,P,S,I} covering three distinct anatomical axes.
    static Orientation parse(std::string_view code);

    /// Anatomical orientation of a voxel-to-world affine (world is RAS+).
    /// Each grid axis takes the letter of its dominant column component;
    /// ties between world axes are an ArgumentError.
    static Orientation from_affine(const Affine& affine);

    [[nodiscard]] char letter(int axis) const { return code_[static_cast<std::size_t>(axis)]; }
    [[nodiscard]] std::string str() const { return {code_.begin(), code_.end()}; }

    /// World axis (0 = R/L, 1 = A/P, 2 = S/I) a letter belongs to.
    static int world_axis(char letter);
    /// +1 if the letter is the positive RAS direction, -1 otherwise.
    static int world_sign(char letter);

    friend bool operator==(const Orientation&, const Orientation&) = default;

private:
    explicit Orientation(std::array<char, 3> code) : code_(code) {}
    std::array<char, 3> code_;
};

/// Grid shape and voxel-to-world mapping shared by images and label maps.
struct Geometry {
    Dims dims{1, 1, 1};
    Spacing spacing{1.0, 1.0, 1.0};
    Affine affine = Affine::Identity();

    /// Identity-direction geometry with the given dims and spacing.
    static Geometry make(Dims dims, Spacing spacing = {1.0, 1.0, 1.0});

    [[nodiscard]] std::size_t voxel_count() const {
        return static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]) *
               static_cast<std::size_t>(dims[2]);
    }
    [[nodiscard]] Orientation orientation() const { return Orientation::from_affine(affine); }

    /// Throws ArgumentError on non-positive dims or spacing or a singular affine.
    void validate() const;

    /// Exact dims, spacing and affine within `rel_tol` relative.
    [[nodiscard]] bool matches(const Geometry& other, double rel_tol = 1e-5) const;
};

/// Dense 3D grid. Axis 0 varies fastest in memory.
template <typename T>
class Grid {
public:
    using value_type = T;

    Grid() = default;
    explicit Grid(Geometry geometry, T fill = T{})
        : geometry_(std::move(geometry)), voxels_(geometry_.voxel_count(), fill) {
        geometry_.validate();
    }
    Grid(Geometry geometry, std::vector<T> voxels)
        : geometry_(std::move(geometry)), voxels_(std::move(voxels)) {
        geometry_.validate();
        if (voxels_.size() != geometry_.voxel_count()) {
            throw ShapeError("voxel buffer size does not match grid dims");
        }
    }

    [[nodiscard]] const Geometry& geometry() const { return geometry_; }
    [[nodiscard]] const Dims& dims() const { return geometry_.dims; }
    [[nodiscard]] const Spacing& spacing() const { return geometry_.spacing; }
    [[nodiscard]] const Affine& affine() const { return geometry_.affine; }
    [[nodiscard]] Orientation orientation() const { return geometry_.orientation(); }
    [[nodiscard]] std::size_t size() const { return voxels_.size(); }

    [[nodiscard]] std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(geometry_.dims[0]) *
                   (static_cast<std::size_t>(j) +
                    static_cast<std::size_t>(geometry_.dims[1]) * static_cast<std::size_t>(k));
    }

    T& operator()(int i, int j, int k) { return voxels_[index(i, j, k)]; }
    const T& operator()(int i, int j, int k) const { return voxels_[index(i, j, k)]; }
    T& operator[](std::size_t n) { return voxels_[n]; }
    const T& operator[](std::size_t n) const { return voxels_[n]; }

    [[nodiscard]] std::span<T> voxels() { return voxels_; }
    [[nodiscard]] std::span<const T> voxels() const { return voxels_; }

    /// Same geometry, new buffer.
    [[nodiscard]] Grid with_voxels(std::vector<T> voxels) const {
        return Grid(geometry_, std::move(voxels));
    }

    /// Voxel-identical with matching geometry.
    friend bool operator==(const Grid& a, const Grid& b) {
        return a.geometry_.matches(b.geometry_) && a.voxels_ == b.voxels_;
    }

private:
    Geometry geometry_;
    std::vector<T> voxels_;
};

using Volume = Grid<float>;
using LabelMap = Grid<std::uint8_t>;

/// Image and reference segmentation on the same grid.
struct Sample {
    Volume image;
    LabelMap labels;

    /// Throws ShapeError if image and labels disagree on geometry.
    void validate() const;

    friend bool operator==(const Sample&, const Sample&) = default;
};

struct ValueRange {
    float min = 0.0f;
    float max = 0.0f;
    [[nodiscard]] float extent() const { return max - min; }
};

/// Minimum and maximum voxel value. A grid is never empty.
ValueRange value_range(const Volume& v);

/// Throws InvariantError if any voxel is NaN or infinite.
void require_finite(const Volume& v, std::string_view context);

}  // namespace voxelaug
