#include "voxelaug/volume.hpp"

#include <string>
#include <cctype>

namespace voxelaug {

int Orientation::world_axis(char letter) {
    switch (letter) {
        case 'R':
        case 'L':
            return 0;
        case 'A':
        case 'P':
            return 1;
        case 'S':
        case 'I':
            return 2;
        default:
            throw ArgumentError(std::string("invalid orientation letter '") + letter + "'");
    }
}

int Orientation::world_sign(char letter) {
    world_axis(letter);
    return (letter == 'R' || letter == 'A' || letter == 'S') ? 1 : -1;
}

Orientation Orientation::parse(std::string_view code) {
    if (code.size() != 3) {
        throw ArgumentError("orientation code must have 3 letters, got '" + std::string(code) + "'");
    }
    std::array<char, 3> letters{};
    std::array<bool, 3> seen{false, false, false};
    for (std::size_t n = 0; n < 3; ++n) {
        const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(code[n])));
        const int axis = world_axis(c);
        if (seen[static_cast<std::size_t>(axis)]) {
            throw ArgumentError("orientation code '" + std::string(code) +
                                "' repeats an anatomical axis");
        }
        seen[static_cast<std::size_t>(axis)] = true;
        letters[n] = c;
    }
    return Orientation(letters);
}

Orientation Orientation::from_affine(const Affine& affine) {
    static constexpr char kPositive[] = {'R', 'A', 'S'};
    static constexpr char kNegative[] = {'L', 'P', 'I'};
    std::array<char, 3> letters{};
    std::array<bool, 3> used{false, false, false};
    for (int col = 0; col < 3; ++col) {
        int best = 0;
        double best_mag = -1.0;
        bool tie = false;
        for (int row = 0; row < 3; ++row) {
            const double mag = std::abs(affine(row, col));
            if (mag > best_mag) {
                best_mag = mag;
                best = row;
                tie = false;
            } else if (mag == best_mag) {
                tie = true;
            }
        }
        if (tie || best_mag <= 0.0) {
            throw ArgumentError("cannot assign an anatomical letter to grid axis " +
                                std::to_string(col) + ": no dominant world direction");
        }
        if (used[static_cast<std::size_t>(best)]) {
            throw ArgumentError("affine maps two grid axes onto the same world axis");
        }
        used[static_cast<std::size_t>(best)] = true;
        letters[static_cast<std::size_t>(col)] =
            affine(best, col) > 0 ? kPositive[best] : kNegative[best];
    }
    return Orientation(letters);
}

Geometry Geometry::make(Dims dims, Spacing spacing) {
    Geometry g;
    g.dims = dims;
    g.spacing = spacing;
    g.affine = Affine::Identity();
    for (int a = 0; a < 3; ++a) {
        g.affine(a, a) = spacing[static_cast<std::size_t>(a)];
    }
    g.validate();
    return g;
}

void Geometry::validate() const {
    for (int a = 0; a < 3; ++a) {
        if (dims[static_cast<std::size_t>(a)] < 1) {
            throw ArgumentError("grid dims must be >= 1 on every axis");
        }
        const double s = spacing[static_cast<std::size_t>(a)];
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw ArgumentError("grid spacing must be positive and finite on every axis");
        }
    }
    const double det = affine.topLeftCorner<3, 3>().determinant();
    if (!(std::abs(det) > 0.0) || !affine.allFinite()) {
        throw ArgumentError("voxel-to-world affine is singular");
    }
}

namespace {

bool close_rel(double a, double b, double rel_tol, double scale) {
    return std::abs(a - b) <= rel_tol * std::max({std::abs(a), std::abs(b), scale});
}

}  // namespace

bool Geometry::matches(const Geometry& other, double rel_tol) const {
    if (dims != other.dims) {
        return false;
    }
    for (std::size_t a = 0; a < 3; ++a) {
        if (!close_rel(spacing[a], other.spacing[a], rel_tol, 0.0)) {
            return false;
        }
    }
    // Translation entries can be near zero; compare them against the column scale.
    const double scale = std::max({spacing[0], spacing[1], spacing[2], 1.0});
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            if (!close_rel(affine(r, c), other.affine(r, c), rel_tol, scale)) {
                return false;
            }
        }
    }
    return true;
}

void Sample::validate() const {
    if (!image.geometry().matches(labels.geometry())) {
        throw ShapeError("image and label map geometry differ");
    }
}

ValueRange value_range(const Volume& v) {
    const auto voxels = v.voxels();
    if (voxels.empty()) {
        return {};
    }
    float lo = voxels[0];
    float hi = voxels[0];
    const float* data = voxels.data();
    const std::size_t n = voxels.size();
#pragma omp simd reduction(min : lo) reduction(max : hi)
    for (std::size_t i = 0; i < n; ++i) {
        lo = data[i] < lo ? data[i] : lo;
        hi = data[i] > hi ? data[i] : hi;
    }
    return {lo, hi};
}

void require_finite(const Volume& v, std::string_view context) {
    for (float x : v.voxels()) {
        if (!std::isfinite(x)) {
            throw InvariantError(std::string(context) + ": non-finite voxel value");
        }
    }
}

}  // namespace voxelaug
