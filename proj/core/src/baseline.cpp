#include "voxelaug/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "voxelaug/detail/sampling.hpp"
#include "voxelaug/filter.hpp"
#include "voxelaug/volume_ops.hpp"

namespace voxelaug {

bool SpatialDraw::is_identity() const {
    return angles == std::array<double, 3>{0.0, 0.0, 0.0} && scale == 1.0 &&
           flip == std::array<bool, 3>{false, false, false};
}

bool SpatialDraw::is_pure_flip() const {
    return angles == std::array<double, 3>{0.0, 0.0, 0.0} && scale == 1.0;
}

SpatialDraw draw_spatial(RngStream& rng, const SpatialParams& p) {
    p.validate();
    SpatialDraw d;
    // Every variate is drawn whether or not its gate fires so the stream
    // layout does not depend on the probabilities.
    for (int a = 0; a < 3; ++a) {
        const bool on = rng.bernoulli(p.rotation_prob);
        const double max_rad = p.max_angle_deg[a] * std::numbers::pi / 180.0;
        const double angle = rng.uniform(-max_rad, max_rad);
        d.angles[a] = on ? angle : 0.0;
    }
    const bool scale_on = rng.bernoulli(p.scale_prob);
    const double scale = rng.uniform(p.scale_range.lo, p.scale_range.hi);
    d.scale = scale_on ? scale : 1.0;
    for (int a = 0; a < 3; ++a) {
        d.flip[a] = rng.bernoulli(p.flip_prob[a]);
    }
    return d;
}

namespace {

template <typename T>
Grid<T> flip_axes(const Grid<T>& v, const std::array<bool, 3>& flip) {
    const Dims& d = v.dims();
    std::vector<T> out(v.size());
    std::size_t n = 0;
    for (int z = 0; z < d[2]; ++z) {
        const int sz = flip[2] ? d[2] - 1 - z : z;
        for (int y = 0; y < d[1]; ++y) {
            const int sy = flip[1] ? d[1] - 1 - y : y;
            for (int x = 0; x < d[0]; ++x, ++n) {
                out[n] = v(flip[0] ? d[0] - 1 - x : x, sy, sz);
            }
        }
    }
    return v.with_voxels(std::move(out));
}

Eigen::Matrix3d rotation(const std::array<double, 3>& angles) {
    const Eigen::Matrix3d rx = Eigen::AngleAxisd(angles[0], Eigen::Vector3d::UnitX()).toRotationMatrix();
    const Eigen::Matrix3d ry = Eigen::AngleAxisd(angles[1], Eigen::Vector3d::UnitY()).toRotationMatrix();
    const Eigen::Matrix3d rz = Eigen::AngleAxisd(angles[2], Eigen::Vector3d::UnitZ()).toRotationMatrix();
    return rz * ry * rx;
}

}  // namespace

Sample apply_spatial(const Sample& s, const SpatialDraw& draw) {
    s.validate();
    if (draw.is_identity()) {
        return s;
    }
    if (draw.is_pure_flip()) {
        return {flip_axes(s.image, draw.flip), flip_axes(s.labels, draw.flip)};
    }

    const Dims& d = s.image.dims();
    const Spacing& sp = s.image.spacing();
    Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
    for (int a = 0; a < 3; ++a) {
        flip(a, a) = draw.flip[a] ? -1.0 : 1.0;
    }
    // Output voxel p samples the source at c + A (p - c).
    const Eigen::Matrix3d inv_map = flip * rotation(draw.angles).transpose() / draw.scale;
    const Eigen::Vector3d spacing(sp[0], sp[1], sp[2]);
    const Eigen::Matrix3d a_mat =
        spacing.cwiseInverse().asDiagonal() * inv_map * spacing.asDiagonal();
    const Eigen::Vector3d center((d[0] - 1) / 2.0, (d[1] - 1) / 2.0, (d[2] - 1) / 2.0);

    const float fill = value_range(s.image).min;
    std::vector<float> image(s.image.size());
    std::vector<std::uint8_t> labels(s.labels.size());
    const float* src = s.image.voxels().data();
    const std::uint8_t* lsrc = s.labels.voxels().data();
    const std::size_t sx = static_cast<std::size_t>(d[0]);
    const std::size_t sxy = sx * static_cast<std::size_t>(d[1]);
    const double lim[3] = {d[0] - 0.5, d[1] - 0.5, d[2] - 0.5};
    const double top[3] = {d[0] - 1.0, d[1] - 1.0, d[2] - 1.0};
    const Eigen::Vector3d step = a_mat.col(0);

    std::size_t n = 0;
    for (int z = 0; z < d[2]; ++z) {
        for (int y = 0; y < d[1]; ++y) {
            Eigen::Vector3d q = center + a_mat * (Eigen::Vector3d(0.0, y, z) - center);
            for (int x = 0; x < d[0]; ++x, ++n, q += step) {
                if (q[0] < -0.5 || q[1] < -0.5 || q[2] < -0.5 || q[0] > lim[0] || q[1] > lim[1] ||
                    q[2] > lim[2]) {
                    image[n] = fill;
                    labels[n] = 0;
                    continue;
                }
                std::size_t lo[3], hi[3];
                float w[3];
                std::size_t nearest[3];
                for (int a = 0; a < 3; ++a) {
                    const double c = q[a] < 0.0 ? 0.0 : (q[a] > top[a] ? top[a] : q[a]);
                    const int l = static_cast<int>(c);
                    lo[a] = static_cast<std::size_t>(l);
                    hi[a] = static_cast<std::size_t>(l + 1 < d[a] ? l + 1 : l);
                    w[a] = static_cast<float>(c - l);
                    // c >= 0, so this matches rounding half away from zero.
                    nearest[a] = static_cast<std::size_t>(c + 0.5);
                }
                const float* p00 = src + lo[2] * sxy + lo[1] * sx;
                const float* p01 = src + lo[2] * sxy + hi[1] * sx;
                const float* p10 = src + hi[2] * sxy + lo[1] * sx;
                const float* p11 = src + hi[2] * sxy + hi[1] * sx;
                const float c00 = p00[lo[0]] + w[0] * (p00[hi[0]] - p00[lo[0]]);
                const float c01 = p01[lo[0]] + w[0] * (p01[hi[0]] - p01[lo[0]]);
                const float c10 = p10[lo[0]] + w[0] * (p10[hi[0]] - p10[lo[0]]);
                const float c11 = p11[lo[0]] + w[0] * (p11[hi[0]] - p11[lo[0]]);
                const float c0 = c00 + w[1] * (c01 - c00);
                const float c1 = c10 + w[1] * (c11 - c10);
                image[n] = c0 + w[2] * (c1 - c0);
                labels[n] = lsrc[nearest[2] * sxy + nearest[1] * sx + nearest[0]];
            }
        }
    }
    return {s.image.with_voxels(std::move(image)), s.labels.with_voxels(std::move(labels))};
}

Sample random_spatial(const Sample& s, RngStream& rng, const SpatialParams& p) {
    return apply_spatial(s, draw_spatial(rng, p));
}

Volume gaussian_noise(const Volume& v, RngStream& rng, const Interval& sigma_range) {
    NoiseParams{sigma_range}.validate();
    const double sigma = rng.uniform(sigma_range.lo, sigma_range.hi);
    if (sigma == 0.0) {
        return v;
    }
    std::vector<float> out(v.size());
    rng.fill_normal(out.begin(), out.size());
    const auto sf = static_cast<float>(sigma);
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = v[n] + sf * out[n];
    }
    return v.with_voxels(std::move(out));
}

Volume gaussian_blur(const Volume& v, RngStream& rng, const Interval& sigma_range) {
    BlurParams{sigma_range}.validate();
    std::array<double, 3> sigma{};
    for (double& s : sigma) {
        s = rng.uniform(sigma_range.lo, sigma_range.hi);
    }
    return gaussian_smooth(v, sigma);
}

Volume apply_low_resolution(const Volume& v, double factor) {
    if (!(factor >= 1.0)) {
        throw ArgumentError("low-resolution factor must be >= 1");
    }
    const Dims& d = v.dims();
    Dims low{};
    std::array<detail::AxisSamples, 3> down, up;
    for (int a = 0; a < 3; ++a) {
        low[a] = std::max(1, static_cast<int>(std::lround(d[a] / factor)));
        down[a] = detail::AxisSamples::aligned(low[a], d[a]);
    }
    const Volume coarse(Geometry::make(low), detail::sample_separable_nearest(v, down));
    for (int a = 0; a < 3; ++a) {
        up[a] = detail::AxisSamples::aligned(d[a], low[a]);
    }
    return v.with_voxels(detail::sample_separable_linear(coarse, up));
}

Volume simulate_low_resolution(const Volume& v, RngStream& rng, const Interval& factor_range) {
    LowResParams{factor_range}.validate();
    return apply_low_resolution(v, rng.uniform(factor_range.lo, factor_range.hi));
}

Volume apply_brightness_contrast(const Volume& v, double brightness, double contrast) {
    if (brightness == 0.0 && contrast == 1.0) {
        return v;
    }
    double sum = 0.0;
    for (float x : v.voxels()) {
        sum += x;
    }
    const double mean = sum / static_cast<double>(v.size());
    const double offset = brightness * static_cast<double>(value_range(v).extent());
    std::vector<float> out(v.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = static_cast<float>(mean + contrast * (v[n] - mean) + offset);
    }
    return v.with_voxels(std::move(out));
}

Volume brightness_contrast(const Volume& v, RngStream& rng, const Interval& brightness_range,
                           const Interval& contrast_range) {
    BrightnessContrastParams{brightness_range, contrast_range}.validate();
    const double b = rng.uniform(brightness_range.lo, brightness_range.hi);
    const double c = rng.uniform(contrast_range.lo, contrast_range.hi);
    return apply_brightness_contrast(v, b, c);
}

Volume apply_gamma(const Volume& v, double gamma) {
    if (!(gamma > 0.0)) {
        throw ArgumentError("gamma must be > 0");
    }
    if (gamma == 1.0) {
        return v;
    }
    auto [norm, range] = min_max_normalize(v);
    const float g = static_cast<float>(gamma);
    for (float& x : norm.voxels()) {
        x = std::pow(x, g);
    }
    return restore_range(norm, range);
}

Volume gamma_correction(const Volume& v, RngStream& rng, const Interval& gamma_range) {
    GammaParams{gamma_range}.validate();
    return apply_gamma(v, rng.uniform(gamma_range.lo, gamma_range.hi));
}

}  // namespace voxelaug
