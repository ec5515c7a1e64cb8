#include "voxelaug/novel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "voxelaug/filter.hpp"
#include "voxelaug/volume_ops.hpp"

namespace voxelaug {
namespace {

/// Rescales `v` onto `range`; a constant `v` maps to range.min. Same
/// arithmetic as restore_range(min_max_normalize(v)), done in place.
Volume rescale_onto(Volume v, ValueRange range) {
    const ValueRange own = value_range(v);
    const double own_extent = static_cast<double>(own.max) - static_cast<double>(own.min);
    const double extent = static_cast<double>(range.max) - static_cast<double>(range.min);
    const double scale = own_extent > 0.0 ? 1.0 / own_extent : 0.0;
    for (float& x : v.voxels()) {
        const float unit =
            own_extent > 0.0 ? static_cast<float>(std::clamp((static_cast<double>(x) - own.min) * scale, 0.0, 1.0))
                             : 0.0f;
        x = static_cast<float>(static_cast<double>(unit) * extent + range.min);
    }
    return v;
}

}  // namespace

Volume intensity_inversion(const Volume& v) {
    const ValueRange r = value_range(v);
    const double pivot = static_cast<double>(r.min) + static_cast<double>(r.max);
    std::vector<float> out(v.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = static_cast<float>(pivot - static_cast<double>(v[n]));
    }
    return v.with_voxels(std::move(out));
}

Volume scharr_gradient_magnitude(const Volume& v) {
    for (int d : v.dims()) {
        if (d < 3) {
            throw SizeError("Scharr filter needs at least 3 voxels on every axis");
        }
    }
    static constexpr float kDerivative[] = {-0.5f, 0.0f, 0.5f};
    static constexpr float kSmooth[] = {3.0f / 16.0f, 10.0f / 16.0f, 3.0f / 16.0f};
    // Axis-0 passes once, then the 3x3 (y, z) neighbourhood is combined per row.
    const Volume sm = filter_axis(v, 0, kSmooth);
    const Volume df = filter_axis(v, 0, kDerivative);
    const Dims& d = v.dims();
    const auto sx = static_cast<std::size_t>(d[0]);
    const std::size_t sxy = sx * static_cast<std::size_t>(d[1]);
    const float* smp = sm.voxels().data();
    const float* dfp = df.voxels().data();
    std::vector<float> out(v.size());
    std::vector<float> gy(sx), gz(sx);
    for (int z = 0; z < d[2]; ++z) {
        const int zs[3] = {std::max(z - 1, 0), z, std::min(z + 1, d[2] - 1)};
        for (int y = 0; y < d[1]; ++y) {
            const int ys[3] = {std::max(y - 1, 0), y, std::min(y + 1, d[1] - 1)};
            float* dst = out.data() + static_cast<std::size_t>(z) * sxy + static_cast<std::size_t>(y) * sx;
            auto row = [&](const float* base, int b, int c) {
                return base + static_cast<std::size_t>(zs[c]) * sxy + static_cast<std::size_t>(ys[b]) * sx;
            };
            std::fill(dst, dst + sx, 0.0f);
            std::fill(gy.begin(), gy.end(), 0.0f);
            std::fill(gz.begin(), gz.end(), 0.0f);
            for (int c = 0; c < 3; ++c) {
                for (int b = 0; b < 3; ++b) {
                    const float wx = kSmooth[b] * kSmooth[c];
                    const float wy = kDerivative[b] * kSmooth[c];
                    const float wz = kSmooth[b] * kDerivative[c];
                    const float* s = row(smp, b, c);
                    const float* g = row(dfp, b, c);
                    for (std::size_t x = 0; x < sx; ++x) {
                        dst[x] += wx * g[x];
                        gy[x] += wy * s[x];
                        gz[x] += wz * s[x];
                    }
                }
            }
            for (std::size_t x = 0; x < sx; ++x) {
                dst[x] = std::sqrt(dst[x] * dst[x] + gy[x] * gy[x] + gz[x] * gz[x]);
            }
        }
    }
    return v.with_voxels(std::move(out));
}

Volume scharr_filter(const Volume& v) {
    return rescale_onto(scharr_gradient_magnitude(v), value_range(v));
}

RedistributeDraw draw_redistribute(const LabelMap& labels, RngStream& rng,
                                   const RedistributeSegParams& p) {
    p.validate();
    std::array<bool, 256> present{};
    for (std::uint8_t l : labels.voxels()) {
        present[l] = true;
    }
    RedistributeDraw draw;
    for (std::size_t l = 0; l < 256; ++l) {
        if (!present[l]) {
            continue;
        }
        draw.alpha[l] = rng.uniform(p.alpha_range.lo, p.alpha_range.hi);
        draw.active[l] = l != 0 || p.include_background;
    }
    return draw;
}

Sample apply_redistribute(const Sample& s, const RedistributeDraw& draw, int bins) {
    s.validate();
    if (bins < 2) {
        throw ArgumentError("redistribute_seg.bins must be >= 2");
    }
    const auto image = s.image.voxels();
    const auto labels = s.labels.voxels();

    std::array<float, 256> lo, hi;
    lo.fill(std::numeric_limits<float>::infinity());
    hi.fill(-std::numeric_limits<float>::infinity());
    for (std::size_t n = 0; n < image.size(); ++n) {
        const auto l = labels[n];
        lo[l] = std::min(lo[l], image[n]);
        hi[l] = std::max(hi[l], image[n]);
    }

    const auto nb = static_cast<std::size_t>(bins);
    std::array<bool, 256> use{};
    std::vector<double> density(256 * nb, 0.0);
    bool any = false;
    for (std::size_t l = 0; l < 256; ++l) {
        // Regions with fewer than two distinct intensities have no density to scale.
        use[l] = draw.active[l] && draw.alpha[l] != 0.0 && hi[l] > lo[l];
        any = any || use[l];
    }
    if (!any) {
        return s;
    }
    auto bin_of = [&](std::size_t l, float x) {
        const double t = (static_cast<double>(x) - lo[l]) / (static_cast<double>(hi[l]) - lo[l]);
        return std::min(nb - 1, static_cast<std::size_t>(t * static_cast<double>(nb)));
    };
    for (std::size_t n = 0; n < image.size(); ++n) {
        const auto l = labels[n];
        if (use[l]) {
            density[l * nb + bin_of(l, image[n])] += 1.0;
        }
    }
    for (std::size_t l = 0; l < 256; ++l) {
        if (!use[l]) {
            continue;
        }
        double* h = density.data() + l * nb;
        std::vector<double> smooth(nb);
        for (std::size_t b = 0; b < nb; ++b) {
            const double left = h[b == 0 ? 0 : b - 1];
            const double right = h[b + 1 == nb ? b : b + 1];
            smooth[b] = 0.25 * left + 0.5 * h[b] + 0.25 * right;
        }
        const double peak = *std::max_element(smooth.begin(), smooth.end());
        for (std::size_t b = 0; b < nb; ++b) {
            h[b] = smooth[b] / peak;
        }
    }

    std::vector<float> out(image.begin(), image.end());
    for (std::size_t n = 0; n < out.size(); ++n) {
        const auto l = labels[n];
        if (!use[l]) {
            continue;
        }
        const double extent = static_cast<double>(hi[l]) - lo[l];
        const double pdf = density[l * nb + bin_of(l, image[n])];
        out[n] = static_cast<float>(image[n] + draw.alpha[l] * pdf * extent);
    }
    return {s.image.with_voxels(std::move(out)), s.labels};
}

Sample redistribute_seg(const Sample& s, RngStream& rng, const RedistributeSegParams& p) {
    return apply_redistribute(s, draw_redistribute(s.labels, rng, p), p.bins);
}

ConvKernel draw_conv_kernel(RngStream& rng, const RandomConvParams& p) {
    p.validate();
    ConvKernel k;
    k.size = p.kernel_sizes[rng.below(p.kernel_sizes.size())];
    const std::size_t count = static_cast<std::size_t>(k.size) * static_cast<std::size_t>(k.size) *
                              static_cast<std::size_t>(k.size);
    const double sigma = p.weight_sigma / std::sqrt(static_cast<double>(count));
    k.weights.resize(count);
    for (float& w : k.weights) {
        w = static_cast<float>(rng.normal(0.0, sigma));
    }
    return k;
}

Volume apply_conv_kernel(const Volume& v, const ConvKernel& kernel) {
    return rescale_onto(filter_dense(v, kernel.weights, kernel.size), value_range(v));
}

Volume random_conv(const Volume& v, RngStream& rng, const RandomConvParams& p) {
    return apply_conv_kernel(v, draw_conv_kernel(rng, p));
}

Volume histogram_equalization(const Volume& v, int bins) {
    if (bins < 2) {
        throw ArgumentError("histogram_equalization.bins must be >= 2");
    }
    const ValueRange r = value_range(v);
    if (!(r.max > r.min)) {
        return v;
    }
    const auto nb = static_cast<std::size_t>(bins);
    const double scale = static_cast<double>(nb) / (static_cast<double>(r.max) - r.min);
    auto bin_of = [&](float x) {
        return std::min(nb - 1, static_cast<std::size_t>((static_cast<double>(x) - r.min) * scale));
    };
    std::vector<std::size_t> counts(nb, 0);
    for (float x : v.voxels()) {
        ++counts[bin_of(x)];
    }
    std::vector<float> lut(nb);
    std::size_t cumulative = 0;
    const double total = static_cast<double>(v.size());
    const double extent = static_cast<double>(r.max) - r.min;
    for (std::size_t b = 0; b < nb; ++b) {
        cumulative += counts[b];
        lut[b] = static_cast<float>(r.min + extent * (static_cast<double>(cumulative) / total));
    }
    std::vector<float> out(v.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = lut[bin_of(v[n])];
    }
    return v.with_voxels(std::move(out));
}

int bias_basis_size(int order) {
    return (order + 1) * (order + 2) * (order + 3) / 6;
}

Volume bias_field_map(const Geometry& g, int order, std::span<const double> coeffs) {
    if (order < 1) {
        throw ArgumentError("bias_field.order must be >= 1");
    }
    if (coeffs.size() != static_cast<std::size_t>(bias_basis_size(order))) {
        throw ArgumentError("bias field needs " + std::to_string(bias_basis_size(order)) +
                            " coefficients");
    }
    // coef[a][b][c] multiplies x^a y^b z^c; enumeration is by total degree.
    const auto no = static_cast<std::size_t>(order + 1);
    std::vector<double> coef(no * no * no, 0.0);
    std::size_t i = 0;
    for (int t = 0; t <= order; ++t) {
        for (int a = t; a >= 0; --a) {
            for (int b = t - a; b >= 0; --b) {
                const int c = t - a - b;
                coef[(static_cast<std::size_t>(a) * no + static_cast<std::size_t>(b)) * no +
                     static_cast<std::size_t>(c)] = coeffs[i++];
            }
        }
    }
    auto axis_coords = [](int n) {
        std::vector<double> x(static_cast<std::size_t>(n), 0.0);
        for (int k = 0; n > 1 && k < n; ++k) {
            x[static_cast<std::size_t>(k)] = -1.0 + 2.0 * k / (n - 1);
        }
        return x;
    };
    const auto xs = axis_coords(g.dims[0]);
    const auto ys = axis_coords(g.dims[1]);
    const auto zs = axis_coords(g.dims[2]);

    std::vector<float> field(g.voxel_count());
    std::vector<double> row_coef(no);
    std::size_t n = 0;
    for (double z : zs) {
        for (double y : ys) {
            // Collapse y and z so each row is a polynomial in x alone.
            for (std::size_t a = 0; a < no; ++a) {
                double acc = 0.0;
                double yb = 1.0;
                for (std::size_t b = 0; b + a < no; ++b, yb *= y) {
                    double zc = 1.0;
                    for (std::size_t c = 0; a + b + c < no; ++c, zc *= z) {
                        acc += coef[(a * no + b) * no + c] * yb * zc;
                    }
                }
                row_coef[a] = acc;
            }
            for (double x : xs) {
                double e = 0.0;
                for (std::size_t a = no; a-- > 0;) {
                    e = e * x + row_coef[a];
                }
                field[n++] = static_cast<float>(std::exp(std::clamp(e, -20.0, 20.0)));
            }
        }
    }
    return Volume(g, std::move(field));
}

std::vector<double> draw_bias_coefficients(RngStream& rng, const BiasFieldParams& p) {
    p.validate();
    std::vector<double> c(static_cast<std::size_t>(bias_basis_size(p.order)));
    for (double& x : c) {
        x = rng.uniform(p.coeff_range.lo, p.coeff_range.hi);
    }
    return c;
}

Volume apply_bias_field(const Volume& v, int order, std::span<const double> coeffs) {
    const Volume field = bias_field_map(v.geometry(), order, coeffs);
    std::vector<float> out(v.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = v[n] * field[n];
    }
    return v.with_voxels(std::move(out));
}

Volume bias_field(const Volume& v, RngStream& rng, const BiasFieldParams& p) {
    const auto coeffs = draw_bias_coefficients(rng, p);
    return apply_bias_field(v, p.order, coeffs);
}

Volume apply_unsharp(const Volume& v, double sigma, double amount) {
    if (amount == 0.0 || !(sigma > 0.0)) {
        return v;
    }
    const Volume blurred = gaussian_smooth(v, {sigma, sigma, sigma});
    std::vector<float> out(v.size());
    const auto a = static_cast<float>(amount);
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = v[n] + a * (v[n] - blurred[n]);
    }
    return v.with_voxels(std::move(out));
}

Volume unsharp_masking(const Volume& v, RngStream& rng, const UnsharpParams& p) {
    p.validate();
    const double sigma = rng.uniform(p.sigma_range.lo, p.sigma_range.hi);
    const double amount = rng.uniform(p.amount_range.lo, p.amount_range.hi);
    return apply_unsharp(v, sigma, amount);
}

double evaluate(IntensityFunction f, double x) {
    switch (f) {
        case IntensityFunction::Identity:
            return x;
        case IntensityFunction::Square:
            return x * x;
        case IntensityFunction::Sqrt:
            return std::sqrt(x);
        case IntensityFunction::LogCompress:
            return std::log1p(9.0 * x) / std::numbers::ln10;
        case IntensityFunction::Sigmoid: {
            auto s = [](double t) { return 1.0 / (1.0 + std::exp(-10.0 * (t - 0.5))); };
            const double lo = s(0.0);
            const double hi = s(1.0);
            return (s(x) - lo) / (hi - lo);
        }
        case IntensityFunction::Sine:
            return std::sin(std::numbers::pi * x / 2.0);
    }
    return x;
}

Volume apply_function(const Volume& v, IntensityFunction f) {
    if (f == IntensityFunction::Identity) {
        return v;
    }
    auto [norm, range] = min_max_normalize(v);
    for (float& x : norm.voxels()) {
        x = static_cast<float>(std::clamp(evaluate(f, x), 0.0, 1.0));
    }
    return restore_range(norm, range);
}

Volume function_transform(const Volume& v, RngStream& rng, const FunctionTransformParams& p) {
    if (p.functions.empty()) {
        throw ArgumentError("function_transform needs a non-empty function set");
    }
    return apply_function(v, p.functions[rng.below(p.functions.size())]);
}

Volume clamp_to_extended_range(Volume v, ValueRange reference) {
    const float r = reference.extent();
    const float lo = reference.min - r;
    const float hi = reference.max + r;
    for (float& x : v.voxels()) {
        x = std::clamp(x, lo, hi);
    }
    return v;
}

}  // namespace voxelaug
