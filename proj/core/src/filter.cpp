#include "voxelaug/filter.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace voxelaug {
namespace {

void check_kernel(std::span<const float> kernel) {
    if (kernel.empty() || kernel.size() % 2 == 0) {
        throw ArgumentError("filter kernel length must be odd, got " +
                            std::to_string(kernel.size()));
    }
}

}  // namespace

std::vector<float> gaussian_kernel(double sigma) {
    if (!(sigma > 0.0)) {
        return {1.0f};
    }
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> w(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int t = -radius; t <= radius; ++t) {
        const double x = static_cast<double>(t) / sigma;
        w[static_cast<std::size_t>(t + radius)] = std::exp(-0.5 * x * x);
        sum += w[static_cast<std::size_t>(t + radius)];
    }
    std::vector<float> k(w.size());
    for (std::size_t n = 0; n < w.size(); ++n) {
        k[n] = static_cast<float>(w[n] / sum);
    }
    return k;
}

Volume filter_axis(const Volume& v, int axis, std::span<const float> kernel) {
    check_kernel(kernel);
    if (kernel.size() == 1 && kernel[0] == 1.0f) {
        return v;
    }
    const int r = static_cast<int>(kernel.size() / 2);
    const int nx = v.dims()[0], ny = v.dims()[1], nz = v.dims()[2];
    const std::size_t sx = static_cast<std::size_t>(nx);
    const std::size_t sxy = sx * static_cast<std::size_t>(ny);
    const float* src = v.voxels().data();
    std::vector<float> out(v.size(), 0.0f);

    if (axis == 0) {
        std::vector<float> padded(sx + 2 * static_cast<std::size_t>(r));
        for (int z = 0; z < nz; ++z) {
            for (int y = 0; y < ny; ++y) {
                const float* row = src + static_cast<std::size_t>(z) * sxy + static_cast<std::size_t>(y) * sx;
                float* dst = out.data() + static_cast<std::size_t>(z) * sxy + static_cast<std::size_t>(y) * sx;
                std::fill(padded.begin(), padded.begin() + r, row[0]);
                std::copy(row, row + sx, padded.begin() + r);
                std::fill(padded.begin() + r + nx, padded.end(), row[sx - 1]);
                for (std::size_t t = 0; t < kernel.size(); ++t) {
                    const float w = kernel[t];
                    const float* p = padded.data() + t;
                    for (std::size_t x = 0; x < sx; ++x) {
                        dst[x] += w * p[x];
                    }
                }
            }
        }
    } else if (axis == 1 || axis == 2) {
        const int n_axis = axis == 1 ? ny : nz;
        for (int z = 0; z < nz; ++z) {
            for (int y = 0; y < ny; ++y) {
                float* dst = out.data() + static_cast<std::size_t>(z) * sxy + static_cast<std::size_t>(y) * sx;
                const int pos = axis == 1 ? y : z;
                for (int t = -r; t <= r; ++t) {
                    const int q = std::clamp(pos + t, 0, n_axis - 1);
                    const float* row = axis == 1
                                           ? src + static_cast<std::size_t>(z) * sxy + static_cast<std::size_t>(q) * sx
                                           : src + static_cast<std::size_t>(q) * sxy + static_cast<std::size_t>(y) * sx;
                    const float w = kernel[static_cast<std::size_t>(t + r)];
                    for (std::size_t x = 0; x < sx; ++x) {
                        dst[x] += w * row[x];
                    }
                }
            }
        }
    } else {
        throw ArgumentError("axis must be 0, 1 or 2");
    }
    return v.with_voxels(std::move(out));
}

Volume filter_separable(const Volume& v, std::span<const float> k0, std::span<const float> k1,
                        std::span<const float> k2) {
    return filter_axis(filter_axis(filter_axis(v, 0, k0), 1, k1), 2, k2);
}

Volume gaussian_smooth(const Volume& v, const std::array<double, 3>& sigma) {
    const auto k0 = gaussian_kernel(sigma[0]);
    const auto k1 = gaussian_kernel(sigma[1]);
    const auto k2 = gaussian_kernel(sigma[2]);
    return filter_separable(v, k0, k1, k2);
}

namespace {

/// acc[x] += sum_a w[a] * row[x + a], taps kept in registers.
template <int K>
void accumulate_row(float* __restrict acc, const float* __restrict row, const float* w, int nx) {
    float taps[K];
    for (int a = 0; a < K; ++a) {
        taps[a] = w[a];
    }
    for (int x = 0; x < nx; ++x) {
        float sum = acc[x];
        for (int a = 0; a < K; ++a) {
            sum += taps[a] * row[x + a];
        }
        acc[x] = sum;
    }
}

}  // namespace

Volume filter_dense(const Volume& v, std::span<const float> kernel, int size) {
    if (size < 1 || size % 2 == 0 ||
        kernel.size() != static_cast<std::size_t>(size) * static_cast<std::size_t>(size) *
                             static_cast<std::size_t>(size)) {
        throw ArgumentError("dense kernel must be size^3 with odd size");
    }
    const int r = size / 2;
    const int nx = v.dims()[0], ny = v.dims()[1], nz = v.dims()[2];
    const int px = nx + 2 * r, py = ny + 2 * r, pz = nz + 2 * r;
    const std::size_t spx = static_cast<std::size_t>(px);
    const std::size_t spxy = spx * static_cast<std::size_t>(py);

    // Edge-replicated copy so the inner loops run branch-free.
    std::vector<float> padded(spxy * static_cast<std::size_t>(pz));
    for (int z = 0; z < pz; ++z) {
        const int sz = std::clamp(z - r, 0, nz - 1);
        for (int y = 0; y < py; ++y) {
            const int sy = std::clamp(y - r, 0, ny - 1);
            float* dst = padded.data() + static_cast<std::size_t>(z) * spxy + static_cast<std::size_t>(y) * spx;
            const float* src = &v(0, sy, sz);
            std::fill(dst, dst + r, src[0]);
            std::copy(src, src + nx, dst + r);
            std::fill(dst + r + nx, dst + px, src[nx - 1]);
        }
    }

    std::vector<float> out(v.size());
    std::vector<float> acc(static_cast<std::size_t>(nx));
    const std::size_t k = static_cast<std::size_t>(size);
    std::size_t n = 0;
    for (int z = 0; z < nz; ++z) {
        for (int y = 0; y < ny; ++y) {
            std::fill(acc.begin(), acc.end(), 0.0f);
            for (std::size_t c = 0; c < k; ++c) {
                for (std::size_t b = 0; b < k; ++b) {
                    const float* prow = padded.data() + (static_cast<std::size_t>(z) + c) * spxy +
                                        (static_cast<std::size_t>(y) + b) * spx;
                    const float* w = kernel.data() + (c * k + b) * k;
                    switch (size) {
                        case 1: accumulate_row<1>(acc.data(), prow, w, nx); break;
                        case 3: accumulate_row<3>(acc.data(), prow, w, nx); break;
                        case 5: accumulate_row<5>(acc.data(), prow, w, nx); break;
                        case 7: accumulate_row<7>(acc.data(), prow, w, nx); break;
                        default:
                            for (std::size_t a = 0; a < k; ++a) {
                                const float wa = w[a];
                                for (int x = 0; x < nx; ++x) {
                                    acc[static_cast<std::size_t>(x)] += wa * prow[a + static_cast<std::size_t>(x)];
                                }
                            }
                    }
                }
            }
            std::copy(acc.begin(), acc.end(), out.begin() + static_cast<std::ptrdiff_t>(n));
            n += acc.size();
        }
    }
    return v.with_voxels(std::move(out));
}

}  // namespace voxelaug
