#include <numeric>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "voxelaug/novel.hpp"

using namespace voxelaug;
using namespace voxelaug::testing;

namespace {

Volume ramp(const Dims& d, double gx, double gy, double gz) {
    Volume v(Geometry::make(d), 0.0f);
    for (int z = 0; z < d[2]; ++z) {
        for (int y = 0; y < d[1]; ++y) {
            for (int x = 0; x < d[0]; ++x) {
                v(x, y, z) = static_cast<float>(gx * x + gy * y + gz * z);
            }
        }
    }
    return v;
}

void expect_range_kept(const Volume& out, const Volume& in, float tol) {
    const ValueRange a = value_range(out), b = value_range(in);
    EXPECT_NEAR(a.min, b.min, tol);
    EXPECT_NEAR(a.max, b.max, tol);
}

/// Brute-force polynomial bias field using the documented coefficient order.
double bias_oracle(int order, const std::vector<double>& c, double x, double y, double z) {
    double e = 0.0;
    std::size_t i = 0;
    for (int t = 0; t <= order; ++t) {
        for (int a = t; a >= 0; --a) {
            for (int b = t - a; b >= 0; --b) {
                e += c[i++] * std::pow(x, a) * std::pow(y, b) * std::pow(z, t - a - b);
            }
        }
    }
    return std::exp(std::clamp(e, -20.0, 20.0));
}

}  // namespace

TEST(Inversion, FormulaExample) {
    Volume v(Geometry::make({3, 1, 1}), 0.0f);
    v[1] = 3.0f;
    v[2] = 10.0f;
    const Volume out = intensity_inversion(v);
    EXPECT_EQ(out[0], 10.0f);
    EXPECT_EQ(out[1], 7.0f);
    EXPECT_EQ(out[2], 0.0f);
}

TEST(Inversion, ExactInvolutionAndRange) {
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
        auto gen = make_gen(seed);
        const Volume v = dyadic_volume(pir_geometry({7, 6, 5}), gen);
        const Volume once = intensity_inversion(v);
        expect_range_kept(once, v, 0.0f);
        EXPECT_EQ(intensity_inversion(once), v);
    }
    const Volume c(Geometry::make({3, 3, 3}), 1.25f);
    EXPECT_EQ(intensity_inversion(c), c);
}

TEST(Scharr, ConstantHasZeroGradient) {
    const Volume c(Geometry::make({5, 5, 5}), 3.0f);
    const Volume g = scharr_gradient_magnitude(c);
    for (float x : g.voxels()) {
        EXPECT_EQ(x, 0.0f);
    }
    const Volume out = scharr_filter(c);
    for (float x : out.voxels()) {
        EXPECT_EQ(x, 3.0f);
    }
}

TEST(Scharr, RampInteriorMagnitude) {
    struct Case {
        double gx, gy, gz, expected;
    };
    for (const Case& c : {Case{2, 0, 0, 2.0}, Case{1, 1, 0, std::sqrt(2.0)}, Case{0, 0, -3, 3.0},
                          Case{1, 2, 2, 3.0}}) {
        const Volume g = scharr_gradient_magnitude(ramp({9, 9, 9}, c.gx, c.gy, c.gz));
        for (int z = 1; z < 8; ++z) {
            for (int y = 1; y < 8; ++y) {
                for (int x = 1; x < 8; ++x) {
                    ASSERT_NEAR(g(x, y, z), c.expected, 1e-4 * c.expected);
                }
            }
        }
    }
}

TEST(Scharr, MatchesSeparableOracle) {
    auto gen = make_gen(21);
    const Volume v = random_volume(Geometry::make({6, 7, 8}), gen);
    const Dims& d = v.dims();
    auto at = [&](int x, int y, int z) {
        return static_cast<double>(v(std::clamp(x, 0, d[0] - 1), std::clamp(y, 0, d[1] - 1), std::clamp(z, 0, d[2] - 1)));
    };
    const double deriv[3] = {-0.5, 0.0, 0.5};
    const double smooth[3] = {3.0 / 16, 10.0 / 16, 3.0 / 16};
    const Volume g = scharr_gradient_magnitude(v);
    for (int z = 0; z < d[2]; ++z) {
        for (int y = 0; y < d[1]; ++y) {
            for (int x = 0; x < d[0]; ++x) {
                double gx = 0, gy = 0, gz = 0;
                for (int c = 0; c < 3; ++c) {
                    for (int b = 0; b < 3; ++b) {
                        for (int a = 0; a < 3; ++a) {
                            const double s = at(x + a - 1, y + b - 1, z + c - 1);
                            gx += deriv[a] * smooth[b] * smooth[c] * s;
                            gy += smooth[a] * deriv[b] * smooth[c] * s;
                            gz += smooth[a] * smooth[b] * deriv[c] * s;
                        }
                    }
                }
                ASSERT_NEAR(g(x, y, z), std::sqrt(gx * gx + gy * gy + gz * gz), 1e-5);
            }
        }
    }
}

TEST(Scharr, RenormalizesOntoInputRange) {
    auto gen = make_gen(22);
    const Volume v = random_volume(Geometry::make({8, 8, 8}), gen, -4.0f, 9.0f);
    expect_range_kept(scharr_filter(v), v, 1e-5f);
}

TEST(Scharr, ThinAxisIsSizeError) {
    EXPECT_THROW(scharr_filter(Volume(Geometry::make({2, 5, 5}), 0.0f)), SizeError);
    EXPECT_THROW(scharr_filter(Volume(Geometry::make({5, 5, 1}), 0.0f)), SizeError);
}

TEST(Redistribute, ZeroAlphaIsIdentity) {
    auto gen = make_gen(30);
    const Geometry g = pir_geometry({10, 10, 10});
    const Sample s{random_volume(g, gen), blob_labels(g)};
    RngStream rng(1, 1);
    EXPECT_EQ(redistribute_seg(s, rng, {{0.0, 0.0}, 64, true}), s);
}

TEST(Redistribute, BackgroundGatingAndLabelsUntouched) {
    auto gen = make_gen(31);
    const Geometry g = pir_geometry({12, 12, 12});
    const Sample s{random_volume(g, gen), blob_labels(g)};
    RngStream rng(2, 2);
    const Sample out = redistribute_seg(s, rng, {{0.5, 1.0}, 64, false});
    EXPECT_EQ(out.labels, s.labels);
    std::size_t changed = 0;
    for (std::size_t n = 0; n < s.image.size(); ++n) {
        if (s.labels[n] == 0) {
            EXPECT_EQ(out.image[n], s.image[n]);
        } else {
            changed += out.image[n] != s.image[n];
        }
    }
    EXPECT_GT(changed, 0u);
}

TEST(Redistribute, MatchesHistogramOracle) {
    auto gen = make_gen(32);
    const Geometry g = pir_geometry({8, 8, 8});
    const Sample s{random_volume(g, gen), random_labels(g, gen, 3)};
    RedistributeDraw draw;
    draw.alpha[0] = 0.4;
    draw.alpha[1] = -0.7;
    draw.alpha[2] = 1.0;
    draw.active[0] = draw.active[1] = draw.active[2] = true;
    const int bins = 16;
    const Sample out = apply_redistribute(s, draw, bins);
    for (int region = 0; region < 3; ++region) {
        std::vector<float> vals;
        for (std::size_t n = 0; n < s.image.size(); ++n) {
            if (s.labels[n] == region) {
                vals.push_back(s.image[n]);
            }
        }
        const double lo = *std::min_element(vals.begin(), vals.end());
        const double hi = *std::max_element(vals.begin(), vals.end());
        auto bin = [&](double x) { return std::min(bins - 1, static_cast<int>((x - lo) / (hi - lo) * bins)); };
        std::vector<double> h(bins, 0.0), sm(bins);
        for (float x : vals) {
            h[static_cast<std::size_t>(bin(x))] += 1.0;
        }
        for (int b = 0; b < bins; ++b) {
            sm[static_cast<std::size_t>(b)] = 0.25 * h[static_cast<std::size_t>(std::max(b - 1, 0))] +
                                              0.5 * h[static_cast<std::size_t>(b)] +
                                              0.25 * h[static_cast<std::size_t>(std::min(b + 1, bins - 1))];
        }
        const double peak = *std::max_element(sm.begin(), sm.end());
        for (std::size_t n = 0; n < s.image.size(); ++n) {
            if (s.labels[n] != region) {
                continue;
            }
            const double expect = s.image[n] + draw.alpha[static_cast<std::size_t>(region)] *
                                                   sm[static_cast<std::size_t>(bin(s.image[n]))] / peak * (hi - lo);
            ASSERT_NEAR(out.image[n], expect, 1e-5);
        }
    }
}

TEST(Redistribute, FlatRegionIsSkipped) {
    const Geometry g = Geometry::make({4, 4, 4});
    const Sample s{Volume(g, 2.0f), LabelMap(g, std::uint8_t{1})};
    RedistributeDraw draw;
    draw.alpha[1] = 1.0;
    draw.active[1] = true;
    EXPECT_EQ(apply_redistribute(s, draw, 64), s);
}

TEST(RandomConv, DiracKernelIsIdentity) {
    auto gen = make_gen(40);
    const Volume v = random_volume(Geometry::make({9, 9, 9}), gen, -1.0f, 3.0f);
    for (int size : {1, 3, 5}) {
        ConvKernel k;
        k.size = size;
        k.weights.assign(static_cast<std::size_t>(size * size * size), 0.0f);
        k.weights[k.weights.size() / 2] = 1.0f;
        const Volume out = apply_conv_kernel(v, k);
        for (std::size_t n = 0; n < v.size(); ++n) {
            ASSERT_NEAR(out[n], v[n], 1e-5f);
        }
    }
}

TEST(RandomConv, KeepsRangeAndIsDeterministic) {
    auto gen = make_gen(41);
    const Volume v = random_volume(Geometry::make({10, 9, 8}), gen, 2.0f, 5.0f);
    for (std::uint64_t k = 0; k < 8; ++k) {
        RngStream a(3, k), b(3, k);
        const Volume out = random_conv(v, a, RandomConvParams{});
        EXPECT_EQ(out, random_conv(v, b, RandomConvParams{}));
        expect_range_kept(out, v, 1e-5f);
    }
}

TEST(RandomConv, WeightVarianceScalesWithKernelVolume) {
    RngStream rng(4, 4);
    RandomConvParams p;
    p.kernel_sizes = {7};
    p.weight_sigma = 2.0;
    double m2 = 0.0;
    std::size_t n = 0;
    for (int i = 0; i < 40; ++i) {
        const ConvKernel k = draw_conv_kernel(rng, p);
        ASSERT_EQ(k.size, 7);
        for (float w : k.weights) {
            m2 += static_cast<double>(w) * w;
            ++n;
        }
    }
    EXPECT_NEAR(m2 / static_cast<double>(n), 4.0 / 343.0, 0.05 * 4.0 / 343.0);
}

TEST(HistEq, TwoBinCountingExample) {
    Volume v(Geometry::make({100, 1, 1}), 0.0f);
    for (std::size_t n = 75; n < 100; ++n) {
        v[n] = 1.0f;
    }
    const Volume out = histogram_equalization(v, 2);
    EXPECT_FLOAT_EQ(out[0], 0.75f);
    EXPECT_FLOAT_EQ(out[99], 1.0f);
}

TEST(HistEq, ConstantIsUnchangedAndMappingMonotone) {
    const Volume c(Geometry::make({4, 4, 4}), 9.0f);
    EXPECT_EQ(histogram_equalization(c, 256), c);
    auto gen = make_gen(50);
    std::exponential_distribution<float> ex(3.0f);
    Volume v(Geometry::make({20, 20, 20}), 0.0f);
    for (float& x : v.voxels()) {
        x = ex(gen);
    }
    const Volume out = histogram_equalization(v, 64);
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    for (std::size_t i = 1; i < idx.size(); ++i) {
        ASSERT_LE(out[idx[i - 1]], out[idx[i]]);
    }
    EXPECT_THROW(histogram_equalization(v, 1), ArgumentError);
}

TEST(BiasField, BasisSize) {
    EXPECT_EQ(bias_basis_size(1), 4);
    EXPECT_EQ(bias_basis_size(2), 10);
    EXPECT_EQ(bias_basis_size(3), 20);
}

TEST(BiasField, ZeroCoefficientsIsIdentity) {
    auto gen = make_gen(60);
    const Volume v = random_volume(Geometry::make({6, 6, 6}), gen);
    EXPECT_EQ(apply_bias_field(v, 3, std::vector<double>(20, 0.0)), v);
}

TEST(BiasField, MatchesPolynomialOracle) {
    RngStream rng(6, 1);
    const BiasFieldParams p{2, {-0.5, 0.5}};
    const auto coeffs = draw_bias_coefficients(rng, p);
    const Geometry g = Geometry::make({5, 4, 3});
    const Volume field = bias_field_map(g, 2, coeffs);
    for (int z = 0; z < 3; ++z) {
        for (int y = 0; y < 4; ++y) {
            for (int x = 0; x < 5; ++x) {
                const double expect = bias_oracle(2, coeffs, -1.0 + 2.0 * x / 4, -1.0 + 2.0 * y / 3, -1.0 + 2.0 * z / 2);
                ASSERT_NEAR(field(x, y, z), expect, 1e-5 * expect);
            }
        }
    }
}

TEST(BiasField, PositiveAndRatioIndependentOfConstant) {
    for (std::uint64_t k = 0; k < 10; ++k) {
        RngStream a(7, k), b(7, k);
        const BiasFieldParams p{3, {-3.0, 3.0}};
        const Geometry g = Geometry::make({8, 7, 6});
        const Volume x = bias_field(Volume(g, 2.0f), a, p);
        const Volume y = bias_field(Volume(g, 5.0f), b, p);
        for (std::size_t n = 0; n < x.size(); ++n) {
            ASSERT_GT(x[n], 0.0f);
            ASSERT_TRUE(std::isfinite(x[n]));
            ASSERT_NEAR(x[n] / 2.0f, y[n] / 5.0f, 1e-5f * y[n]);
        }
    }
}

TEST(BiasField, ExponentIsClamped) {
    std::vector<double> c(4, 0.0);
    c[0] = 100.0;
    const Volume f = bias_field_map(Geometry::make({3, 3, 3}), 1, c);
    for (float x : f.voxels()) {
        EXPECT_FLOAT_EQ(x, static_cast<float>(std::exp(20.0)));
    }
    EXPECT_THROW(bias_field_map(Geometry::make({3, 3, 3}), 1, std::vector<double>(3, 0.0)), ArgumentError);
}

TEST(Unsharp, ConstantAndZeroAmountAreIdentity) {
    const Volume c(Geometry::make({8, 8, 8}), -1.5f);
    const Volume out = apply_unsharp(c, 1.0, 1.5);
    for (float x : out.voxels()) {
        EXPECT_NEAR(x, -1.5f, 1e-6f);
    }
    auto gen = make_gen(70);
    const Volume v = random_volume(Geometry::make({6, 6, 6}), gen);
    EXPECT_EQ(apply_unsharp(v, 1.0, 0.0), v);
}

TEST(Unsharp, RampInteriorUnchanged) {
    const Volume v = ramp({24, 24, 24}, 0.5, -0.25, 0.125);
    const double sigma = 1.5;
    const Volume out = apply_unsharp(v, sigma, 1.5);
    const int margin = static_cast<int>(std::ceil(3.0 * sigma));
    for (int z = margin; z < 24 - margin; ++z) {
        for (int y = margin; y < 24 - margin; ++y) {
            for (int x = margin; x < 24 - margin; ++x) {
                ASSERT_NEAR(out(x, y, z), v(x, y, z), 1e-4);
            }
        }
    }
}

TEST(Unsharp, SharpensAStep) {
    Volume v(Geometry::make({16, 4, 4}), 0.0f);
    for (int z = 0; z < 4; ++z) {
        for (int y = 0; y < 4; ++y) {
            for (int x = 8; x < 16; ++x) {
                v(x, y, z) = 1.0f;
            }
        }
    }
    const Volume out = apply_unsharp(v, 1.0, 1.0);
    EXPECT_LT(out(7, 1, 1), 0.0f);
    EXPECT_GT(out(8, 1, 1), 1.0f);
}

TEST(FunctionCatalog, MonotoneOntoUnitInterval) {
    for (IntensityFunction f : function_catalog()) {
        EXPECT_NEAR(evaluate(f, 0.0), 0.0, 1e-12) << function_name(f);
        EXPECT_NEAR(evaluate(f, 1.0), 1.0, 1e-12) << function_name(f);
        double prev = evaluate(f, 0.0);
        for (int i = 1; i <= 1000; ++i) {
            const double y = evaluate(f, i / 1000.0);
            ASSERT_GE(y, prev) << function_name(f);
            prev = y;
        }
        EXPECT_EQ(parse_function(function_name(f)), f);
    }
    EXPECT_NEAR(evaluate(IntensityFunction::LogCompress, 0.5), std::log10(5.5), 1e-12);
    EXPECT_NEAR(evaluate(IntensityFunction::Sine, 1.0 / 3.0), 0.5, 1e-12);
    EXPECT_THROW(parse_function("cube"), ArgumentError);
}

TEST(FunctionTransform, RangeKeptAndOrderPreserved) {
    auto gen = make_gen(80);
    const Volume v = random_volume(Geometry::make({10, 10, 10}), gen, -3.0f, 7.0f);
    for (IntensityFunction f : function_catalog()) {
        const Volume out = apply_function(v, f);
        expect_range_kept(out, v, 1e-5f);
        for (std::size_t n = 1; n < v.size(); ++n) {
            if (v[n - 1] < v[n]) {
                ASSERT_LE(out[n - 1], out[n]) << function_name(f);
            }
        }
    }
    FunctionTransformParams only_identity;
    only_identity.functions = {IntensityFunction::Identity};
    RngStream rng(8, 8);
    EXPECT_EQ(function_transform(v, rng, only_identity), v);
    FunctionTransformParams none;
    none.functions.clear();
    EXPECT_THROW(function_transform(v, rng, none), ArgumentError);
}

TEST(ClampExtendedRange, BoundsAtOneRangeBeyond) {
    Volume v(Geometry::make({4, 1, 1}), 0.0f);
    v[0] = -10.0f;
    v[1] = 0.5f;
    v[2] = 2.5f;
    v[3] = 9.0f;
    const Volume out = clamp_to_extended_range(v, {0.0f, 1.0f});
    EXPECT_EQ(out[0], -1.0f);
    EXPECT_EQ(out[1], 0.5f);
    EXPECT_EQ(out[2], 2.0f);
    EXPECT_EQ(out[3], 2.0f);
}

TEST(NovelTransforms, PreserveGeometryAndStayFinite) {
    auto gen = make_gen(90);
    const Geometry g = pir_geometry({9, 8, 7}, {0.8, 1.2, 2.0});
    const Sample s{random_volume(g, gen, -100.0f, 400.0f), blob_labels(g)};
    RngStream rng(9, 9);
    const std::vector<Volume> outs{
        intensity_inversion(s.image),
        scharr_filter(s.image),
        redistribute_seg(s, rng, RedistributeSegParams{}).image,
        random_conv(s.image, rng, RandomConvParams{}),
        histogram_equalization(s.image, 256),
        bias_field(s.image, rng, BiasFieldParams{}),
        unsharp_masking(s.image, rng, UnsharpParams{}),
        function_transform(s.image, rng, FunctionTransformParams{}),
    };
    for (const Volume& out : outs) {
        EXPECT_TRUE(out.geometry().matches(g));
        EXPECT_NO_THROW(require_finite(out, "novel"));
    }
}
