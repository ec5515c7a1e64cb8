#include "voxelaug/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace voxelaug {

DiceReport dice_per_class(const LabelMap& pred, const LabelMap& ref, std::span<const int> classes) {
    if (!pred.geometry().matches(ref.geometry())) {
        throw ShapeError("prediction and reference label maps differ in geometry");
    }
    std::array<std::size_t, 256> pred_count{}, ref_count{}, overlap{};
    const auto p = pred.voxels();
    const auto r = ref.voxels();
    for (std::size_t n = 0; n < p.size(); ++n) {
        ++pred_count[p[n]];
        ++ref_count[r[n]];
        if (p[n] == r[n]) {
            ++overlap[p[n]];
        }
    }
    DiceReport report;
    if (classes.empty()) {
        return report;
    }
    double sum = 0.0;
    for (int c : classes) {
        if (c < 0 || c > 255) {
            throw ArgumentError("class id " + std::to_string(c) + " outside label range");
        }
        const auto k = static_cast<std::size_t>(c);
        const std::size_t denom = pred_count[k] + ref_count[k];
        const double dice = denom == 0 ? 1.0 : 2.0 * static_cast<double>(overlap[k]) / static_cast<double>(denom);
        report.per_class[c] = dice;
        sum += dice;
    }
    report.global = sum / static_cast<double>(classes.size());
    return report;
}

double aggregate_subjects(std::span<const DiceReport> reports) {
    if (reports.empty()) {
        throw ArgumentError("cannot aggregate an empty list of subjects");
    }
    double sum = 0.0;
    for (const auto& r : reports) {
        sum += r.global;
    }
    return sum / static_cast<double>(reports.size());
}

StatResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ArgumentError("paired samples must have equal length");
    }
    if (a.empty()) {
        throw ArgumentError("paired samples must not be empty");
    }
    std::vector<double> diffs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) {
            diffs.push_back(d);
        }
    }
    const std::size_t n = diffs.size();
    if (n == 0) {
        throw DegenerateDataError("all paired differences are zero");
    }

    // Midranks of |d|, kept doubled so they stay integral.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return std::abs(diffs[i]) < std::abs(diffs[j]); });
    std::vector<long> rank2(n);
    double tie_term = 0.0;  // sum of t^3 - t over tie groups
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]])) {
            ++j;
        }
        const long doubled = static_cast<long>(i + 1 + j + 1);  // 2 * mean of ranks i+1..j+1
        for (std::size_t k = i; k <= j; ++k) {
            rank2[order[k]] = doubled;
        }
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }

    long w_plus2 = 0;
    long total2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        total2 += rank2[i];
        if (diffs[i] > 0.0) {
            w_plus2 += rank2[i];
        }
    }
    const long w_min2 = std::min(w_plus2, total2 - w_plus2);

    StatResult result;
    result.statistic = static_cast<double>(w_min2) / 2.0;
    result.n_effective = n;

    if (n <= kExactWilcoxonLimit) {
        // counts[s] = number of sign patterns whose doubled W+ equals s.
        std::vector<double> counts(static_cast<std::size_t>(total2) + 1, 0.0);
        counts[0] = 1.0;
        long reach = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (long s = reach; s >= 0; --s) {
                if (counts[static_cast<std::size_t>(s)] != 0.0) {
                    counts[static_cast<std::size_t>(s + rank2[i])] += counts[static_cast<std::size_t>(s)];
                }
            }
            reach += rank2[i];
        }
        double tail = 0.0;
        for (long s = 0; s <= w_min2; ++s) {
            tail += counts[static_cast<std::size_t>(s)];
        }
        const double patterns = std::ldexp(1.0, static_cast<int>(n));
        result.p_value = std::min(1.0, 2.0 * tail / patterns);
        result.exact = true;
    } else {
        const double nn = static_cast<double>(n);
        const double mean = nn * (nn + 1.0) / 4.0;
        const double var = (nn * (nn + 1.0) * (2.0 * nn + 1.0) - tie_term / 2.0) / 24.0;
        const double w_plus = static_cast<double>(w_plus2) / 2.0;
        const double shift = w_plus - mean;
        const double correction = shift > 0.0 ? 0.5 : (shift < 0.0 ? -0.5 : 0.0);
        const double z = var > 0.0 ? (shift - correction) / std::sqrt(var) : 0.0;
        result.p_value = std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
    }
    result.significant = result.p_value < 0.05;
    return result;
}

}  // namespace voxelaug
