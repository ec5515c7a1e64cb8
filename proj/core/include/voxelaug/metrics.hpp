#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "voxelaug/volume.hpp"

namespace voxelaug {

/// Segmentation classes after relabeling.
inline constexpr std::array<int, 3> kSpineClasses{1, 2, 3};  // vertebra, disc, canal

struct DiceReport {
    std::map<int, double> per_class;
    double global = 0.0;  // mean of per_class
};

/// Dice per class, 2|P & R| / (|P| + |R|); a class absent from both maps
/// scores 1. Throws ShapeError when the grids differ.
DiceReport dice_per_class(const LabelMap& pred, const LabelMap& ref,
                          std::span<const int> classes = kSpineClasses);

/// Mean of the per-subject global Dice. Throws ArgumentError when empty.
double aggregate_subjects(std::span<const DiceReport> reports);

struct StatResult {
    double statistic = 0.0;       // min(W+, W-)
    double p_value = 1.0;         // two-sided
    std::size_t n_effective = 0;  // pairs with a non-zero difference
    bool significant = false;     // p < 0.05
    bool exact = false;
};

/// Largest n_effective for which the exact null distribution is used.
inline constexpr std::size_t kExactWilcoxonLimit = 25;

/// Paired Wilcoxon signed-rank test. Zero differences are dropped, ties
/// get midranks. Exact two-sided p for n_effective <= 25 (enumerating the
/// sign-flip distribution of the observed ranks), else the normal
/// approximation with tie and continuity correction.
///
/// Throws ArgumentError on length mismatch or empty input and
/// DegenerateDataError when every difference is zero.
StatResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

}  // namespace voxelaug
