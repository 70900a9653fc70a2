#pragma once

#include <array>
#include <string>
#include <vector>

#include "frscat/mask.hpp"

namespace frscat {

/// Per-segmented-object matching record. gt_id is -1 when nothing in the
/// ground truth overlaps the object.
struct MatchPair {
    int seg_id = 0;
    int gt_id = -1;
    double overlap = 0.0;  // intersection / segmented object area
};

struct MatchTable {
    std::vector<MatchPair> pairs;  // ordered by seg_id
    int tp = 0;
    int fp = 0;
    int fn = 0;
};

/// Each segmented object is matched to the ground-truth object of maximal
/// pixel overlap and counts as a true positive when the overlap exceeds half
/// of its own area. Ground-truth objects claimed by no true positive are
/// false negatives.
MatchTable match_objects(const InstanceMask& seg, const InstanceMask& gt);

struct F1Result {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Empty denominators yield 0 so the metric stays total.
F1Result f1_score(const MatchTable& table);

/// Area-weighted object-level Dice. Both directions pair objects by maximal
/// overlap independently; an object with no overlapping counterpart
/// contributes 0 with its weight. Two empty masks agree vacuously (1).
double object_dice(const InstanceMask& seg, const InstanceMask& gt);

/// Symmetric Hausdorff distance between nonempty pixel sets (Euclidean,
/// in pixels). Throws std::invalid_argument on an empty set.
double hausdorff(const std::vector<Pixel>& a, const std::vector<Pixel>& b);

/// Area-weighted object-level Hausdorff with the same pairing rule as
/// object_dice; unmatched objects are penalized with the image diagonal.
double object_hausdorff(const InstanceMask& seg, const InstanceMask& gt);

/// The six challenge scores of one method: F1, object Dice and object
/// Hausdorff on test parts A and B.
struct MethodScores {
    std::string name;
    double f1_a = 0.0, f1_b = 0.0;
    double dice_a = 0.0, dice_b = 0.0;
    double haus_a = 0.0, haus_b = 0.0;
};

struct MethodRanks {
    std::string name;
    // column order: f1_a, f1_b, dice_a, dice_b, haus_a, haus_b
    std::array<double, 6> ranks{};
    double rs = 0.0;
    double wrs = 0.0;
};

/// Rank sum and weighted rank sum (3/4 part A + 1/4 part B) from given
/// per-column ranks.
void aggregate_ranks(MethodRanks& method);

/// Ranks every column (Hausdorff ascending, the rest descending; ties share
/// the mean rank) and aggregates.
std::vector<MethodRanks> rank_aggregate(const std::vector<MethodScores>& scores);

}  // namespace frscat
