#include "frscat/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "frscat/errors.hpp"

namespace frscat {

std::vector<int> object_ids(const InstanceMask& mask) {
    std::set<int> ids;
    for (auto v : mask.labels)
        if (v > 0) ids.insert(static_cast<int>(v));
    return {ids.begin(), ids.end()};
}

std::vector<Pixel> object_pixels(const InstanceMask& mask, int id) {
    std::vector<Pixel> px;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(y, x) == id) px.push_back({x, y});
    return px;
}

namespace {

struct OverlapIndex {
    std::map<int, std::size_t> seg_area;
    std::map<int, std::size_t> gt_area;
    std::map<std::pair<int, int>, std::size_t> inter;  // (seg, gt) -> pixels

    // maximal-overlap counterpart; ties go to the smallest id
    int best_gt(int seg_id) const { return best(seg_id, true); }
    int best_seg(int gt_id) const { return best(gt_id, false); }

    std::size_t intersection(int seg_id, int gt_id) const {
        auto it = inter.find({seg_id, gt_id});
        return it == inter.end() ? 0 : it->second;
    }

private:
    int best(int id, bool seg_side) const {
        int arg = -1;
        std::size_t top = 0;
        for (const auto& [key, n] : inter) {
            int own = seg_side ? key.first : key.second;
            int other = seg_side ? key.second : key.first;
            if (own != id || n == 0) continue;
            if (n > top || (n == top && arg != -1 && other < arg)) {
                top = n;
                arg = other;
            }
        }
        return arg;
    }
};

OverlapIndex build_overlap(const InstanceMask& seg, const InstanceMask& gt) {
    if (!seg.same_shape(gt)) throw shape_error("mask metrics: mask dimensions differ");
    OverlapIndex idx;
    for (std::size_t i = 0; i < seg.size(); ++i) {
        int s = seg.labels[i], g = gt.labels[i];
        if (s > 0) ++idx.seg_area[s];
        if (g > 0) ++idx.gt_area[g];
        if (s > 0 && g > 0) ++idx.inter[{s, g}];
    }
    return idx;
}

// Exact squared Euclidean distance transform (lower envelope of parabolas).
void dt_1d(const std::vector<double>& f, std::vector<double>& d) {
    std::size_t n = f.size();
    d.assign(n, 0.0);
    std::vector<int> v(n, 0);
    std::vector<double> z(n + 1, 0.0);
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < static_cast<int>(n); ++q) {
        double s;
        while (true) {
            int p = v[static_cast<std::size_t>(k)];
            s = ((f[static_cast<std::size_t>(q)] + q * static_cast<double>(q)) -
                 (f[static_cast<std::size_t>(p)] + p * static_cast<double>(p))) /
                (2.0 * (q - p));
            if (s <= z[static_cast<std::size_t>(k)] && k > 0) {
                --k;
                continue;
            }
            break;
        }
        ++k;
        v[static_cast<std::size_t>(k)] = q;
        z[static_cast<std::size_t>(k)] = s;
        z[static_cast<std::size_t>(k) + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < static_cast<int>(n); ++q) {
        while (z[static_cast<std::size_t>(k) + 1] < q) ++k;
        int p = v[static_cast<std::size_t>(k)];
        d[static_cast<std::size_t>(q)] =
            (q - p) * static_cast<double>(q - p) + f[static_cast<std::size_t>(p)];
    }
}

// sup over `from` of the distance to the nearest pixel of `to`, via a grid
// distance transform over the union bounding box.
double directed_max_distance(const std::vector<Pixel>& from, const std::vector<Pixel>& to) {
    int min_x = std::numeric_limits<int>::max(), min_y = min_x;
    int max_x = std::numeric_limits<int>::min(), max_y = max_x;
    for (const auto* set : {&from, &to})
        for (const auto& p : *set) {
            min_x = std::min(min_x, p.x);
            min_y = std::min(min_y, p.y);
            max_x = std::max(max_x, p.x);
            max_y = std::max(max_y, p.y);
        }
    int w = max_x - min_x + 1, h = max_y - min_y + 1;
    const double inf = 1e18;
    std::vector<double> grid(static_cast<std::size_t>(w) * h, inf);
    for (const auto& p : to)
        grid[static_cast<std::size_t>(p.y - min_y) * w + (p.x - min_x)] = 0.0;

    std::vector<double> col(static_cast<std::size_t>(h)), out_col;
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) col[static_cast<std::size_t>(y)] = grid[static_cast<std::size_t>(y) * w + x];
        dt_1d(col, out_col);
        for (int y = 0; y < h; ++y) grid[static_cast<std::size_t>(y) * w + x] = out_col[static_cast<std::size_t>(y)];
    }
    std::vector<double> row(static_cast<std::size_t>(w)), out_row;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) row[static_cast<std::size_t>(x)] = grid[static_cast<std::size_t>(y) * w + x];
        dt_1d(row, out_row);
        for (int x = 0; x < w; ++x) grid[static_cast<std::size_t>(y) * w + x] = out_row[static_cast<std::size_t>(x)];
    }

    double worst = 0.0;
    for (const auto& p : from)
        worst = std::max(worst, grid[static_cast<std::size_t>(p.y - min_y) * w + (p.x - min_x)]);
    return std::sqrt(worst);
}

double dice_pair(std::size_t inter, std::size_t area_a, std::size_t area_b) {
    return 2.0 * static_cast<double>(inter) / static_cast<double>(area_a + area_b);
}

}  // namespace

MatchTable match_objects(const InstanceMask& seg, const InstanceMask& gt) {
    OverlapIndex idx = build_overlap(seg, gt);
    MatchTable table;
    std::set<int> claimed;
    for (const auto& [seg_id, area] : idx.seg_area) {
        MatchPair pair;
        pair.seg_id = seg_id;
        pair.gt_id = idx.best_gt(seg_id);
        if (pair.gt_id >= 0)
            pair.overlap = static_cast<double>(idx.intersection(seg_id, pair.gt_id)) /
                           static_cast<double>(area);
        if (pair.overlap > 0.5) {
            ++table.tp;
            claimed.insert(pair.gt_id);
        } else {
            ++table.fp;
        }
        table.pairs.push_back(pair);
    }
    for (const auto& [gt_id, area] : idx.gt_area)
        if (!claimed.count(gt_id)) ++table.fn;
    return table;
}

F1Result f1_score(const MatchTable& table) {
    F1Result r;
    if (table.tp + table.fp > 0) r.precision = static_cast<double>(table.tp) / (table.tp + table.fp);
    if (table.tp + table.fn > 0) r.recall = static_cast<double>(table.tp) / (table.tp + table.fn);
    if (r.precision + r.recall > 0.0) r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
    return r;
}

double object_dice(const InstanceMask& seg, const InstanceMask& gt) {
    OverlapIndex idx = build_overlap(seg, gt);
    if (idx.seg_area.empty() && idx.gt_area.empty()) return 1.0;

    double seg_total = 0.0, gt_total = 0.0;
    for (const auto& [id, a] : idx.seg_area) seg_total += static_cast<double>(a);
    for (const auto& [id, a] : idx.gt_area) gt_total += static_cast<double>(a);

    double sum_seg = 0.0;
    for (const auto& [seg_id, area] : idx.seg_area) {
        int gt_id = idx.best_gt(seg_id);
        if (gt_id < 0) continue;  // unmatched: contributes 0 with its weight
        double d = dice_pair(idx.intersection(seg_id, gt_id), area, idx.gt_area.at(gt_id));
        sum_seg += static_cast<double>(area) / seg_total * d;
    }
    double sum_gt = 0.0;
    for (const auto& [gt_id, area] : idx.gt_area) {
        int seg_id = idx.best_seg(gt_id);
        if (seg_id < 0) continue;
        double d = dice_pair(idx.intersection(seg_id, gt_id), idx.seg_area.at(seg_id), area);
        sum_gt += static_cast<double>(area) / gt_total * d;
    }
    return 0.5 * (sum_seg + sum_gt);
}

double hausdorff(const std::vector<Pixel>& a, const std::vector<Pixel>& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("hausdorff: undefined for empty pixel sets");
    return std::max(directed_max_distance(a, b), directed_max_distance(b, a));
}

double object_hausdorff(const InstanceMask& seg, const InstanceMask& gt) {
    OverlapIndex idx = build_overlap(seg, gt);
    if (idx.seg_area.empty() && idx.gt_area.empty()) return 0.0;

    double diagonal = std::hypot(static_cast<double>(seg.width), static_cast<double>(seg.height));
    double seg_total = 0.0, gt_total = 0.0;
    for (const auto& [id, a] : idx.seg_area) seg_total += static_cast<double>(a);
    for (const auto& [id, a] : idx.gt_area) gt_total += static_cast<double>(a);

    std::map<int, std::vector<Pixel>> seg_px, gt_px;
    for (int y = 0; y < seg.height; ++y)
        for (int x = 0; x < seg.width; ++x) {
            if (seg.at(y, x) > 0) seg_px[seg.at(y, x)].push_back({x, y});
            if (gt.at(y, x) > 0) gt_px[gt.at(y, x)].push_back({x, y});
        }

    double sum_seg = 0.0;
    for (const auto& [seg_id, area] : idx.seg_area) {
        int gt_id = idx.best_gt(seg_id);
        double h = gt_id < 0 ? diagonal : hausdorff(gt_px.at(gt_id), seg_px.at(seg_id));
        sum_seg += static_cast<double>(area) / seg_total * h;
    }
    double sum_gt = 0.0;
    for (const auto& [gt_id, area] : idx.gt_area) {
        int seg_id = idx.best_seg(gt_id);
        double h = seg_id < 0 ? diagonal : hausdorff(gt_px.at(gt_id), seg_px.at(seg_id));
        sum_gt += static_cast<double>(area) / gt_total * h;
    }
    return 0.5 * (sum_seg + sum_gt);
}

void aggregate_ranks(MethodRanks& m) {
    m.rs = 0.0;
    for (double r : m.ranks) m.rs += r;
    double part_a = m.ranks[0] + m.ranks[2] + m.ranks[4];
    double part_b = m.ranks[1] + m.ranks[3] + m.ranks[5];
    m.wrs = 0.75 * part_a + 0.25 * part_b;
}

std::vector<MethodRanks> rank_aggregate(const std::vector<MethodScores>& scores) {
    if (scores.empty()) throw std::invalid_argument("rank_aggregate: no methods");
    std::vector<MethodRanks> out(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) out[i].name = scores[i].name;

    auto column = [&](int c, const MethodScores& s) -> double {
        switch (c) {
            case 0: return s.f1_a;
            case 1: return s.f1_b;
            case 2: return s.dice_a;
            case 3: return s.dice_b;
            case 4: return s.haus_a;
            default: return s.haus_b;
        }
    };

    for (int c = 0; c < 6; ++c) {
        bool ascending = c >= 4;  // Hausdorff: smaller is better
        std::vector<std::size_t> order(scores.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            double va = column(c, scores[a]), vb = column(c, scores[b]);
            return ascending ? va < vb : va > vb;
        });
        std::size_t i = 0;
        while (i < order.size()) {
            std::size_t j = i;
            while (j + 1 < order.size() &&
                   column(c, scores[order[j + 1]]) == column(c, scores[order[i]]))
                ++j;
            double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k)
                out[order[k]].ranks[static_cast<std::size_t>(c)] = mean_rank;
            i = j + 1;
        }
    }
    for (auto& m : out) aggregate_ranks(m);
    return out;
}

}  // namespace frscat
