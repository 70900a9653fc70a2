#pragma once

#include <vector>

#include "frscat/filterbank.hpp"
#include "frscat/frwt.hpp"
#include "frscat/grid.hpp"

namespace frscat {

/// One wavelet index along a scattering path.
struct PathStep {
    int scale = 0;
    int angle = 0;
    bool operator==(const PathStep&) const = default;
};

/// Ordered wavelet indices; scales must be strictly increasing along the
/// path (frequency-decreasing paths carry the scattering energy). The empty
/// path is the order-0 node.
using Path = std::vector<PathStep>;

/// All frequency-decreasing paths up to max_order, in deterministic order:
/// by path length, then scale tuples lexicographically, then angle tuples.
/// Count is sum over m of C(scales, m) * angles^m.
std::vector<Path> enumerate_paths(int scales, int angles, int max_order);

/// Per-layer energy bookkeeping: s_energy[m] = sum of ||S[p]x||^2 over paths
/// of order m (m = 0..max_order); u_energy[m] likewise for the propagated
/// signals, with one extra entry at max_order+1 holding the energy of the
/// deepest propagated (uncomputed) layer.
struct EnergyLedger {
    std::vector<double> s_energy;
    std::vector<double> u_energy;
};

/// Output of the windowed scattering transform. Coefficient images are the
/// magnitudes |S[p]x| at full grid resolution, aligned with `paths` (the
/// enumeration order).
struct ScatteringResult {
    std::vector<Path> paths;
    std::vector<RealImage> coefficients;
    EnergyLedger ledger;
    FractionalOrderPair orders;
};

/// Iterated wavelet-modulus propagator U[p]x; the empty path returns x
/// unchanged. Throws std::invalid_argument when a step indexes outside the
/// bank.
RealImage propagate(const RealImage& x, const Path& path, const FilterBank& bank,
                    const FractionalOrderPair& orders);

/// Full scattering tree with breadth-first reuse: every propagated node is
/// computed once, windowed by phi_hat, and extended to its children.
/// Deterministic (bit-identical) regardless of the worker count.
ScatteringResult scatter(const RealImage& x, const FilterBank& bank,
                         const FractionalOrderPair& orders);

struct EnergyRow {
    int order = 0;
    double captured = 0.0;  // sum_{|p| <= order} ||S[p]x||^2 / ||x||^2
    double residual = 0.0;  // sum_{|p| = order+1} ||U[p]x||^2 / ||x||^2
};

/// Normalized per-order capture table. input_norm_sq must be positive, or
/// zero when the ledger itself is all zero (the zero-signal case).
std::vector<EnergyRow> energy_report(const ScatteringResult& result, double input_norm_sq);

}  // namespace frscat
