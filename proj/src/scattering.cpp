#include "frscat/scattering.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "frscat/errors.hpp"
#include "frscat/parallel.hpp"

namespace frscat {

namespace {

void emit_scale_tuples(std::vector<Path>& out, Path& prefix, int scales, int depth) {
    if (depth == 0) {
        out.push_back(prefix);
        return;
    }
    int first = prefix.empty() ? 0 : prefix.back().scale + 1;
    for (int j = first; j <= scales - depth; ++j) {
        prefix.push_back({j, 0});
        emit_scale_tuples(out, prefix, scales, depth - 1);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<Path> enumerate_paths(int scales, int angles, int max_order) {
    if (scales < 1 || angles < 1) throw std::invalid_argument("enumerate_paths: scales and angles must be >= 1");
    if (max_order < 0) throw std::invalid_argument("enumerate_paths: max_order must be >= 0");

    // First enumerate scale tuples per order (lexicographic), then expand
    // angle assignments lexicographically within each tuple.
    std::vector<Path> out;
    out.push_back({});
    for (int m = 1; m <= max_order; ++m) {
        std::vector<Path> scale_tuples;
        Path prefix;
        emit_scale_tuples(scale_tuples, prefix, scales, m);
        for (const auto& tuple : scale_tuples) {
            std::vector<int> ks(static_cast<std::size_t>(m), 0);
            while (true) {
                Path p = tuple;
                for (int t = 0; t < m; ++t) p[static_cast<std::size_t>(t)].angle = ks[static_cast<std::size_t>(t)];
                out.push_back(std::move(p));
                int pos = m - 1;
                while (pos >= 0 && ++ks[static_cast<std::size_t>(pos)] == angles) {
                    ks[static_cast<std::size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
    }
    return out;
}

RealImage propagate(const RealImage& x, const Path& path, const FilterBank& bank,
                    const FractionalOrderPair& orders) {
    for (const auto& step : path) {
        if (step.scale < 0 || step.scale >= bank.spec.num_scales || step.angle < 0 ||
            step.angle >= bank.spec.num_angles)
            throw std::invalid_argument("propagate: path step (" + std::to_string(step.scale) + ", " +
                                        std::to_string(step.angle) + ") outside the filter bank");
    }
    if (path.empty()) return x;
    RealImage cur = x;
    for (const auto& step : path) {
        const auto& atom = bank.psi_hat[static_cast<std::size_t>(step.scale)][static_cast<std::size_t>(step.angle)];
        cur = modulus(frac_convolve(to_complex(cur), atom, orders));
    }
    return cur;
}

ScatteringResult scatter(const RealImage& x, const FilterBank& bank,
                         const FractionalOrderPair& orders) {
    const auto& spec = bank.spec;
    if (x.width != spec.grid_width || x.height != spec.grid_height)
        throw shape_error("scatter: signal does not match the filter bank grid");
    orders.validate();

    ScatteringResult result;
    result.orders = orders;
    result.paths = enumerate_paths(spec.num_scales, spec.num_angles, spec.max_order);
    result.coefficients.assign(result.paths.size(), RealImage());
    result.ledger.s_energy.assign(static_cast<std::size_t>(spec.max_order) + 1, 0.0);
    result.ledger.u_energy.assign(static_cast<std::size_t>(spec.max_order) + 2, 0.0);

    auto chirps = cached_chirps(x.width, x.height, orders);

    // Band energy above a given scale, used to price the deepest propagated
    // layer spectrally (||ifft(F .* psi)||^2 == ||F .* psi||^2, so no inverse
    // transforms are needed for signals that are never materialized).
    std::vector<RealImage> band_energy_from(static_cast<std::size_t>(spec.num_scales) + 1,
                                            RealImage(x.width, x.height));
    for (int j0 = spec.num_scales - 1; j0 >= 0; --j0) {
        auto& acc = band_energy_from[static_cast<std::size_t>(j0)];
        acc = band_energy_from[static_cast<std::size_t>(j0) + 1];
        for (const auto& atom : bank.psi_hat[static_cast<std::size_t>(j0)])
            for (std::size_t i = 0; i < acc.size(); ++i) acc.data[i] += std::norm(atom.data[i]);
    }

    // Children are produced in breadth-first node order, which interleaves
    // scale tuples differently than the enumeration order; slots are resolved
    // through an explicit path index instead.
    std::map<std::vector<int>, std::size_t> slot_of;
    for (std::size_t s = 0; s < result.paths.size(); ++s) {
        std::vector<int> key;
        for (const auto& step : result.paths[s]) {
            key.push_back(step.scale);
            key.push_back(step.angle);
        }
        slot_of.emplace(std::move(key), s);
    }
    auto child_slot = [&](std::size_t parent_slot, int j, int k) {
        std::vector<int> key;
        for (const auto& step : result.paths[parent_slot]) {
            key.push_back(step.scale);
            key.push_back(step.angle);
        }
        key.push_back(j);
        key.push_back(k);
        return slot_of.at(key);
    };

    struct Node {
        std::size_t slot;  // index into paths/coefficients
        RealImage u;
    };
    std::vector<Node> level;
    level.push_back({0, x});
    for (int m = 0; m <= spec.max_order; ++m) {
        const bool deepest = m == spec.max_order;

        struct NodeOut {
            RealImage s_img;
            double s_norm_sq = 0.0;
            double u_norm_sq = 0.0;
            double child_norm_sq = 0.0;  // only on the deepest level
            std::vector<RealImage> children;
            std::vector<std::size_t> child_slots;
        };
        std::vector<NodeOut> outs(level.size());

        parallel_for(level.size(), [&](std::size_t i) {
            const Node& node = level[i];
            NodeOut& o = outs[i];
            o.u_norm_sq = norm_sq(node.u);
            ComplexImage forward = spectrum(modulate(node.u, chirps->plus));

            // |S[p]x|: the trailing demodulation chirp has unit modulus and
            // cannot change the magnitude, so it is skipped.
            o.s_img = modulus(inverse_spectrum(hadamard(forward, bank.phi_hat)));
            o.s_norm_sq = norm_sq(o.s_img);

            int last = result.paths[node.slot].empty() ? -1 : result.paths[node.slot].back().scale;
            if (!deepest) {
                for (int j = last + 1; j < spec.num_scales; ++j)
                    for (int k = 0; k < spec.num_angles; ++k) {
                        const auto& atom = bank.psi_hat[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                        o.children.push_back(modulus(inverse_spectrum(hadamard(forward, atom))));
                        o.child_slots.push_back(child_slot(node.slot, j, k));
                    }
            } else {
                const auto& mask = band_energy_from[static_cast<std::size_t>(last + 1)];
                double acc = 0.0;
                for (std::size_t b = 0; b < forward.size(); ++b)
                    acc += std::norm(forward.data[b]) * mask.data[b];
                o.child_norm_sq = acc;
            }
        });

        // Deterministic reduction and child placement in path order.
        std::vector<Node> next;
        for (std::size_t i = 0; i < level.size(); ++i) {
            NodeOut& o = outs[i];
            result.coefficients[level[i].slot] = std::move(o.s_img);
            result.ledger.s_energy[static_cast<std::size_t>(m)] += o.s_norm_sq;
            result.ledger.u_energy[static_cast<std::size_t>(m)] += o.u_norm_sq;
            if (deepest) {
                result.ledger.u_energy[static_cast<std::size_t>(m) + 1] += o.child_norm_sq;
            } else {
                for (std::size_t c = 0; c < o.children.size(); ++c)
                    next.push_back({o.child_slots[c], std::move(o.children[c])});
            }
        }
        level = std::move(next);
        if (deepest) break;
    }
    return result;
}

std::vector<EnergyRow> energy_report(const ScatteringResult& result, double input_norm_sq) {
    const auto& ledger = result.ledger;
    bool ledger_zero = true;
    for (double v : ledger.s_energy) ledger_zero = ledger_zero && v == 0.0;
    for (double v : ledger.u_energy) ledger_zero = ledger_zero && v == 0.0;
    if (input_norm_sq < 0.0 || (input_norm_sq == 0.0 && !ledger_zero))
        throw std::invalid_argument("energy_report: input norm must be positive");

    std::vector<EnergyRow> rows;
    double captured = 0.0;
    for (std::size_t m = 0; m < ledger.s_energy.size(); ++m) {
        captured += ledger.s_energy[m];
        EnergyRow row;
        row.order = static_cast<int>(m);
        row.captured = input_norm_sq > 0.0 ? captured / input_norm_sq : 0.0;
        row.residual = input_norm_sq > 0.0 ? ledger.u_energy[m + 1] / input_norm_sq : 0.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace frscat
