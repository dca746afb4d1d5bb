#pragma once

#include "ulinf/structures.hpp"
#include "ulinf/trees.hpp"

namespace ulinf {

// f: U -> V, g: V -> U (degree 0), h: V -> V (degree -1), with fg - id = dh + hd.
// Matrices are stored as columns (image of each basis vector) and are the same in the
// shifted picture, so they act directly on W = V[1] and U[1].
struct RetractData {
    GradedSpace big;    // V
    GradedSpace small;  // U
    LinearMap f, g, h, dV, dU;

    // Throws ValidationError naming the first offending matrix entry.
    void validate() const;
};

// Wheel classes enter with weight 1 (PerClass) or with the number of ways to cut the
// cycle open, i.e. the cycle length (PerCut).
enum class WheelWeight { PerClass, PerCut };
// The weighting under which transferred structures satisfy the q-equations.
inline constexpr WheelWeight kWheelWeight = WheelWeight::PerClass;

// Single-tree maps on U[1]. Results are non-symmetric maps keyed by ordered tuples.
MultiMap eval_tree(const RootedTree& t, const ULinfStructure& s, const RetractData& r);
MultiMap eval_tree(const QTree& t, const ULinfStructure& s, const RetractData& r);
MultiMap eval_tree(const WheeledTree& t, const ULinfStructure& s, const RetractData& r,
                   WheelWeight weight = kWheelWeight);

struct TransferResult {
    ULinfStructure structure;        // ell up to up_to + 1, q up to up_to
    std::vector<Residual> residuals;  // linf residuals then q residuals, up to up_to
    bool verified = false;
};

// Sum over trees, computed by a recursion over leaf subsets.
TransferResult transfer(const ULinfStructure& s, const RetractData& r, int up_to,
                        WheelWeight weight = kWheelWeight);

// Brute-force path: sums eval_tree over the enumerated trees (for cross-checks).
ULinfStructure transfer_by_trees(const ULinfStructure& s, const RetractData& r, int up_to,
                                 WheelWeight weight = kWheelWeight);

}  // namespace ulinf
