#pragma once

#include <string>
#include <vector>

namespace ulinf {

// Leaf-labeled tree; labels are 1-based. Internal nodes have >= 2 children
// (the root of a QTree may have 1). Children are kept sorted by smallest leaf.
struct TreeNode {
    int leaf = 0;  // > 0 for a leaf
    std::vector<TreeNode> children;

    bool is_leaf() const { return leaf > 0; }
    int min_leaf() const;
    std::vector<int> leaves() const;  // depth-first, left to right
    int internal_count() const;
    std::string canonical() const;
};

struct RootedTree {
    TreeNode root;
    int arity = 0;
    std::string canonical() const { return root.canonical(); }
    int internal_edges() const { return root.internal_count() - 1; }
};

struct QTree {
    TreeNode root;  // root decorated with q, any arity >= 1
    int arity = 0;
    std::string canonical() const { return "q" + root.canonical(); }
    int internal_edges() const { return root.internal_count() - 1; }
};

// Directed cycle v_1 <- v_2 <- ... <- v_k <- v_1: the output of v_{i+1} enters the last
// input of v_i. Each cycle vertex carries >= 1 pendant subtrees. Rotated so that v_1
// holds leaf 1.
struct WheeledTree {
    std::vector<std::vector<TreeNode>> cycle;
    int arity = 0;
    int cycle_length() const { return static_cast<int>(cycle.size()); }
    std::vector<int> leaves() const;  // pendants of v_1, then v_2, ...
    int edge_count() const;           // internal pendant edges plus cycle edges
    std::string canonical() const;
};

// Puts children in canonical order (recursively).
void normalize(TreeNode& t);
// Rotates and normalizes a cycle in place.
void normalize(WheeledTree& w);

std::vector<RootedTree> enum_rooted(int n);
std::vector<QTree> enum_q(int n);
std::vector<WheeledTree> enum_wheeled(int n);

// Set partitions of {0..n-1} (as index lists), blocks sorted by minimum.
std::vector<std::vector<std::vector<int>>> set_partitions(const std::vector<int>& items, int min_blocks);

}  // namespace ulinf
