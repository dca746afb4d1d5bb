#include "ulinf/trees.hpp"

#include "ulinf/scalar.hpp"

#include <algorithm>
#include <map>

namespace ulinf {

int TreeNode::min_leaf() const {
    if (is_leaf()) return leaf;
    int m = children.front().min_leaf();
    for (const auto& c : children) m = std::min(m, c.min_leaf());
    return m;
}

std::vector<int> TreeNode::leaves() const {
    if (is_leaf()) return {leaf};
    std::vector<int> out;
    for (const auto& c : children) {
        auto l = c.leaves();
        out.insert(out.end(), l.begin(), l.end());
    }
    return out;
}

int TreeNode::internal_count() const {
    if (is_leaf()) return 0;
    int n = 1;
    for (const auto& c : children) n += c.internal_count();
    return n;
}

std::string TreeNode::canonical() const {
    if (is_leaf()) return std::to_string(leaf);
    std::string s = "(";
    for (size_t i = 0; i < children.size(); ++i) {
        if (i) s += ",";
        s += children[i].canonical();
    }
    return s + ")";
}

void normalize(TreeNode& t) {
    for (auto& c : t.children) normalize(c);
    std::sort(t.children.begin(), t.children.end(),
              [](const TreeNode& a, const TreeNode& b) { return a.min_leaf() < b.min_leaf(); });
}

std::vector<int> WheeledTree::leaves() const {
    std::vector<int> out;
    for (const auto& v : cycle)
        for (const auto& p : v) {
            auto l = p.leaves();
            out.insert(out.end(), l.begin(), l.end());
        }
    return out;
}

int WheeledTree::edge_count() const {
    int n = cycle_length();
    for (const auto& v : cycle)
        for (const auto& p : v) n += p.internal_count();
    return n;
}

std::string WheeledTree::canonical() const {
    std::string s = "w[";
    for (size_t i = 0; i < cycle.size(); ++i) {
        if (i) s += "|";
        TreeNode v;
        v.children = cycle[i];
        s += v.canonical();
    }
    return s + "]";
}

void normalize(WheeledTree& w) {
    int best = 0, lo = 0;
    for (size_t i = 0; i < w.cycle.size(); ++i) {
        TreeNode v;
        v.children = w.cycle[i];
        normalize(v);
        w.cycle[i] = v.children;
        int m = v.min_leaf();
        if (i == 0 || m < lo) lo = m, best = static_cast<int>(i);
    }
    std::rotate(w.cycle.begin(), w.cycle.begin() + best, w.cycle.end());
}

std::vector<std::vector<std::vector<int>>> set_partitions(const std::vector<int>& items, int min_blocks) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> cur;
    auto rec = [&](auto& self, size_t i) -> void {
        if (i == items.size()) {
            if (static_cast<int>(cur.size()) >= min_blocks) out.push_back(cur);
            return;
        }
        for (size_t b = 0, nb = cur.size(); b < nb; ++b) {
            cur[b].push_back(items[i]);
            self(self, i + 1);
            cur[b].pop_back();
        }
        cur.push_back({items[i]});
        self(self, i + 1);
        cur.pop_back();
    };
    if (!items.empty()) rec(rec, 0);
    return out;
}

namespace {

using Memo = std::map<std::vector<int>, std::vector<TreeNode>>;

// All subtrees with leaf set `labels` (internal arity >= 2).
const std::vector<TreeNode>& subtrees(const std::vector<int>& labels, Memo& memo) {
    if (auto it = memo.find(labels); it != memo.end()) return it->second;
    std::vector<TreeNode> out;
    if (labels.size() == 1) {
        TreeNode l;
        l.leaf = labels[0];
        out.push_back(l);
    } else {
        for (const auto& p : set_partitions(labels, 2)) {
            std::vector<TreeNode> acc(1);
            for (const auto& block : p) {
                std::vector<TreeNode> next;
                for (const auto& partial : acc)
                    for (const auto& sub : subtrees(block, memo)) {
                        TreeNode t = partial;
                        t.children.push_back(sub);
                        next.push_back(std::move(t));
                    }
                acc = std::move(next);
            }
            out.insert(out.end(), acc.begin(), acc.end());
        }
    }
    return memo.emplace(labels, std::move(out)).first->second;
}

// Forests: one subtree per block of a partition of `labels` into >= min_blocks blocks.
std::vector<std::vector<TreeNode>> forests(const std::vector<int>& labels, int min_blocks, Memo& memo) {
    std::vector<std::vector<TreeNode>> out;
    for (const auto& p : set_partitions(labels, min_blocks)) {
        std::vector<std::vector<TreeNode>> acc(1);
        for (const auto& block : p) {
            std::vector<std::vector<TreeNode>> next;
            for (const auto& partial : acc)
                for (const auto& sub : subtrees(block, memo)) {
                    auto f = partial;
                    f.push_back(sub);
                    next.push_back(std::move(f));
                }
            acc = std::move(next);
        }
        out.insert(out.end(), acc.begin(), acc.end());
    }
    return out;
}

std::vector<int> iota1(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    return v;
}

}  // namespace

std::vector<RootedTree> enum_rooted(int n) {
    if (n < 2) throw ValidationError("enum_rooted needs n >= 2");
    Memo memo;
    std::vector<RootedTree> out;
    for (const auto& t : subtrees(iota1(n), memo)) out.push_back({t, n});
    return out;
}

std::vector<QTree> enum_q(int n) {
    if (n < 1) throw ValidationError("enum_q needs n >= 1");
    Memo memo;
    std::vector<QTree> out;
    for (auto& f : forests(iota1(n), 1, memo)) {
        TreeNode r;
        r.children = std::move(f);
        out.push_back({r, n});
    }
    return out;
}

std::vector<WheeledTree> enum_wheeled(int n) {
    if (n < 1) throw ValidationError("enum_wheeled needs n >= 1");
    Memo memo;
    std::vector<WheeledTree> out;
    std::vector<int> labels = iota1(n);
    // Cycle vertex pendant sets: ordered set partitions with the block holding leaf 1 first.
    for (const auto& p : set_partitions(labels, 1)) {
        std::vector<int> order(p.size() - 1);
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i + 1);
        do {
            std::vector<std::vector<int>> seq{p[0]};
            for (int i : order) seq.push_back(p[i]);
            std::vector<WheeledTree> acc(1);
            for (const auto& block : seq) {
                std::vector<WheeledTree> next;
                auto fs = forests(block, 1, memo);
                for (const auto& partial : acc)
                    for (const auto& f : fs) {
                        WheeledTree w = partial;
                        w.cycle.push_back(f);
                        next.push_back(std::move(w));
                    }
                acc = std::move(next);
            }
            for (auto& w : acc) {
                w.arity = n;
                out.push_back(std::move(w));
            }
        } while (std::next_permutation(order.begin(), order.end()));
    }
    return out;
}

}  // namespace ulinf
