#pragma once

// Naive tree enumeration: every parent array, filtered and deduplicated by canonical string.

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace ulinf::oracle {

struct RawTree {
    int internal = 0;            // vertex 0 is the root
    std::vector<int> parent;     // for internal vertices 1..internal-1
    std::vector<int> leaf_parent;  // leaf label i+1 hangs on leaf_parent[i]
};

inline std::vector<std::vector<int>> children_of(const RawTree& t) {
    // entries >= 0 are internal vertices, entries < 0 are leaves -(label)
    std::vector<std::vector<int>> ch(t.internal);
    for (int i = 1; i < t.internal; ++i) ch[t.parent[i]].push_back(i);
    for (size_t l = 0; l < t.leaf_parent.size(); ++l) ch[t.leaf_parent[l]].push_back(-static_cast<int>(l + 1));
    return ch;
}

// Calls fn for every raw tree with n leaves and the given minimum root arity. Internal
// vertices are numbered so that parents precede children; every tree has such a numbering.
inline void for_each_raw(int n, int root_min, const std::function<void(const RawTree&)>& fn) {
    for (int m = 1; m <= std::max(1, n); ++m) {
        RawTree t;
        t.internal = m;
        t.parent.assign(m, 0);
        t.leaf_parent.assign(n, 0);
        const int total = (m - 1) + n;
        std::vector<int> digits(total, 0), radix(total, m);
        for (int i = 1; i < m; ++i) radix[i - 1] = i;
        while (true) {
            for (int i = 1; i < m; ++i) t.parent[i] = digits[i - 1];
            for (int l = 0; l < n; ++l) t.leaf_parent[l] = digits[m - 1 + l];
            std::vector<int> deg(m, 0);
            for (int i = 1; i < m; ++i) ++deg[t.parent[i]];
            for (int p : t.leaf_parent) ++deg[p];
            bool ok = true;
            for (int v = 0; v < m && ok; ++v) ok = deg[v] >= (v == 0 ? root_min : 2);
            if (ok) fn(t);
            int k = 0;
            while (k < total && ++digits[k] == radix[k]) digits[k++] = 0;
            if (k == total) break;
        }
    }
}

struct Canon {
    std::string text;
    int min_leaf;
};

inline Canon canon_vertex(const std::vector<std::vector<int>>& ch, int v, const std::function<int(int)>& relabel,
                          int skip_leaf = 0, int skip_child = -1) {
    std::vector<Canon> parts;
    for (int c : ch[v]) {
        if (c < 0) {
            if (-c == skip_leaf) continue;
            int l = relabel(-c);
            parts.push_back({std::to_string(l), l});
        } else if (c != skip_child) {
            parts.push_back(canon_vertex(ch, c, relabel));
        }
    }
    std::sort(parts.begin(), parts.end(), [](const Canon& a, const Canon& b) { return a.min_leaf < b.min_leaf; });
    Canon out{"(", 1 << 30};
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out.text += ",";
        out.text += parts[i].text;
        out.min_leaf = std::min(out.min_leaf, parts[i].min_leaf);
    }
    out.text += ")";
    return out;
}

inline std::set<std::string> naive_rooted(int n) {
    std::set<std::string> out;
    for_each_raw(n, 2, [&](const RawTree& t) {
        out.insert(canon_vertex(children_of(t), 0, [](int l) { return l; }).text);
    });
    return out;
}

inline std::set<std::string> naive_q(int n) {
    std::set<std::string> out;
    for_each_raw(n, 1, [&](const RawTree& t) {
        out.insert("q" + canon_vertex(children_of(t), 0, [](int l) { return l; }).text);
    });
    return out;
}

// Trees with n+1 leaves, root output grafted onto each leaf in turn.
inline std::set<std::string> naive_wheeled(int n) {
    std::set<std::string> out;
    for_each_raw(n + 1, 2, [&](const RawTree& t) {
        auto ch = children_of(t);
        for (int j = 1; j <= n + 1; ++j) {
            auto relabel = [j](int l) { return l > j ? l - 1 : l; };
            // path from the root down to the vertex holding leaf j
            std::vector<int> path{t.leaf_parent[j - 1]};
            while (path.back() != 0) path.push_back(t.parent[path.back()]);
            std::reverse(path.begin(), path.end());  // root first
            std::vector<Canon> cyc;
            for (size_t i = 0; i < path.size(); ++i) {
                int next = i + 1 < path.size() ? path[i + 1] : -1;
                cyc.push_back(canon_vertex(ch, path[i], relabel, i + 1 == path.size() ? j : 0, next));
            }
            size_t best = 0;
            for (size_t i = 1; i < cyc.size(); ++i)
                if (cyc[i].min_leaf < cyc[best].min_leaf) best = i;
            std::rotate(cyc.begin(), cyc.begin() + best, cyc.end());
            std::string s = "w[";
            for (size_t i = 0; i < cyc.size(); ++i) s += (i ? "|" : "") + cyc[i].text;
            out.insert(s + "]");
        }
    });
    return out;
}

}  // namespace ulinf::oracle
