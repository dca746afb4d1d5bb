#include "ulinf/transfer.hpp"

#include "ulinf/parallel.hpp"

#include <algorithm>
#include <map>

namespace ulinf {

namespace {

Scalar entry(const LinearMap& m, int row, int col) {
    auto it = m.at(col).find(row);
    return it == m.at(col).end() ? Scalar(0) : it->second;
}

LinearMap mul(const LinearMap& a, const LinearMap& b) {
    LinearMap out(b.size());
    for (size_t j = 0; j < b.size(); ++j) out[j] = ulinf::apply(a, b[j]);
    return out;
}

LinearMap sub(LinearMap a, const LinearMap& b) {
    for (size_t j = 0; j < a.size(); ++j) axpy(a[j], -1, b[j]);
    return a;
}

LinearMap identity(int n) {
    LinearMap m(n);
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

void check_shape(const LinearMap& m, const GradedSpace& from, const GradedSpace& to, int degree,
                 const std::string& name) {
    if (static_cast<int>(m.size()) != from.dim())
        throw ValidationError(name + ": expected " + std::to_string(from.dim()) + " columns");
    for (int j = 0; j < from.dim(); ++j)
        for (const auto& [i, c] : m[j]) {
            if (i < 0 || i >= to.dim()) throw ValidationError(name + ": row index out of range");
            if (c != 0 && to.degree(i) != from.degree(j) + degree)
                throw ValidationError(name + ": entry (" + to.name(i) + ", " + from.name(j) + ") has wrong degree");
        }
}

void check_equal(const LinearMap& lhs, const LinearMap& rhs, const GradedSpace& rows, const GradedSpace& cols,
                 const std::string& what) {
    for (int j = 0; j < cols.dim(); ++j)
        for (int i = 0; i < rows.dim(); ++i) {
            Scalar a = entry(lhs, i, j), b = entry(rhs, i, j);
            if (a != b)
                throw ValidationError(what + " fails at entry (" + rows.name(i) + ", " + cols.name(j) +
                                      "): " + to_string(a) + " != " + to_string(b));
        }
}

}  // namespace

void RetractData::validate() const {
    check_shape(f, small, big, 0, "f");
    check_shape(g, big, small, 0, "g");
    check_shape(h, big, big, -1, "h");
    check_shape(dV, big, big, 1, "d_V");
    check_shape(dU, small, small, 1, "d_U");
    LinearMap zV(big.dim()), zU(small.dim());
    check_equal(mul(dV, dV), zV, big, big, "d_V^2 = 0");
    check_equal(mul(dU, dU), zU, small, small, "d_U^2 = 0");
    check_equal(mul(dV, f), mul(f, dU), big, small, "f d_U = d_V f");
    check_equal(mul(dU, g), mul(g, dV), small, big, "g d_V = d_U g");
    LinearMap lhs = sub(mul(f, g), identity(big.dim()));
    LinearMap rhs = mul(dV, h);
    for (size_t j = 0; j < rhs.size(); ++j) axpy(rhs[j], 1, ulinf::apply(h, dV[j]));
    check_equal(lhs, rhs, big, big, "homotopy identity fg - id = dh + hd");
}

namespace {

// Evaluation context for one input tuple of U[1] basis indices.
struct Ctx {
    const ULinfStructure& s;
    const RetractData& r;
    std::vector<Vec> leaf;  // f(u_i) in W coordinates
    std::vector<int> deg;   // degrees of the inputs in U[1]

    Ctx(const ULinfStructure& s_, const RetractData& r_, const std::vector<int>& tuple) : s(s_), r(r_) {
        for (int u : tuple) {
            leaf.push_back(r.f.at(u));
            deg.push_back(r.small.degree(u) - 1);
        }
    }

    const MultiMap* ell(int k) const {
        auto it = s.base.ell.find(k);
        return it == s.base.ell.end() ? nullptr : &it->second;
    }
    const MultiMap* q(int k) const {
        auto it = s.q.find(k);
        return it == s.q.end() ? nullptr : &it->second;
    }

    // Koszul sign of listing `items` (increasing positions) in the order `seq`.
    int sign(const std::vector<int>& items, const std::vector<int>& seq) const {
        std::vector<int> perm, d;
        for (int x : seq) perm.push_back(static_cast<int>(std::find(items.begin(), items.end(), x) - items.begin()));
        for (int x : items) d.push_back(deg[x]);
        return koszul_sign(perm, d);
    }
};

std::vector<int> concat(const std::vector<std::vector<int>>& blocks) {
    std::vector<int> out;
    for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
    return out;
}

// ----- reference path: one labeled tree at a time -----

Vec node_value(const TreeNode& t, const Ctx& c, bool root_is_ell) {
    if (t.is_leaf()) return c.leaf[t.leaf - 1];
    std::vector<Vec> args;
    for (const auto& ch : t.children) args.push_back(node_value(ch, c, false));
    const MultiMap* m = c.ell(static_cast<int>(args.size()));
    if (!m) return {};
    Vec v = m->eval(args);
    return root_is_ell ? v : ulinf::apply(c.r.h, v);
}

int leaf_sign(const std::vector<int>& leaves, const Ctx& c) {
    std::vector<int> perm, d(c.deg);
    for (int l : leaves) perm.push_back(l - 1);
    return koszul_sign(perm, d);
}

Vec rooted_value(const RootedTree& t, const Ctx& c) {
    Vec v = ulinf::apply(c.r.g, node_value(t.root, c, true));
    Vec out;
    axpy(out, leaf_sign(t.root.leaves(), c), v);
    return out;
}

Scalar q_value(const QTree& t, const Ctx& c) {
    std::vector<Vec> args;
    for (const auto& ch : t.root.children) args.push_back(node_value(ch, c, false));
    const MultiMap* q = c.q(static_cast<int>(args.size()));
    if (!q) return 0;
    Vec v = q->eval(args);
    auto it = v.find(kScalarSlot);
    return it == v.end() ? Scalar(0) : it->second * leaf_sign(t.root.leaves(), c);
}

Scalar wheel_value(const WheeledTree& t, const Ctx& c, WheelWeight weight) {
    const GradedSpace& w = *c.s.shifted();
    std::vector<std::vector<Vec>> pend;
    for (const auto& v : t.cycle) {
        std::vector<Vec> a;
        for (const auto& p : v) a.push_back(node_value(p, c, false));
        pend.push_back(std::move(a));
    }
    Scalar total = 0;
    for (int alpha = 0; alpha < w.dim(); ++alpha) {
        Vec y{{alpha, 1}};
        for (int i = t.cycle_length() - 1; i >= 0 && !y.empty(); --i) {
            std::vector<Vec> args = pend[i];
            args.push_back(y);
            const MultiMap* m = c.ell(static_cast<int>(args.size()));
            y = m ? ulinf::apply(c.r.h, m->eval(args)) : Vec{};
        }
        if (auto it = y.find(alpha); it != y.end()) total += sign_pow(parity(w.degree(alpha))) * it->second;
    }
    total *= leaf_sign(t.leaves(), c);
    if (weight == WheelWeight::PerCut) total *= t.cycle_length();
    return total;
}

SpacePtr small_shifted(const RetractData& r) {
    return std::make_shared<const GradedSpace>(shift_structure(r.small).first);
}

void check_inputs(const ULinfStructure& s, const RetractData& r) {
    if (!(s.space() == r.big)) throw ValidationError("retract big space differs from the structure's space");
}

}  // namespace

MultiMap eval_tree(const RootedTree& t, const ULinfStructure& s, const RetractData& r) {
    check_inputs(s, r);
    MultiMap m(small_shifted(r), t.arity, Target::Space, 1, false);
    for (const auto& tup : all_tuples(m.space(), t.arity))
        for (const auto& [o, v] : rooted_value(t, Ctx(s, r, tup))) m.add_term(tup, o, v);
    return m;
}

MultiMap eval_tree(const QTree& t, const ULinfStructure& s, const RetractData& r) {
    check_inputs(s, r);
    MultiMap m(small_shifted(r), t.arity, Target::Scalars, 0, false);
    for (const auto& tup : all_tuples(m.space(), t.arity))
        if (Scalar v = q_value(t, Ctx(s, r, tup)); v != 0) m.add_term(tup, kScalarSlot, v);
    return m;
}

MultiMap eval_tree(const WheeledTree& t, const ULinfStructure& s, const RetractData& r, WheelWeight weight) {
    check_inputs(s, r);
    MultiMap m(small_shifted(r), t.arity, Target::Scalars, 0, false);
    for (const auto& tup : all_tuples(m.space(), t.arity))
        if (Scalar v = wheel_value(t, Ctx(s, r, tup), weight); v != 0) m.add_term(tup, kScalarSlot, v);
    return m;
}

namespace {

// ----- fast path: recursion over leaf subsets -----

struct Sums {
    const Ctx& c;
    std::map<std::vector<int>, Vec> inner;  // T(S): h-decorated subtree sums, or the leaf
    std::map<std::vector<int>, Vec> top;    // A(S): ell at the top, no h

    explicit Sums(const Ctx& ctx) : c(ctx) {}

    const Vec& A(const std::vector<int>& S) {
        if (auto it = top.find(S); it != top.end()) return it->second;
        Vec out;
        for (const auto& p : set_partitions(S, 2)) {
            const MultiMap* m = c.ell(static_cast<int>(p.size()));
            if (!m) continue;
            std::vector<Vec> args;
            for (const auto& b : p) args.push_back(T(b));
            axpy(out, c.sign(S, concat(p)), m->eval(args));
        }
        return top.emplace(S, std::move(out)).first->second;
    }

    const Vec& T(const std::vector<int>& S) {
        if (auto it = inner.find(S); it != inner.end()) return it->second;
        Vec v = S.size() == 1 ? c.leaf[S[0]] : ulinf::apply(c.r.h, A(S));
        return inner.emplace(S, std::move(v)).first->second;
    }

    Scalar q_root(const std::vector<int>& S) {
        Scalar out = 0;
        for (const auto& p : set_partitions(S, 1)) {
            const MultiMap* q = c.q(static_cast<int>(p.size()));
            if (!q) continue;
            std::vector<Vec> args;
            for (const auto& b : p) args.push_back(T(b));
            Vec v = q->eval(args);
            if (auto it = v.find(kScalarSlot); it != v.end()) out += c.sign(S, concat(p)) * it->second;
        }
        return out;
    }

    // M_C(y) = sum over forests on C of h ell(T(B_1), ..., T(B_m), y), as a matrix on W.
    LinearMap cycle_vertex(const std::vector<int>& C) {
        const int dim = c.s.shifted()->dim();
        LinearMap out(dim);
        for (const auto& p : set_partitions(C, 1)) {
            const MultiMap* m = c.ell(static_cast<int>(p.size()) + 1);
            if (!m) continue;
            std::vector<Vec> args;
            for (const auto& b : p) args.push_back(T(b));
            args.emplace_back();
            int sg = c.sign(C, concat(p));
            for (int a = 0; a < dim; ++a) {
                args.back() = Vec{{a, 1}};
                axpy(out[a], sg, ulinf::apply(c.r.h, m->eval(args)));
            }
        }
        return out;
    }

    // Sum over ordered sequences (C_1..C_k) partitioning S of signed M_{C_1} o ... o M_{C_k},
    // grouped by k.
    std::map<std::vector<int>, std::map<int, LinearMap>> paths;
    std::map<std::vector<int>, LinearMap> vertex;

    const std::map<int, LinearMap>& path(const std::vector<int>& S) {
        if (auto it = paths.find(S); it != paths.end()) return it->second;
        std::map<int, LinearMap> out;
        const int n = static_cast<int>(S.size());
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> C, R;
            for (int i = 0; i < n; ++i) (mask >> i & 1u ? C : R).push_back(S[i]);
            auto vit = vertex.find(C);
            if (vit == vertex.end()) vit = vertex.emplace(C, cycle_vertex(C)).first;
            const LinearMap& M = vit->second;
            if (R.empty()) {
                add_into(out[1], M, 1);
                continue;
            }
            int sg = c.sign(S, concat(std::vector<std::vector<int>>{C, R}));
            for (const auto& [k, P] : path(R)) add_into(out[k + 1], mul(M, P), sg);
        }
        return paths.emplace(S, std::move(out)).first->second;
    }

    static void add_into(LinearMap& acc, const LinearMap& m, int sg) {
        if (acc.empty()) acc.resize(m.size());
        for (size_t j = 0; j < m.size(); ++j) axpy(acc[j], sg, m[j]);
    }

    Scalar wheels(const std::vector<int>& S, WheelWeight weight) {
        const GradedSpace& w = *c.s.shifted();
        Scalar out = 0;
        for (const auto& [k, P] : path(S)) {
            Scalar tr = 0;
            for (int a = 0; a < w.dim(); ++a)
                if (auto it = P[a].find(a); it != P[a].end()) tr += sign_pow(parity(w.degree(a))) * it->second;
            if (weight == WheelWeight::PerClass) tr /= k;
            out += tr;
        }
        return out;
    }
};

std::vector<int> positions(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace

TransferResult transfer(const ULinfStructure& s, const RetractData& r, int up_to, WheelWeight weight) {
    if (up_to < 1) throw ValidationError("transfer needs up_to >= 1");
    check_inputs(s, r);
    r.validate();
    MultiMap d = s.base.d();
    for (int j = 0; j < r.big.dim(); ++j)
        if (d.eval_basis({j}) != r.dV[j])
            throw ValidationError("d_V of the retract differs from the structure's differential at column " +
                                  r.big.name(j));

    TransferResult res;
    ULinfStructure& out = res.structure;
    out = make_ulinf(r.small);
    const SpacePtr& wu = out.shifted();

    MultiMap dU(wu, 1, Target::Space, 1);
    for (int j = 0; j < r.small.dim(); ++j)
        for (const auto& [i, c] : r.dU[j]) dU.add_term({j}, i, c);
    if (!dU.is_zero()) set_ell(out.base, dU);

    for (int n = 2; n <= up_to + 1; ++n) {
        auto tuples = sorted_tuples(*wu, n);
        auto vals = parallel_map<Vec>(tuples.size(), [&](size_t i) -> Vec {
            Ctx c(s, r, tuples[i]);
            Sums sums(c);
            return ulinf::apply(r.g, sums.A(positions(n)));
        });
        MultiMap m(wu, n, Target::Space, 1);
        for (size_t i = 0; i < tuples.size(); ++i) m.set_value(tuples[i], vals[i]);
        if (!m.is_zero()) set_ell(out.base, std::move(m));
    }
    for (int n = 1; n <= up_to; ++n) {
        auto tuples = sorted_tuples(*wu, n);
        auto vals = parallel_map<Scalar>(tuples.size(), [&](size_t i) -> Scalar {
            Ctx c(s, r, tuples[i]);
            Sums sums(c);
            return sums.q_root(positions(n)) + sums.wheels(positions(n), weight);
        });
        MultiMap m(wu, n, Target::Scalars, 0);
        for (size_t i = 0; i < tuples.size(); ++i)
            if (vals[i] != 0) m.set_value(tuples[i], Vec{{kScalarSlot, vals[i]}});
        if (!m.is_zero()) set_q(out, std::move(m));
    }

    res.residuals = linf_residuals(out.base, up_to);
    for (auto& q : ulinf_residuals(out, up_to)) res.residuals.push_back(std::move(q));
    res.verified = true;
    for (const auto& x : res.residuals) res.verified = res.verified && x.vanishes();
    return res;
}

ULinfStructure transfer_by_trees(const ULinfStructure& s, const RetractData& r, int up_to, WheelWeight weight) {
    check_inputs(s, r);
    ULinfStructure out = make_ulinf(r.small);
    const SpacePtr& wu = out.shifted();
    MultiMap dU(wu, 1, Target::Space, 1);
    for (int j = 0; j < r.small.dim(); ++j)
        for (const auto& [i, c] : r.dU[j]) dU.add_term({j}, i, c);
    if (!dU.is_zero()) set_ell(out.base, dU);
    for (int n = 2; n <= up_to + 1; ++n) {
        auto trees = enum_rooted(n);
        MultiMap m(wu, n, Target::Space, 1);
        for (const auto& tup : sorted_tuples(*wu, n)) {
            Ctx c(s, r, tup);
            Vec v;
            for (const auto& t : trees) axpy(v, 1, rooted_value(t, c));
            m.set_value(tup, v);
        }
        if (!m.is_zero()) set_ell(out.base, std::move(m));
    }
    for (int n = 1; n <= up_to; ++n) {
        auto qs = enum_q(n);
        auto ws = enum_wheeled(n);
        MultiMap m(wu, n, Target::Scalars, 0);
        for (const auto& tup : sorted_tuples(*wu, n)) {
            Ctx c(s, r, tup);
            Scalar v = 0;
            for (const auto& t : qs) v += q_value(t, c);
            for (const auto& t : ws) v += wheel_value(t, c, weight);
            if (v != 0) m.set_value(tup, Vec{{kScalarSlot, v}});
        }
        if (!m.is_zero()) set_q(out, std::move(m));
    }
    return out;
}

}  // namespace ulinf
