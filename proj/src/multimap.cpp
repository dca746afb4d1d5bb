#include "ulinf/multimap.hpp"

#include <algorithm>
#include <numeric>

namespace ulinf {

void axpy(Vec& y, const Scalar& a, const Vec& x) {
    if (a == 0) return;
    for (const auto& [k, v] : x) {
        auto it = y.find(k);
        if (it == y.end()) {
            y.emplace(k, a * v);
        } else {
            it->second += a * v;
            if (it->second == 0) y.erase(it);
        }
    }
}

void prune(Vec& v) { std::erase_if(v, [](const auto& kv) { return kv.second == 0; }); }

int vec_degree(const Vec& v, const GradedSpace& space) {
    if (v.empty()) throw ValidationError("degree of zero vector");
    int d = space.degree(v.begin()->first);
    for (const auto& [k, c] : v)
        if (space.degree(k) != d) throw ValidationError("inhomogeneous vector");
    return d;
}

MultiMap::MultiMap(SpacePtr space, int arity, Target target, int degree, bool symmetric)
    : space_(std::move(space)), arity_(arity), target_(target), degree_(degree), symmetric_(symmetric) {
    if (!space_) throw ValidationError("multimap without space");
    if (arity < 0) throw ValidationError("negative arity");
}

int MultiMap::canonicalize(std::vector<int>& in) const {
    if (!symmetric_) return 1;
    std::vector<int> perm(in.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return in[a] < in[b]; });
    std::vector<int> deg(in.size());
    for (size_t k = 0; k < in.size(); ++k) deg[k] = space_->degree(in[k]);
    int s = koszul_sign(perm, deg);
    std::vector<int> sorted(in.size());
    for (size_t k = 0; k < in.size(); ++k) sorted[k] = in[perm[k]];
    for (size_t k = 1; k < sorted.size(); ++k)
        if (sorted[k] == sorted[k - 1] && parity(space_->degree(sorted[k]))) return 0;
    in = std::move(sorted);
    return s;
}

void MultiMap::check_degree(const std::vector<int>& in, int out) const {
    if (static_cast<int>(in.size()) != arity_) throw ValidationError("arity mismatch");
    long long s = degree_;
    for (int i : in) {
        if (i < 0 || i >= space_->dim()) throw ValidationError("basis index out of range");
        s += space_->degree(i);
    }
    if (target_ == Target::Scalars) {
        if (out != kScalarSlot) throw ValidationError("scalar map given an output basis element");
        if (s != 0) throw ValidationError("coefficient violates the degree of a scalar map");
    } else {
        if (out < 0 || out >= space_->dim()) throw ValidationError("output index out of range");
        if (s != space_->degree(out)) throw ValidationError("coefficient violates the map degree");
    }
}

void MultiMap::add_term(const std::vector<int>& in_raw, int out, const Scalar& c) {
    if (c == 0) return;
    check_degree(in_raw, out);
    std::vector<int> in(in_raw);
    int s = canonicalize(in);
    if (s == 0) throw ValidationError("nonzero value on a repeated odd input of a symmetric map");
    Vec& v = table_[in];
    Vec add{{out, c * s}};
    axpy(v, 1, add);
    if (v.empty()) table_.erase(in);
}

void MultiMap::set_value(const std::vector<int>& in, const Vec& value) {
    std::vector<int> key(in);
    if (canonicalize(key) != 1 || key != in) throw ValidationError("set_value needs a canonical key");
    Vec v(value);
    prune(v);
    for (const auto& [o, c] : v) check_degree(in, o);
    if (v.empty())
        table_.erase(in);
    else
        table_[in] = std::move(v);
}

Vec MultiMap::eval_basis(const std::vector<int>& in_raw) const {
    if (static_cast<int>(in_raw.size()) != arity_) throw ValidationError("arity mismatch in eval");
    for (int i : in_raw)
        if (i < 0 || i >= space_->dim()) throw ValidationError("unknown basis element in eval");
    std::vector<int> in(in_raw);
    int s = canonicalize(in);
    if (s == 0) return {};
    auto it = table_.find(in);
    if (it == table_.end()) return {};
    if (s == 1) return it->second;
    Vec r;
    axpy(r, s, it->second);
    return r;
}

Scalar MultiMap::coeff(const std::vector<int>& in, int out) const {
    Vec v = eval_basis(in);
    auto it = v.find(out);
    return it == v.end() ? Scalar(0) : it->second;
}

Vec MultiMap::eval(const std::vector<Vec>& args) const {
    if (static_cast<int>(args.size()) != arity_) throw ValidationError("arity mismatch in eval");
    Vec result;
    std::vector<int> idx(arity_);
    std::function<void(int, const Scalar&)> rec = [&](int k, const Scalar& c) {
        if (k == arity_) {
            axpy(result, c, eval_basis(idx));
            return;
        }
        for (const auto& [i, a] : args[k]) {
            idx[k] = i;
            rec(k + 1, c * a);
        }
    };
    rec(0, Scalar(1));
    return result;
}

bool MultiMap::same_shape(const MultiMap& o) const {
    return *space_ == *o.space_ && arity_ == o.arity_ && target_ == o.target_ && degree_ == o.degree_ &&
           symmetric_ == o.symmetric_;
}

std::optional<MultiMap::Entry> MultiMap::first_nonzero() const {
    if (table_.empty()) return std::nullopt;
    const auto& [in, v] = *table_.begin();
    return Entry{in, v.begin()->first, v.begin()->second};
}

MultiMap add(const MultiMap& a, const MultiMap& b) {
    if (!a.same_shape(b)) throw ValidationError("add: shape mismatch");
    MultiMap r(a);
    for (const auto& [in, v] : b.table()) {
        Vec cur = r.eval_basis(in);
        axpy(cur, 1, v);
        r.set_value(in, cur);
    }
    return r;
}

MultiMap scale(const Scalar& c, const MultiMap& a) {
    MultiMap r(a.space_ptr(), a.arity(), a.target(), a.degree(), a.symmetric());
    if (c == 0) return r;
    for (const auto& [in, v] : a.table()) {
        Vec s;
        axpy(s, c, v);
        r.set_value(in, s);
    }
    return r;
}

std::vector<std::vector<int>> sorted_tuples(const GradedSpace& space, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == n) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < space.dim(); ++i) {
            if (!cur.empty() && cur.back() == i && parity(space.degree(i))) continue;
            cur.push_back(i);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<std::vector<int>> all_tuples(const GradedSpace& space, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, 0);
    if (n > 0 && space.dim() == 0) return out;
    while (true) {
        out.push_back(cur);
        int k = n - 1;
        while (k >= 0 && ++cur[k] == space.dim()) cur[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

Vec insertion_value(const MultiMap& outer, const MultiMap& inner, const std::vector<int>& tuple,
                    const Unshuffle& u) {
    if (inner.target() != Target::Space) throw ValidationError("insert: inner map must be vector valued");
    if (outer.arity() != static_cast<int>(u.I.size()) + 1 || inner.arity() != static_cast<int>(u.J.size()))
        throw ValidationError("insert: arity mismatch");
    const GradedSpace& sp = outer.space();
    std::vector<int> perm, deg;
    for (int i : u.I) perm.push_back(i - 1);
    for (int j : u.J) perm.push_back(j - 1);
    for (int t : tuple) deg.push_back(sp.degree(t));
    int s = koszul_sign(perm, deg);
    int dI = 0;
    for (int i : u.I) dI += deg[i - 1];
    s *= sign_pow(static_cast<long long>(parity(inner.degree())) * parity(dI));
    std::vector<int> jt;
    for (int j : u.J) jt.push_back(tuple[j - 1]);
    Vec mid = inner.eval_basis(jt);
    if (mid.empty()) return {};
    std::vector<Vec> args;
    for (int i : u.I) args.push_back(Vec{{tuple[i - 1], Scalar(1)}});
    args.push_back(std::move(mid));
    Vec r = outer.eval(args);
    if (s == -1)
        for (auto& [k, v] : r) v = -v;
    return r;
}

MultiMap insert(const MultiMap& outer, const MultiMap& inner, const Unshuffle& u) {
    u.validate();
    int n = u.n;
    MultiMap r(outer.space_ptr(), n, outer.target(), checked_add(outer.degree(), inner.degree()), false);
    for (const auto& t : all_tuples(outer.space(), n)) r.set_value(t, insertion_value(outer, inner, t, u));
    return r;
}

MultiMap insert_sum(const MultiMap& outer, const MultiMap& inner) {
    int n = outer.arity() - 1 + inner.arity();
    MultiMap r(outer.space_ptr(), n, outer.target(), checked_add(outer.degree(), inner.degree()), true);
    std::vector<Unshuffle> us;
    for (auto& u : all_unshuffles(n))
        if (static_cast<int>(u.J.size()) == inner.arity()) us.push_back(u);
    for (const auto& t : sorted_tuples(outer.space(), n)) {
        Vec v;
        for (const auto& u : us) axpy(v, 1, insertion_value(outer, inner, t, u));
        r.set_value(t, v);
    }
    return r;
}

MultiMap symmetrize(const MultiMap& m) {
    MultiMap r(m.space_ptr(), m.arity(), m.target(), m.degree(), true);
    std::vector<int> perm(m.arity());
    for (const auto& t : sorted_tuples(m.space(), m.arity())) {
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<int> deg;
        for (int x : t) deg.push_back(m.space().degree(x));
        Vec v;
        do {
            std::vector<int> pt;
            for (int p : perm) pt.push_back(t[p]);
            axpy(v, koszul_sign(perm, deg), m.eval_basis(pt));
        } while (std::next_permutation(perm.begin(), perm.end()));
        r.set_value(t, v);
    }
    return r;
}

MultiMap partial_trace(const MultiMap& m, TraceSign conv) {
    if (m.target() != Target::Space) throw ValidationError("partial_trace of a scalar-valued map");
    if (m.arity() < 1) throw ValidationError("partial_trace needs arity >= 1");
    const GradedSpace& sp = m.space();
    MultiMap r(m.space_ptr(), m.arity() - 1, Target::Scalars, m.degree(), m.symmetric());
    auto tuples = m.symmetric() ? sorted_tuples(sp, m.arity() - 1) : all_tuples(sp, m.arity() - 1);
    for (const auto& t : tuples) {
        Scalar acc = 0;
        std::vector<int> full(t);
        full.push_back(0);
        for (int a = 0; a < sp.dim(); ++a) {
            full.back() = a;
            Scalar c = m.coeff(full, a);
            if (c == 0) continue;
            if (conv == TraceSign::Parity && parity(sp.degree(a))) c = -c;
            acc += c;
        }
        if (acc != 0) r.set_value(t, Vec{{kScalarSlot, acc}});
    }
    return r;
}

Vec apply(const LinearMap& m, const Vec& v) {
    Vec r;
    for (const auto& [j, c] : v) axpy(r, c, m.at(j));
    return r;
}

}  // namespace ulinf
