#include "ulinf/structures.hpp"

#include "ulinf/parallel.hpp"

namespace ulinf {

MultiMap LinfStructure::ell_at(int n) const {
    auto it = ell.find(n);
    if (it != ell.end()) return it->second;
    return MultiMap(shifted, n, Target::Space, 1);
}

MultiMap ULinfStructure::q_at(int n) const {
    auto it = q.find(n);
    if (it != q.end()) return it->second;
    return MultiMap(base.shifted, n, Target::Scalars, 0);
}

LinfStructure make_linf(const GradedSpace& space) {
    LinfStructure s;
    s.space = space;
    s.shifted = std::make_shared<const GradedSpace>(shift_structure(space).first);
    s.max_arity = 1;
    return s;
}

ULinfStructure make_ulinf(const GradedSpace& space) { return ULinfStructure{make_linf(space), {}}; }

void set_ell(LinfStructure& s, MultiMap m) {
    if (!(m.space() == *s.shifted) || m.target() != Target::Space || m.degree() != 1 || !m.symmetric() ||
        m.arity() < 1)
        throw ValidationError("bracket must be a symmetric degree +1 map on the shifted space");
    int n = m.arity();
    s.ell[n] = std::move(m);
    if (n > s.max_arity) s.max_arity = n;
}

void set_q(ULinfStructure& s, MultiMap m) {
    if (!(m.space() == *s.base.shifted) || m.target() != Target::Scalars || m.degree() != 0 || !m.symmetric() ||
        m.arity() < 1)
        throw ValidationError("q-map must be a symmetric degree 0 scalar map on the shifted space");
    int n = m.arity();
    s.q[n] = std::move(m);
    if (n > s.base.max_arity) s.base.max_arity = n;
}

Scalar LieConstants::get(int a, int b, int c) const {
    auto it = L.find({a, b, c});
    return it == L.end() ? Scalar(0) : it->second;
}

LinfStructure from_lie(const LieConstants& lie) {
    int n = lie.dim();
    for (const auto& [k, v] : lie.L) {
        auto [a, b, c] = k;
        if (a < 0 || b < 0 || c < 0 || a >= n || b >= n || c >= n)
            throw ValidationError("structure constant index out of range");
    }
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (lie.get(a, b, c) != -lie.get(b, a, c))
                    throw ValidationError("structure constants are not antisymmetric at (" + lie.names[a] + "," +
                                          lie.names[b] + ")");
    std::vector<BasisElement> basis;
    for (const auto& nm : lie.names) basis.push_back({nm, 0});
    LinfStructure s = make_linf(GradedSpace(basis));
    std::vector<UnshiftedEntry> entries;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (Scalar v = lie.get(a, b, c); v != 0) entries.push_back({{a, b}, c, v});
    set_ell(s, shifted_from_unshifted(s.space, s.shifted, 2, Target::Space, entries));
    return s;
}

namespace {

// Sum over unshuffles (|J| >= 1) of outer_{|I|+1}(x_I, ell_{|J|}(x_J)) on one tuple.
template <class OuterFn>
Vec residual_value(const LinfStructure& s, const std::vector<int>& t, OuterFn outer_for) {
    const int n = static_cast<int>(t.size());
    Vec v;
    for (const auto& u : all_unshuffles(n, 1)) {
        auto inner = s.ell.find(static_cast<int>(u.J.size()));
        if (inner == s.ell.end()) continue;
        const MultiMap* outer = outer_for(static_cast<int>(u.I.size()) + 1);
        if (!outer) continue;
        axpy(v, 1, insertion_value(*outer, inner->second, t, u));
    }
    return v;
}

}  // namespace

std::vector<Residual> linf_residuals(const LinfStructure& s, int up_to) {
    if (up_to < 1) throw ValidationError("up_to must be >= 1");
    std::vector<Residual> out;
    for (int n = 1; n <= up_to; ++n) {
        auto tuples = sorted_tuples(*s.shifted, n);
        auto vals = parallel_map<Vec>(tuples.size(), [&](size_t i) {
            return residual_value(s, tuples[i], [&](int k) -> const MultiMap* {
                auto it = s.ell.find(k);
                return it == s.ell.end() ? nullptr : &it->second;
            });
        });
        MultiMap r(s.shifted, n, Target::Space, 2);
        for (size_t i = 0; i < tuples.size(); ++i) r.set_value(tuples[i], vals[i]);
        out.push_back({n, std::move(r), ResidualKind::Ell});
    }
    return out;
}

std::vector<Residual> ulinf_residuals(const ULinfStructure& s, int up_to) {
    if (up_to < 1) throw ValidationError("up_to must be >= 1");
    std::vector<Residual> out;
    const LinfStructure& b = s.base;
    for (int n = 1; n <= up_to; ++n) {
        auto tuples = sorted_tuples(*b.shifted, n);
        std::optional<MultiMap> tr;
        if (auto it = b.ell.find(n + 1); it != b.ell.end()) tr = partial_trace(it->second, kTraceSign);
        auto vals = parallel_map<Vec>(tuples.size(), [&](size_t i) {
            Vec v = residual_value(b, tuples[i], [&](int k) -> const MultiMap* {
                auto it = s.q.find(k);
                return it == s.q.end() ? nullptr : &it->second;
            });
            if (tr) axpy(v, 1, tr->eval_basis(tuples[i]));
            return v;
        });
        MultiMap r(b.shifted, n, Target::Scalars, 1);
        for (size_t i = 0; i < tuples.size(); ++i) r.set_value(tuples[i], vals[i]);
        out.push_back({n, std::move(r), ResidualKind::Q});
    }
    return out;
}

UnimodularVerdict is_unimodular_lie(const LieConstants& lie) {
    for (int a = 0; a < lie.dim(); ++a) {
        Scalar tr = 0;
        for (int b = 0; b < lie.dim(); ++b) tr += lie.get(a, b, b);
        if (tr != 0) return {false, a, tr};
    }
    return {true, -1, 0};
}

int decalage_sign(const GradedSpace& v, const std::vector<int>& tuple) {
    const long long n = static_cast<long long>(tuple.size());
    long long e = 0;
    for (long long k = 0; k < n; ++k) e += (n - 1 - k) * parity(v.degree(tuple[k]));
    return sign_pow(e);
}

MultiMap shifted_from_unshifted(const GradedSpace& v, const SpacePtr& w, int arity, Target target,
                                const std::vector<UnshiftedEntry>& entries) {
    MultiMap m(w, arity, target, target == Target::Space ? 1 : 0);
    for (const auto& e : entries) {
        if (static_cast<int>(e.in.size()) != arity) throw ValidationError("entry arity mismatch");
        m.add_term(e.in, e.out, e.value * decalage_sign(v, e.in));
    }
    return m;
}

std::vector<UnshiftedEntry> unshifted_from_shifted(const GradedSpace& v, const MultiMap& m) {
    std::vector<UnshiftedEntry> out;
    for (const auto& [in, val] : m.table())
        for (const auto& [o, c] : val) out.push_back({in, o, c * decalage_sign(v, in)});
    return out;
}

}  // namespace ulinf
