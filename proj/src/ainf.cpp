#include "ulinf/ainf.hpp"

#include "ulinf/linsolve.hpp"
#include "ulinf/structures.hpp"

#include <algorithm>
#include <set>

namespace ulinf {

MultiMap AInfStructure::gamma_at(int n) const {
    auto it = gamma.find(n);
    if (it != gamma.end()) return it->second;
    return MultiMap(shifted, n, Target::Space, 1, false);
}

int AInfStructure::max_arity() const { return gamma.empty() ? 0 : gamma.rbegin()->first; }

AInfStructure make_ainf(const GradedSpace& space) {
    AInfStructure s;
    s.space = space;
    s.shifted = std::make_shared<const GradedSpace>(shift_structure(space).first);
    return s;
}

void set_gamma(AInfStructure& s, MultiMap m) {
    if (m.symmetric() || m.target() != Target::Space || m.degree() != 1 || m.arity() < 1 ||
        !(m.space() == *s.shifted))
        throw ValidationError("A-infinity component must be a non-symmetric degree-1 map W^n -> W");
    const int n = m.arity();
    if (m.is_zero())
        s.gamma.erase(n);
    else
        s.gamma[n] = std::move(m);
}

namespace {

// Output index -> list of (input tuple, coefficient).
using ByOutput = std::map<int, std::vector<std::pair<std::vector<int>, Scalar>>>;

ByOutput index_by_output(const MultiMap& m) {
    ByOutput out;
    for (const auto& [in, val] : m.table())
        for (const auto& [o, c] : val) out[o].emplace_back(in, c);
    return out;
}

int tuple_degree(const GradedSpace& w, const std::vector<int>& t, size_t from, size_t to) {
    int d = 0;
    for (size_t i = from; i < to; ++i) d += w.degree(t[i]);
    return d;
}

}  // namespace

MultiMap pre_lie(const MultiMap& a, const MultiMap& b) {
    if (a.symmetric() || b.symmetric() || a.target() != Target::Space || b.target() != Target::Space)
        throw ValidationError("pre-Lie product needs non-symmetric maps into W");
    const GradedSpace& w = a.space();
    const int p = a.arity(), q = b.arity();
    MultiMap out(a.space_ptr(), p + q - 1, Target::Space, a.degree() + b.degree(), false);
    ByOutput bi = index_by_output(b);
    for (const auto& [A, val] : a.table())
        for (int i = 0; i < p; ++i) {
            auto it = bi.find(A[i]);
            if (it == bi.end()) continue;
            const int pre = tuple_degree(w, A, 0, i);
            const int sg = sign_pow(static_cast<long long>(b.degree()) * pre);
            for (const auto& [B, cb] : it->second) {
                std::vector<int> key(A.begin(), A.begin() + i);
                key.insert(key.end(), B.begin(), B.end());
                key.insert(key.end(), A.begin() + i + 1, A.end());
                for (const auto& [o, ca] : val) out.add_term(key, o, Scalar(sg) * ca * cb);
            }
        }
    return out;
}

MultiMap gerstenhaber_bracket(const MultiMap& a, const MultiMap& b) {
    MultiMap ab = pre_lie(a, b), ba = pre_lie(b, a);
    return add(ab, scale(Scalar(-sign_pow(static_cast<long long>(a.degree()) * b.degree())), ba));
}

std::vector<AinfResidual> ainf_check(const AInfStructure& s, int up_to) {
    std::vector<AinfResidual> out;
    for (int N = 1; N <= up_to; ++N) {
        MultiMap r(s.shifted, N, Target::Space, 2, false);
        for (const auto& [a, ga] : s.gamma) {
            const int b = N + 1 - a;
            auto it = s.gamma.find(b);
            if (b < 1 || it == s.gamma.end()) continue;
            r = add(r, pre_lie(ga, it->second));
        }
        out.push_back({N, std::move(r)});
    }
    return out;
}

bool is_ainf(const AInfStructure& s) {
    for (const auto& r : ainf_check(s, std::max(1, 2 * s.max_arity() - 1)))
        if (!r.vanishes()) return false;
    return true;
}

// ---------------------------------------------------------------------------

CycCochain::CycCochain(SpacePtr w, int m, int n, int degree) : space_(std::move(w)), m_(m), n_(n), degree_(degree) {
    if (m < 0 || n < 0 || m + n < 1) throw ValidationError("cyclic cochain needs m, n >= 0 and m + n >= 1");
}

namespace {

// Rotate the first group left by i and the second by j.
std::vector<int> rotated_perm(int m, int n, int i, int j) {
    std::vector<int> perm(m + n);
    for (int t = 0; t < m; ++t) perm[t] = (t + i) % m;
    for (int t = 0; t < n; ++t) perm[m + t] = m + (t + j) % n;
    return perm;
}

// phi(g K) = factor * phi(K) for the rotation g = (i, j).
int rotation_factor(const GradedSpace& w, int m, int n, int i, int j, const std::vector<int>& key,
                    std::vector<int>& rotated) {
    std::vector<int> perm = rotated_perm(m, n, i, j), deg(m + n);
    for (int t = 0; t < m + n; ++t) deg[t] = w.degree(key[t]);
    rotated.resize(m + n);
    for (int t = 0; t < m + n; ++t) rotated[t] = key[perm[t]];
    return koszul_sign(perm, deg);
}

}  // namespace

std::pair<std::vector<int>, int> CycCochain::canonical(const std::vector<int>& key) const {
    if (static_cast<int>(key.size()) != m_ + n_) throw ValidationError("cyclic cochain key has wrong length");
    std::map<std::vector<int>, int> seen;
    bool killed = false;
    std::vector<int> rot;
    for (int i = 0; i < std::max(1, m_); ++i)
        for (int j = 0; j < std::max(1, n_); ++j) {
            int f = rotation_factor(*space_, m_, n_, i, j, key, rot);
            auto [it, fresh] = seen.emplace(rot, f);
            if (!fresh && it->second != f) killed = true;
        }
    const auto& [best, f] = *seen.begin();
    // phi(best) = f phi(key), so phi(key) = f phi(best).
    return {best, killed ? 0 : f};
}

Scalar CycCochain::eval(const std::vector<int>& key) const {
    auto [k, f] = canonical(key);
    if (f == 0) return 0;
    auto it = reps_.find(k);
    if (it == reps_.end()) return 0;
    return Scalar(f) * it->second;
}

void CycCochain::add_rep(const std::vector<int>& key, const Scalar& c) {
    if (c == 0) return;
    if (tuple_degree(*space_, key, 0, key.size()) != -degree_)
        throw ValidationError("cyclic cochain entry has the wrong degree");
    auto [k, f] = canonical(key);
    if (k != key) throw ValidationError("cyclic cochain entry is not a canonical key");
    if (f == 0) throw ValidationError("cyclic cochain entry lies on an orbit forced to vanish");
    Scalar& slot = reps_[k];
    slot += c;
    if (slot == 0) reps_.erase(k);
}

CycCochain::Full CycCochain::unfold() const {
    Full out;
    std::vector<int> rot;
    for (const auto& [k, v] : reps_)
        for (int i = 0; i < std::max(1, m_); ++i)
            for (int j = 0; j < std::max(1, n_); ++j) {
                int f = rotation_factor(*space_, m_, n_, i, j, k, rot);
                out[rot] = Scalar(f) * v;
            }
    return out;
}

CycCochain CycCochain::symmetrize(SpacePtr w, int m, int n, int degree, const Full& full, bool group1,
                                  bool group2) {
    CycCochain out(w, m, n, degree);
    std::set<std::vector<int>> reps;
    for (const auto& [k, v] : full)
        if (v != 0) reps.insert(out.canonical(k).first);
    const int gi = group1 ? std::max(1, m) : 1, gj = group2 ? std::max(1, n) : 1;
    std::vector<int> rot;
    for (const auto& k : reps) {
        if (out.canonical(k).second == 0) continue;
        Scalar acc = 0;
        for (int i = 0; i < gi; ++i)
            for (int j = 0; j < gj; ++j) {
                int f = rotation_factor(*w, m, n, i, j, k, rot);
                auto it = full.find(rot);
                if (it != full.end()) acc += Scalar(f) * it->second;
            }
        out.add_rep(k, acc);
    }
    return out;
}

CycCochain operator+(const CycCochain& a, const CycCochain& b) {
    if (a.m() != b.m() || a.n() != b.n() || a.degree() != b.degree())
        throw ValidationError("adding cyclic cochains of different shapes");
    CycCochain out = a;
    for (const auto& [k, v] : b.reps()) out.add_rep(k, v);
    return out;
}

CycCochain operator*(const Scalar& c, const CycCochain& a) {
    CycCochain out(a.space_ptr(), a.m(), a.n(), a.degree());
    if (c == 0) return out;
    for (const auto& [k, v] : a.reps()) out.add_rep(k, c * v);
    return out;
}

void add_into(CycFamily& acc, const CycCochain& c, const Scalar& coeff) {
    if (c.is_zero() || coeff == 0) return;
    auto key = std::make_pair(c.m(), c.n());
    auto it = acc.find(key);
    if (it == acc.end())
        it = acc.emplace(key, CycCochain(c.space_ptr(), c.m(), c.n(), c.degree())).first;
    it->second = it->second + coeff * c;
    if (it->second.is_zero()) acc.erase(it);
}

bool is_zero(const CycFamily& f) {
    for (const auto& [k, c] : f)
        if (!c.is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------

CycCochain::Full wheel_trace(const AInfStructure& s, int m, int n) {
    CycCochain::Full out;
    auto it = s.gamma.find(m + n + 1);
    if (it == s.gamma.end()) return out;
    const GradedSpace& w = *s.shifted;
    for (const auto& [A, val] : it->second.table()) {
        const int alpha = A[m];
        auto hit = val.find(alpha);
        if (hit == val.end()) continue;
        std::vector<int> key(A.begin(), A.begin() + m);
        key.insert(key.end(), A.begin() + m + 1, A.end());
        const int ydeg = tuple_degree(w, A, m + 1, A.size());
        int sg = sign_pow(static_cast<long long>(w.degree(alpha)) * ydeg);
        if (kTraceSign == TraceSign::Parity) sg *= sign_pow(w.degree(alpha));
        out[key] += Scalar(sg) * hit->second;
    }
    for (auto i = out.begin(); i != out.end();) i = i->second == 0 ? out.erase(i) : std::next(i);
    return out;
}

CycCochain gamma_wheel(const AInfStructure& s, int m, int n) {
    return CycCochain::symmetrize(s.shifted, m, n, 1, wheel_trace(s, m, n));
}

CycFamily gamma_wheel_family(const AInfStructure& s, int max_bidegree) {
    CycFamily out;
    for (int t = 1; t <= max_bidegree; ++t)
        for (int m = 0; m <= t; ++m) add_into(out, gamma_wheel(s, m, t - m));
    return out;
}

CycFamily cyc_differential(const AInfStructure& s, const CycCochain& c) {
    CycFamily out;
    const GradedSpace& w = *s.shifted;
    const int m = c.m(), n = c.n();
    const CycCochain::Full phi = c.unfold();
    for (const auto& [k, g] : s.gamma) {
        ByOutput gi = index_by_output(g);
        if (m >= 1) {
            CycCochain::Full F;
            for (const auto& [K, v] : phi) {
                auto it = gi.find(K[0]);
                if (it == gi.end()) continue;
                for (const auto& [B, cg] : it->second) {
                    std::vector<int> key = B;
                    key.insert(key.end(), K.begin() + 1, K.end());
                    F[key] += v * cg;
                }
            }
            add_into(out, CycCochain::symmetrize(s.shifted, m + k - 1, n, c.degree() + 1, F, true, false));
        }
        if (n >= 1) {
            CycCochain::Full F;
            for (const auto& [K, v] : phi) {
                auto it = gi.find(K[m]);
                if (it == gi.end()) continue;
                const int sg = sign_pow(tuple_degree(w, K, 0, m));
                for (const auto& [B, cg] : it->second) {
                    std::vector<int> key(K.begin(), K.begin() + m);
                    key.insert(key.end(), B.begin(), B.end());
                    key.insert(key.end(), K.begin() + m + 1, K.end());
                    F[key] += Scalar(sg) * v * cg;
                }
            }
            add_into(out, CycCochain::symmetrize(s.shifted, m, n + k - 1, c.degree() + 1, F, false, true));
        }
    }
    return out;
}

CycFamily cyc_differential(const AInfStructure& s, const CycFamily& c) {
    CycFamily out;
    for (const auto& [bd, x] : c)
        for (const auto& [bd2, y] : cyc_differential(s, x)) add_into(out, y);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Canonical keys of Cyc_{m,n} in the given degree whose orbit is not forced to vanish.
std::vector<std::vector<int>> canonical_keys(const SpacePtr& w, int m, int n, int degree) {
    CycCochain probe(w, m, n, degree);
    std::vector<std::vector<int>> out;
    for (const auto& t : all_tuples(*w, m + n)) {
        if (tuple_degree(*w, t, 0, t.size()) != -degree) continue;
        auto [k, f] = probe.canonical(t);
        if (f != 0 && k == t) out.push_back(t);
    }
    return out;
}

CycFamily truncate(const CycFamily& f, int max_bidegree) {
    CycFamily out;
    for (const auto& [bd, c] : f)
        if (bd.first + bd.second <= max_bidegree) out.emplace(bd, c);
    return out;
}

}  // namespace

CyclicClassReport cyclic_class_vanishes(const AInfStructure& s, int max_bidegree) {
    if (!is_ainf(s)) throw ValidationError("not an A-infinity structure: [G, G] != 0");
    CyclicClassReport rep;
    rep.max_bidegree = max_bidegree;
    const int support = std::max(1, s.max_arity() - 1);
    CycFamily full = gamma_wheel_family(s, support);
    int top = 0;
    for (const auto& [bd, c] : full) top = std::max(top, bd.first + bd.second);
    if (max_bidegree < 1 || max_bidegree < top)
        throw ValidationError("bidegree truncation " + std::to_string(max_bidegree) +
                              " is below the support of the wheel class (m + n = " + std::to_string(top) + ")");
    rep.gamma_wheel = full;

    struct Unknown {
        int m, n;
        std::vector<int> key;
    };
    std::vector<Unknown> unknowns;
    std::vector<CycFamily> images;
    using Row = std::tuple<int, int, std::vector<int>>;
    std::map<Row, int> row_of;
    auto note = [&row_of](const CycFamily& f) {
        for (const auto& [bd, c] : f)
            for (const auto& [k, v] : c.reps()) row_of.emplace(Row{bd.first, bd.second, k}, 0);
    };
    for (int t = 1; t <= max_bidegree; ++t)
        for (int m = 0; m <= t; ++m)
            for (const auto& k : canonical_keys(s.shifted, m, t - m, 0)) {
                CycCochain e(s.shifted, m, t - m, 0);
                e.add_rep(k, 1);
                unknowns.push_back({m, t - m, k});
                images.push_back(truncate(cyc_differential(s, e), max_bidegree));
                note(images.back());
            }
    note(full);
    std::vector<Row> rows;
    for (auto& [r, idx] : row_of) {
        idx = static_cast<int>(rows.size());
        rows.push_back(r);
    }
    const int R = static_cast<int>(rows.size()), C = static_cast<int>(unknowns.size());
    Matrix A(R, std::vector<Scalar>(C));
    std::vector<Scalar> b(R);
    for (int j = 0; j < C; ++j)
        for (const auto& [bd, c] : images[j])
            for (const auto& [k, v] : c.reps()) A[row_of[Row{bd.first, bd.second, k}]][j] = v;
    for (const auto& [bd, c] : full)
        for (const auto& [k, v] : c.reps()) b[row_of[Row{bd.first, bd.second, k}]] = v;
    rep.unknowns = C;
    rep.equations = R;

    LinearSolution sol = solve_exact(A, b, C);
    rep.rank = sol.rank;
    rep.vanishes = sol.consistent;
    if (sol.consistent) {
        CycFamily wit;
        for (int j = 0; j < C; ++j) {
            if (sol.x[j] == 0) continue;
            CycCochain e(s.shifted, unknowns[j].m, unknowns[j].n, 0);
            e.add_rep(unknowns[j].key, sol.x[j]);
            add_into(wit, e);
        }
        CycFamily check = truncate(cyc_differential(s, wit), max_bidegree);
        for (const auto& [bd, c] : full) add_into(check, c, -1);
        if (!is_zero(check)) throw std::logic_error("solver witness fails d c = wheel class");
        rep.witness = std::move(wit);
    } else {
        for (int i = 0; i < R; ++i)
            if (sol.certificate[i] != 0)
                rep.certificate.push_back({std::get<0>(rows[i]), std::get<1>(rows[i]), std::get<2>(rows[i]),
                                           sol.certificate[i]});
    }
    return rep;
}

// ---------------------------------------------------------------------------

Scalar AssociativeAlgebra::get(int a, int b, int c) const {
    auto it = mu.find({a, b, c});
    return it == mu.end() ? Scalar(0) : it->second;
}

UassVerdict uass_check(const AssociativeAlgebra& alg) {
    const int d = alg.dim();
    for (const auto& [k, v] : alg.mu) {
        auto [a, b, c] = k;
        if (a < 0 || b < 0 || c < 0 || a >= d || b >= d || c >= d)
            throw ValidationError("structure constant index out of range");
    }
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e) {
                    Scalar lhs = 0, rhs = 0;
                    for (int x = 0; x < d; ++x) {
                        lhs += alg.get(a, b, x) * alg.get(x, c, e);
                        rhs += alg.get(b, c, x) * alg.get(a, x, e);
                    }
                    if (lhs != rhs)
                        throw ValidationError("algebra is not associative: (" + alg.names[a] + " " + alg.names[b] +
                                              ") " + alg.names[c] + " != " + alg.names[a] + " (" + alg.names[b] +
                                              " " + alg.names[c] + ")");
                }
    UassVerdict v;
    for (int left = 1; left >= 0; --left)
        for (int a = 0; a < d; ++a) {
            Scalar tr = 0;
            for (int b = 0; b < d; ++b) tr += left ? alg.get(a, b, b) : alg.get(b, a, b);
            if (tr != 0) {
                v.witness = a;
                v.left = left;
                v.trace = tr;
                return v;
            }
        }
    v.unimodular = true;
    return v;
}

AInfStructure from_associative(const AssociativeAlgebra& alg) {
    std::vector<BasisElement> basis;
    for (const auto& nm : alg.names) basis.push_back({nm, 0});
    AInfStructure s = make_ainf(GradedSpace(basis));
    MultiMap g(s.shifted, 2, Target::Space, 1, false);
    for (const auto& [k, v] : alg.mu) {
        auto [a, b, c] = k;
        if (a < 0 || b < 0 || c < 0 || a >= alg.dim() || b >= alg.dim() || c >= alg.dim())
            throw ValidationError("structure constant index out of range");
        g.add_term({a, b}, c, v);
    }
    set_gamma(s, std::move(g));
    return s;
}

}  // namespace ulinf
