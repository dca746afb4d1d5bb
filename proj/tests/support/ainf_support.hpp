#pragma once

// Associative examples, a brute-force insertion oracle and random A-infinity structures.

#include "support/random_structures.hpp"
#include "ulinf/ainf.hpp"

#include <stdexcept>

namespace ulinf::testing {

// Matrix units E_ij, i, j in 1..2, with E_ij E_kl = delta_jk E_il.
inline AssociativeAlgebra matrix_algebra_m2() {
    AssociativeAlgebra a;
    a.names = {"e11", "e12", "e21", "e22"};
    auto idx = [](int i, int j) { return 2 * (i - 1) + (j - 1); };
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int l = 1; l <= 2; ++l) a.mu[{idx(i, j), idx(j, l), idx(i, l)}] = 1;
    return a;
}

// Strictly upper triangular 3x3 matrices: only e12 e23 = e13.
inline AssociativeAlgebra strict_upper3() {
    AssociativeAlgebra a;
    a.names = {"e12", "e13", "e23"};
    a.mu[{0, 2, 1}] = 1;
    return a;
}

// Upper triangular 2x2 matrices (not unimodular: tr L_{e11} = 2).
inline AssociativeAlgebra upper2() {
    AssociativeAlgebra a;
    a.names = {"e11", "e12", "e22"};
    a.mu[{0, 0, 0}] = 1;
    a.mu[{0, 1, 1}] = 1;
    a.mu[{1, 2, 1}] = 1;
    a.mu[{2, 2, 2}] = 1;
    return a;
}

inline AssociativeAlgebra zero_algebra(int dim) {
    AssociativeAlgebra a;
    for (int i = 0; i < dim; ++i) a.names.push_back("a" + std::to_string(i + 1));
    return a;
}

// a(x_1..x_{i-1}, b(x_i..), ..) evaluated input by input through MultiMap::eval.
inline MultiMap brute_pre_lie(const MultiMap& a, const MultiMap& b) {
    const GradedSpace& w = a.space();
    const int p = a.arity(), q = b.arity();
    MultiMap out(a.space_ptr(), p + q - 1, Target::Space, a.degree() + b.degree(), false);
    for (const auto& t : all_tuples(w, p + q - 1))
        for (int i = 0; i < p; ++i) {
            int pre = 0;
            for (int j = 0; j < i; ++j) pre += w.degree(t[j]);
            std::vector<Vec> args;
            for (int j = 0; j < i; ++j) args.push_back(Vec{{t[j], 1}});
            args.push_back(b.eval_basis(std::vector<int>(t.begin() + i, t.begin() + i + q)));
            for (int j = i + q; j < p + q - 1; ++j) args.push_back(Vec{{t[j], 1}});
            if (args[i].empty()) continue;
            Vec v = a.eval(args);
            for (const auto& [o, c] : v) out.add_term(t, o, Scalar(sign_pow((long long)b.degree() * pre)) * c);
        }
    return out;
}

using MapFamily = std::map<int, MultiMap>;

inline MapFamily family_bracket(const MapFamily& a, const MapFamily& b) {
    MapFamily out;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) {
            MultiMap z = gerstenhaber_bracket(x, y);
            auto it = out.find(z.arity());
            if (it == out.end())
                out.emplace(z.arity(), z);
            else
                it->second = add(it->second, z);
        }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

// exp(ad xi) applied to G; xi must raise the arity so that the series terminates.
inline AInfStructure gauge_ainf(const AInfStructure& s, const MapFamily& xi) {
    AInfStructure out = make_ainf(s.space);
    MapFamily total = s.gamma, term = s.gamma;
    Scalar fact = 1;
    for (int k = 1;; ++k) {
        if (k > 32) throw std::runtime_error("A-infinity gauge series did not terminate");
        term = family_bracket(xi, term);
        if (term.empty()) break;
        fact *= k;
        for (const auto& [n, m] : term) {
            auto it = total.find(n);
            if (it == total.end())
                total.emplace(n, scale(Scalar(1) / fact, m));
            else
                it->second = add(it->second, scale(Scalar(1) / fact, m));
        }
    }
    for (auto& [n, m] : total) set_gamma(out, m);
    return out;
}

// Basis carries a W-degree in {-1, 0} and a weight; every map below preserves weight, and
// 2 deg - weight <= -1 on each basis element bounds the arity of any weight-preserving map.
struct BigradedSpace {
    GradedSpace V;
    std::vector<int> weight;
};

inline BigradedSpace random_bigraded(Rng& rng, int dim) {
    std::uniform_int_distribution<int> wdeg(-1, 0), wt(-1, 1);
    std::vector<BasisElement> b;
    std::vector<int> weights;
    for (int i = 0; i < dim; ++i) {
        int d = wdeg(rng), w = d == 0 ? 1 : wt(rng);
        b.push_back({"e" + std::to_string(i + 1), d + 1});
        weights.push_back(w);
    }
    return {GradedSpace(b), weights};
}

inline MultiMap random_weighted_map(Rng& rng, const SpacePtr& w, const std::vector<int>& weight, int arity,
                                    int degree, double p) {
    std::bernoulli_distribution keep(p);
    MultiMap m(w, arity, Target::Space, degree, false);
    for (const auto& t : all_tuples(*w, arity)) {
        int d = degree, wt = 0;
        for (int a : t) d += w->degree(a), wt += weight[a];
        for (int o = 0; o < w->dim(); ++o)
            if (w->degree(o) == d && weight[o] == wt && keep(rng)) m.add_term(t, o, random_nonzero(rng));
    }
    return m;
}

// Seeds (G_1, G_2) until one is A-infinity, then gauges by a random arity-raising xi.
// Returns nullopt if no seed was found or the result has arity above max_arity.
inline std::optional<AInfStructure> random_ainf(Rng& rng, int dim, int max_arity = 3) {
    BigradedSpace B = random_bigraded(rng, dim);
    AInfStructure s = make_ainf(B.V);
    bool found = false;
    for (int tries = 0; tries < 40 && !found; ++tries) {
        s.gamma.clear();
        set_gamma(s, random_weighted_map(rng, s.shifted, B.weight, 1, 1, 0.5));
        set_gamma(s, random_weighted_map(rng, s.shifted, B.weight, 2, 1, 0.5));
        found = !s.gamma.empty() && is_ainf(s);
    }
    if (!found) return std::nullopt;
    MapFamily xi;
    for (int k = 2; k <= 3; ++k) {
        MultiMap x = random_weighted_map(rng, s.shifted, B.weight, k, 0, 0.5);
        if (!x.is_zero()) xi.emplace(k, x);
    }
    AInfStructure g = gauge_ainf(s, xi);
    if (g.max_arity() > max_arity) return std::nullopt;
    return g;
}

// Draws dim-3 structures until one has a wheel component with m + n >= 2.
inline AInfStructure random_ainf_with_wheel(Rng& rng, int max_arity = 3) {
    for (int tries = 0; tries < 100000; ++tries) {
        auto g = random_ainf(rng, 3, max_arity);
        if (!g) continue;
        for (const auto& [bd, c] : gamma_wheel_family(*g, g->max_arity() - 1))
            if (bd.first + bd.second >= 2) return *g;
    }
    throw std::runtime_error("no structure with a higher wheel component found");
}

// Random element of Cyc_{m,n} of the given degree.
inline CycCochain random_cochain(Rng& rng, const SpacePtr& w, int m, int n, int degree, double p) {
    std::bernoulli_distribution keep(p);
    CycCochain c(w, m, n, degree);
    for (const auto& t : all_tuples(*w, m + n)) {
        int d = 0;
        for (int a : t) d += w->degree(a);
        if (d != -degree) continue;
        auto [k, f] = c.canonical(t);
        if (k == t && f != 0 && keep(rng)) c.add_rep(t, random_nonzero(rng));
    }
    return c;
}

// Structures from the generator, each with a nonzero A-infinity component of arity >= 2.
inline std::vector<AInfStructure> sample_structures(Rng& rng, int count) {
    std::vector<AInfStructure> out;
    std::uniform_int_distribution<int> dim(2, 3);
    while (static_cast<int>(out.size()) < count)
        if (auto g = random_ainf(rng, dim(rng)); g && g->max_arity() >= 2) out.push_back(*g);
    return out;
}

inline CycFamily truncate_family(const CycFamily& f, int b) {
    CycFamily out;
    for (const auto& [bd, c] : f)
        if (bd.first + bd.second <= b) out.emplace(bd, c);
    return out;
}

}  // namespace ulinf::testing
