#pragma once

// Random inputs shared by the unit, property and acceptance suites.

#include "ulinf/geometry.hpp"
#include "ulinf/structures.hpp"

#include <random>

namespace ulinf::testing {

using Rng = std::mt19937_64;

inline Scalar random_rational(Rng& rng, int range = 3, int max_den = 2) {
    std::uniform_int_distribution<int> num(-range, range), den(1, max_den);
    Scalar x(num(rng), den(rng));
    x.canonicalize();
    return x;
}

inline Scalar random_nonzero(Rng& rng, int range = 3, int max_den = 2) {
    Scalar x = 0;
    while (x == 0) x = random_rational(rng, range, max_den);
    return x;
}

// Degrees of V drawn from [lo, hi].
inline GradedSpace random_space(Rng& rng, int dim, int lo = -1, int hi = 2) {
    std::uniform_int_distribution<int> deg(lo, hi);
    std::vector<BasisElement> b;
    for (int i = 0; i < dim; ++i) b.push_back({"e" + std::to_string(i + 1), deg(rng)});
    return GradedSpace(b);
}

// Random symmetric map with each degree-admissible coefficient present with probability p.
inline MultiMap random_map(Rng& rng, const SpacePtr& w, int arity, Target target, int degree, double p) {
    std::bernoulli_distribution keep(p);
    MultiMap m(w, arity, target, degree);
    for (const auto& t : sorted_tuples(*w, arity)) {
        long long s = degree;
        for (int i : t) s += w->degree(i);
        if (target == Target::Scalars) {
            if (s == 0 && keep(rng)) m.add_term(t, kScalarSlot, random_nonzero(rng));
        } else {
            for (int g = 0; g < w->dim(); ++g)
                if (w->degree(g) == s && keep(rng)) m.add_term(t, g, random_nonzero(rng));
        }
    }
    return m;
}

// Arbitrary (generally invalid) structure with brackets up to max_arity.
inline ULinfStructure random_ulinf(Rng& rng, const GradedSpace& v, int max_arity, double p) {
    ULinfStructure s = make_ulinf(v);
    for (int n = 1; n <= max_arity; ++n) {
        MultiMap l = random_map(rng, s.shifted(), n, Target::Space, 1, p);
        if (!l.is_zero()) set_ell(s.base, l);
        MultiMap q = random_map(rng, s.shifted(), n, Target::Scalars, 0, p);
        if (!q.is_zero()) set_q(s, q);
    }
    return s;
}

// Random homogeneous polynomial vector field of the given degree, coefficient weights <= max_weight.
inline PolyVectorField random_field(Rng& rng, const SpacePtr& w, int degree, int max_weight, double p,
                                    int min_weight = 0) {
    std::bernoulli_distribution keep(p);
    PolyVectorField v(w);
    for (int n = min_weight; n <= max_weight; ++n)
        for (const auto& t : sorted_tuples(*w, n)) {
            int s = 0;
            for (int i : t) s -= w->degree(i);
            for (int g = 0; g < w->dim(); ++g)
                if (s + w->degree(g) == degree && keep(rng)) v.component(g).add_term(t, random_nonzero(rng));
        }
    return v;
}

inline PolyFunction random_function(Rng& rng, const SpacePtr& w, int degree, int max_weight, double p,
                                    int min_weight = 1) {
    std::bernoulli_distribution keep(p);
    PolyFunction f(w);
    for (int n = min_weight; n <= max_weight; ++n)
        for (const auto& t : sorted_tuples(*w, n)) {
            int s = 0;
            for (int i : t) s -= w->degree(i);
            if (s == degree && keep(rng)) f.add_term(t, random_nonzero(rng));
        }
    return f;
}

inline LieConstants random_lie_bracket(Rng& rng, int dim, double p = 0.5) {
    // Arbitrary antisymmetric bracket; Jacobi is not enforced here.
    std::bernoulli_distribution keep(p);
    LieConstants L;
    for (int i = 0; i < dim; ++i) L.names.push_back("e" + std::to_string(i + 1));
    for (int a = 0; a < dim; ++a)
        for (int b = a + 1; b < dim; ++b)
            for (int c = 0; c < dim; ++c)
                if (keep(rng)) {
                    Scalar x = random_nonzero(rng);
                    L.L[{a, b, c}] = x;
                    L.L[{b, a, c}] = -x;
                }
    return L;
}

// k semidirect k^2 with [e3, e_j] = sum_i A(i,j) e_i, written in a random unipotent basis.
// Jacobi holds by construction; unimodular iff tr A = 0.
inline LieConstants random_lie3(Rng& rng, bool traceless) {
    Scalar A[2][2];
    for (auto& row : A)
        for (auto& x : row) x = random_rational(rng);
    if (traceless) A[1][1] = -A[0][0];
    Scalar base[3][3][3];  // base[k][l][m]: [e_k, e_l] = sum_m base e_m
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) {
            base[2][j][i] = A[i][j];
            base[j][2][i] = -A[i][j];
        }
    // f_i = e_i + sum_{k<i} N(k,i) e_k
    Scalar P[3][3], Pinv[3][3];
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) P[k][i] = k == i ? 1 : (k < i ? random_rational(rng) : Scalar(0));
    for (int i = 0; i < 3; ++i)  // upper unitriangular inverse by back substitution
        for (int k = 2; k >= 0; --k) {
            Scalar v = k == i ? 1 : 0;
            for (int m = k + 1; m < 3; ++m) v -= P[k][m] * Pinv[m][i];
            Pinv[k][i] = v;
        }
    LieConstants L;
    L.names = {"e1", "e2", "e3"};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Scalar e[3];
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    for (int m = 0; m < 3; ++m) e[m] += P[k][a] * P[l][b] * base[k][l][m];
            for (int c = 0; c < 3; ++c) {
                Scalar v = 0;
                for (int m = 0; m < 3; ++m) v += Pinv[c][m] * e[m];
                if (v != 0) L.L[{a, b, c}] = v;
            }
        }
    return L;
}

}  // namespace ulinf::testing
