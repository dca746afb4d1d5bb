#pragma once

// Valid (structure, retract) pairs for transfer tests.
//
// V = U' + span{a, b} with d a = b. An abelian element of U' (if of degree 0) acts on the
// pair by a character, so the supertrace of every adjoint map vanishes. Alternatively
// U' = {y, z} with |y| = 1, |z| = 2 carries brackets of every arity. A planted f in the
// U' coordinates gives nonzero q's. A random degree-0 vector field xi of weight >= 1 then
// moves (Q, f) along the flow dQ/dt = [xi, Q], df/dt = xi(f) + div xi, which preserves
// both equations and produces brackets of every arity. The standard projection retract is
// finally perturbed by homotopies alpha: U -> V, beta: V -> U.

#include "support/random_structures.hpp"
#include "ulinf/geometry.hpp"
#include "ulinf/transfer.hpp"

namespace ulinf::testing {

struct Instance {
    ULinfStructure s;
    RetractData r;
};

inline LinearMap zero_map(int cols) { return LinearMap(cols); }

inline LinearMap compose_maps(const LinearMap& a, const LinearMap& b) {
    LinearMap out(b.size());
    for (size_t j = 0; j < b.size(); ++j) out[j] = ulinf::apply(a, b[j]);
    return out;
}

inline void add_to(LinearMap& a, const LinearMap& b, const Scalar& c = 1) {
    for (size_t j = 0; j < a.size(); ++j) axpy(a[j], c, b[j]);
}

// exp(ad xi) Q and the matching f; Q keeps coefficient degree <= cap, f degree < cap.
inline Geometry gauge(const Geometry& g, const PolyVectorField& xi, int cap) {
    auto trunc_f = [cap](const PolyFunction& p) {  // q up to arity cap - 1
        PolyFunction out(p.space_ptr());
        for (int w = 0; w < cap; ++w) out = out + p.weight_part(w);
        return out;
    };
    auto trunc_v = [cap](const PolyVectorField& v) {
        PolyVectorField out(v.space_ptr());
        for (int w = 0; w <= cap; ++w) out = out + v.weight_part(w);
        return out;
    };
    Geometry out = g;
    PolyVectorField term = g.Q;
    PolyFunction fterm = g.f, dterm = divergence(xi, PolyFunction(g.f.space_ptr()));
    Scalar fact = 1;
    for (int k = 1; k <= cap; ++k) {
        fact *= k;
        term = trunc_v(bracket(xi, term));
        out.Q = out.Q + Scalar(1) / fact * term;
        fterm = trunc_f(apply(xi, fterm));
        out.f = out.f + Scalar(1) / fact * fterm;
        out.f = out.f + Scalar(1) / fact * trunc_f(dterm);
        dterm = trunc_f(apply(xi, dterm));
    }
    out.Q = trunc_v(out.Q);
    out.f = trunc_f(out.f);
    return out;
}

struct InstanceOptions {
    int max_arity = 5;       // brackets kept up to this arity (q up to one less)
    bool gauge = true;
    bool plant_f = true;
    bool perturb = true;
    bool higher_brackets = true;  // sometimes use the filiform layout below
};

inline Instance random_instance(Rng& rng, const InstanceOptions& opt = {}) {
    std::uniform_int_distribution<int> deg(-1, 2), pair_deg(-1, 1), nu_d(1, 2);
    std::bernoulli_distribution coin(0.5);
    int nu = nu_d(rng);
    std::vector<BasisElement> ub, vb;
    for (int i = 0; i < nu; ++i) ub.push_back({"u" + std::to_string(i + 1), deg(rng)});
    if (coin(rng)) ub[0].degree = 0;  // an acting element
    // l_n(y, ..., y) = c_n z: nothing takes z as input and no trace can close, so this is
    // unimodular for every n and for any f in the even coordinate of y.
    const bool filiform = opt.higher_brackets && coin(rng);
    if (filiform) {
        ub = {{"y", 1}, {"z", 2}};
        nu = 2;
    }
    int k = pair_deg(rng);
    vb = ub;
    vb.push_back({"a", k});
    vb.push_back({"b", k + 1});
    const int ia = nu, ib = nu + 1;
    GradedSpace V(vb), U(ub);

    ULinfStructure s = make_ulinf(V);
    MultiMap d(s.shifted(), 1, Target::Space, 1);
    d.add_term({ia}, ib, 1);
    set_ell(s.base, d);
    if (ub[0].degree == 0) {
        Scalar chi = random_nonzero(rng);
        std::vector<UnshiftedEntry> e{{{0, ia}, ia, chi}, {{0, ib}, ib, chi}};
        set_ell(s.base, shifted_from_unshifted(V, s.shifted(), 2, Target::Space, e));
    }
    if (filiform)
        for (int n = 2; n <= opt.max_arity; ++n) {
            MultiMap l(s.shifted(), n, Target::Space, 1);
            l.add_term(std::vector<int>(n, 0), 1, random_nonzero(rng));
            set_ell(s.base, l);
        }
    Geometry geo = to_geometry(s);
    if (opt.plant_f) {
        PolyFunction f(s.shifted());
        for (int n = 1; n <= opt.max_arity - 1; ++n)
            for (const auto& t : sorted_tuples(*s.shifted(), n)) {
                bool in_u = std::all_of(t.begin(), t.end(), [nu](int i) { return i < nu; });
                int dsum = 0;
                for (int i : t) dsum -= s.shifted()->degree(i);
                if (in_u && dsum == 0 && coin(rng)) f.add_term(t, random_nonzero(rng));
            }
        geo.f = f;
    }
    if (opt.gauge) {
        PolyVectorField xi = random_field(rng, s.shifted(), 0, 3, 0.35, 2);
        geo = gauge(geo, xi, opt.max_arity);
    }
    Instance inst{from_geometry(geo.Q, geo.f, V), {}};

    RetractData& r = inst.r;
    r.big = V;
    r.small = U;
    r.f = zero_map(nu);
    for (int j = 0; j < nu; ++j) r.f[j][j] = 1;
    r.g = zero_map(V.dim());
    for (int j = 0; j < nu; ++j) r.g[j][j] = 1;
    r.h = zero_map(V.dim());
    r.h[ib][ia] = -1;
    r.dV = zero_map(V.dim());
    r.dV[ia][ib] = 1;
    r.dU = zero_map(nu);
    if (opt.perturb) {
        // f' = f + d alpha, h' = h + alpha g   (d_U = 0)
        LinearMap alpha = zero_map(nu);
        for (int j = 0; j < nu; ++j)
            if (U.degree(j) - 1 == k && coin(rng)) alpha[j][ia] = random_nonzero(rng);
        add_to(r.f, compose_maps(r.dV, alpha));
        add_to(r.h, compose_maps(alpha, r.g));
        // g' = g + beta d, h' = h + f' beta
        LinearMap beta = zero_map(V.dim());
        for (int i = 0; i < nu; ++i)
            if (U.degree(i) == k && coin(rng)) beta[ib][i] = random_nonzero(rng);
        add_to(r.g, compose_maps(beta, r.dV));
        add_to(r.h, compose_maps(r.f, beta));
        for (auto& col : r.f) prune(col);
        for (auto& col : r.g) prune(col);
        for (auto& col : r.h) prune(col);
    }
    return inst;
}

// U = V relabeled, f = P, g = P^{-1} for a unipotent degree-preserving P, h = 0.
inline Instance conjugation_instance(Rng& rng, const ULinfStructure& s) {
    const GradedSpace& V = s.space();
    const int n = V.dim();
    LinearMap N = zero_map(n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (V.degree(i) == V.degree(j) && std::bernoulli_distribution(0.6)(rng)) N[j][i] = random_nonzero(rng);
    LinearMap P = zero_map(n), Pinv = zero_map(n), power = zero_map(n);
    for (int j = 0; j < n; ++j) P[j][j] = Pinv[j][j] = power[j][j] = 1;
    add_to(P, N);
    for (int k = 1; k < n; ++k) {  // (1+N)^{-1} = sum (-N)^k
        power = compose_maps(N, power);
        add_to(Pinv, power, k % 2 ? -1 : 1);
    }
    std::vector<BasisElement> ub;
    for (int i = 0; i < n; ++i) ub.push_back({"c" + V.name(i), V.degree(i)});
    Instance inst{s, {}};
    RetractData& r = inst.r;
    r.big = V;
    r.small = GradedSpace(ub);
    r.f = P;
    r.g = Pinv;
    r.h = zero_map(n);
    r.dV = zero_map(n);
    MultiMap d = s.base.d();
    for (int j = 0; j < n; ++j) r.dV[j] = d.eval_basis({j});
    r.dU = compose_maps(Pinv, compose_maps(r.dV, P));
    for (auto* m : {&r.f, &r.g, &r.dU})
        for (auto& col : *m) prune(col);
    return inst;
}

}  // namespace ulinf::testing
