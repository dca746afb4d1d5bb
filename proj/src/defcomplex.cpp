#include "ulinf/defcomplex.hpp"

#include "ulinf/linsolve.hpp"

#include <set>

namespace ulinf {

std::vector<int> DefElement::degrees() const {
    std::set<int> s;
    for (int d : v.degrees()) s.insert(d);
    for (int d : g.degrees()) s.insert(d + 1);
    return {s.begin(), s.end()};
}

DefElement DefElement::degree_part(int d) const { return {v.degree_part(d), g.degree_part(d - 1)}; }

DefElement operator+(const DefElement& a, const DefElement& b) { return {a.v + b.v, a.g + b.g}; }
DefElement operator-(const DefElement& a, const DefElement& b) { return {a.v - b.v, a.g - b.g}; }
DefElement operator*(const Scalar& c, const DefElement& a) { return {c * a.v, c * a.g}; }

DefContext::DefContext(PolyVectorField Q, PolyFunction f) : Q_(std::move(Q)), f_(std::move(f)) {
    if (!bracket(Q_, Q_).is_zero()) throw ValidationError("context vector field is not homological");
    if (!divergence(Q_, f_).is_zero()) throw ValidationError("context is not unimodular: div_f Q != 0");
}

DefContext::DefContext(const ULinfStructure& s) : DefContext(to_geometry(s).Q, to_geometry(s).f) {}

DefElement def_differential(const DefElement& e, const DefContext& ctx) {
    return {bracket(ctx.Q(), e.v), divergence(e.v, ctx.f()) - apply(ctx.Q(), e.g)};
}

DefElement def_bracket(const DefElement& a, const DefElement& b) {
    DefElement out = DefElement::zero(a.v.space_ptr());
    for (int da : a.degrees()) {
        DefElement pa = a.degree_part(da);
        for (int db : b.degrees()) {
            DefElement pb = b.degree_part(db);
            // [V1, V2] + s((-1)^{|V1|} V1(g2) - (-1)^{|g1||V2|} V2(g1)), |g| = complex degree - 1
            out.v = out.v + bracket(pa.v, pb.v);
            out.g = out.g + Scalar(sign_pow(da)) * apply(pa.v, pb.g);
            out.g = out.g - Scalar(sign_pow(static_cast<long long>(da - 1) * db)) * apply(pb.v, pa.g);
        }
    }
    return out;
}

DefElement mc_residual(const DefElement& e, const DefContext& ctx) {
    for (int d : e.degrees())
        if (d != 1) throw ValidationError("Maurer-Cartan residual needs an element of complex degree 1");
    DefElement x{e.v, Scalar(-1) * e.g};
    return def_differential(x, ctx) + Scalar(1, 2) * def_bracket(x, x);
}

CharacteristicCocycle characteristic_cocycle(const LinfStructure& s) {
    for (const auto& r : linf_residuals(s, 2 * s.max_arity - 1))
        if (!r.vanishes())
            throw ValidationError("not an L-infinity structure: residual at arity " + std::to_string(r.arity));
    PolyVectorField Q = to_geometry(s).Q;
    CharacteristicCocycle c;
    c.cocycle = divergence(Q, PolyFunction(s.shifted));
    c.closed = apply(Q, c.cocycle).is_zero();
    return c;
}

CocycleClassReport extend_to_unimodular(const LinfStructure& s, int max_weight) {
    CharacteristicCocycle cc = characteristic_cocycle(s);
    CocycleClassReport rep;
    rep.cocycle = cc.cocycle;
    rep.closed = cc.closed;
    rep.truncation_weight = max_weight;
    if (max_weight < 0 || max_weight < cc.cocycle.max_weight())
        throw ValidationError("truncation weight " + std::to_string(max_weight) +
                              " is below the support of div Q (weight " + std::to_string(cc.cocycle.max_weight()) + ")");

    const SpacePtr& w = s.shifted;
    PolyVectorField Q = to_geometry(s).Q;
    std::vector<Monomial> unknowns;
    for (int k = 1; k <= max_weight; ++k)
        for (const auto& t : sorted_tuples(*w, k)) {
            int deg = 0;
            for (int a : t) deg -= w->degree(a);
            if (deg == 0) unknowns.push_back(t);
        }
    std::vector<PolyFunction> images;
    std::map<Monomial, int> row_of;
    auto note_rows = [&row_of](const PolyFunction& p) {
        for (const auto& [m, c] : p.terms()) row_of.emplace(m, 0);
    };
    for (const auto& m : unknowns) {
        PolyFunction x(w);
        x.add_term(m, 1);
        images.push_back(apply(Q, x));
        note_rows(images.back());
    }
    note_rows(cc.cocycle);
    std::vector<Monomial> row_mono;
    for (auto& [m, r] : row_of) {
        r = static_cast<int>(row_mono.size());
        row_mono.push_back(m);
    }
    const int rows = static_cast<int>(row_mono.size()), cols = static_cast<int>(unknowns.size());
    Matrix A(rows, std::vector<Scalar>(cols));
    std::vector<Scalar> b(rows);
    for (int j = 0; j < cols; ++j)
        for (const auto& [m, c] : images[j].terms()) A[row_of[m]][j] = c;
    for (const auto& [m, c] : cc.cocycle.terms()) b[row_of[m]] = -c;
    rep.unknowns = cols;
    rep.equations = rows;

    LinearSolution sol = solve_exact(A, b, cols);
    rep.rank = sol.rank;
    if (sol.consistent) {
        PolyFunction f(w);
        for (int j = 0; j < cols; ++j)
            if (sol.x[j] != 0) f.add_term(unknowns[j], sol.x[j]);
        if (!divergence(Q, f).is_zero()) throw std::logic_error("solver witness fails div Q + Q(f) = 0");
        rep.witness_f = f;
    } else {
        for (int i = 0; i < rows; ++i)
            if (sol.certificate[i] != 0) rep.certificate.emplace_back(row_mono[i], sol.certificate[i]);
    }
    return rep;
}

}  // namespace ulinf
