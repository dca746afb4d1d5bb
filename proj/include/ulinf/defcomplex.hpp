#pragma once

#include "ulinf/geometry.hpp"

#include <optional>
#include <vector>

namespace ulinf {

// The element V + s g of the deformation complex; s raises the degree of g by one.
struct DefElement {
    PolyVectorField v;
    PolyFunction g;

    static DefElement zero(const SpacePtr& w) { return {PolyVectorField(w), PolyFunction(w)}; }
    bool is_zero() const { return v.is_zero() && g.is_zero(); }
    bool operator==(const DefElement& o) const { return v == o.v && g == o.g; }
    // Complex degrees present (field degree, function degree + 1).
    std::vector<int> degrees() const;
    DefElement degree_part(int d) const;
};

DefElement operator+(const DefElement& a, const DefElement& b);
DefElement operator-(const DefElement& a, const DefElement& b);
DefElement operator*(const Scalar& c, const DefElement& a);

// A unimodular pair (Q, f); construction checks [Q,Q] = 0 and div_f Q = 0.
class DefContext {
public:
    DefContext(PolyVectorField Q, PolyFunction f);
    explicit DefContext(const ULinfStructure& s);
    const PolyVectorField& Q() const { return Q_; }
    const PolyFunction& f() const { return f_; }

private:
    PolyVectorField Q_;
    PolyFunction f_;
};

// d(V + s g) = [Q, V] + s(div_f V - Q(g))
DefElement def_differential(const DefElement& e, const DefContext& ctx);
// [V1 + s g1, V2 + s g2]; inhomogeneous arguments are split by complex degree.
DefElement def_bracket(const DefElement& a, const DefElement& b);

// For e = (V, g) of complex degree 1, the curvature of V - s g:
// (QV + VQ + V^2, div_f V + (Q + V)(g)). Zero iff (Q + V, f + g) is unimodular.
DefElement mc_residual(const DefElement& e, const DefContext& ctx);

struct CharacteristicCocycle {
    PolyFunction cocycle;  // div Q
    bool closed = false;   // Q(div Q) = 0
};
// Throws ValidationError if s is not an L-infinity structure.
CharacteristicCocycle characteristic_cocycle(const LinfStructure& s);

struct CocycleClassReport {
    PolyFunction cocycle;
    bool closed = false;
    std::optional<PolyFunction> witness_f;  // div Q + Q(f) = 0
    int truncation_weight = 0;
    int unknowns = 0;
    int equations = 0;
    int rank = 0;
    // When no witness exists: a functional y on the equation monomials with
    // y(Q(x^lambda)) = 0 for every unknown monomial and y(-div Q) = 1.
    std::vector<std::pair<Monomial, Scalar>> certificate;
};

// Solves Q(f) = -div Q for f of degree 0 supported in weights 1..max_weight.
// Throws ValidationError if max_weight is below the weight support of div Q.
CocycleClassReport extend_to_unimodular(const LinfStructure& s, int max_weight);

}  // namespace ulinf
