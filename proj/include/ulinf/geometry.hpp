#pragma once

#include "ulinf/structures.hpp"

#include <map>
#include <vector>

namespace ulinf {

using Monomial = std::vector<int>;  // sorted coordinate indices, odd ones not repeated

// Element of the truncated function ring on W: polynomials in x^a, |x^a| = -|x_a|.
class PolyFunction {
public:
    using Terms = std::map<Monomial, Scalar>;

    PolyFunction() = default;
    explicit PolyFunction(SpacePtr w) : space_(std::move(w)) {}

    const SpacePtr& space_ptr() const { return space_; }
    const GradedSpace& space() const { return *space_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int coord_degree(int a) const { return -space_->degree(a); }
    int monomial_degree(const Monomial& m) const;

    // Adds c * x^{m} where m may be unsorted; sorting sign applied, zero if an odd coordinate repeats.
    void add_term(const Monomial& m, const Scalar& c);
    Scalar coeff(const Monomial& sorted) const;

    PolyFunction weight_part(int w) const;
    PolyFunction degree_part(int d) const;
    std::vector<int> degrees() const;
    int max_weight() const;  // -1 for zero

    bool operator==(const PolyFunction& o) const { return terms_ == o.terms_; }

private:
    SpacePtr space_;
    Terms terms_;
};

PolyFunction operator+(const PolyFunction& a, const PolyFunction& b);
PolyFunction operator-(const PolyFunction& a, const PolyFunction& b);
PolyFunction operator*(const Scalar& c, const PolyFunction& a);
PolyFunction operator*(const PolyFunction& a, const PolyFunction& b);
// Left partial derivative d/dx^a.
PolyFunction derivative(const PolyFunction& g, int a);
PolyFunction coordinate(const SpacePtr& w, int a);
PolyFunction constant(const SpacePtr& w, const Scalar& c);

// V = sum_a V^a d_a
class PolyVectorField {
public:
    PolyVectorField() = default;
    explicit PolyVectorField(SpacePtr w);

    const SpacePtr& space_ptr() const { return space_; }
    const GradedSpace& space() const { return *space_; }
    const PolyFunction& component(int a) const { return comp_.at(a); }
    PolyFunction& component(int a) { return comp_.at(a); }
    int dim() const { return static_cast<int>(comp_.size()); }
    bool is_zero() const;

    // Degrees of the homogeneous pieces (term degree minus coordinate degree).
    std::vector<int> degrees() const;
    PolyVectorField degree_part(int d) const;
    PolyVectorField weight_part(int w) const;  // weight of the coefficient polynomials
    int max_weight() const;

    bool operator==(const PolyVectorField& o) const { return comp_ == o.comp_; }

private:
    SpacePtr space_;
    std::vector<PolyFunction> comp_;
};

PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b);
PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b);
PolyVectorField operator*(const Scalar& c, const PolyVectorField& a);

PolyFunction apply(const PolyVectorField& v, const PolyFunction& g);
// Graded commutator; inhomogeneous arguments are split into homogeneous pieces.
PolyVectorField bracket(const PolyVectorField& a, const PolyVectorField& b);
// V1 o V2 evaluated on coordinates: (V1 o V2)(x^a) = V1(V2^a). For odd Q, Q o Q = [Q,Q]/2.
PolyVectorField compose_on_coordinates(const PolyVectorField& a, const PolyVectorField& b);

// div_f V = div V + V(f) with the constant coordinate volume form.
PolyFunction divergence(const PolyVectorField& v, const PolyFunction& f);

// Dictionary between symmetric maps and polynomials on W.
enum class Normalization { Exponential, Unit, Multinomial };
struct Dictionary {
    Normalization norm = Normalization::Exponential;
    bool reversed_monomials = false;
    bool parity_on_output = false;
    TraceSign trace = kTraceSign;
};
// The convention the library is built on (pinned by the equivalence test).
Dictionary pinned_dictionary();

// Polynomial coefficient of x^lambda per unit stored value.
Scalar dictionary_factor(const GradedSpace& w, const Monomial& lambda, const Dictionary& dict);

PolyFunction function_from_map(const MultiMap& m, const Dictionary& dict);
MultiMap map_from_function(const PolyFunction& f, int arity, const Dictionary& dict);
PolyVectorField field_from_map(const MultiMap& m, const Dictionary& dict);
MultiMap map_from_field(const PolyVectorField& v, int arity, const Dictionary& dict);

struct Geometry {
    PolyVectorField Q;
    PolyFunction f;
};

Geometry to_geometry(const ULinfStructure& s, const Dictionary& dict = pinned_dictionary());
Geometry to_geometry(const LinfStructure& s, const Dictionary& dict = pinned_dictionary());
// Throws ValidationError if Q has a constant part, Q is not of degree 1, or f is not
// of degree 0 or has a constant term.
ULinfStructure from_geometry(const PolyVectorField& Q, const PolyFunction& f, const GradedSpace& v,
                             const Dictionary& dict = pinned_dictionary());

struct GeometricReport {
    PolyFunction div_f_Q;  // div Q + Q(f)
    bool unimodular;
};
GeometricReport check_geometric_unimodularity(const ULinfStructure& s, const Dictionary& dict = pinned_dictionary());

}  // namespace ulinf
