#pragma once

#include "ulinf/multimap.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace ulinf {

// A-infinity structure in the shifted picture: non-symmetric maps W^n -> W of degree +1.
struct AInfStructure {
    GradedSpace space;  // V
    SpacePtr shifted;   // W = V[1]
    std::map<int, MultiMap> gamma;

    MultiMap gamma_at(int n) const;  // zero map if absent
    int max_arity() const;           // 0 if empty
};

AInfStructure make_ainf(const GradedSpace& space);
// Adds a non-symmetric map of degree +1 (shape checked).
void set_gamma(AInfStructure& s, MultiMap m);

// a o b = sum over slots i of a(x_1..x_i, b(..), ..) with sign (-1)^{|b|(|x_1|+..+|x_i|)}.
MultiMap pre_lie(const MultiMap& a, const MultiMap& b);
// [a, b] = a o b - (-1)^{|a||b|} b o a
MultiMap gerstenhaber_bracket(const MultiMap& a, const MultiMap& b);

struct AinfResidual {
    int arity;
    MultiMap map;  // arity component of (1/2)[G, G] = G o G
    bool vanishes() const { return map.is_zero(); }
};
std::vector<AinfResidual> ainf_check(const AInfStructure& s, int up_to);
bool is_ainf(const AInfStructure& s);  // all residual arities up to 2 * max_arity - 1

// Element of Cyc_{m,n}: a functional on W^m (x) W^n of the given degree, invariant under
// rotating either group of inputs with the Koszul sign on W. The twist (-1)^{m+1} of the
// rotation cancels sgn(zeta), so no further sign appears in the shifted picture.
// One value is stored per orbit, at its lexicographically smallest key.
class CycCochain {
public:
    using Full = std::map<std::vector<int>, Scalar>;

    CycCochain() = default;
    CycCochain(SpacePtr w, int m, int n, int degree);

    // Signed cyclic sum of an arbitrary functional over the chosen rotation groups;
    // the result is invariant provided `full` already is for any group left out.
    static CycCochain symmetrize(SpacePtr w, int m, int n, int degree, const Full& full, bool group1 = true,
                                 bool group2 = true);

    int m() const { return m_; }
    int n() const { return n_; }
    int degree() const { return degree_; }
    const SpacePtr& space_ptr() const { return space_; }
    const Full& reps() const { return reps_; }
    bool is_zero() const { return reps_.empty(); }
    bool operator==(const CycCochain& o) const {
        return m_ == o.m_ && n_ == o.n_ && degree_ == o.degree_ && reps_ == o.reps_;
    }

    // Smallest key in the orbit and the factor c with value(key) = c * value(canonical);
    // c = 0 when the orbit's stabilizer forces the value to vanish.
    std::pair<std::vector<int>, int> canonical(const std::vector<int>& key) const;
    Scalar eval(const std::vector<int>& key) const;
    Full unfold() const;  // every nonzero value

    void add_rep(const std::vector<int>& canonical_key, const Scalar& c);

private:
    SpacePtr space_;
    int m_ = 0, n_ = 0, degree_ = 0;
    Full reps_;
};

CycCochain operator+(const CycCochain& a, const CycCochain& b);
CycCochain operator*(const Scalar& c, const CycCochain& a);

using CycFamily = std::map<std::pair<int, int>, CycCochain>;
void add_into(CycFamily& acc, const CycCochain& c, const Scalar& coeff = 1);
bool is_zero(const CycFamily& f);

// Partial trace of G_{m+n+1} contracting its output with input m+1 (unsymmetrized).
CycCochain::Full wheel_trace(const AInfStructure& s, int m, int n);
// Cyclic symmetrization of the trace over C_m x C_n; the group C_0 is trivial.
CycCochain gamma_wheel(const AInfStructure& s, int m, int n);
CycFamily gamma_wheel_family(const AInfStructure& s, int max_bidegree);

// Right action of G: insertions of each G_k into every cyclic slot of either group.
CycFamily cyc_differential(const AInfStructure& s, const CycCochain& c);
CycFamily cyc_differential(const AInfStructure& s, const CycFamily& c);

struct CyclicClassReport {
    bool vanishes = false;
    int max_bidegree = 0;
    CycFamily gamma_wheel;
    std::optional<CycFamily> witness;  // degree-0 cochains with d witness = gamma_wheel up to max_bidegree
    int unknowns = 0, equations = 0, rank = 0;
    struct CertEntry {
        int m, n;
        std::vector<int> key;
        Scalar value;
    };
    std::vector<CertEntry> certificate;  // functional on equation coordinates killing every d(e_C)
};

// Throws ValidationError if s is not A-infinity or max_bidegree is below the support of the wheel class.
CyclicClassReport cyclic_class_vanishes(const AInfStructure& s, int max_bidegree);

// Ungraded associative algebra: e_a e_b = sum_c mu(a,b,c) e_c.
struct AssociativeAlgebra {
    std::vector<std::string> names;
    std::map<std::tuple<int, int, int>, Scalar> mu;
    int dim() const { return static_cast<int>(names.size()); }
    Scalar get(int a, int b, int c) const;
};

struct UassVerdict {
    bool unimodular = false;
    int witness = -1;  // 0-based basis index with a nonzero trace
    bool left = true;  // which multiplication operator
    Scalar trace = 0;
};
// Throws ValidationError if the algebra is not associative.
UassVerdict uass_check(const AssociativeAlgebra& a);

// G_2(x_a, x_b) = sum_c mu(a,b,c) x_c on W = A[1].
AInfStructure from_associative(const AssociativeAlgebra& a);

}  // namespace ulinf
