#pragma once

#include "ulinf/multimap.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace ulinf {

// Trace convention used by every wheel/trace term in the library.
// Pinned by the divergence equivalence test (see tests/test_geometry.cpp).
inline constexpr TraceSign kTraceSign = TraceSign::Parity;

// L-infinity structure in the shifted picture: maps on W = V[1], all of degree +1.
struct LinfStructure {
    GradedSpace space;            // V
    SpacePtr shifted;             // W
    std::map<int, MultiMap> ell;  // arity -> map W^n -> W; arity 1 is d
    int max_arity = 1;

    // ell[n], or the zero map of arity n
    MultiMap ell_at(int n) const;
    MultiMap d() const { return ell_at(1); }
};

struct ULinfStructure {
    LinfStructure base;
    std::map<int, MultiMap> q;  // arity -> map W^n -> k, degree 0

    MultiMap q_at(int n) const;
    const GradedSpace& space() const { return base.space; }
    const SpacePtr& shifted() const { return base.shifted; }
};

enum class ResidualKind { Ell, Q };

struct Residual {
    int arity;
    MultiMap map;
    ResidualKind kind;
    bool vanishes() const { return map.is_zero(); }
};

// Empty structure on V: d = 0, no brackets.
LinfStructure make_linf(const GradedSpace& space);
ULinfStructure make_ulinf(const GradedSpace& space);
// Adds a map (checked for shape) and updates max_arity.
void set_ell(LinfStructure& s, MultiMap m);
void set_q(ULinfStructure& s, MultiMap m);

// Lie structure constants: [e_a, e_b] = sum_c L(a,b,c) e_c, all degrees 0.
struct LieConstants {
    std::vector<std::string> names;
    std::map<std::tuple<int, int, int>, Scalar> L;
    Scalar get(int a, int b, int c) const;
    int dim() const { return static_cast<int>(names.size()); }
};

LinfStructure from_lie(const LieConstants& lie);

std::vector<Residual> linf_residuals(const LinfStructure& s, int up_to);
std::vector<Residual> ulinf_residuals(const ULinfStructure& s, int up_to);

struct UnimodularVerdict {
    bool unimodular;
    int witness = -1;  // 0-based basis index with nonzero trace
    Scalar trace = 0;
};
UnimodularVerdict is_unimodular_lie(const LieConstants& lie);

// Conversion between the unshifted antisymmetric convention (maps on V of degree
// 2-n, resp. -n) and the shifted symmetric one. The sign (-1)^{sum_k (n-k)|e_k|}
// is applied entrywise; it is an involution.
int decalage_sign(const GradedSpace& v, const std::vector<int>& tuple);

struct UnshiftedEntry {
    std::vector<int> in;
    int out;  // kScalarSlot for q
    Scalar value;
};
MultiMap shifted_from_unshifted(const GradedSpace& v, const SpacePtr& w, int arity, Target target,
                                const std::vector<UnshiftedEntry>& entries);
std::vector<UnshiftedEntry> unshifted_from_shifted(const GradedSpace& v, const MultiMap& m);

}  // namespace ulinf
