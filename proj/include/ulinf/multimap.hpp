#pragma once

#include "ulinf/graded.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace ulinf {

// Sparse vector over basis indices. Scalar-valued maps use the single key kScalarSlot.
using Vec = std::map<int, Scalar>;
inline constexpr int kScalarSlot = -1;

void axpy(Vec& y, const Scalar& a, const Vec& x);  // y += a x
void prune(Vec& v);
int vec_degree(const Vec& v, const GradedSpace& space);  // throws if inhomogeneous/empty

using SpacePtr = std::shared_ptr<const GradedSpace>;

enum class Target { Space, Scalars };

// Sign applied to the contracted basis element: Plain = +1, Parity = (-1)^{|x_a|}.
enum class TraceSign { Plain, Parity };

class MultiMap {
public:
    using Table = std::map<std::vector<int>, Vec>;

    MultiMap() = default;
    MultiMap(SpacePtr space, int arity, Target target, int degree, bool symmetric = true);

    const GradedSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    int arity() const { return arity_; }
    Target target() const { return target_; }
    int degree() const { return degree_; }
    bool symmetric() const { return symmetric_; }
    const Table& table() const { return table_; }
    bool is_zero() const { return table_.empty(); }

    // Adds c to the value on the given (unsorted) input tuple; out = kScalarSlot for scalars.
    // For symmetric maps the tuple is sorted and the Koszul sign applied.
    void add_term(const std::vector<int>& in, int out, const Scalar& c);
    void set_value(const std::vector<int>& in, const Vec& value);  // overwrite (canonical key only)

    Vec eval_basis(const std::vector<int>& in) const;
    Vec eval(const std::vector<Vec>& args) const;
    Scalar coeff(const std::vector<int>& in, int out) const;

    bool same_shape(const MultiMap& o) const;
    bool operator==(const MultiMap& o) const { return same_shape(o) && table_ == o.table_; }

    // First nonzero entry in canonical order: (inputs, out, value).
    struct Entry {
        std::vector<int> in;
        int out;
        Scalar value;
    };
    std::optional<Entry> first_nonzero() const;

private:
    // Sorting sign for a symmetric lookup; 0 if a repeated odd element forces zero.
    int canonicalize(std::vector<int>& in) const;
    void check_degree(const std::vector<int>& in, int out) const;

    SpacePtr space_;
    int arity_ = 0;
    Target target_ = Target::Space;
    int degree_ = 0;
    bool symmetric_ = true;
    Table table_;
};

MultiMap add(const MultiMap& a, const MultiMap& b);
MultiMap scale(const Scalar& c, const MultiMap& a);

// Non-decreasing tuples of length n; tuples repeating an odd element are skipped.
std::vector<std::vector<int>> sorted_tuples(const GradedSpace& space, int n);
// All dim^n tuples.
std::vector<std::vector<int>> all_tuples(const GradedSpace& space, int n);

// Value of outer(x_I, inner(x_J)) on a basis tuple, including the routing sign.
Vec insertion_value(const MultiMap& outer, const MultiMap& inner, const std::vector<int>& tuple,
                    const Unshuffle& u);

// Single insertion as a (non-symmetric) map of arity |I|+|J|.
MultiMap insert(const MultiMap& outer, const MultiMap& inner, const Unshuffle& u);
// Sum of insertions over every unshuffle with |I| = outer.arity-1; symmetric result.
MultiMap insert_sum(const MultiMap& outer, const MultiMap& inner);
// Graded symmetrization of an arbitrary map: sum over all permutations with Koszul signs.
MultiMap symmetrize(const MultiMap& m);

// Contract the last input against the output.
MultiMap partial_trace(const MultiMap& m, TraceSign conv);

// Linear map helpers used by retracts: matrices as column vectors m[j] = image of basis j.
using LinearMap = std::vector<Vec>;
Vec apply(const LinearMap& m, const Vec& v);

}  // namespace ulinf
