#pragma once

#include "ulinf/scalar.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ulinf {

struct BasisElement {
    std::string name;
    int degree = 0;
    bool operator==(const BasisElement&) const = default;
};

class GradedSpace {
public:
    GradedSpace() = default;
    explicit GradedSpace(std::vector<BasisElement> basis);

    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<BasisElement>& basis() const { return basis_; }
    const BasisElement& operator[](int i) const { return basis_.at(i); }
    int degree(int i) const { return basis_.at(i).degree; }
    const std::string& name(int i) const { return basis_.at(i).name; }

    std::optional<int> find(const std::string& name) const;
    int index_of(const std::string& name) const;  // throws ValidationError

    bool operator==(const GradedSpace& o) const { return basis_ == o.basis_; }

private:
    std::vector<BasisElement> basis_;
    std::map<std::string, int> index_;
};

// s^{-1}: V -> V[1], basis names are prefixed with "x_".
struct ShiftMap {
    GradedSpace source;
    GradedSpace target;
    std::vector<int> image;  // source index -> target index (identity order)
};

std::pair<GradedSpace, ShiftMap> shift_structure(const GradedSpace& space);
ShiftMap compose(const ShiftMap& first, const ShiftMap& second);

// I and J are 1-based, strictly increasing, I ⊔ J = {1..n}.
struct Unshuffle {
    std::vector<int> I;
    std::vector<int> J;
    int n = 0;
    void validate() const;
};

// Sign of the permutation listing I then J.
int unshuffle_sign(const Unshuffle& u);

// All unshuffles of [n] with |J| >= min_j.
std::vector<Unshuffle> all_unshuffles(int n, int min_j = 0);

enum class SignRule { Koszul, KoszulSgn };

// perm is 0-based: the output sequence is (x_{perm[0]}, x_{perm[1]}, ...).
// Returns the sign picked up moving homogeneous elements of the given degrees
// into that order; KoszulSgn additionally multiplies by sgn(perm).
int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees,
                SignRule rule = SignRule::Koszul);

int permutation_sign(const std::vector<int>& perm);

// Checked degree arithmetic.
int checked_add(int a, int b);

}  // namespace ulinf
