#include "ulinf/graded.hpp"

#include <algorithm>
#include <limits>

namespace ulinf {

Scalar parse_scalar(const std::string& text) {
    std::string t;
    for (char c : text)
        if (c != ' ') t.push_back(c);
    if (t.empty()) throw ValidationError("empty rational");
    if (t[0] == '+') t.erase(0, 1);
    auto slash = t.find('/');
    auto valid_int = [](const std::string& s) {
        size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (i >= s.size()) return false;
        return std::all_of(s.begin() + i, s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string num = t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-')
        throw ValidationError("malformed rational '" + text + "'");
    mpz_class d(den);
    if (d == 0) throw ValidationError("zero denominator in '" + text + "'");
    Scalar q(mpz_class(num), d);
    q.canonicalize();
    return q;
}

std::string to_string(const Scalar& x) { return x.get_str(); }

GradedSpace::GradedSpace(std::vector<BasisElement> basis) : basis_(std::move(basis)) {
    for (int i = 0; i < dim(); ++i) {
        if (basis_[i].name.empty()) throw ValidationError("empty basis name");
        if (!index_.emplace(basis_[i].name, i).second)
            throw ValidationError("duplicate basis name '" + basis_[i].name + "'");
    }
}

std::optional<int> GradedSpace::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int GradedSpace::index_of(const std::string& name) const {
    auto i = find(name);
    if (!i) throw ValidationError("unknown basis name '" + name + "'");
    return *i;
}

int checked_add(int a, int b) {
    long long s = static_cast<long long>(a) + b;
    if (s > std::numeric_limits<int>::max() || s < std::numeric_limits<int>::min())
        throw ValidationError("degree overflow");
    return static_cast<int>(s);
}

std::pair<GradedSpace, ShiftMap> shift_structure(const GradedSpace& space) {
    std::vector<BasisElement> out;
    out.reserve(space.dim());
    for (const auto& b : space.basis()) out.push_back({"x_" + b.name, checked_add(b.degree, -1)});
    GradedSpace target(std::move(out));
    ShiftMap s{space, target, {}};
    for (int i = 0; i < space.dim(); ++i) s.image.push_back(i);
    return {target, s};
}

ShiftMap compose(const ShiftMap& first, const ShiftMap& second) {
    if (!(first.target == second.source)) throw ValidationError("shift maps do not compose");
    ShiftMap r{first.source, second.target, {}};
    for (int i : first.image) r.image.push_back(second.image.at(i));
    return r;
}

void Unshuffle::validate() const {
    if (n < 0 || static_cast<int>(I.size() + J.size()) != n)
        throw ValidationError("unshuffle: |I|+|J| != n");
    std::vector<char> seen(n + 1, 0);
    auto check = [&](const std::vector<int>& s) {
        for (size_t k = 0; k < s.size(); ++k) {
            if (s[k] < 1 || s[k] > n) throw ValidationError("unshuffle: index out of range");
            if (k && s[k] <= s[k - 1]) throw ValidationError("unshuffle: block not increasing");
            if (seen[s[k]]) throw ValidationError("unshuffle: blocks overlap");
            seen[s[k]] = 1;
        }
    };
    check(I);
    check(J);
}

int permutation_sign(const std::vector<int>& perm) {
    int inv = 0;
    for (size_t a = 0; a < perm.size(); ++a)
        for (size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b]) ++inv;
    return sign_pow(inv);
}

int unshuffle_sign(const Unshuffle& u) {
    u.validate();
    std::vector<int> p(u.I);
    p.insert(p.end(), u.J.begin(), u.J.end());
    return permutation_sign(p);
}

std::vector<Unshuffle> all_unshuffles(int n, int min_j) {
    std::vector<Unshuffle> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        Unshuffle u;
        u.n = n;
        for (int k = 0; k < n; ++k) ((mask >> k) & 1 ? u.J : u.I).push_back(k + 1);
        if (static_cast<int>(u.J.size()) >= min_j) out.push_back(std::move(u));
    }
    return out;
}

int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees, SignRule rule) {
    if (perm.size() != degrees.size()) throw ValidationError("koszul_sign: length mismatch");
    const size_t n = perm.size();
    std::vector<char> seen(n, 0);
    for (int p : perm) {
        if (p < 0 || static_cast<size_t>(p) >= n || seen[p])
            throw ValidationError("koszul_sign: not a permutation");
        seen[p] = 1;
    }
    int e = 0;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            if (perm[a] > perm[b]) {
                e += parity(degrees[perm[a]]) * parity(degrees[perm[b]]);
                if (rule == SignRule::KoszulSgn) ++e;
            }
    return sign_pow(e);
}

}  // namespace ulinf
