#include "ulinf/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ulinf {

namespace {

int cpar(const GradedSpace& w, int a) { return parity(w.degree(a)); }

Scalar factorial(int n) {
    mpz_class r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return Scalar(r);
}

}  // namespace

int PolyFunction::monomial_degree(const Monomial& m) const {
    int d = 0;
    for (int a : m) d = checked_add(d, coord_degree(a));
    return d;
}

void PolyFunction::add_term(const Monomial& m, const Scalar& c) {
    if (c == 0) return;
    for (int a : m)
        if (a < 0 || a >= space_->dim()) throw ValidationError("coordinate index out of range");
    std::vector<int> perm(m.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int x, int y) { return m[x] < m[y]; });
    std::vector<int> deg;
    for (int a : m) deg.push_back(space_->degree(a));
    Monomial sorted;
    for (int p : perm) sorted.push_back(m[p]);
    for (size_t k = 1; k < sorted.size(); ++k)
        if (sorted[k] == sorted[k - 1] && cpar(*space_, sorted[k])) return;
    int s = koszul_sign(perm, deg);
    auto it = terms_.find(sorted);
    if (it == terms_.end()) {
        terms_.emplace(std::move(sorted), c * s);
    } else {
        it->second += c * s;
        if (it->second == 0) terms_.erase(it);
    }
}

Scalar PolyFunction::coeff(const Monomial& sorted) const {
    auto it = terms_.find(sorted);
    return it == terms_.end() ? Scalar(0) : it->second;
}

PolyFunction PolyFunction::weight_part(int w) const {
    PolyFunction r(space_);
    for (const auto& [m, c] : terms_)
        if (static_cast<int>(m.size()) == w) r.terms_.emplace(m, c);
    return r;
}

PolyFunction PolyFunction::degree_part(int d) const {
    PolyFunction r(space_);
    for (const auto& [m, c] : terms_)
        if (monomial_degree(m) == d) r.terms_.emplace(m, c);
    return r;
}

std::vector<int> PolyFunction::degrees() const {
    std::set<int> s;
    for (const auto& [m, c] : terms_) s.insert(monomial_degree(m));
    return {s.begin(), s.end()};
}

int PolyFunction::max_weight() const {
    int w = -1;
    for (const auto& [m, c] : terms_) w = std::max(w, static_cast<int>(m.size()));
    return w;
}

PolyFunction operator+(const PolyFunction& a, const PolyFunction& b) {
    PolyFunction r(a);
    for (const auto& [m, c] : b.terms()) r.add_term(m, c);
    return r;
}

PolyFunction operator-(const PolyFunction& a, const PolyFunction& b) { return a + Scalar(-1) * b; }

PolyFunction operator*(const Scalar& c, const PolyFunction& a) {
    PolyFunction r(a.space_ptr());
    if (c == 0) return r;
    for (const auto& [m, v] : a.terms()) r.add_term(m, c * v);
    return r;
}

PolyFunction operator*(const PolyFunction& a, const PolyFunction& b) {
    PolyFunction r(a.space_ptr());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            Monomial m(ma);
            m.insert(m.end(), mb.begin(), mb.end());
            r.add_term(m, ca * cb);
        }
    return r;
}

PolyFunction derivative(const PolyFunction& g, int a) {
    PolyFunction r(g.space_ptr());
    const GradedSpace& w = g.space();
    for (const auto& [m, c] : g.terms()) {
        int before = 0;
        for (size_t k = 0; k < m.size(); ++k) {
            if (m[k] == a) {
                Monomial rest(m);
                rest.erase(rest.begin() + static_cast<long>(k));
                r.add_term(rest, c * sign_pow(static_cast<long long>(cpar(w, a)) * before));
            }
            before += cpar(w, m[k]);
        }
    }
    return r;
}

PolyFunction coordinate(const SpacePtr& w, int a) {
    PolyFunction r(w);
    r.add_term({a}, 1);
    return r;
}

PolyFunction constant(const SpacePtr& w, const Scalar& c) {
    PolyFunction r(w);
    r.add_term({}, c);
    return r;
}

PolyVectorField::PolyVectorField(SpacePtr w) : space_(std::move(w)) {
    comp_.assign(space_->dim(), PolyFunction(space_));
}

bool PolyVectorField::is_zero() const {
    return std::all_of(comp_.begin(), comp_.end(), [](const PolyFunction& p) { return p.is_zero(); });
}

std::vector<int> PolyVectorField::degrees() const {
    std::set<int> s;
    for (int a = 0; a < dim(); ++a)
        for (int d : comp_[a].degrees()) s.insert(d + space_->degree(a));
    return {s.begin(), s.end()};
}

PolyVectorField PolyVectorField::degree_part(int d) const {
    PolyVectorField r(space_);
    for (int a = 0; a < dim(); ++a) r.comp_[a] = comp_[a].degree_part(d - space_->degree(a));
    return r;
}

PolyVectorField PolyVectorField::weight_part(int w) const {
    PolyVectorField r(space_);
    for (int a = 0; a < dim(); ++a) r.comp_[a] = comp_[a].weight_part(w);
    return r;
}

int PolyVectorField::max_weight() const {
    int w = -1;
    for (const auto& c : comp_) w = std::max(w, c.max_weight());
    return w;
}

PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b) {
    PolyVectorField r(a);
    for (int k = 0; k < r.dim(); ++k) r.component(k) = a.component(k) + b.component(k);
    return r;
}

PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b) { return a + Scalar(-1) * b; }

PolyVectorField operator*(const Scalar& c, const PolyVectorField& a) {
    PolyVectorField r(a.space_ptr());
    for (int k = 0; k < r.dim(); ++k) r.component(k) = c * a.component(k);
    return r;
}

PolyFunction apply(const PolyVectorField& v, const PolyFunction& g) {
    PolyFunction r(g.space_ptr());
    for (int a = 0; a < v.dim(); ++a) {
        if (v.component(a).is_zero()) continue;
        PolyFunction da = derivative(g, a);
        if (!da.is_zero()) r = r + v.component(a) * da;
    }
    return r;
}

PolyVectorField compose_on_coordinates(const PolyVectorField& a, const PolyVectorField& b) {
    PolyVectorField r(a.space_ptr());
    for (int k = 0; k < r.dim(); ++k) r.component(k) = apply(a, b.component(k));
    return r;
}

PolyVectorField bracket(const PolyVectorField& a, const PolyVectorField& b) {
    PolyVectorField r(a.space_ptr());
    for (int da : a.degrees()) {
        PolyVectorField pa = a.degree_part(da);
        for (int db : b.degrees()) {
            PolyVectorField pb = b.degree_part(db);
            int s = sign_pow(static_cast<long long>(parity(da)) * parity(db));
            r = r + compose_on_coordinates(pa, pb) - Scalar(s) * compose_on_coordinates(pb, pa);
        }
    }
    return r;
}

PolyFunction divergence(const PolyVectorField& v, const PolyFunction& f) {
    PolyFunction r(v.space_ptr());
    const GradedSpace& w = v.space();
    for (int a = 0; a < v.dim(); ++a) {
        const PolyFunction& va = v.component(a);
        for (const auto& [m, c] : va.terms()) {
            PolyFunction t(v.space_ptr());
            t.add_term(m, c);
            int s = sign_pow(static_cast<long long>(cpar(w, a)) * parity(va.monomial_degree(m)));
            r = r + Scalar(s) * derivative(t, a);
        }
    }
    if (!f.is_zero()) r = r + apply(v, f);
    return r;
}

Dictionary pinned_dictionary() { return Dictionary{}; }

Scalar dictionary_factor(const GradedSpace& w, const Monomial& lambda, const Dictionary& dict) {
    Scalar f = 1;
    if (dict.norm != Normalization::Unit) {
        Scalar denom = 1;
        for (size_t k = 0; k < lambda.size();) {
            size_t j = k;
            while (j < lambda.size() && lambda[j] == lambda[k]) ++j;
            denom *= factorial(static_cast<int>(j - k));
            k = j;
        }
        f = 1 / denom;
        if (dict.norm == Normalization::Multinomial) f *= factorial(static_cast<int>(lambda.size()));
    }
    if (dict.reversed_monomials) {
        long long e = 0;
        for (size_t k = 0; k < lambda.size(); ++k)
            for (size_t l = k + 1; l < lambda.size(); ++l) e += cpar(w, lambda[k]) * cpar(w, lambda[l]);
        f *= sign_pow(e);
    }
    return f;
}

PolyFunction function_from_map(const MultiMap& m, const Dictionary& dict) {
    if (m.target() != Target::Scalars || !m.symmetric()) throw ValidationError("function_from_map: wrong shape");
    PolyFunction r(m.space_ptr());
    for (const auto& [in, v] : m.table()) r.add_term(in, v.at(kScalarSlot) * dictionary_factor(m.space(), in, dict));
    return r;
}

MultiMap map_from_function(const PolyFunction& f, int arity, const Dictionary& dict) {
    MultiMap m(f.space_ptr(), arity, Target::Scalars, 0);
    for (const auto& [mono, c] : f.terms())
        if (static_cast<int>(mono.size()) == arity)
            m.add_term(mono, kScalarSlot, c / dictionary_factor(f.space(), mono, dict));
    return m;
}

namespace {
int output_sign(const GradedSpace& w, int g, const Dictionary& dict) {
    return dict.parity_on_output ? sign_pow(cpar(w, g)) : 1;
}
}  // namespace

PolyVectorField field_from_map(const MultiMap& m, const Dictionary& dict) {
    if (m.target() != Target::Space || !m.symmetric()) throw ValidationError("field_from_map: wrong shape");
    PolyVectorField r(m.space_ptr());
    for (const auto& [in, v] : m.table()) {
        Scalar f = dictionary_factor(m.space(), in, dict);
        for (const auto& [g, c] : v) r.component(g).add_term(in, c * f * output_sign(m.space(), g, dict));
    }
    return r;
}

MultiMap map_from_field(const PolyVectorField& v, int arity, const Dictionary& dict) {
    auto degs = v.degrees();
    int deg = degs.empty() ? 1 : degs.front();
    if (degs.size() > 1) throw ValidationError("map_from_field: inhomogeneous field");
    MultiMap m(v.space_ptr(), arity, Target::Space, deg);
    for (int g = 0; g < v.dim(); ++g)
        for (const auto& [mono, c] : v.component(g).terms())
            if (static_cast<int>(mono.size()) == arity)
                m.add_term(mono, g, c / (dictionary_factor(v.space(), mono, dict) * output_sign(v.space(), g, dict)));
    return m;
}

Geometry to_geometry(const LinfStructure& s, const Dictionary& dict) {
    Geometry g{PolyVectorField(s.shifted), PolyFunction(s.shifted)};
    for (const auto& [n, m] : s.ell) g.Q = g.Q + field_from_map(m, dict);
    return g;
}

Geometry to_geometry(const ULinfStructure& s, const Dictionary& dict) {
    Geometry g = to_geometry(s.base, dict);
    for (const auto& [n, m] : s.q) g.f = g.f + function_from_map(m, dict);
    return g;
}

ULinfStructure from_geometry(const PolyVectorField& Q, const PolyFunction& f, const GradedSpace& v,
                             const Dictionary& dict) {
    ULinfStructure s = make_ulinf(v);
    if (!(Q.space() == *s.shifted()) || !(f.space() == *s.shifted()))
        throw ValidationError("from_geometry: coordinates do not match the shifted space");
    for (int a = 0; a < Q.dim(); ++a)
        if (!Q.component(a).weight_part(0).is_zero()) throw ValidationError("vector field does not vanish at 0");
    if (!f.weight_part(0).is_zero()) throw ValidationError("function has a constant term");
    for (int d : Q.degrees())
        if (d != 1) throw ValidationError("vector field is not of degree 1");
    for (int d : f.degrees())
        if (d != 0) throw ValidationError("function is not of degree 0");
    PolyVectorField Qs(s.shifted());
    for (int a = 0; a < Q.dim(); ++a) Qs.component(a) = Q.component(a);
    for (int n = 1; n <= Q.max_weight(); ++n) {
        MultiMap m = map_from_field(Qs.weight_part(n), n, dict);
        if (!m.is_zero()) set_ell(s.base, std::move(m));
    }
    PolyFunction fs(s.shifted());
    for (const auto& [mono, c] : f.terms()) fs.add_term(mono, c);
    for (int n = 1; n <= f.max_weight(); ++n) {
        MultiMap m = map_from_function(fs, n, dict);
        if (!m.is_zero()) set_q(s, std::move(m));
    }
    return s;
}

GeometricReport check_geometric_unimodularity(const ULinfStructure& s, const Dictionary& dict) {
    Geometry g = to_geometry(s, dict);
    PolyFunction d = divergence(g.Q, g.f);
    return {d, d.is_zero()};
}

}  // namespace ulinf
