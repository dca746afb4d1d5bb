#include "doctest.h"
#include "support/classical.hpp"
#include "support/oracles.hpp"
#include "support/random_structures.hpp"

using namespace ulinf;
using namespace ulinf::testing;

namespace {

bool all_vanish(const std::vector<Residual>& rs) {
    for (const auto& r : rs)
        if (!r.vanishes()) return false;
    return true;
}

ULinfStructure with_zero_q(const LinfStructure& s) { return ULinfStructure{s, {}}; }

// Relabel basis by a permutation; returns the structure on the permuted space.
ULinfStructure relabel(const ULinfStructure& s, const std::vector<int>& perm) {
    std::vector<BasisElement> b;
    for (int p : perm) b.push_back(s.space()[p]);
    ULinfStructure r = make_ulinf(GradedSpace(b));
    std::vector<int> inv(perm.size());
    for (size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = static_cast<int>(k);
    for (const auto& [n, m] : s.base.ell) {
        MultiMap x(r.shifted(), n, Target::Space, 1);
        for (const auto& [in, v] : m.table()) {
            std::vector<int> t;
            for (int i : in) t.push_back(inv[i]);
            for (const auto& [o, c] : v) x.add_term(t, inv[o], c);
        }
        set_ell(r.base, x);
    }
    for (const auto& [n, m] : s.q) {
        MultiMap x(r.shifted(), n, Target::Scalars, 0);
        for (const auto& [in, v] : m.table()) {
            std::vector<int> t;
            for (int i : in) t.push_back(inv[i]);
            x.add_term(t, kScalarSlot, v.at(kScalarSlot));
        }
        set_q(r, x);
    }
    return r;
}

}  // namespace

TEST_SUITE("structures") {

TEST_CASE("from_lie examples") {
    CHECK(all_vanish(ulinf_residuals(with_zero_q(from_lie(abelian(3))), 3)));
    CHECK(all_vanish(linf_residuals(from_lie(sl2()), 4)));
    CHECK(all_vanish(linf_residuals(from_lie(affine_line()), 4)));
    LieConstants bad = sl2();
    bad.L[{0, 1, 1}] = 3;  // breaks antisymmetry
    CHECK_THROWS_AS(from_lie(bad), ValidationError);
}

TEST_CASE("ulinf residuals of classical algebras") {
    CHECK(all_vanish(ulinf_residuals(with_zero_q(from_lie(heisenberg())), 4)));
    CHECK(all_vanish(ulinf_residuals(with_zero_q(from_lie(sl2())), 4)));
    auto r = ulinf_residuals(with_zero_q(from_lie(affine_line())), 3);
    REQUIRE_FALSE(r[0].vanishes());
    CHECK(r[1].vanishes());
    auto w = r[0].map.first_nonzero();
    REQUIRE(w);
    CHECK(w->in == std::vector<int>{0});
    // shifted convention: trace term carries (-1)^{|x|} = -1 on the odd generators
    CHECK(w->value == -1);
}

TEST_CASE("is_unimodular_lie") {
    CHECK(is_unimodular_lie(sl2()).unimodular);
    CHECK(is_unimodular_lie(abelian(2)).unimodular);
    auto v = is_unimodular_lie(affine_line());
    CHECK_FALSE(v.unimodular);
    CHECK(v.witness == 0);
    CHECK(v.trace == 1);
}

TEST_CASE("d squared nonzero is reported at arity 1") {
    ULinfStructure s = make_ulinf(GradedSpace({{"a", 0}, {"b", 1}, {"c", 2}}));
    MultiMap d(s.shifted(), 1, Target::Space, 1);
    d.add_term({0}, 1, 1);
    d.add_term({1}, 2, 1);
    set_ell(s.base, d);
    auto r = linf_residuals(s.base, 1);
    REQUIRE_FALSE(r[0].vanishes());
    CHECK(r[0].map.eval_basis({0}) == Vec{{2, 1}});
}

TEST_CASE("R3 of a strict bracket is the Jacobiator") {
    // [e1,e2]=e1, [e1,e3]=e3 violates Jacobi
    LieConstants L = abelian(3);
    put_bracket(L, 0, 1, 0, 1);
    put_bracket(L, 0, 2, 2, 1);
    auto r = linf_residuals(from_lie(L), 3);
    CHECK(r[0].vanishes());
    CHECK(r[1].vanishes());
    REQUIRE_FALSE(r[2].vanishes());

    Rng rng(17);
    for (int t = 0; t < 30; ++t) {
        LieConstants R = random_lie_bracket(rng, 3);
        auto jac = oracle::jacobiator(R);
        MultiMap r3 = linf_residuals(from_lie(R), 3)[2].map;
        // On odd generators R3(x_a,x_b,x_c) equals the Jacobiator; compare every ordered tuple.
        for (const auto& tup : all_tuples(r3.space(), 3)) {
            Vec got = r3.eval_basis(tup);
            for (int e = 0; e < 3; ++e) {
                auto it = jac.find({tup[0], tup[1], tup[2], e});
                Scalar want = it == jac.end() ? Scalar(0) : it->second;
                auto g = got.find(e);
                CHECK((g == got.end() ? Scalar(0) : g->second) == want);
            }
        }
    }
}

TEST_CASE("unshifted conversion round trip") {
    Rng rng(23);
    for (int t = 0; t < 30; ++t) {
        GradedSpace v = random_space(rng, 3);
        ULinfStructure s = random_ulinf(rng, v, 3, 0.5);
        for (const auto& [n, m] : s.base.ell) {
            auto back = shifted_from_unshifted(v, s.shifted(), n, Target::Space, unshifted_from_shifted(v, m));
            CHECK(back == m);
        }
        for (const auto& [n, m] : s.q) {
            auto back = shifted_from_unshifted(v, s.shifted(), n, Target::Scalars, unshifted_from_shifted(v, m));
            CHECK(back == m);
        }
    }
}

TEST_CASE("unshifted entries are graded antisymmetric") {
    // value on swapped tuple computed through the symmetric shifted map
    Rng rng(29);
    for (int t = 0; t < 20; ++t) {
        GradedSpace v = random_space(rng, 3);
        ULinfStructure s = random_ulinf(rng, v, 2, 0.7);
        auto it = s.base.ell.find(2);
        if (it == s.base.ell.end()) continue;
        for (const auto& tup : all_tuples(*s.shifted(), 2)) {
            std::vector<int> sw{tup[1], tup[0]};
            Vec a = it->second.eval_basis(tup), b = it->second.eval_basis(sw);
            Scalar sa = decalage_sign(v, tup), sb = decalage_sign(v, sw);
            int da = v.degree(tup[0]), db = v.degree(tup[1]);
            for (int o = 0; o < v.dim(); ++o) {
                Scalar ua = a.count(o) ? a[o] * sa : Scalar(0);
                Scalar ub = b.count(o) ? b[o] * sb : Scalar(0);
                CHECK(ub == -sign_pow(static_cast<long long>(parity(da)) * parity(db)) * ua);
            }
        }
    }
}

TEST_CASE("residuals are natural under basis relabeling") {
    Rng rng(31);
    for (int t = 0; t < 25; ++t) {
        GradedSpace v = random_space(rng, 3);
        ULinfStructure s = random_ulinf(rng, v, 3, 0.5);
        std::vector<int> perm{0, 1, 2};
        std::shuffle(perm.begin(), perm.end(), rng);
        ULinfStructure r = relabel(s, perm);
        auto a = ulinf_residuals(s, 3), b = ulinf_residuals(r, 3);
        auto la = linf_residuals(s.base, 4), lb = linf_residuals(r.base, 4);
        std::vector<int> inv(3);
        for (int k = 0; k < 3; ++k) inv[perm[k]] = k;
        for (size_t n = 0; n < a.size(); ++n)
            for (const auto& tup : all_tuples(*s.shifted(), static_cast<int>(n + 1))) {
                std::vector<int> t2;
                for (int i : tup) t2.push_back(inv[i]);
                CHECK(a[n].map.eval_basis(tup) == b[n].map.eval_basis(t2));
            }
        for (size_t n = 0; n < la.size(); ++n)
            for (const auto& tup : sorted_tuples(*s.shifted(), static_cast<int>(n + 1))) {
                std::vector<int> t2;
                for (int i : tup) t2.push_back(inv[i]);
                Vec x = la[n].map.eval_basis(tup), y = lb[n].map.eval_basis(t2), y2;
                for (const auto& [o, c] : x) y2[inv[o]] = c;
                CHECK(y == y2);
            }
    }
}

TEST_CASE("q-equation at arity n depends only on ell_{n+1} and lower q") {
    Rng rng(37);
    for (int t = 0; t < 15; ++t) {
        GradedSpace v = random_space(rng, 3);
        ULinfStructure s = random_ulinf(rng, v, 3, 0.6);
        auto base = ulinf_residuals(s, 2);
        ULinfStructure mod = s;
        // perturb ell_4 and q_3: arities 1 and 2 must be unchanged
        MultiMap l4 = random_map(rng, s.shifted(), 4, Target::Space, 1, 0.8);
        if (!l4.is_zero()) set_ell(mod.base, l4);
        MultiMap q3 = random_map(rng, s.shifted(), 3, Target::Scalars, 0, 0.8);
        if (!q3.is_zero()) set_q(mod, q3);
        auto after = ulinf_residuals(mod, 2);
        CHECK(base[0].map == after[0].map);
        CHECK(base[1].map == after[1].map);
    }
}

}
