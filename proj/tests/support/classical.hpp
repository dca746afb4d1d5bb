#pragma once

#include "ulinf/structures.hpp"

namespace ulinf::testing {

inline void put_bracket(LieConstants& L, int a, int b, int c, const Scalar& v) {
    L.L[{a, b, c}] = v;
    L.L[{b, a, c}] = -v;
}

// basis h, e, f
inline LieConstants sl2() {
    LieConstants L;
    L.names = {"h", "e", "f"};
    put_bracket(L, 0, 1, 1, 2);
    put_bracket(L, 0, 2, 2, -2);
    put_bracket(L, 1, 2, 0, 1);
    return L;
}

inline LieConstants heisenberg() {
    LieConstants L;
    L.names = {"e1", "e2", "e3"};
    put_bracket(L, 0, 1, 2, 1);
    return L;
}

// [e1, e2] = e2
inline LieConstants affine_line() {
    LieConstants L;
    L.names = {"e1", "e2"};
    put_bracket(L, 0, 1, 1, 1);
    return L;
}

inline LieConstants abelian(int n) {
    LieConstants L;
    for (int i = 0; i < n; ++i) L.names.push_back("e" + std::to_string(i + 1));
    return L;
}

}  // namespace ulinf::testing
