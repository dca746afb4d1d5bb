#include "ulinf/linsolve.hpp"

#include <stdexcept>

namespace ulinf {

namespace {

mpz_class lcm_of_denominators(const std::vector<Scalar>& row, const Scalar& rhs) {
    mpz_class l = rhs.get_den();
    for (const auto& v : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    return l;
}

struct Echelon {
    std::vector<std::vector<mpz_class>> m;  // [A | b | I]
    std::vector<int> pivot_col;             // per pivot row
    int rank = 0;
};

// Bareiss forward elimination over the first `cols` columns.
Echelon eliminate(std::vector<std::vector<mpz_class>> m, int cols) {
    Echelon e;
    const int rows = static_cast<int>(m.size());
    const int width = rows ? static_cast<int>(m[0].size()) : 0;
    mpz_class prev = 1;
    int k = 0;
    for (int c = 0; c < cols && k < rows; ++c) {
        int p = k;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[k]);
        for (int i = k + 1; i < rows; ++i) {
            for (int j = c + 1; j < width; ++j) {
                mpz_class t = m[k][c] * m[i][j] - m[i][c] * m[k][j];
                if (!mpz_divisible_p(t.get_mpz_t(), prev.get_mpz_t()))
                    throw std::logic_error("Bareiss step not exact");
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = t;
            }
            m[i][c] = 0;
        }
        prev = m[k][c];
        e.pivot_col.push_back(c);
        ++k;
    }
    e.rank = k;
    e.m = std::move(m);
    return e;
}

}  // namespace

LinearSolution solve_exact(const Matrix& A, const std::vector<Scalar>& b, int cols) {
    const int rows = static_cast<int>(A.size());
    if (static_cast<int>(b.size()) != rows) throw ValidationError("right-hand side length differs from row count");
    std::vector<mpz_class> scale(rows);
    std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols + 1 + rows));
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(A[i].size()) != cols) throw ValidationError("matrix row has the wrong length");
        scale[i] = lcm_of_denominators(A[i], b[i]);
        for (int j = 0; j < cols; ++j) {
            Scalar v = A[i][j] * scale[i];
            m[i][j] = v.get_num();
        }
        Scalar v = b[i] * scale[i];
        m[i][cols] = v.get_num();
        m[i][cols + 1 + i] = 1;
    }
    Echelon e = eliminate(std::move(m), cols);

    LinearSolution out;
    out.rank = e.rank;
    for (int r = e.rank; r < rows; ++r) {
        if (e.m[r][cols] == 0) continue;
        out.certificate.assign(rows, 0);
        for (int i = 0; i < rows; ++i) out.certificate[i] = Scalar(e.m[r][cols + 1 + i] * scale[i]) / Scalar(e.m[r][cols]);
        for (auto& y : out.certificate) y.canonicalize();
        return out;
    }
    out.consistent = true;
    out.x.assign(cols, 0);
    for (int r = e.rank - 1; r >= 0; --r) {
        const int c = e.pivot_col[r];
        Scalar acc = Scalar(e.m[r][cols]);
        for (int j = c + 1; j < cols; ++j)
            if (e.m[r][j] != 0 && out.x[j] != 0) acc -= Scalar(e.m[r][j]) * out.x[j];
        out.x[c] = acc / Scalar(e.m[r][c]);
        out.x[c].canonicalize();
    }
    return out;
}

int rank_exact(const Matrix& A, int cols) {
    return solve_exact(A, std::vector<Scalar>(A.size(), 0), cols).rank;
}

}  // namespace ulinf
