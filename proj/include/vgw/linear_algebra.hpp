#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace vgw {

using Matrix = std::vector<std::vector<Rational>>;

inline Rational determinant(Matrix a)
{
    const int n = static_cast<int>(a.size());
    Rational det = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a[p][c] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (a[r][c] == 0)
                continue;
            Rational f = a[r][c] / a[c][c];
            for (int j = c; j < n; ++j)
                a[r][j] -= f * a[c][j];
        }
    }
    return det;
}

struct EliminationResult {
    int rank = 0;
    bool consistent = true;
    // Value per column; empty when the system is inconsistent or rank deficient.
    std::vector<Rational> solution;
    // Columns without a pivot.
    std::vector<int> free_columns;
};

// Gauss-Jordan elimination on the augmented system rows * x = rhs.
inline EliminationResult eliminate(Matrix rows, std::vector<Rational> rhs, int ncols)
{
    EliminationResult res;
    const int nrows = static_cast<int>(rows.size());
    std::vector<int> pivot_col;
    int r = 0;
    int c = 0;
    for (; c < ncols && r < nrows; ++c) {
        int p = r;
        while (p < nrows && rows[p][c] == 0)
            ++p;
        if (p == nrows) {
            res.free_columns.push_back(c);
            continue;
        }
        std::swap(rows[p], rows[r]);
        std::swap(rhs[p], rhs[r]);
        Rational inv = Rational(1) / rows[r][c];
        for (int j = c; j < ncols; ++j)
            rows[r][j] *= inv;
        rhs[r] *= inv;
        for (int i = 0; i < nrows; ++i) {
            if (i == r || rows[i][c] == 0)
                continue;
            Rational f = rows[i][c];
            for (int j = c; j < ncols; ++j)
                rows[i][j] -= f * rows[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (; c < ncols; ++c)
        res.free_columns.push_back(c);
    res.rank = r;
    for (int i = r; i < nrows; ++i)
        if (rhs[i] != 0)
            res.consistent = false;
    if (res.consistent && r == ncols) {
        res.solution.assign(ncols, 0);
        for (int i = 0; i < r; ++i)
            res.solution[pivot_col[i]] = rhs[i];
    }
    return res;
}

inline std::optional<std::vector<Rational>> solve_square(const Matrix& a, const std::vector<Rational>& b)
{
    auto res = eliminate(a, b, static_cast<int>(b.size()));
    if (res.rank != static_cast<int>(b.size()))
        return std::nullopt;
    return res.solution;
}

} // namespace vgw
