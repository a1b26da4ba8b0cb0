#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include "linear_algebra.hpp"
#include "multi_poly.hpp"

namespace vgw {

// Integrand  prod_j A_j^2 / (A_j - w_j)  prod_i dt_i / t_i  with affine forms
// A_j = base_j + sum_i slope[j][i] t_i.  base_j is linear in the parameter
// variables and w_j = parameter variable pole_var[j].
struct ResidueIntegrand {
    int nvars = 0;
    std::vector<MultiPoly> base;
    std::vector<std::vector<Rational>> slope;
    std::vector<int> pole_var;

    int num_t() const { return static_cast<int>(base.size()); }
};

enum class ContourRule {
    // t_i runs around t_i = 0 and the pole A_i = w_i.
    OwnPole,
    // t_i runs around t_i = 0 only.
    OriginOnly,
};

namespace detail {

// Sum of local residues at the selected normal-crossing points, or nullopt if the
// point is not generic.
inline std::optional<Rational> residue_sum_at(const ResidueIntegrand& f, ContourRule rule,
                                              const std::vector<Rational>& point)
{
    const int m = f.num_t();
    std::vector<Rational> b(m), w(m);
    for (int j = 0; j < m; ++j) {
        b[j] = f.base[j].evaluate(point);
        w[j] = point.at(f.pole_var[j]);
    }
    const std::uint32_t nsub = rule == ContourRule::OwnPole ? (1u << m) : 1u;
    Rational total = 0;
    for (std::uint32_t s = 0; s < nsub; ++s) {
        Matrix jac(m, std::vector<Rational>(m, 0));
        std::vector<Rational> rhs(m, 0);
        for (int i = 0; i < m; ++i) {
            if (s >> i & 1u) {
                jac[i] = f.slope[i];
                rhs[i] = w[i] - b[i];
            } else {
                jac[i][i] = 1;
            }
        }
        Rational det = determinant(jac);
        if (det == 0)
            return std::nullopt;
        auto t = solve_square(jac, rhs);
        Rational h = 1;
        for (int j = 0; j < m; ++j) {
            Rational a = b[j];
            for (int i = 0; i < m; ++i)
                a += f.slope[j][i] * (*t)[i];
            h *= a * a;
            Rational den = (s >> j & 1u) ? (*t)[j] : a - w[j];
            if (den == 0)
                return std::nullopt;
            h /= den;
        }
        total += h / det;
    }
    return total;
}

inline std::vector<Exponents> monomials_of_degree(int nvars, int deg)
{
    std::vector<Exponents> out;
    Exponents e(nvars, 0);
    auto rec = [&](auto&& self, int var, int left) -> void {
        if (var == nvars - 1) {
            e[var] = left;
            out.push_back(e);
            return;
        }
        for (int a = left; a >= 0; --a) {
            e[var] = a;
            self(self, var + 1, left - a);
        }
    };
    if (nvars == 0)
        return deg == 0 ? std::vector<Exponents>{Exponents{}} : out;
    rec(rec, 0, deg);
    return out;
}

} // namespace detail

// Evaluates the iterated residue as a polynomial in the parameter variables. The
// result is known to be homogeneous of degree num_t() (the integrand is invariant
// under joint scaling with dt/t), so it is reconstructed by exact interpolation at
// deterministic rational points; extra points certify the fit.
inline MultiPoly iterated_residue(const ResidueIntegrand& f, ContourRule rule = ContourRule::OwnPole)
{
    const int m = f.num_t();
    if (static_cast<int>(f.slope.size()) != m || static_cast<int>(f.pole_var.size()) != m)
        throw ValidationError("malformed residue integrand");
    for (const auto& row : f.slope)
        if (static_cast<int>(row.size()) != m)
            throw ValidationError("malformed residue integrand");

    const auto monos = detail::monomials_of_degree(f.nvars, m);
    const int n = static_cast<int>(monos.size());
    const int extra = 5;
    std::mt19937 rng(20240607u);
    std::uniform_int_distribution<int> num_dist(-50, 50), den_dist(1, 7);

    Matrix rows;
    std::vector<Rational> rhs;
    int rejected = 0;
    auto add_point = [&] {
        std::vector<Rational> pt(f.nvars);
        for (auto& v : pt)
            v = make_rational(num_dist(rng), den_dist(rng));
        auto val = detail::residue_sum_at(f, rule, pt);
        if (!val) {
            if (++rejected > 1000)
                throw ResidueError("pole arrangement is not generic");
            return;
        }
        std::vector<Rational> row(n);
        for (int c = 0; c < n; ++c) {
            Rational p = 1;
            for (int i = 0; i < f.nvars; ++i)
                if (monos[c][i] != 0)
                    p *= pow(pt[i], monos[c][i]);
            row[c] = p;
        }
        rows.push_back(std::move(row));
        rhs.push_back(*val);
    };

    for (int target = n + extra;; target += 2 * extra) {
        if (target > 4 * n + 50)
            throw ResidueError("interpolation points stay degenerate");
        while (static_cast<int>(rows.size()) < target)
            add_point();
        auto res = eliminate(rows, rhs, n);
        if (!res.consistent)
            throw ResidueError("residue sum is not a polynomial of the expected degree");
        if (res.rank == n) {
            MultiPoly out(f.nvars);
            for (int c = 0; c < n; ++c)
                out.add_term(monos[c], res.solution[c]);
            return out;
        }
    }
}

} // namespace vgw
