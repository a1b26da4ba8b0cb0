#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "multi_poly.hpp"
#include "rational.hpp"
#include "residue.hpp"
#include "series.hpp"

namespace vgw {

inline constexpr int validated_max_degree = 5;

struct HypersurfaceParams {
    int N = 0;
    int k = 0;

    int c1() const { return N - k; }

    void validate() const
    {
        if (N < 4)
            throw ValidationError("N must be at least 4, got " + std::to_string(N));
        if (k < 2)
            throw ValidationError("k must be at least 2, got " + std::to_string(k));
    }
};

inline void check_degree(int d, bool allow_unvalidated)
{
    if (d < 1)
        throw ValidationError("degree must be positive, got " + std::to_string(d));
    if (d > validated_max_degree && !allow_unvalidated)
        throw ValidationError("degree " + std::to_string(d) + " is above the validated range (max "
                              + std::to_string(validated_max_degree) + "); pass the override to proceed");
}

struct IndexWindow {
    int lo = 0;
    int hi = -1;

    bool empty() const { return hi < lo; }
    bool contains(int n) const { return lo <= n && n <= hi; }
};

// Range of m for which a structure constant L_m^{N,k,d} may be nonzero.
inline IndexWindow structure_window(int N, int k, int d)
{
    const int c = N - k;
    return {std::max(0, 2 - c * d), std::min(N - 3, N - 1 - c * d)};
}

// Values of one (N, d) row on their finite support; zero elsewhere.
class ConstantsRow {
public:
    ConstantsRow() = default;
    ConstantsRow(int first, std::vector<Rational> values) : first_(first), values_(std::move(values)) { trim(); }

    Rational at(int n) const
    {
        const int i = n - first_;
        if (i < 0 || i >= static_cast<int>(values_.size()))
            return 0;
        return values_[i];
    }

    IndexWindow support() const { return {first_, first_ + static_cast<int>(values_.size()) - 1}; }
    bool is_zero() const { return values_.empty(); }

    friend bool operator==(const ConstantsRow& a, const ConstantsRow& b)
    {
        return a.values_ == b.values_ && (a.values_.empty() || a.first_ == b.first_);
    }

private:
    void trim()
    {
        std::size_t lead = 0;
        while (lead < values_.size() && values_[lead] == 0)
            ++lead;
        while (values_.size() > lead && values_.back() == 0)
            values_.pop_back();
        values_.erase(values_.begin(), values_.begin() + lead);
        first_ += static_cast<int>(lead);
        if (values_.empty())
            first_ = 0;
    }

    int first_ = 0;
    std::vector<Rational> values_;
};

enum class TableKind { Virtual, True };

inline std::string to_string(TableKind kind) { return kind == TableKind::Virtual ? "virtual" : "true"; }

class ConstantsTable {
public:
    ConstantsTable(TableKind kind, int k) : kind_(kind), k_(k) {}

    TableKind kind() const { return kind_; }
    int k() const { return k_; }
    void set_kind(TableKind kind) { kind_ = kind; }

    bool has(int N, int d) const { return rows_.count({N, d}) != 0; }

    const ConstantsRow& row(int N, int d) const
    {
        auto it = rows_.find({N, d});
        if (it == rows_.end())
            throw WindowError("no " + to_string(kind_) + " constants computed for (N=" + std::to_string(N)
                              + ", k=" + std::to_string(k_) + ", d=" + std::to_string(d) + ")");
        return it->second;
    }

    Rational at(int N, int d, int n) const
    {
        auto it = rows_.find({N, d});
        if (it == rows_.end())
            throw WindowError("no " + to_string(kind_) + " constants computed for (N=" + std::to_string(N)
                              + ", k=" + std::to_string(k_) + ", d=" + std::to_string(d) + ", n=" + std::to_string(n)
                              + ")");
        return it->second.at(n);
    }

    void set_row(int N, int d, ConstantsRow r) { rows_[{N, d}] = std::move(r); }

    int max_degree(int N) const
    {
        int d = 0;
        while (has(N, d + 1))
            ++d;
        return d;
    }

    const std::map<std::pair<int, int>, ConstantsRow>& rows() const { return rows_; }

private:
    TableKind kind_;
    int k_;
    std::map<std::pair<int, int>, ConstantsRow> rows_;
};

// Coefficients of k * prod_{j=1}^{k-1} (j w + (k - j)), lowest power first.
inline std::vector<Rational> beauville_init(int k)
{
    if (k < 2)
        throw ValidationError("k must be at least 2");
    std::vector<Rational> p{Rational(k)};
    for (int j = 1; j < k; ++j) {
        std::vector<Rational> q(p.size() + 1, 0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i] += p[i] * (k - j);
            q[i + 1] += p[i] * j;
        }
        p = std::move(q);
    }
    return p;
}

// Variables of Poly_d: x = 0, y = 1, z_j = 1 + j.
inline ResidueIntegrand trial_integrand(int d)
{
    const int m = d - 1;
    ResidueIntegrand f;
    f.nvars = d + 1;
    for (int j = 1; j <= m; ++j) {
        MultiPoly b = MultiPoly::variable(f.nvars, 0) * make_rational(d - j, d)
                      + MultiPoly::variable(f.nvars, 1) * make_rational(j, d);
        f.base.push_back(b);
        std::vector<Rational> row;
        for (int i = 1; i <= m; ++i)
            row.push_back(i <= j ? make_rational(d - j, d - i) : make_rational(j, i));
        f.slope.push_back(row);
        f.pole_var.push_back(1 + j);
    }
    return f;
}

inline const MultiPoly& poly_d(int d, bool allow_unvalidated = false)
{
    check_degree(d, allow_unvalidated);
    static std::mutex mu;
    static std::map<int, MultiPoly> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(d);
    if (it != memo.end())
        return it->second;
    MultiPoly p = d == 1 ? MultiPoly(2, 1) : iterated_residue(trial_integrand(d));
    return memo.emplace(d, std::move(p)).first->second;
}

inline std::vector<std::string> poly_d_variable_names(int d)
{
    std::vector<std::string> names{"x", "y"};
    for (int j = 1; j < d; ++j)
        names.push_back("z" + std::to_string(j));
    return names;
}

// A monomial x^a z_{i_1}^{e_1} ... z_{i_m}^{e_m} y^b of Poly_d read as an ordered
// partition 0 = i_0 < i_1 < ... < i_m < i_{m+1} = d.
struct OrderedPartitionMonomial {
    int d = 1;
    std::vector<int> splits;   // i_0 .. i_{m+1}
    std::vector<int> exponents; // exponent at each split point; first is x, last is y

    int m() const { return static_cast<int>(splits.size()) - 2; }

    static OrderedPartitionMonomial from_exponents(int d, const Exponents& e)
    {
        if (static_cast<int>(e.size()) != d + 1)
            throw ValidationError("monomial does not live in the variables of Poly_d");
        OrderedPartitionMonomial mon;
        mon.d = d;
        mon.splits.push_back(0);
        mon.exponents.push_back(e[0]);
        for (int j = 1; j < d; ++j)
            if (e[1 + j] > 0) {
                mon.splits.push_back(j);
                mon.exponents.push_back(e[1 + j]);
            }
        mon.splits.push_back(d);
        mon.exponents.push_back(e[1]);
        if (MultiPoly::total_degree(e) != d - 1)
            throw ValidationError("monomial degree must be d-1");
        return mon;
    }

    // Degree carried by factor c = 1..m+1.
    int part(int c) const { return splits[c] - splits[c - 1]; }
};

inline std::vector<int> delta_vector(const OrderedPartitionMonomial& mon, int N, int k)
{
    const int m = mon.m();
    std::vector<int> delta(m + 1);
    for (int c = 1; c <= m + 1; ++c) {
        int v = m + 1 - mon.d;
        if (c >= 2) {
            const int i = mon.splits[c - 1];
            v += i - (c - 1) + i * (N - k);
        }
        for (int j = c; j <= m; ++j)
            v += mon.exponents[j] - 1;
        v += mon.exponents[m + 1];
        delta[c - 1] = v;
    }
    return delta;
}

// prod_c L^{N+1,k,part_c}_{n+delta_c}
inline Rational phi(const OrderedPartitionMonomial& mon, int n, int N, int k, const ConstantsTable& table)
{
    const auto delta = delta_vector(mon, N, k);
    Rational p = 1;
    for (int c = 1; c <= mon.m() + 1; ++c) {
        p *= table.at(N + 1, mon.part(c), n + delta[c - 1]);
        if (p == 0)
            break;
    }
    return p;
}

namespace detail {

struct PhiTerm {
    Rational coeff;
    std::vector<std::pair<int, int>> factors; // (degree, delta)
};

inline std::vector<PhiTerm> compile_phi(int d, int N, int k, bool allow_unvalidated)
{
    std::vector<PhiTerm> out;
    for (const auto& [e, c] : poly_d(d, allow_unvalidated).terms()) {
        PhiTerm t;
        t.coeff = c;
        if (d == 1) {
            t.factors.push_back({1, 0});
        } else {
            auto mon = OrderedPartitionMonomial::from_exponents(d, e);
            auto delta = delta_vector(mon, N, k);
            for (int i = 1; i <= mon.m() + 1; ++i)
                t.factors.push_back({mon.part(i), delta[i - 1]});
        }
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace detail

// One descent step: the level-N rows for degrees 1..d_max from the level-(N+1) rows.
inline void descend_level(ConstantsTable& table, int N, int d_max, bool allow_unvalidated = false)
{
    const int k = table.k();
    for (int d = 1; d <= d_max; ++d) {
        const auto terms = detail::compile_phi(d, N, k, allow_unvalidated);
        bool any = false;
        int lo = 0, hi = -1;
        for (const auto& t : terms) {
            int tlo = -1 << 29, thi = 1 << 29;
            for (auto [deg, delta] : t.factors) {
                auto s = table.row(N + 1, deg).support();
                tlo = std::max(tlo, s.lo - delta);
                thi = std::min(thi, s.hi - delta);
            }
            if (tlo > thi)
                continue;
            lo = any ? std::min(lo, tlo) : tlo;
            hi = any ? std::max(hi, thi) : thi;
            any = true;
        }
        std::vector<Rational> vals;
        for (int n = lo; any && n <= hi; ++n) {
            Rational s = 0;
            for (const auto& t : terms) {
                Rational p = t.coeff;
                for (auto [deg, delta] : t.factors) {
                    p *= table.at(N + 1, deg, n + delta);
                    if (p == 0)
                        break;
                }
                s += p;
            }
            vals.push_back(s);
        }
        table.set_row(N, d, ConstantsRow(lo, std::move(vals)));
    }
}

inline ConstantsTable virtual_constants(int N, int k, int d_max, bool allow_unvalidated = false)
{
    HypersurfaceParams{N, k}.validate();
    check_degree(d_max, allow_unvalidated);
    const int N0 = std::max(N, 2 * k);
    ConstantsTable table(TableKind::Virtual, k);
    table.set_row(N0, 1, ConstantsRow(0, beauville_init(k)));
    for (int d = 2; d <= d_max; ++d)
        table.set_row(N0, d, ConstantsRow());
    for (int level = N0 - 1; level >= N; --level)
        descend_level(table, level, d_max, allow_unvalidated);
    return table;
}

inline ConstantsTable true_constants_near_fano(int N, int k, int d_max, bool allow_unvalidated = false)
{
    HypersurfaceParams{N, k}.validate();
    if (N - k < 1)
        throw ValidationError("near-Fano constants need N-k >= 1");
    ConstantsTable table = virtual_constants(N, k, d_max, allow_unvalidated);
    table.set_kind(TableKind::True);
    if (N - k == 1) {
        // Only the d=1 part of the last descent step changes.
        const auto w = structure_window(N, k, 1);
        const Rational kfact(factorial(k));
        std::vector<Rational> vals;
        for (int m = w.lo; m <= w.hi; ++m)
            vals.push_back(table.at(N + 1, 1, m) - kfact);
        table.set_row(N, 1, ConstantsRow(w.lo, std::move(vals)));
    }
    return table;
}

// (L~_0^{k,k,d}, L~_1^{k,k,d}) from the hypergeometric series.
inline std::pair<Rational, Rational> cy_hypergeom_oracle(int k, int d)
{
    if (k < 3)
        throw ValidationError("k must be at least 3");
    if (d < 1)
        throw ValidationError("degree must be positive");
    TruncatedSeries<Rational> a(d, Rational(0)), ab(d, Rational(0));
    Rational b = 0;
    for (int j = 0; j <= d; ++j) {
        if (j >= 1)
            for (int m = 1; m < k; ++m)
                b += make_rational(m, static_cast<long>(j) * (k * j - m));
        Rational aj(factorial(static_cast<unsigned long>(k) * j));
        aj /= pow(Rational(factorial(j)), k);
        a[j] = aj;
        ab[j] = aj * b;
    }
    auto ratio = ab * series_invert(a, d);
    return {a[d], d * ratio[d]};
}

struct RelationReport {
    bool ok = true;
    int row = -1;
    int col = -1;
    int q_power = -1;
    Rational value;
    std::string message;
};

// Checks (O_e)^{N-1} = k^k q (O_e)^{k-1} up to q^{d_max} with O_e acting on e^0..e^{N-2};
// for N-k = 1 the class O_e + k! q is used.
inline RelationReport quantum_relation_check(const ConstantsTable& table, int N, int d_max)
{
    const int k = table.k();
    if (N - k < 1)
        throw ValidationError("relation check needs N-k >= 1");
    const int dim = N - 1;
    using QPoly = std::vector<Rational>;
    using QMatrix = std::vector<std::vector<QPoly>>;
    auto zero = [&] { return QMatrix(dim, std::vector<QPoly>(dim, QPoly(d_max + 1, 0))); };
    auto mul = [&](const QMatrix& a, const QMatrix& b) {
        QMatrix r = zero();
        for (int i = 0; i < dim; ++i)
            for (int l = 0; l < dim; ++l)
                for (int p = 0; p <= d_max; ++p) {
                    if (a[i][l][p] == 0)
                        continue;
                    for (int j = 0; j < dim; ++j)
                        for (int q = 0; p + q <= d_max; ++q)
                            if (b[l][j][q] != 0)
                                r[i][j][p + q] += a[i][l][p] * b[l][j][q];
                }
        return r;
    };
    auto power = [&](const QMatrix& a, int e) {
        QMatrix r = zero();
        for (int i = 0; i < dim; ++i)
            r[i][i][0] = 1;
        for (int i = 0; i < e; ++i)
            r = mul(r, a);
        return r;
    };

    QMatrix m = zero();
    for (int mm = 0; mm <= N - 2; ++mm) {
        const int src = N - 2 - mm;
        if (N - 1 - mm <= N - 2)
            m[N - 1 - mm][src][0] += 1;
        for (int d = 1; d <= d_max; ++d) {
            const int dst = N - 1 - mm + (k - N) * d;
            if (dst >= 0 && dst <= N - 2)
                m[dst][src][d] += table.at(N, d, mm);
        }
    }
    if (N - k == 1)
        for (int i = 0; i < dim; ++i)
            m[i][i][1] += Rational(factorial(k));

    QMatrix lhs = power(m, N - 1);
    QMatrix rhs = power(m, k - 1);
    const Rational kk = pow(Rational(k), k);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int p = 0; p <= d_max; ++p) {
                Rational v = lhs[i][j][p] - (p >= 1 ? kk * rhs[i][j][p - 1] : Rational(0));
                if (v != 0)
                    return {false, i, j, p, v,
                            "relation fails at entry (" + std::to_string(i) + "," + std::to_string(j)
                                + ") in q^" + std::to_string(p)};
            }
    return {};
}

inline std::vector<Rational> mirror_map_series(const ConstantsTable& table, int d_max)
{
    const int k = table.k();
    std::vector<Rational> out;
    for (int d = 1; d <= d_max; ++d)
        out.push_back(table.at(k, d, 1) / d);
    return out;
}

} // namespace vgw
