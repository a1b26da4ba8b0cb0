#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linear_algebra.hpp"
#include "recursion.hpp"

namespace vgw {

struct CorrelatorKey {
    int degree = 0;
    std::vector<int> insertions; // non-increasing

    CorrelatorKey() = default;
    CorrelatorKey(int d, std::vector<int> exps) : degree(d), insertions(std::move(exps))
    {
        std::sort(insertions.begin(), insertions.end(), std::greater<>());
    }

    auto operator<=>(const CorrelatorKey&) const = default;

    std::string to_string() const
    {
        std::string s = "v(";
        for (std::size_t i = 0; i < insertions.size(); ++i)
            s += (i ? "," : "") + std::to_string(insertions[i]);
        return s + ")_" + std::to_string(degree);
    }
};

enum class EntryStatus { Seeded, Reconstructed, Pending };

struct Normalized {
    enum class Kind { Zero, Classical, Seeded, Reduced };
    Kind kind = Kind::Zero;
    CorrelatorKey key;     // insertions with the O_e factors removed
    Rational multiplier = 0;
};

struct LinearForm {
    std::map<CorrelatorKey, Rational> coeffs;
    Rational constant = 0;
};

struct WdvvEquation {
    int a = 0, b = 0, c = 0, dbar = 0;
    std::vector<int> extras;
    int degree = 0;
    LinearForm form; // LHS - RHS
};

class CorrelatorStore {
public:
    // The table must contain the level-N virtual rows for every degree that will be queried.
    CorrelatorStore(HypersurfaceParams params, ConstantsTable table)
        : params_(params), table_(std::move(table))
    {
        params_.validate();
        if (table_.k() != params_.k)
            throw ValidationError("seed table was built for a different k");
    }

    const HypersurfaceParams& params() const { return params_; }
    const ConstantsTable& table() const { return table_; }
    int max_degree() const { return table_.max_degree(params_.N); }

    bool selection_rule(int d, const std::vector<int>& exps) const
    {
        long s = 0;
        for (int a : exps)
            s += a - 1;
        return s == static_cast<long>(params_.N - 5) + static_cast<long>(params_.c1()) * d;
    }

    Normalized normalize(int d, const std::vector<int>& exps) const
    {
        const int N = params_.N;
        Normalized out;
        for (int a : exps)
            if (a < 0 || a > N - 2)
                return out;
        if (d < 0 || !selection_rule(d, exps))
            return out;
        if (d == 0) {
            int s = 0;
            for (int a : exps)
                s += a;
            if (exps.size() == 3 && s == N - 2) {
                out.kind = Normalized::Kind::Classical;
                out.key = CorrelatorKey(0, exps);
                out.multiplier = 1;
            }
            return out;
        }
        std::vector<int> red;
        int ones = 0;
        for (int a : exps) {
            if (a == 0)
                return out;
            if (a == 1)
                ++ones;
            else
                red.push_back(a);
        }
        out.key = CorrelatorKey(d, red);
        if (red.size() <= 2) {
            out.kind = Normalized::Kind::Seeded;
            out.multiplier = power_of(d, ones - (3 - static_cast<int>(red.size())));
        } else {
            out.kind = Normalized::Kind::Reduced;
            out.multiplier = power_of(d, ones);
        }
        return out;
    }

    // k (L~_n - L~_{1+(k-N)d}), the value of v(O_{e^{N-2-n}} O_{e^{n-1-(k-N)d}} O_e)_d.
    Rational seed_value(int d, int n) const
    {
        const int N = params_.N;
        return params_.k * (table_.at(N, d, n) - table_.at(N, d, 1 - params_.c1() * d));
    }

    void seed(int d)
    {
        const int N = params_.N;
        for (int n = 1 - params_.c1() * d; n <= N - 2; ++n) {
            std::vector<int> three{N - 2 - n, n - 1 + params_.c1() * d, 1};
            if (three[1] < 0 || three[1] > N - 2)
                continue;
            Rational v = seed_value(d, n);
            record(CorrelatorKey(d, three), v, EntryStatus::Seeded);
            record(CorrelatorKey(d, {three[0], three[1]}), v / d, EntryStatus::Seeded);
        }
    }

    Rational value(int d, const std::vector<int>& exps) { return evaluate(normalize(d, exps)); }
    Rational value(const CorrelatorKey& key) { return value(key.degree, key.insertions); }

    Rational evaluate(const Normalized& nz)
    {
        switch (nz.kind) {
        case Normalized::Kind::Zero:
            return 0;
        case Normalized::Kind::Classical:
            return params_.k;
        case Normalized::Kind::Seeded: {
            int a = nz.key.insertions.empty() ? 1 : nz.key.insertions.back();
            return nz.multiplier * seed_value(nz.key.degree, params_.N - 2 - a);
        }
        case Normalized::Kind::Reduced:
            return nz.multiplier * reconstruct(nz.key);
        }
        return 0;
    }

    // Tier 1: the WDVV instance with corners (1, a_min - 1, a', a'') determines the
    // key up to a sibling whose minimal exponent is smaller.
    Rational reconstruct(const CorrelatorKey& key)
    {
        if (auto it = values_.find(key); it != values_.end())
            return it->second.value;
        check_reduced(key);
        if (in_progress_.count(key)) {
            for (const auto& [k2, v] : solve_class(key.degree, static_cast<int>(key.insertions.size())))
                if (!values_.count(k2))
                    record(k2, v, EntryStatus::Reconstructed);
            return values_.at(key).value;
        }
        in_progress_.insert(key);
        std::vector<int> asc(key.insertions.rbegin(), key.insertions.rend());
        const int amin = asc.front();
        const int c = asc.back();
        const int dbar = asc[asc.size() - 2];
        std::vector<int> extras(asc.begin() + 1, asc.end() - 2);
        auto eq = wdvv_equation(1, amin - 1, c, dbar, extras, key.degree,
                                [&](const CorrelatorKey& k2) { return k2 == key; });
        in_progress_.erase(key);
        if (auto it = values_.find(key); it != values_.end())
            return it->second.value;
        auto coeff = eq.form.coeffs.find(key);
        if (coeff == eq.form.coeffs.end() || coeff->second == 0 || eq.form.coeffs.size() != 1)
            throw ReconstructionError("WDVV instance does not pin " + key.to_string());
        Rational v = -eq.form.constant / coeff->second;
        record(key, v, EntryStatus::Reconstructed);
        return v;
    }

    // LHS - RHS of the associativity equation with corners (a, b | c, dbar). Keys
    // accepted by `unknown` stay symbolic; everything else is evaluated.
    WdvvEquation wdvv_equation(int a, int b, int c, int dbar, const std::vector<int>& extras, int d,
                               const std::function<bool(const CorrelatorKey&)>& unknown = {})
    {
        WdvvEquation eq{a, b, c, dbar, extras, d, {}};
        add_side(eq.form, a, b, c, dbar, extras, d, Rational(1), unknown);
        add_side(eq.form, a, c, b, dbar, extras, d, Rational(-1), unknown);
        for (auto it = eq.form.coeffs.begin(); it != eq.form.coeffs.end();)
            it = it->second == 0 ? eq.form.coeffs.erase(it) : std::next(it);
        return eq;
    }

    Rational wdvv_residual(int a, int b, int c, int dbar, const std::vector<int>& extras, int d)
    {
        return wdvv_equation(a, b, c, dbar, extras, d).form.constant;
    }

    // Tier 2: all reduced keys of degree d with npoints insertions, solved jointly from
    // every WDVV instance with npoints + 1 insertions.
    std::map<CorrelatorKey, Rational> solve_class(int d, int npoints)
    {
        const int N = params_.N;
        std::vector<CorrelatorKey> unknowns;
        for (const auto& exps : multisets(npoints, 2, N - 2))
            if (selection_rule(d, exps))
                unknowns.emplace_back(d, exps);
        std::map<CorrelatorKey, Rational> out;
        if (unknowns.empty())
            return out;
        std::map<CorrelatorKey, int> column;
        for (std::size_t i = 0; i < unknowns.size(); ++i)
            column[unknowns[i]] = static_cast<int>(i);
        auto is_unknown = [&](const CorrelatorKey& k2) { return column.count(k2) != 0; };

        Matrix rows;
        std::vector<Rational> rhs;
        const long target = static_cast<long>(N - 6) + static_cast<long>(params_.c1()) * d;
        for (const auto& s : multisets(npoints + 1, 1, N - 2)) {
            long sum = 0;
            for (int a : s)
                sum += a - 1;
            if (sum != target)
                continue;
            const int n = static_cast<int>(s.size());
            for (int p1 = 0; p1 < n; ++p1)
                for (int p2 = p1 + 1; p2 < n; ++p2)
                    for (int p3 = p2 + 1; p3 < n; ++p3)
                        for (int p4 = p3 + 1; p4 < n; ++p4) {
                            std::vector<int> extras;
                            for (int i = 0; i < n; ++i)
                                if (i != p1 && i != p2 && i != p3 && i != p4)
                                    extras.push_back(s[i]);
                            const int q[3][4] = {{p1, p2, p3, p4}, {p1, p3, p2, p4}, {p1, p4, p2, p3}};
                            for (const auto& o : q) {
                                auto eq = wdvv_equation(s[o[0]], s[o[1]], s[o[2]], s[o[3]], extras, d, is_unknown);
                                if (eq.form.coeffs.empty()) {
                                    if (eq.form.constant != 0)
                                        throw ReconstructionError("inconsistent WDVV system for degree "
                                                                  + std::to_string(d));
                                    continue;
                                }
                                std::vector<Rational> row(unknowns.size(), 0);
                                for (const auto& [k2, cf] : eq.form.coeffs)
                                    row[column.at(k2)] = cf;
                                rows.push_back(std::move(row));
                                rhs.push_back(-eq.form.constant);
                            }
                        }
        }
        auto res = eliminate(rows, rhs, static_cast<int>(unknowns.size()));
        if (!res.consistent)
            throw ReconstructionError("inconsistent WDVV system for degree " + std::to_string(d) + ", "
                                      + std::to_string(npoints) + " insertions");
        if (!res.free_columns.empty())
            throw ReconstructionError("WDVV system does not determine " + unknowns[res.free_columns.front()].to_string());
        for (std::size_t i = 0; i < unknowns.size(); ++i)
            out[unknowns[i]] = res.solution[i];
        return out;
    }

    struct Entry {
        Rational value;
        EntryStatus status;
    };

    const std::map<CorrelatorKey, Entry>& entries() const { return values_; }

    // Inserts a known value, e.g. from a cache file.
    void insert(const CorrelatorKey& key, const Rational& v, EntryStatus status)
    {
        for (int a : key.insertions)
            if (a < 0 || a > params_.N - 2)
                throw CacheError("exponent out of range in " + key.to_string());
        if (!selection_rule(key.degree, key.insertions))
            throw CacheError("selection rule violated by " + key.to_string());
        if (status == EntryStatus::Reconstructed)
            check_reduced(key);
        record(key, v, status);
    }

private:
    static Rational power_of(int d, int e)
    {
        Rational p = pow(Rational(d), static_cast<unsigned long>(e < 0 ? -e : e));
        return e < 0 ? Rational(1 / p) : p;
    }

    static void check_reduced(const CorrelatorKey& key)
    {
        for (int a : key.insertions)
            if (a < 2)
                throw ReconstructionError("key is not divisor-normalized: " + key.to_string());
    }

    void record(const CorrelatorKey& key, const Rational& v, EntryStatus status)
    {
        values_.insert_or_assign(key, Entry{v, status});
    }

    static std::vector<std::vector<int>> multisets(int size, int lo, int hi)
    {
        std::vector<std::vector<int>> out;
        std::vector<int> cur;
        auto rec = [&](auto&& self, int left, int max_v) -> void {
            if (left == 0) {
                out.push_back(cur);
                return;
            }
            for (int v = max_v; v >= lo; --v) {
                cur.push_back(v);
                self(self, left - 1, v);
                cur.pop_back();
            }
        };
        if (hi >= lo)
            rec(rec, size, hi);
        return out;
    }

    void add_term(LinearForm& form, const Rational& sign, int d1, const std::vector<int>& f1, int d2,
                  const std::vector<int>& f2, const std::function<bool(const CorrelatorKey&)>& unknown)
    {
        Normalized n1 = normalize(d1, f1);
        if (n1.kind == Normalized::Kind::Zero)
            return;
        Normalized n2 = normalize(d2, f2);
        if (n2.kind == Normalized::Kind::Zero)
            return;
        const bool u1 = unknown && n1.kind == Normalized::Kind::Reduced && unknown(n1.key);
        const bool u2 = unknown && n2.kind == Normalized::Kind::Reduced && unknown(n2.key);
        if (u1 && u2)
            throw ReconstructionError("WDVV term is quadratic in the unknowns");
        if (u1)
            form.coeffs[n1.key] += sign * n1.multiplier * evaluate(n2);
        else if (u2)
            form.coeffs[n2.key] += sign * n2.multiplier * evaluate(n1);
        else
            form.constant += sign * evaluate(n1) * evaluate(n2);
    }

    // sum_{d1} sum_{alpha subset extras} sum_i v(a b alpha e^i)_{d1} v(e^{N-2-i} beta c dbar)_{d-d1}
    void add_side(LinearForm& form, int a, int b, int c, int dbar, const std::vector<int>& extras, int d,
                  const Rational& sign, const std::function<bool(const CorrelatorKey&)>& unknown)
    {
        const int N = params_.N;
        const int m = static_cast<int>(extras.size());
        std::vector<int> f1, f2;
        for (int d1 = 0; d1 <= d; ++d1)
            for (unsigned mask = 0; mask < (1u << m); ++mask) {
                f1 = {a, b};
                f2.clear();
                long s = (a - 1) + (b - 1);
                for (int j = 0; j < m; ++j) {
                    if (mask >> j & 1u) {
                        f1.push_back(extras[j]);
                        s += extras[j] - 1;
                    } else {
                        f2.push_back(extras[j]);
                    }
                }
                // The selection rule fixes the internal index.
                const long i = static_cast<long>(N - 5) + static_cast<long>(params_.c1()) * d1 - s + 1;
                if (i < 0 || i > N - 2)
                    continue;
                f1.push_back(static_cast<int>(i));
                f2.push_back(N - 2 - static_cast<int>(i));
                f2.push_back(c);
                f2.push_back(dbar);
                add_term(form, sign, d1, f1, d - d1, f2, unknown);
            }
    }

    HypersurfaceParams params_;
    ConstantsTable table_;
    std::map<CorrelatorKey, Entry> values_;
    std::set<CorrelatorKey> in_progress_;
};

} // namespace vgw
