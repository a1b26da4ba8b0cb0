#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "closed_forms.hpp"
#include "mirror.hpp"
#include "recursion.hpp"

namespace vgw::verify {

struct Check {
    std::string label;
    bool pass = false;
    std::string expected;
    std::string actual;
};

struct SuiteReport {
    std::string name;
    std::vector<Check> checks;
    double seconds = 0;

    bool pass() const
    {
        for (const auto& c : checks)
            if (!c.pass)
                return false;
        return !checks.empty();
    }

    std::size_t failures() const
    {
        std::size_t n = 0;
        for (const auto& c : checks)
            n += !c.pass;
        return n;
    }

    void expect_eq(std::string label, const Rational& expected, const Rational& actual)
    {
        checks.push_back({std::move(label), expected == actual, to_plain(expected), to_plain(actual)});
    }

    void expect(std::string label, bool ok, std::string expected = "true", std::string actual = "")
    {
        checks.push_back({std::move(label), ok, std::move(expected), actual.empty() ? (ok ? "true" : "false") : actual});
    }
};

namespace detail {

template <class F>
SuiteReport timed(std::string name, F&& body)
{
    SuiteReport r;
    r.name = std::move(name);
    auto t0 = std::chrono::steady_clock::now();
    body(r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline std::string tag(int N, int k, int d, int n)
{
    return "N=" + std::to_string(N) + " k=" + std::to_string(k) + " d=" + std::to_string(d) + " n=" + std::to_string(n);
}

inline std::string sigma_str(const Partition& s)
{
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i]);
    return out + ")";
}

} // namespace detail

inline const Rational& quartic_anchor_value()
{
    static const Rational v = parse_rational("1324882975682876246483412831870565329165165953902032");
    return v;
}

inline const Rational& quintic_anchor_value()
{
    static const Rational v = parse_rational(
        "100355724573836807695163109854598526931747042477505803923089934593470758513921/180000");
    return v;
}

inline SuiteReport quartic_anchor()
{
    return detail::timed("quartic-anchor", [](SuiteReport& r) {
        CorrelatorStore store({11, 12}, virtual_constants(11, 12, 4));
        r.expect_eq("L_7^{11,12,4}", quartic_anchor_value(), generalized_transform(store, 7, 4));
    });
}

inline SuiteReport quintic_anchor()
{
    return detail::timed("quintic-anchor", [](SuiteReport& r) {
        CorrelatorStore store({12, 13}, virtual_constants(12, 13, 5));
        r.expect_eq("L_8^{12,13,5}", quintic_anchor_value(), generalized_transform(store, 8, 5));
    });
}

inline SuiteReport anchors()
{
    auto a = quartic_anchor();
    auto b = quintic_anchor();
    a.name = "anchors";
    a.checks.insert(a.checks.end(), b.checks.begin(), b.checks.end());
    a.seconds += b.seconds;
    return a;
}

// L~_0 and L~_1 at N = k against the hypergeometric series.
inline SuiteReport po(int k, int d_max)
{
    return detail::timed("po", [&](SuiteReport& r) {
        auto t = virtual_constants(k, k, d_max);
        for (int d = 1; d <= d_max; ++d) {
            auto [l0, l1] = cy_hypergeom_oracle(k, d);
            r.expect_eq("L~_0^{" + std::to_string(k) + "," + std::to_string(k) + "," + std::to_string(d) + "}", l0,
                        t.at(k, d, 0));
            r.expect_eq("L~_1^{" + std::to_string(k) + "," + std::to_string(k) + "," + std::to_string(d) + "}", l1,
                        t.at(k, d, 1));
        }
    });
}

inline SuiteReport relations(int N, int k, int d_max)
{
    return detail::timed("relations", [&](SuiteReport& r) {
        auto t = true_constants_near_fano(N, k, d_max);
        auto rep = quantum_relation_check(t, N, d_max);
        r.expect("ring relation N=" + std::to_string(N) + " k=" + std::to_string(k) + " dmax=" + std::to_string(d_max),
                 rep.ok, "0", rep.ok ? "0" : rep.message + ": " + to_plain(rep.value));
    });
}

inline std::vector<std::pair<int, Partition>> cases_up_to(int d_max)
{
    std::vector<std::pair<int, Partition>> out;
    for (int d = 1; d <= d_max; ++d)
        for (int m = 0; m < d; ++m)
            for (const auto& s : partitions(m))
                out.push_back({d, s});
    return out;
}

// WDVV values of V for d <= 3 against the closed forms, on the full window.
inline SuiteReport cubic_forms(int N, int k)
{
    return detail::timed("cubic-forms", [&](SuiteReport& r) {
        CorrelatorStore store({N, k}, virtual_constants(N, k, 3));
        const int e = k - N;
        for (const auto& [d, s] : cases_up_to(3))
            for (int n = 1 + e * d; n <= N - 2; ++n)
                r.expect_eq("V " + detail::tag(N, k, d, n) + " sigma=" + detail::sigma_str(s),
                            closed_form::v_cubic(store.table(), N, n, d, s), V(store, n, d, s));
    });
}

inline SuiteReport quartic_forms(int k)
{
    return detail::timed("quartic-forms", [&](SuiteReport& r) {
        const int N = k - 1;
        CorrelatorStore store({N, k}, virtual_constants(N, k, 4));
        bool any = false;
        for (int m = 0; m < 4; ++m)
            for (const auto& s : partitions(m))
                for (int n = 5; n <= N - 2; ++n) {
                    any = true;
                    r.expect_eq("V " + detail::tag(N, k, 4, n) + " sigma=" + detail::sigma_str(s),
                                closed_form::v_quartic(store.table(), n, s), V(store, n, 4, s));
                }
        if (!any)
            r.expect("k=" + std::to_string(k) + ": window [5, N-2] is empty, nothing to compare", true);
    });
}

// Flat-metric zeros, symmetry and specialization of V on random admissible cases.
inline SuiteReport v_invariants(unsigned seed, int samples)
{
    return detail::timed("v-invariants", [&](SuiteReport& r) {
        std::mt19937 rng(seed);
        std::map<std::pair<int, int>, std::unique_ptr<CorrelatorStore>> stores;
        auto store_for = [&](int N, int k) -> CorrelatorStore& {
            auto& s = stores[{N, k}];
            if (!s)
                s = std::make_unique<CorrelatorStore>(HypersurfaceParams{N, k}, virtual_constants(N, k, 4));
            return *s;
        };
        for (int i = 0; i < samples; ++i) {
            const int e = std::uniform_int_distribution<int>(1, 2)(rng);
            const int k = std::uniform_int_distribution<int>(e + 4, 9)(rng);
            const int N = k - e;
            const int d = std::uniform_int_distribution<int>(1, 4)(rng);
            const int m = std::uniform_int_distribution<int>(0, d - 1)(rng);
            const auto parts = partitions(m);
            const Partition s = parts[std::uniform_int_distribution<std::size_t>(0, parts.size() - 1)(rng)];
            auto& store = store_for(N, k);
            const std::string where = "N=" + std::to_string(N) + " k=" + std::to_string(k) + " d="
                                      + std::to_string(d) + " sigma=" + detail::sigma_str(s);
            r.expect_eq("flat zero at 1+(k-N)d, " + where, 0, V(store, 1 + e * d, d, s));
            r.expect_eq("flat zero at N-2, " + where, 0, V(store, N - 2, d, s));
            for (int n = 1 + e * d; n <= N - 2; ++n)
                r.expect_eq("symmetry n=" + std::to_string(n) + ", " + where, V(store, n, d, s),
                            V(store, N - 1 + e * d - n, d, s));
            for (int f = 1; f <= 2; ++f) {
                const int n = 2 + e * (d + f);
                Partition sf = s;
                sf.push_back(f);
                std::sort(sf.begin(), sf.end(), std::greater<>());
                r.expect_eq("specialization f=" + std::to_string(f) + ", " + where, V(store, n, d, s),
                            V(store, n, d + f, sf));
            }
        }
    });
}

inline SuiteReport cy_collapse(int k, int d_max)
{
    return detail::timed("cy-collapse", [&](SuiteReport& r) {
        CorrelatorStore store({k, k}, virtual_constants(k, k, d_max));
        for (int d = 1; d <= d_max; ++d)
            for (int n = 2; n <= k - 3; ++n)
                r.expect_eq("L " + detail::tag(k, k, d, n), cy_transform(store.table(), n, d),
                            generalized_transform(store, n, d));
    });
}

inline SuiteReport hi_vanishing(int k)
{
    return detail::timed("hi", [&](SuiteReport& r) {
        auto t = virtual_constants(k - 1, k, 1);
        for (int j = 1; j <= 4; ++j)
            for (int n : {6, 7})
                r.expect_eq("hi_" + std::to_string(j) + "(" + std::to_string(n) + ") k=" + std::to_string(k), 0,
                            hi_poly(j, n, t));
    });
}

// pi_1 of the quartic hi term for sigma = (1)+(1) must not vanish at n = 7.
inline SuiteReport hi_nonvanishing(int k)
{
    return detail::timed("hi-nonvanishing", [&](SuiteReport& r) {
        auto t = virtual_constants(k - 1, k, 1);
        Rational v = closed_form::pi1_hi2_quartic(t, 7);
        r.expect("pi_1(hi_2^{k-1,k,4}(7;(1,1))) != 0 for k=" + std::to_string(k), v != 0, "nonzero", to_plain(v));
    });
}

// Insertion symmetry and integrality of k L_n^{k-1,k,d}.
inline SuiteReport true_symmetry(int k, int d)
{
    return detail::timed("symmetry", [&](SuiteReport& r) {
        const int N = k - 1, e = 1;
        CorrelatorStore store({N, k}, virtual_constants(N, k, d));
        const auto w = structure_window(N, k, d);
        std::map<int, Rational> vals;
        for (int n = w.lo; n <= w.hi; ++n)
            vals[n] = generalized_transform(store, n, d);
        for (const auto& [n, v] : vals) {
            r.expect_eq("symmetry " + detail::tag(N, k, d, n), v, vals.at(N - 1 + e * d - n));
            Rational kv = k * v;
            r.expect("integrality of k*L " + detail::tag(N, k, d, n), is_integer(kv), "integer", to_plain(kv));
        }
        if (vals.empty())
            r.expect("k=" + std::to_string(k) + ": structure window is empty", true);
    });
}

} // namespace vgw::verify
