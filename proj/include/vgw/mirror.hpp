#pragma once

#include <functional>
#include <string>
#include <vector>

#include "correlator.hpp"
#include "partitions.hpp"
#include "recursion.hpp"
#include "series.hpp"

namespace vgw {

using IndexFunction = std::function<Rational(int)>;

// (1/k) v(O_{e^{N-2-n}} O_{e^{n-1-(k-N)d}} prod_i O_{e^{1+(k-N)d_i}})_{d-m} / (d-m)^{l-1}
inline Rational V(CorrelatorStore& store, int n, int d, const Partition& sigma)
{
    const int N = store.params().N, k = store.params().k, e = k - N;
    const int m = partition_size(sigma);
    if (d <= m)
        throw ValidationError("V needs d > |sigma|");
    std::vector<int> exps{N - 2 - n, n - 1 - e * d};
    for (int part : sigma)
        exps.push_back(1 + e * part);
    Rational v = store.value(d - m, exps) / k;
    const int l = static_cast<int>(sigma.size());
    if (l == 0)
        return v * (d - m);
    return v / pow(Rational(d - m), l - 1);
}

inline IndexFunction pi_f(IndexFunction g, int f, int d, int N, int k)
{
    const int e = k - N;
    return [g = std::move(g), f, d, e](int n) {
        Rational s = 0;
        for (int j = 0; j <= e * f; ++j)
            s += g(n - j) - g(1 + e * (d + f) - j);
        return s;
    };
}

// Coefficients of prod_j (1 - x^{d_j (k-N) + 1}) / (1 - x).
inline std::vector<Rational> a_coeffs(const Partition& sigma, int N, int k)
{
    const int e = k - N;
    if (e < 0)
        throw ValidationError("a_coeffs needs k >= N");
    std::vector<Rational> a{Rational(1)};
    for (int part : sigma) {
        const int len = part * e + 1;
        std::vector<Rational> b(a.size() + len - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (int j = 0; j < len; ++j)
                b[i + j] += a[i];
        a = std::move(b);
    }
    return a;
}

inline Rational linear_part(const ConstantsTable& table, int N, int n, int d, const Partition& sigma)
{
    const int k = table.k(), e = k - N;
    const int m = partition_size(sigma);
    const auto a = a_coeffs(sigma, N, k);
    Rational s = 0;
    for (int j = 0; j < static_cast<int>(a.size()); ++j)
        s += a[j] * (table.at(N, d - m, n - j) - table.at(N, d - m, 1 + e * d - j));
    return s;
}

namespace detail {

// hi_j(n) = f_j(n) - f_j(6) with f_j a quadratic form in the degree-1 constants.
struct ScaledSum {
    int sign;
    int index;               // sign * L_index * sum_o L_{n-o}
    std::vector<int> offsets;
};

struct QuadraticShape {
    std::vector<std::pair<int, int>> products; // L_{n-a} L_{n-b}
    std::vector<ScaledSum> scaled;
};

inline const QuadraticShape& hi_shape(int j)
{
    static const QuadraticShape shapes[4] = {
        {{{0, 4}}, {{-1, 3, {0, 1, 2, 3, 4}}, {1, 2, {1, 2, 3}}}},
        {{{0, 3}, {1, 4}}, {{-1, 4, {0, 1, 2, 3, 4}}, {1, 2, {2}}}},
        {{{0, 2}, {1, 3}, {2, 4}}, {{-1, 5, {0, 1, 2, 3, 4}}, {-1, 2, {2}}}},
        {{{1, 3}}, {{-1, 4, {1, 2, 3}}, {1, 3, {2}}}},
    };
    if (j < 1 || j > 4)
        throw ValidationError("hi index must be 1..4");
    return shapes[j - 1];
}

} // namespace detail

// Uses the degree-1 constants L~^{k-1,k,1}.
inline Rational hi_poly(int j, int n, const ConstantsTable& table)
{
    const int N = table.k() - 1;
    auto L = [&](int i) -> Rational { return table.at(N, 1, i); };
    const auto& shape = detail::hi_shape(j);
    auto f = [&](int x) -> Rational {
        Rational s = 0;
        for (auto [a, b] : shape.products)
            s += L(x - a) * L(x - b);
        for (const auto& term : shape.scaled) {
            Rational t = 0;
            for (int o : term.offsets)
                t += L(x - o);
            s += term.sign * L(term.index) * t;
        }
        return s;
    };
    return f(n) - f(6);
}

// The block multiplying 1/2 (resp. 3/4, 4/5) in the d=4 formula for sigma = (1)+(1), with
// every V_1 written as its linear form.
inline Rational quartic_bracket(const ConstantsTable& table, int n)
{
    const int N = table.k() - 1;
    auto L = [&](int i) -> Rational { return table.at(N, 1, i); };
    auto V11 = [&](int x) -> Rational { return linear_part(table, N, x, 2, {1}); };
    return V11(n) * (L(n - 3) - L(2)) + (L(n) - L(2)) * V11(n - 2)
           - linear_part(table, N, n, 4, {2, 1}) * (L(3) - L(2))
           - linear_part(table, N, n, 4, {3}) * (L(4) - L(2));
}

inline void check_transform_scope(int d, int N, int k)
{
    const int e = k - N;
    if (e < 0)
        throw ValidationError("the transform needs k >= N");
    if (d > 5 || (d >= 4 && e >= 2))
        throw ScopeError("G kernel for d=" + std::to_string(d) + ", k-N=" + std::to_string(e)
                         + " is beyond the supported scope (d<=3 any k-N, d<=5 for k-N in {0,1})");
}

inline Rational g_kernel(CorrelatorStore& store, int n, int d, Partition sigma)
{
    const int N = store.params().N, k = store.params().k;
    check_transform_scope(d, N, k);
    std::sort(sigma.begin(), sigma.end(), std::greater<>());
    if (d <= 3 || k == N)
        return V(store, n, d, sigma);

    const ConstantsTable& t = store.table();
    auto L = [&](int i) -> Rational { return t.at(N, 1, i); };
    auto L2 = [&](int i) -> Rational { return t.at(N, 2, i); };
    auto L3 = [&](int i) -> Rational { return t.at(N, 3, i); };
    auto v = [&](int x, int dd, const Partition& s) -> Rational { return V(store, x, dd, s); };
    auto h = [&](int j) -> Rational { return hi_poly(j, n, t); };

    if (d == 4) {
        if (sigma == Partition{1, 1})
            return v(n, 3, {1}) + v(n - 1, 3, {1}) - (L2(5) - L2(3)) + make_rational(3, 4) * quartic_bracket(t, n);
        return V(store, n, d, sigma);
    }
    if (sigma == Partition{2, 1})
        return v(n, 4, {2}) + v(n - 1, 4, {2}) - L2(6) + L2(3) + make_rational(8, 5) * h(1) + h(2)
               + make_rational(4, 5) * h(3) - make_rational(3, 5) * h(4);
    if (sigma == Partition{1, 1, 1})
        return v(n, 3, {1}) + v(n - 1, 3, {1}) - (L2(5) - L2(3)) + make_rational(4, 5) * quartic_bracket(t, n)
               + v(n - 1, 3, {1}) + v(n - 2, 3, {1}) - (L2(5) - L2(3))
               + make_rational(4, 5) * quartic_bracket(t, n - 1) - v(6, 3, {1})
               + make_rational(46, 25) * h(1) + make_rational(46, 25) * h(2) + make_rational(16, 25) * h(3)
               - make_rational(2, 25) * h(4);
    if (sigma == Partition{1, 1}) {
        Rational first = v(n, 3, {1}) * (L(n - 4) - L(2)) + (L(n) - L(2)) * v(n - 2, 3, {1})
                         - (v(n, 4, {2}) + v(n - 1, 4, {2}) - (L2(6) - L2(3))) * (L(3) - L(2))
                         - v(n, 5, {4}) * (L2(5) - L2(3));
        Rational second = v(n, 2, {1}) * (L2(n - 3) - L2(3)) + (L2(n) - L2(3)) * v(n - 3, 2, {1})
                          - v(n, 5, {3, 1}) * (L2(4) - L2(3)) - v(n, 5, {3}) * (L(4) - L(2));
        return v(n, 4, {1}) + v(n - 1, 4, {1}) - (L3(6) - L3(4)) + make_rational(4, 5) * first
               + make_rational(3, 5) * second
               - (L(3) - L(2))
                     * (make_rational(6, 5) * h(1) + h(2) + make_rational(3, 5) * h(3) - make_rational(1, 5) * h(4));
    }
    return V(store, n, d, sigma);
}

// True constant L_n^{N,k,d} for k >= N; zero outside the structure window.
inline Rational generalized_transform(CorrelatorStore& store, int n, int d)
{
    const int N = store.params().N, k = store.params().k;
    check_transform_scope(d, N, k);
    if (!structure_window(N, k, d).contains(n))
        return 0;
    const ConstantsTable& t = store.table();
    Rational total = 0;
    for (int m = 0; m < d; ++m)
        for (const auto& sigma : partitions(m)) {
            Rational seed = 1;
            for (int part : sigma)
                seed *= t.at(N, part, 1 + (k - N) * part);
            if (seed == 0)
                continue;
            total += partition_weight(sigma, d) * seed * g_kernel(store, n, d, sigma);
        }
    return total;
}

inline Rational cy_transform(const ConstantsTable& table, int n, int d)
{
    const int k = table.k();
    if (n < 2 || n > k - 3)
        throw ValidationError("the Calabi-Yau transform needs 2 <= n <= k-3");
    if (d < 1)
        throw ValidationError("degree must be positive");
    TruncatedSeries<Rational> s(d - 1, Rational(0));
    for (int j = 1; j <= d - 1; ++j)
        s[j] = -d * table.at(k, j, 1) / j;
    auto e = series_exp(s);
    Rational total = 0;
    for (int m = 0; m < d; ++m)
        total += e[m] * (table.at(k, d - m, n) - table.at(k, d - m, 1));
    return total;
}

} // namespace vgw
