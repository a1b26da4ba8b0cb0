#pragma once

// Closed forms of V_{d-m}^{N,k,d}(n;sigma) written directly in terms of the virtual
// constants. They are independent of the correlator store and serve as oracles for it.

#include <string>

#include "mirror.hpp"

namespace vgw::closed_form {

inline Rational hi2_cubic(const ConstantsTable& t, int N, int n)
{
    const int e = t.k() - N;
    auto L = [&](int i) -> Rational { return t.at(N, 1, i); };
    auto H = [&](int x) -> Rational {
        Rational s = 0;
        for (int j = 0; j <= e - 1; ++j) {
            for (int m = 0; m <= j; ++m)
                s += L(x - m) * L(x - 2 * e + j - m);
            Rational sum_all = 0;
            for (int m = 0; m <= 2 * e; ++m)
                sum_all += L(x - m);
            s -= L(e + 2 + j) * sum_all;
            Rational inner = 0;
            for (int m = j + 1; m <= 2 * e - j - 1; ++m)
                inner += L(x - m);
            s += L(1 + e) * inner;
        }
        return s;
    };
    return H(n) - H(1 + 3 * e);
}

// d <= 3, any k - N >= 0.
inline Rational v_cubic(const ConstantsTable& t, int N, int n, int d, const Partition& sigma)
{
    const int e = t.k() - N;
    auto sum_diff = [&](int deg, int top, int ref) -> Rational {
        Rational s = 0;
        for (int j = 0; j <= top; ++j)
            s += t.at(N, deg, n - j) - t.at(N, deg, ref - j);
        return s;
    };
    if (sigma.empty())
        return t.at(N, d, n) - t.at(N, d, 1 + e * d);
    if (d == 2 && sigma == Partition{1})
        return sum_diff(1, e, 1 + 2 * e);
    if (d == 3 && sigma == Partition{1})
        return sum_diff(2, e, 1 + 3 * e) + hi2_cubic(t, N, n);
    if (d == 3 && sigma == Partition{2})
        return sum_diff(1, 2 * e, 1 + 3 * e);
    if (d == 3 && sigma == Partition{1, 1}) {
        const auto a = a_coeffs(sigma, N, t.k());
        Rational s = 0;
        for (int j = 0; j < static_cast<int>(a.size()); ++j)
            s += a[j] * (t.at(N, 1, n - j) - t.at(N, 1, 1 + 3 * e - j));
        return s;
    }
    throw ValidationError("no closed form for this (d, sigma) with d <= 3");
}

// d = 4, k - N = 1.
inline Rational v_quartic(const ConstantsTable& t, int n, const Partition& sigma)
{
    const int k = t.k(), N = k - 1;
    auto L = [&](int i) -> Rational { return t.at(N, 1, i); };
    auto L2 = [&](int i) -> Rational { return t.at(N, 2, i); };
    auto L3 = [&](int i) -> Rational { return t.at(N, 3, i); };
    auto v21 = [&](int x) -> Rational { return v_cubic(t, N, x, 3, {1}); };
    auto v11 = [&](int x) -> Rational { return L(x) + L(x - 1) - L(3) - L(2); };
    auto weighted = [&](int x, std::initializer_list<int> w) -> Rational {
        Rational s = 0;
        int j = 0;
        for (int c : w) {
            s += c * (L(x - j) - L(5 - j));
            ++j;
        }
        return s;
    };
    auto v13 = [&](int x) -> Rational { return weighted(x, {1, 1, 1, 1}); };
    auto v1_21 = [&](int x) -> Rational { return weighted(x, {1, 2, 2, 1}); };
    auto v22 = [&](int x) -> Rational {
        return v21(x) + L2(x - 2) - L2(5) + v11(x) * (L(x - 3) - L(2)) - v13(x) * (L(4) - L(2));
    };

    if (sigma.empty())
        return t.at(N, 4, n) - t.at(N, 4, 5);
    if (sigma == Partition{1})
        return L3(n) + L3(n - 1) - L3(5) - L3(4) + (L2(n) - L2(3)) * (L(n - 3) - L(2))
               + (L(n) - L(2)) * (L2(n - 2) - L2(3)) - (L(3) - L(2)) * v22(n) - v13(n) * (L2(4) - L2(3));
    if (sigma == Partition{2})
        return v22(n);
    if (sigma == Partition{3})
        return v13(n);
    if (sigma == Partition{2, 1})
        return v1_21(n);
    if (sigma == Partition{1, 1, 1})
        return weighted(n, {1, 3, 3, 1});
    if (sigma == Partition{1, 1})
        return v21(n) + v21(n - 1) - (L2(5) - L2(3)) + make_rational(1, 2) * quartic_bracket(t, n);
    throw ValidationError("no closed form for this sigma at d = 4");
}

// pi_1(hi_2^{k-1,k,4}(n;(1)+(1))) as written out explicitly.
inline Rational pi1_hi2_quartic(const ConstantsTable& t, int n)
{
    return make_rational(1, 2) * (quartic_bracket(t, n) + quartic_bracket(t, n - 1));
}

} // namespace vgw::closed_form
