#pragma once

#include <algorithm>
#include <vector>

#include "multi_poly.hpp"
#include "rational.hpp"

namespace vgw {

inline Rational zero_like(const Rational&) { return 0; }
inline Rational one_like(const Rational&) { return 1; }
inline MultiPoly zero_like(const MultiPoly& p) { return MultiPoly(p.nvars()); }
inline MultiPoly one_like(const MultiPoly& p) { return MultiPoly(p.nvars(), 1); }
inline RationalFunction zero_like(const RationalFunction& f) { return RationalFunction(MultiPoly(f.num().nvars())); }
inline RationalFunction one_like(const RationalFunction& f) { return RationalFunction(MultiPoly(f.num().nvars(), 1)); }

inline bool is_zero_coeff(const Rational& r) { return r == 0; }
inline bool is_zero_coeff(const MultiPoly& p) { return p.is_zero(); }
inline bool is_zero_coeff(const RationalFunction& f) { return f.is_zero(); }

// Power series in one variable t, truncated after t^order.
template <class Coeff>
class TruncatedSeries {
public:
    TruncatedSeries(int order, const Coeff& zero) : c_(order + 1, zero_like(zero))
    {
        if (order < 0)
            throw ValidationError("negative truncation order");
    }

    TruncatedSeries(int order, std::vector<Coeff> coeffs) : c_(std::move(coeffs))
    {
        if (order < 0 || c_.empty())
            throw ValidationError("series needs at least a constant term");
        Coeff z = zero_like(c_.front());
        c_.resize(order + 1, z);
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Coeff& operator[](int i) const { return c_.at(i); }
    Coeff& operator[](int i) { return c_.at(i); }
    const std::vector<Coeff>& coefficients() const { return c_; }

    TruncatedSeries truncated(int order) const
    {
        std::vector<Coeff> c(c_.begin(), c_.begin() + std::min<int>(order + 1, c_.size()));
        return TruncatedSeries(order, std::move(c));
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        int o = std::min(a.order(), b.order());
        TruncatedSeries r = a.truncated(o);
        for (int i = 0; i <= o; ++i)
            r.c_[i] += b.c_[i];
        return r;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        int o = std::min(a.order(), b.order());
        TruncatedSeries r = a.truncated(o);
        for (int i = 0; i <= o; ++i)
            r.c_[i] -= b.c_[i];
        return r;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        int o = std::min(a.order(), b.order());
        TruncatedSeries r(o, a.c_.front());
        for (int i = 0; i <= o; ++i) {
            if (is_zero_coeff(a.c_[i]))
                continue;
            for (int j = 0; i + j <= o; ++j)
                r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        if (a.order() != b.order())
            return false;
        for (int i = 0; i <= a.order(); ++i)
            if (!(a.c_[i] == b.c_[i]))
                return false;
        return true;
    }

private:
    std::vector<Coeff> c_;
};

// Multiplicative inverse up to t^order; the constant term must be a unit of the coefficient ring.
template <class Coeff>
TruncatedSeries<Coeff> series_invert(const TruncatedSeries<Coeff>& s, int order)
{
    if (order > s.order())
        throw ValidationError("requested order exceeds the series precision");
    auto inv0 = try_invert(s[0]);
    if (!inv0)
        throw SeriesError("constant term is not invertible");
    TruncatedSeries<Coeff> r(order, s[0]);
    r[0] = *inv0;
    for (int n = 1; n <= order; ++n) {
        Coeff acc = zero_like(s[0]);
        for (int j = 1; j <= n; ++j)
            if (!is_zero_coeff(s[j]))
                acc += s[j] * r[n - j];
        r[n] = zero_like(s[0]) - (*inv0) * acc;
    }
    return r;
}

// exp of a series without constant term.
inline TruncatedSeries<Rational> series_exp(const TruncatedSeries<Rational>& s)
{
    if (s[0] != 0)
        throw SeriesError("exp needs a series without constant term");
    TruncatedSeries<Rational> e(s.order(), Rational(0));
    e[0] = 1;
    for (int n = 1; n <= s.order(); ++n) {
        Rational acc = 0;
        for (int j = 1; j <= n; ++j)
            acc += j * s[j] * e[n - j];
        e[n] = acc / n;
    }
    return e;
}

} // namespace vgw
