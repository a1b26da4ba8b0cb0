#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rational.hpp"

namespace vgw {

using Exponents = std::vector<int>;

// Sparse polynomial with rational coefficients in a fixed number of variables.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(int nvars) : nvars_(nvars) {}
    MultiPoly(int nvars, const Rational& c) : nvars_(nvars) { add_term(Exponents(nvars, 0), c); }

    static MultiPoly variable(int nvars, int i)
    {
        MultiPoly p(nvars);
        Exponents e(nvars, 0);
        e.at(i) = 1;
        p.add_term(e, 1);
        return p;
    }

    int nvars() const { return nvars_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponents& e, const Rational& c)
    {
        if (static_cast<int>(e.size()) != nvars_)
            throw ValidationError("monomial arity mismatch");
        if (c == 0)
            return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    Rational coeff(const Exponents& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    std::optional<Rational> constant_value() const
    {
        if (terms_.empty())
            return Rational(0);
        if (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0)
            return terms_.begin()->second;
        return std::nullopt;
    }

    static int total_degree(const Exponents& e)
    {
        int s = 0;
        for (int a : e)
            s += a;
        return s;
    }

    int degree() const
    {
        int d = -1;
        for (const auto& [e, c] : terms_)
            d = std::max(d, total_degree(e));
        return d;
    }

    int degree_in(int var) const
    {
        int d = -1;
        for (const auto& [e, c] : terms_)
            d = std::max(d, e.at(var));
        return d;
    }

    bool is_homogeneous(int deg) const
    {
        for (const auto& [e, c] : terms_)
            if (total_degree(e) != deg)
                return false;
        return true;
    }

    Rational evaluate(std::span<const Rational> point) const
    {
        if (static_cast<int>(point.size()) != nvars_)
            throw ValidationError("evaluation point arity mismatch");
        Rational s = 0;
        for (const auto& [e, c] : terms_) {
            Rational m = c;
            for (int i = 0; i < nvars_; ++i)
                if (e[i] != 0)
                    m *= pow(point[i], e[i]);
            s += m;
        }
        return s;
    }

    MultiPoly& operator+=(const MultiPoly& o)
    {
        check_arity(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o)
    {
        check_arity(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }
    MultiPoly& operator*=(const Rational& s)
    {
        if (s == 0)
            terms_.clear();
        for (auto& [e, c] : terms_)
            c *= s;
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator-(MultiPoly a) { return a *= Rational(-1); }
    friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
    friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
    {
        a.check_arity(b);
        MultiPoly r(a.nvars_);
        Exponents e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.nvars_; ++i)
                    e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    // Variable names default to x0, x1, ...
    std::string to_string(const std::vector<std::string>& names = {}) const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            std::string mono;
            for (int i = 0; i < nvars_; ++i) {
                if (e[i] == 0)
                    continue;
                if (!mono.empty())
                    mono += "*";
                mono += i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i);
                if (e[i] > 1)
                    mono += "^" + std::to_string(e[i]);
            }
            std::string cs = c.get_str();
            if (!out.empty())
                out += c < 0 ? " - " : " + ";
            else if (c < 0)
                out += "-";
            if (c < 0)
                cs = Rational(-c).get_str();
            if (mono.empty())
                out += cs;
            else if (cs == "1")
                out += mono;
            else
                out += cs + "*" + mono;
        }
        return out;
    }

private:
    void check_arity(const MultiPoly& o) const
    {
        if (o.nvars_ != nvars_)
            throw ValidationError("polynomial arity mismatch");
    }

    int nvars_ = 0;
    std::map<Exponents, Rational> terms_;
};

inline std::optional<MultiPoly> try_invert(const MultiPoly& p)
{
    auto c = p.constant_value();
    if (!c || *c == 0)
        return std::nullopt;
    return MultiPoly(p.nvars(), Rational(1) / *c);
}

// Quotient of polynomials, kept unreduced. Equality is decided by cross-multiplication.
class RationalFunction {
public:
    RationalFunction() = default;
    explicit RationalFunction(MultiPoly num) : num_(std::move(num)), den_(num_.nvars(), 1) {}
    RationalFunction(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den))
    {
        if (den_.is_zero())
            throw ValidationError("zero denominator in rational function");
    }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b)
    {
        if (a.den_ == b.den_)
            return {a.num_ + b.num_, a.den_};
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFunction operator-(const RationalFunction& a)
    {
        return {-a.num_, a.den_};
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b)
    {
        return a + (-b);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b)
    {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b)
    {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }

private:
    MultiPoly num_;
    MultiPoly den_;
};

inline std::optional<RationalFunction> try_invert(const RationalFunction& f)
{
    if (f.is_zero())
        return std::nullopt;
    return RationalFunction(f.den(), f.num());
}

} // namespace vgw
