#pragma once

#include <map>
#include <numeric>
#include <vector>

#include "rational.hpp"

namespace vgw {

// Parts in non-increasing order.
using Partition = std::vector<int>;

inline std::vector<Partition> partitions(int m)
{
    if (m < 0)
        throw ValidationError("partition of a negative integer");
    std::vector<Partition> out;
    Partition cur;
    auto rec = [&](auto&& self, int left, int max_part) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(left, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, left - p, p);
            cur.pop_back();
        }
    };
    rec(rec, m, m);
    return out;
}

inline int partition_size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

inline std::map<int, int> multiplicities(const Partition& p)
{
    std::map<int, int> mult;
    for (int a : p)
        ++mult[a];
    return mult;
}

// (-1)^l d^l / (prod d_j * prod mult_i!)
inline Rational partition_weight(const Partition& sigma, int d)
{
    Integer den = 1;
    for (int a : sigma)
        den *= a;
    for (auto [part, count] : multiplicities(sigma))
        den *= factorial(count);
    Rational w = pow(Rational(d), sigma.size()) / Rational(den);
    return sigma.size() % 2 ? Rational(-w) : w;
}

} // namespace vgw
