#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "correlator.hpp"

namespace vgw {

inline constexpr int cache_format_version = 1;

struct CacheContents {
    HypersurfaceParams params;
    int d_max = 0;
    ConstantsTable table{TableKind::Virtual, 0}; // level-N rows only
    std::map<CorrelatorKey, Rational> correlators; // reconstructed, divisor-normalized

    friend bool operator==(const CacheContents& a, const CacheContents& b)
    {
        if (a.params.N != b.params.N || a.params.k != b.params.k || a.d_max != b.d_max)
            return false;
        for (int d = 1; d <= a.d_max; ++d)
            if (!(a.table.row(a.params.N, d) == b.table.row(b.params.N, d)))
                return false;
        return a.correlators == b.correlators;
    }
};

// Advisory lock on a sidecar file, held for the lifetime of the object.
class CacheLock {
public:
    CacheLock(const std::string& path, bool exclusive)
    {
        fd_ = ::open((path + ".lock").c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ < 0)
            throw CacheError("cannot open lock file for " + path);
        if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
            ::close(fd_);
            throw CacheError("cannot lock " + path);
        }
    }
    ~CacheLock()
    {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    CacheLock(const CacheLock&) = delete;
    CacheLock& operator=(const CacheLock&) = delete;

private:
    int fd_ = -1;
};

inline CacheContents snapshot(const CorrelatorStore& store)
{
    CacheContents c;
    c.params = store.params();
    c.d_max = store.max_degree();
    c.table = ConstantsTable(TableKind::Virtual, c.params.k);
    for (int d = 1; d <= c.d_max; ++d)
        c.table.set_row(c.params.N, d, store.table().row(c.params.N, d));
    for (const auto& [key, entry] : store.entries())
        if (entry.status == EntryStatus::Reconstructed)
            c.correlators.emplace(key, entry.value);
    return c;
}

inline void write_cache(std::ostream& out, const CacheContents& c)
{
    out << "# vgw-cache format=" << cache_format_version << " N=" << c.params.N << " k=" << c.params.k
        << " dmax=" << c.d_max << "\n";
    for (int d = 1; d <= c.d_max; ++d) {
        const auto& row = c.table.row(c.params.N, d);
        const auto s = row.support();
        for (int n = s.lo; n <= s.hi; ++n)
            out << "L|" << d << "|" << n << "|" << to_pq(row.at(n)) << "\n";
    }
    for (const auto& [key, v] : c.correlators) {
        out << "v|" << key.degree << "|";
        for (std::size_t i = 0; i < key.insertions.size(); ++i)
            out << (i ? "," : "") << key.insertions[i];
        out << "|" << to_pq(v) << "\n";
    }
}

inline CacheContents read_cache(std::istream& in)
{
    CacheContents c;
    std::string line;
    if (!std::getline(in, line))
        throw CacheError("empty cache file");
    int version = 0, N = 0, k = 0, dmax = 0;
    if (std::sscanf(line.c_str(), "# vgw-cache format=%d N=%d k=%d dmax=%d", &version, &N, &k, &dmax) != 4)
        throw CacheError("malformed cache header");
    if (version != cache_format_version)
        throw CacheError("unsupported cache format version " + std::to_string(version));
    c.params = {N, k};
    try {
        c.params.validate();
    } catch (const ValidationError& e) {
        throw CacheError(std::string("cache header: ") + e.what());
    }
    if (dmax < 0)
        throw CacheError("negative dmax in cache header");
    c.d_max = dmax;
    c.table = ConstantsTable(TableKind::Virtual, k);
    std::map<int, std::map<int, Rational>> rows;

    const CorrelatorStore checker(c.params, ConstantsTable(TableKind::Virtual, k));
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        auto fail = [&](const std::string& why) {
            return CacheError("cache line " + std::to_string(lineno) + ": " + why);
        };
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string part; std::getline(ss, part, '|');)
            f.push_back(part);
        if (f.size() != 4)
            throw fail("expected kind|d|exponents|value");
        int d = 0;
        try {
            d = std::stoi(f[1]);
        } catch (const std::exception&) {
            throw fail("bad degree");
        }
        Rational v;
        try {
            v = parse_rational(f[3]);
        } catch (const ValidationError&) {
            throw fail("bad value");
        }
        std::vector<int> exps;
        try {
            std::stringstream es(f[2]);
            for (std::string a; std::getline(es, a, ',');)
                exps.push_back(std::stoi(a));
        } catch (const std::exception&) {
            throw fail("bad exponent list");
        }
        if (f[0] == "L") {
            if (d < 1 || d > dmax || exps.size() != 1)
                throw fail("bad table record");
            if (!rows[d].emplace(exps[0], v).second)
                throw fail("duplicate table record");
        } else if (f[0] == "v") {
            if (d < 1)
                throw fail("bad correlator degree");
            CorrelatorKey key(d, exps);
            if (key.insertions != exps)
                throw fail("exponents are not sorted");
            for (int a : exps)
                if (a < 2 || a > N - 2)
                    throw fail("exponent outside 2..N-2");
            if (!checker.selection_rule(d, exps))
                throw fail("selection rule violated by " + key.to_string());
            if (!c.correlators.emplace(key, v).second)
                throw fail("duplicate correlator record");
        } else {
            throw fail("unknown record kind '" + f[0] + "'");
        }
    }
    for (int d = 1; d <= dmax; ++d) {
        auto it = rows.find(d);
        if (it == rows.end() || it->second.empty()) {
            c.table.set_row(N, d, ConstantsRow());
            continue;
        }
        const int lo = it->second.begin()->first, hi = it->second.rbegin()->first;
        std::vector<Rational> vals(hi - lo + 1, 0);
        for (const auto& [n, v] : it->second)
            vals[n - lo] = v;
        c.table.set_row(N, d, ConstantsRow(lo, std::move(vals)));
    }
    return c;
}

inline void save_cache(const std::string& path, const CacheContents& c)
{
    CacheLock lock(path, true);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            throw CacheError("cannot write " + tmp);
        write_cache(out, c);
        if (!out)
            throw CacheError("write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

inline CacheContents load_cache(const std::string& path)
{
    CacheLock lock(path, false);
    std::ifstream in(path);
    if (!in)
        throw CacheError("cannot read " + path);
    return read_cache(in);
}

inline CorrelatorStore store_from_cache(const CacheContents& c)
{
    CorrelatorStore store(c.params, c.table);
    for (const auto& [key, v] : c.correlators)
        store.insert(key, v, EntryStatus::Reconstructed);
    return store;
}

} // namespace vgw
