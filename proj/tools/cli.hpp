#pragma once

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vgw/cache.hpp"
#include "vgw/mirror.hpp"
#include "vgw/recursion.hpp"
#include "vgw/verify.hpp"

namespace vgw::cli {

enum ExitCode { ok = 0, failure = 1, validation = 2, scope = 3, reconstruction = 4, mismatch = 5 };

struct JobSpec {
    std::string command;
    int N = 0;
    int k = 0;
    int d = 0;
    int d_max = 0;
    std::optional<int> n;
    std::string n_range;
    std::string insertions;
    std::string format = "plain";
    std::string cache;
    bool allow_unvalidated = false;
    std::string suite;
    unsigned seed = 1;
    int samples = 20;
};

struct Row {
    std::string kind;
    int N, k, d;
    std::string index; // n, or the insertion list for correlators
    Rational value;
    std::string note;
};

inline std::pair<int, int> parse_range(const std::string& s)
{
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw ValidationError("--n-range expects a:b");
    try {
        std::size_t used = 0;
        int a = std::stoi(s.substr(0, colon), &used);
        if (used != colon)
            throw ValidationError("bad --n-range");
        std::string rest = s.substr(colon + 1);
        int b = std::stoi(rest, &used);
        if (used != rest.size())
            throw ValidationError("bad --n-range");
        if (b < a)
            throw ValidationError("--n-range is empty");
        return {a, b};
    } catch (const std::logic_error&) {
        throw ValidationError("--n-range expects integers a:b");
    }
}

inline std::vector<int> parse_insertions(const std::string& s)
{
    std::vector<int> out;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, ',');) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(part, &used));
            if (used != part.size())
                throw ValidationError("bad insertion '" + part + "'");
        } catch (const std::logic_error&) {
            throw ValidationError("bad insertion '" + part + "'");
        }
    }
    return out;
}

inline void emit(std::ostream& out, const std::string& format, const std::vector<Row>& rows, bool correlator = false)
{
    const std::string index_name = correlator ? "insertions" : "n";
    if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json o;
            o["kind"] = r.kind;
            o["N"] = r.N;
            o["k"] = r.k;
            o["d"] = r.d;
            if (correlator)
                o[index_name] = parse_insertions(r.index);
            else
                o[index_name] = std::stoi(r.index);
            o["value"] = to_pq(r.value);
            if (!r.note.empty())
                o["note"] = r.note;
            arr.push_back(o);
        }
        out << arr.dump(2) << "\n";
    } else if (format == "csv") {
        out << "kind,N,k,d," << index_name << ",value" << (correlator ? ",note" : "") << "\n";
        for (const auto& r : rows) {
            std::string idx = r.index;
            if (correlator)
                std::replace(idx.begin(), idx.end(), ',', ' ');
            out << r.kind << "," << r.N << "," << r.k << "," << r.d << "," << idx << "," << to_pq(r.value);
            if (correlator)
                out << "," << r.note;
            out << "\n";
        }
    } else {
        for (const auto& r : rows) {
            out << r.kind << " N=" << r.N << " k=" << r.k << " d=" << r.d << " " << index_name << "=" << r.index
                << " " << to_plain(r.value);
            if (!r.note.empty())
                out << "  (" << r.note << ")";
            out << "\n";
        }
    }
}

// Builds the store for (N,k) with virtual rows up to d_max, reusing a cache file when given.
inline CorrelatorStore open_store(const JobSpec& job, int d_max)
{
    if (!job.cache.empty() && std::filesystem::exists(job.cache)) {
        auto c = load_cache(job.cache);
        if (c.params.N != job.N || c.params.k != job.k)
            throw CacheError("cache " + job.cache + " belongs to N=" + std::to_string(c.params.N)
                             + " k=" + std::to_string(c.params.k));
        if (c.d_max >= d_max)
            return store_from_cache(c);
        CorrelatorStore store({job.N, job.k}, virtual_constants(job.N, job.k, d_max, job.allow_unvalidated));
        for (const auto& [key, v] : c.correlators)
            store.insert(key, v, EntryStatus::Reconstructed);
        return store;
    }
    return CorrelatorStore({job.N, job.k}, virtual_constants(job.N, job.k, d_max, job.allow_unvalidated));
}

inline void close_store(const JobSpec& job, const CorrelatorStore& store)
{
    if (!job.cache.empty())
        save_cache(job.cache, snapshot(store));
}

inline std::vector<int> requested_indices(const JobSpec& job, IndexWindow fallback)
{
    std::vector<int> out;
    if (job.n) {
        out.push_back(*job.n);
    } else if (!job.n_range.empty()) {
        auto [a, b] = parse_range(job.n_range);
        for (int n = a; n <= b; ++n)
            out.push_back(n);
    } else {
        for (int n = fallback.lo; n <= fallback.hi; ++n)
            out.push_back(n);
    }
    return out;
}

inline std::vector<int> requested_degrees(const JobSpec& job)
{
    if (job.d > 0) {
        check_degree(job.d, job.allow_unvalidated);
        return {job.d};
    }
    const int top = job.d_max > 0 ? job.d_max : validated_max_degree;
    check_degree(top, job.allow_unvalidated);
    std::vector<int> out;
    for (int d = 1; d <= top; ++d)
        out.push_back(d);
    return out;
}

inline int cmd_vsc(const JobSpec& job, std::ostream& out)
{
    HypersurfaceParams{job.N, job.k}.validate();
    const auto degrees = requested_degrees(job);
    if (!job.n_range.empty())
        parse_range(job.n_range);
    auto store = open_store(job, degrees.back());
    std::vector<Row> rows;
    for (int d : degrees) {
        const auto s = store.table().row(job.N, d).support();
        IndexWindow w{0, job.N - 2};
        if (!s.empty())
            w = {std::min(w.lo, s.lo), std::max(w.hi, s.hi)};
        for (int n : requested_indices(job, w))
            rows.push_back({"virtual", job.N, job.k, d, std::to_string(n), store.table().at(job.N, d, n), ""});
    }
    close_store(job, store);
    emit(out, job.format, rows);
    return ok;
}

inline int cmd_gw(const JobSpec& job, std::ostream& out)
{
    HypersurfaceParams{job.N, job.k}.validate();
    if (job.d < 0)
        throw ValidationError("degree must be non-negative");
    if (job.d > 0)
        check_degree(job.d, job.allow_unvalidated);
    if (job.insertions.empty())
        throw ValidationError("--insertions is required");
    const auto exps = parse_insertions(job.insertions);
    for (int a : exps)
        if (a < 0 || a > job.N - 2)
            throw ValidationError("insertion exponent " + std::to_string(a) + " outside 0..N-2");
    auto store = open_store(job, std::max(job.d, 1));
    Rational v = store.value(job.d, exps);
    std::string note = store.selection_rule(job.d, exps) ? "" : "selection rule";
    close_store(job, store);
    CorrelatorKey key(job.d, exps);
    std::string idx;
    for (std::size_t i = 0; i < key.insertions.size(); ++i)
        idx += (i ? "," : "") + std::to_string(key.insertions[i]);
    emit(out, job.format, {{"gw", job.N, job.k, job.d, idx, v, note}}, true);
    return ok;
}

inline int cmd_lsc(const JobSpec& job, std::ostream& out)
{
    HypersurfaceParams{job.N, job.k}.validate();
    const auto degrees = requested_degrees(job);
    if (!job.n_range.empty())
        parse_range(job.n_range);
    std::vector<Row> rows;
    if (job.N > job.k) {
        auto t = true_constants_near_fano(job.N, job.k, degrees.back(), job.allow_unvalidated);
        for (int d : degrees)
            for (int n : requested_indices(job, structure_window(job.N, job.k, d)))
                rows.push_back({"true", job.N, job.k, d, std::to_string(n), t.at(job.N, d, n), ""});
    } else {
        for (int d : degrees)
            check_transform_scope(d, job.N, job.k);
        auto store = open_store(job, degrees.back());
        for (int d : degrees)
            for (int n : requested_indices(job, structure_window(job.N, job.k, d))) {
                Rational v = job.N == job.k ? cy_transform(store.table(), n, d) : generalized_transform(store, n, d);
                rows.push_back({"true", job.N, job.k, d, std::to_string(n), v, ""});
            }
        close_store(job, store);
    }
    emit(out, job.format, rows);
    return ok;
}

inline verify::SuiteReport run_suite(const JobSpec& job)
{
    auto need = [&](bool cond, const std::string& what) {
        if (!cond)
            throw ValidationError("suite '" + job.suite + "' needs " + what);
    };
    const std::string& s = job.suite;
    if (s == "po") {
        need(job.k >= 3, "--k >= 3");
        check_degree(job.d_max, job.allow_unvalidated);
        return verify::po(job.k, job.d_max);
    }
    if (s == "relations") {
        HypersurfaceParams{job.N, job.k}.validate();
        need(job.N - job.k >= 1, "N-k >= 1");
        check_degree(job.d_max, job.allow_unvalidated);
        return verify::relations(job.N, job.k, job.d_max);
    }
    if (s == "anchors")
        return verify::anchors();
    if (s == "cubic-forms") {
        HypersurfaceParams{job.N, job.k}.validate();
        need(job.k > job.N, "k > N");
        return verify::cubic_forms(job.N, job.k);
    }
    if (s == "quartic-forms") {
        need(job.k >= 5, "--k >= 5");
        return verify::quartic_forms(job.k);
    }
    if (s == "v-invariants")
        return verify::v_invariants(job.seed, job.samples);
    if (s == "cy-collapse") {
        need(job.k >= 4, "--k >= 4");
        check_degree(job.d_max, job.allow_unvalidated);
        return verify::cy_collapse(job.k, std::min(job.d_max, 3));
    }
    if (s == "hi") {
        need(job.k >= 5, "--k >= 5");
        return verify::hi_vanishing(job.k);
    }
    if (s == "hi-nonvanishing") {
        need(job.k >= 5, "--k >= 5");
        return verify::hi_nonvanishing(job.k);
    }
    if (s == "symmetry") {
        need(job.k >= 5, "--k >= 5");
        const int d = job.d > 0 ? job.d : 4;
        check_degree(d, job.allow_unvalidated);
        return verify::true_symmetry(job.k, d);
    }
    throw ValidationError("unknown suite '" + s + "'");
}

inline int cmd_verify(const JobSpec& job, std::ostream& out)
{
    auto rep = run_suite(job);
    if (job.format == "json") {
        nlohmann::ordered_json o;
        o["suite"] = rep.name;
        o["pass"] = rep.pass();
        o["elapsed_ms"] = static_cast<long>(rep.seconds * 1000);
        o["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : rep.checks)
            o["checks"].push_back({{"label", c.label}, {"pass", c.pass}, {"expected", c.expected}, {"actual", c.actual}});
        out << o.dump(2) << "\n";
    } else {
        for (const auto& c : rep.checks) {
            out << (c.pass ? "PASS " : "FAIL ") << c.label;
            if (!c.pass)
                out << "  expected " << c.expected << ", got " << c.actual;
            out << "\n";
        }
        out << rep.name << ": " << (rep.checks.size() - rep.failures()) << "/" << rep.checks.size() << " passed in "
            << static_cast<long>(rep.seconds * 1000) << " ms\n";
    }
    return rep.pass() ? ok : mismatch;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Virtual structure constants, virtual Gromov-Witten invariants and mirror transforms"};
    app.require_subcommand(1);
    JobSpec job;

    auto common = [&](CLI::App* sub, bool needs_nk) {
        auto* on = sub->add_option("--N", job.N, "N (ambient projective space is P^{N-1})");
        auto* ok_ = sub->add_option("--k", job.k, "hypersurface degree");
        if (needs_nk) {
            on->required();
            ok_->required();
        }
        sub->add_option("--format", job.format, "output format")->check(CLI::IsMember({"json", "csv", "plain"}));
        sub->add_flag("--allow-unvalidated-degree", job.allow_unvalidated, "permit degrees above 5");
    };
    auto ranges = [&](CLI::App* sub) {
        sub->add_option("--d", job.d, "degree");
        sub->add_option("--dmax", job.d_max, "all degrees 1..dmax");
        auto* n = sub->add_option("--n", job.n, "single index");
        sub->add_option("--n-range", job.n_range, "index range a:b")->excludes(n);
        sub->add_option("--cache", job.cache, "cache file");
    };

    auto* vsc = app.add_subcommand("vsc", "virtual structure constants");
    common(vsc, true);
    ranges(vsc);
    auto* gw = app.add_subcommand("gw", "virtual Gromov-Witten invariant");
    common(gw, true);
    gw->add_option("--d", job.d, "degree")->required();
    gw->add_option("--insertions", job.insertions, "comma separated exponents")->required();
    gw->add_option("--cache", job.cache, "cache file");
    auto* lsc = app.add_subcommand("lsc", "true structure constants");
    common(lsc, true);
    ranges(lsc);
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    common(ver, false);
    ver->add_option("suite", job.suite, "po, relations, anchors, cubic-forms, quartic-forms, v-invariants, "
                                        "cy-collapse, hi, hi-nonvanishing, symmetry")
        ->required();
    ver->add_option("--d", job.d, "degree");
    ver->add_option("--dmax", job.d_max, "maximal degree");
    ver->add_option("--seed", job.seed, "random seed");
    ver->add_option("--samples", job.samples, "number of random cases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << e.what() << "\n";
            return ok;
        }
        err << "error: " << e.what() << "\n";
        return validation;
    }

    try {
        if (vsc->parsed())
            return cmd_vsc(job, out);
        if (gw->parsed())
            return cmd_gw(job, out);
        if (lsc->parsed())
            return cmd_lsc(job, out);
        if (job.d_max == 0)
            job.d_max = 3;
        return cmd_verify(job, out);
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return validation;
    } catch (const WindowError& e) {
        err << "window error: " << e.what() << "\n";
        return validation;
    } catch (const CacheError& e) {
        err << "cache error: " << e.what() << "\n";
        return validation;
    } catch (const ScopeError& e) {
        err << "out of scope: " << e.what() << "\n";
        return scope;
    } catch (const ReconstructionError& e) {
        err << "reconstruction failed: " << e.what() << "\n";
        return reconstruction;
    } catch (const ResidueError& e) {
        err << "residue failure: " << e.what() << "\n";
        return reconstruction;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return failure;
    }
}

} // namespace vgw::cli
