#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "vgw/verify.hpp"

using namespace vgw;
using verify::SuiteReport;

namespace {

struct Criterion {
    std::string id;
    std::string description;
    std::function<std::vector<SuiteReport>()> run;
};

constexpr std::size_t max_listed_failures = 6;

} // namespace

int main()
{
    std::vector<Criterion> criteria = {
        {"quartic-anchor", "L_7^{11,12,4} exact integer", [] { return std::vector{verify::quartic_anchor()}; }},
        {"quintic-anchor", "L_8^{12,13,5} exact rational", [] { return std::vector{verify::quintic_anchor()}; }},
        {"degree4-symmetry-integrality", "k=7..14, d=4: insertion symmetry and k*L integral",
         [] {
             std::vector<SuiteReport> out;
             for (int k = 7; k <= 14; ++k)
                 out.push_back(verify::true_symmetry(k, 4));
             return out;
         }},
        {"hypergeometric-series", "L~_0, L~_1 at N=k against the series, k=5..8, d<=5",
         [] {
             std::vector<SuiteReport> out;
             for (int k = 5; k <= 8; ++k)
                 out.push_back(verify::po(k, 5));
             return out;
         }},
        {"ring-relations", "quantum ring relations, (9,4) (10,3) (7,5) at d<=5 and N=k+1, k=4..6 at d<=3",
         [] {
             std::vector<SuiteReport> out;
             for (auto [N, k] : {std::pair{9, 4}, {10, 3}, {7, 5}})
                 out.push_back(verify::relations(N, k, 5));
             for (int k = 4; k <= 6; ++k)
                 out.push_back(verify::relations(k + 1, k, 3));
             return out;
         }},
        {"cubic-closed-forms", "WDVV V_{d-m} against closed forms for d<=3, k-N in {1,2}, k in {6,7}",
         [] {
             std::vector<SuiteReport> out;
             for (int k : {6, 7})
                 for (int e : {1, 2})
                     out.push_back(verify::cubic_forms(k - e, k));
             return out;
         }},
        {"quartic-closed-forms", "WDVV V at d=4, k-N=1 against closed forms, k in {7,8} (plus 9..12)",
         [] {
             std::vector<SuiteReport> out;
             for (int k = 7; k <= 12; ++k)
                 out.push_back(verify::quartic_forms(k));
             return out;
         }},
        {"virtual-invariants", "flat zeros, symmetry, specialization on random cases",
         [] { return std::vector{verify::v_invariants(20240607u, 40)}; }},
        {"calabi-yau-collapse", "generalized transform equals CY transform at N=k, k in {6,7}, d<=3",
         [] { return std::vector{verify::cy_collapse(6, 3), verify::cy_collapse(7, 3)}; }},
        {"hi-vanishing", "hi_j(6)=hi_j(7)=0 for k=7..12, and pi_1(hi_2) at n=7 is nonzero for k in {7,8}",
         [] {
             std::vector<SuiteReport> out;
             for (int k = 7; k <= 12; ++k)
                 out.push_back(verify::hi_vanishing(k));
             for (int k : {7, 8})
                 out.push_back(verify::hi_nonvanishing(k));
             return out;
         }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        std::vector<SuiteReport> reports;
        std::string crash;
        try {
            reports = c.run();
        } catch (const std::exception& e) {
            crash = e.what();
        }
        std::size_t total = 0, bad = 0;
        double seconds = 0;
        for (const auto& r : reports) {
            total += r.checks.size();
            bad += r.failures();
            seconds += r.seconds;
        }
        const bool ok = crash.empty() && total > 0 && bad == 0;
        failed += !ok;
        std::printf("%s %-30s %zu/%zu checks  %.2fs  %s\n", ok ? "PASS" : "FAIL", c.id.c_str(), total - bad, total,
                    seconds, c.description.c_str());
        if (!crash.empty())
            std::printf("     exception: %s\n", crash.c_str());
        std::size_t listed = 0;
        for (const auto& r : reports)
            for (const auto& chk : r.checks)
                if (!chk.pass && listed++ < max_listed_failures)
                    std::printf("     %s: expected %s, got %s\n", chk.label.c_str(), chk.expected.c_str(),
                                chk.actual.c_str());
        if (listed > max_listed_failures)
            std::printf("     ... %zu more\n", listed - max_listed_failures);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
