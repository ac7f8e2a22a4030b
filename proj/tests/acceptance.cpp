// Acceptance gate: one PASS/FAIL line per criterion.

#include "weyllaw/arch_spherical.hpp"
#include "weyllaw/experiments.hpp"
#include "weyllaw/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace wl;

namespace {

// pinned tolerances and budgets
constexpr double kPhiIdentityTol = 1e-8;
constexpr double kPhiBoundSlack = 1e-8;
constexpr double kRuntimeAC1 = 120, kRuntimeAC3 = 60, kRuntimeAC5 = 300, kRuntimeAC10 = 180;

// AC6 asks for deg tau_xi <= q^{n(n-1)/2 (xi_1 - xi_n)}; for GL_2 this is
// p + 1 <= p at xi = (1, 0), so it cannot hold. The line still prints FAIL;
// --allow-known-red only keeps the exit status clean for it.
const std::vector<int> kKnownRed = {6};

struct Outcome {
    bool pass;
    std::string detail;
};

ExperimentConfig make(const std::string& name, std::map<std::string, std::string> params, std::uint64_t seed = 20240611) {
    ExperimentConfig c;
    c.name = name;
    c.params = std::move(params);
    c.seed = seed;
    return c;
}

Outcome from_reports(const std::vector<Report>& rs, double seconds, double budget) {
    Outcome o{true, ""};
    for (const auto& r : rs)
        for (const auto& c : r.checks) {
            o.pass &= c.pass;
            if (!o.detail.empty()) o.detail += "; ";
            o.detail += (c.pass ? "" : "[FAILED] ") + c.name + ": " + c.detail;
        }
    char buf[64];
    std::snprintf(buf, sizeof buf, "; %.1fs", seconds);
    o.detail += buf;
    if (budget > 0 && seconds > budget) {
        o.pass = false;
        o.detail += " over budget";
    }
    return o;
}

Outcome run_all(const std::vector<ExperimentConfig>& cfgs, double budget = 0) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Report> rs;
    for (const auto& c : cfgs) rs.push_back(run_experiment(c));
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return from_reports(rs, s, budget);
}

Outcome ac2() {
    double worst_id = 0, worst_pert = 0, worst_abs = 0;
    for (int i = 0; i < 1000; ++i) {
        auto gen = make_stream(20240611, "ac2", i);
        std::uniform_real_distribution<double> U(-3, 3);
        const int n = 2 + i % 3;
        CVec l(n);
        Vec x(n);
        double ml = 0, mx = 0;
        for (int k = 0; k < n; ++k) {
            const double a = U(gen), b = U(gen) / 3;
            l[k] = cplx(0, a);
            x[k] = b;
            ml += a / n;
            mx += b / n;
        }
        for (int k = 0; k < n; ++k) l[k] -= cplx(0, ml), x[k] -= mx;
        const Vec zero(n, 0.0);
        worst_id = std::max(worst_id, std::abs(spherical_eval(l, zero) - cplx(1)));
        if (i < 200) worst_pert = std::max(worst_pert, std::abs(spherical_eval_perturbed(l, zero) - cplx(1)));
        worst_abs = std::max(worst_abs, std::abs(spherical_eval(l, x)));
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "|phi(1)-1| analytic %.2e, perturbed %.2e; max |phi| %.12f over 1000 pairs", worst_id,
                  worst_pert, worst_abs);
    return {worst_id == 0 && worst_pert <= kPhiIdentityTol && worst_abs <= 1 + kPhiBoundSlack, buf};
}

Outcome ac12() {
    const std::vector<ExperimentConfig> small = {
        make("spherical-oracle", {{"samples", "5000"}, {"pairs", "3"}}),
        make("descent-check", {{"trials", "10"}}),
        make("pw-roundtrip", {{"points", "4"}}),
        make("weyl-main-term", {{"t", "50,100"}}),
        make("hecke-degree", {{"n", "2"}, {"p", "2,3"}, {"maxnorm", "2"}}),
        make("hecke-convolve", {{"p", "2"}, {"maxnorm", "1"}}),
        make("satake-check", {{"p", "2"}, {"maxnorm", "1"}}),
        make("constant-term", {{"xi", "2,1,0"}, {"blocks", "2,1"}, {"p", "2"}}),
        make("norm-properties", {{"samples", "40"}, {"sandwich", "20"}}),
        make("classes-enumerate", {{"bound", "6"}, {"growth", "4,8"}}),
        make("spacing-check", {{"bound", "8"}}),
        make("brd-classify", {{"count", "10"}}),
        make("padic-volumes", {{"p", "2,3"}, {"jmax", "3"}}),
        make("central-term", {{"maxnorm", "30"}}),
    };
    int same = 0;
    std::string diff;
    for (const auto& c : small) {
        const Report a = run_experiment(c), b = run_experiment(c);
        if (a.csv_body() == b.csv_body() && a.jsonl_body() == b.jsonl_body() && !a.csv_body().empty()) ++same;
        else diff += " " + c.name;
    }
    return {same == static_cast<int>(small.size()),
            std::to_string(same) + "/" + std::to_string(small.size()) + " experiments byte-identical" +
                (diff.empty() ? "" : ", differing:" + diff)};
}

}  // namespace

int main(int argc, char** argv) {
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    const bool allow_known_red = argc > 1 && std::string(argv[1]) == "--allow-known-red";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> acs = {
        {"spherical oracle equivalence (n = 2, 3)",
         [] {
             return run_all({make("spherical-oracle", {{"n", "2"}}), make("spherical-oracle", {{"n", "3"}})}, kRuntimeAC1);
         }},
        {"phi(1) = 1 and |phi| <= 1", ac2},
        {"descent formula (n = 3)", [] { return run_all({make("descent-check", {{"n", "3"}})}, kRuntimeAC3); }},
        {"Paley-Wiener round trip (n = 2)", [] { return run_all({make("pw-roundtrip", {{"n", "2"}})}); }},
        {"Weyl main term slopes",
         [] {
             return run_all({make("weyl-main-term", {{"n", "2"}, {"t", "50,60,70,80,90,100"}}),
                             make("weyl-main-term", {{"n", "3"}, {"t", "50,60,70,80,90,100"}})},
                            kRuntimeAC5);
         }},
        {"Hecke degrees and the degree sandwich", [] { return run_all({make("hecke-degree", {})}); }},
        {"convolution structure", [] { return run_all({make("hecke-convolve", {})}); }},
        {"Satake homomorphism and Borel constant term", [] { return run_all({make("satake-check", {})}); }},
        {"norm lemma suite", [] { return run_all({make("norm-properties", {})}); }},
        {"class enumeration, spacing and growth",
         [] {
             return run_all({make("spacing-check", {{"bound", "50"}}), make("classes-enumerate", {{"bound", "16"}})},
                            kRuntimeAC10);
         }},
        {"p-adic volumes, power laws and log integral", [] { return run_all({make("padic-volumes", {})}); }},
        {"determinism under a fixed seed", ac12},
    };
    int failed = 0, unexpected = 0;
    for (size_t i = 0; i < acs.size(); ++i) {
        Outcome o{false, ""};
        try {
            o = acs[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        if (!o.pass) {
            ++failed;
            if (std::find(kKnownRed.begin(), kKnownRed.end(), static_cast<int>(i + 1)) == kKnownRed.end()) ++unexpected;
        }
        std::printf("AC%-2zu %s  %s :: %s\n", i + 1, o.pass ? "PASS" : "FAIL", acs[i].first.c_str(), o.detail.c_str());
    }
    std::printf("acceptance: %zu of %zu criteria pass\n", acs.size() - failed, acs.size());
    return (allow_known_red ? unexpected : failed) == 0 ? 0 : 1;
}
