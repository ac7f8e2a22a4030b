#include "weyllaw/errors.hpp"
#include "weyllaw/experiments.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>

namespace {

struct Flags {
    std::optional<std::string> n, p, D, t, samples, bound;
    std::optional<std::uint64_t> seed;
    std::string config, out;
    std::vector<std::string> set;
};

void add_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--n", f.n, "rank n");
    sub->add_option("--p", f.p, "prime or comma-separated primes");
    sub->add_option("--D", f.D, "fundamental discriminant");
    sub->add_option("--t", f.t, "comma-separated t-grid");
    sub->add_option("--samples", f.samples, "sample count");
    sub->add_option("--bound", f.bound, "enumeration bound");
    sub->add_option("--seed", f.seed, "64-bit seed");
    sub->add_option("--config", f.config, "INI config file")->check(CLI::ExistingFile);
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--set", f.set, "extra parameter key=value")->take_all();
}

wl::ExperimentConfig build(const std::string& name, const Flags& f) {
    wl::ExperimentConfig cfg;
    if (!f.config.empty()) {
        cfg = wl::ExperimentConfig::from_ini(f.config);
        if (!cfg.name.empty() && name != "run" && cfg.name != name)
            throw wl::ConfigInvalid("config names experiment '" + cfg.name + "' but subcommand is '" + name + "'");
    }
    if (name != "run") cfg.name = name;
    if (cfg.name.empty()) throw wl::ConfigInvalid("no experiment named");
    auto put = [&](const char* key, const std::optional<std::string>& v) {
        if (v) cfg.params[key] = *v;
    };
    put("n", f.n);
    put("p", f.p);
    put("D", f.D);
    put("t", f.t);
    put("samples", f.samples);
    put("bound", f.bound);
    for (const auto& kv : f.set) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw wl::ConfigInvalid("--set expects key=value, got '" + kv + "'");
        cfg.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (f.seed) cfg.seed = *f.seed;
    if (!f.out.empty()) cfg.output = f.out;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weyl law experiment runner"};
    app.require_subcommand(1);
    Flags flags;
    std::vector<std::pair<std::string, CLI::App*>> subs;
    for (const auto& name : wl::experiment_names()) {
        auto* s = app.add_subcommand(name, "run the " + name + " experiment");
        add_flags(s, flags);
        subs.emplace_back(name, s);
    }
    auto* run = app.add_subcommand("run", "run the experiment named in --config");
    add_flags(run, flags);
    subs.emplace_back("run", run);
    app.add_subcommand("list", "list experiments");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (app.got_subcommand("list")) {
        for (const auto& name : wl::experiment_names())
            std::cout << name << "  (" << wl::experiment_module(name) << ")\n";
        return 0;
    }
    std::string name;
    for (const auto& [n, s] : subs)
        if (s->parsed()) name = n;

    std::string module = "cli";
    try {
        const wl::ExperimentConfig cfg = build(name, flags);
        module = wl::experiment_module(cfg.name);
        const wl::Report r = wl::run_experiment(cfg);
        if (cfg.output.empty()) std::cout << r.csv_body();
        wl::write_report(r, cfg, std::cout);
        return r.passed() ? 0 : 1;
    } catch (const wl::Error& e) {
        std::cerr << "error [" << module << "] " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error [" << module << "] " << e.what() << "\n";
        return 2;
    }
}
