#pragma once

// Named experiments behind the command-line front end. Every experiment is a
// pure function of its config: the CSV and JSON-lines bodies depend only on
// the parameters and the seed.

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace wl {

struct ExperimentConfig {
    std::string name;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 1;
    std::string output;  // directory for report files; empty writes nothing

    bool has(const std::string& key) const { return params.count(key) > 0; }
    std::string get(const std::string& key, const std::string& def) const;
    long long get_int(const std::string& key, long long def) const;
    double get_double(const std::string& key, double def) const;
    std::vector<double> get_list(const std::string& key, const std::vector<double>& def) const;
    std::vector<long long> get_int_list(const std::string& key, const std::vector<long long>& def) const;

    // INI file: [experiment] name, seed, output; [params] key = value
    static ExperimentConfig from_ini(const std::string& path);
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<nlohmann::json> records;
    std::vector<CheckResult> checks;

    bool passed() const;
    std::string csv_body() const;    // column line plus rows
    std::string jsonl_body() const;  // one record per line
};

const std::vector<std::string>& experiment_names();
// Library module an experiment exercises, used to tag propagated errors.
std::string experiment_module(const std::string& name);

// ConfigInvalid for unknown experiments or parameters.
Report run_experiment(const ExperimentConfig& cfg);

// Writes <output>/<name>.csv, .jsonl and .summary.txt when output is set;
// the summary always goes to `summary`. Timestamps appear only in headers.
void write_report(const Report& r, const ExperimentConfig& cfg, std::ostream& summary);

}  // namespace wl
