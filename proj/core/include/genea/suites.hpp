#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "genea/params.hpp"
#include "genea/stats.hpp"

namespace genea {

struct SuiteConfig {
    BranchingParams params{1.0, 1.0};
    std::uint64_t seed = 1;
    std::size_t reps = 0; // 0 -> suite defaults; otherwise scales the replicate counts
    unsigned threads = 1;
};

struct ExperimentReport {
    std::string suite;
    std::uint64_t seed = 0;
    BranchingParams params;
    std::vector<TestVerdict> tests;
    bool passed = false;
};

// Validation suites: distributions, metric-oracle, sampler-equality, eex,
// laplace, length-moments.
std::vector<std::string> suite_names();

// Runs one named suite; deterministic given (name, config).
ExperimentReport run_suite(const std::string& name, const SuiteConfig& cfg);

std::string report_to_json(const ExperimentReport& report);
void print_report(std::ostream& os, const ExperimentReport& report);

} // namespace genea
