#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tqf/enumerate.hpp"

namespace tqf {

struct SuiteResult {
    std::string name;
    bool pass = true;
    std::string detail;  // first counterexample when failing
};

struct SuiteSpec {
    std::string name;
    std::string description;
    i64 default_max = 0;  // 0: the suite has no range parameter
};

// Data-driven registry of the verification suites; new instances are rows,
// not code forks.
const std::vector<SuiteSpec>& verify_suites();

bool is_verify_suite(const std::string& name);

// Runs one suite, optionally overriding its range parameter.
SuiteResult run_suite(const std::string& name, std::optional<i64> max_override = std::nullopt,
                      EnumBudget* budget = nullptr);

// Independent counting oracle: plain box scan with per-coordinate bounds
// x_i^2 <= k * adj(G)_ii / det(G), no pruning. Lives here only to be
// compared against the production enumerator.
i64 naive_box_count(const QuadForm& f, i64 k);

}  // namespace tqf
