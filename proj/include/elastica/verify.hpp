#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace elastica::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double measured = 0.0;  // headline number of the criterion
    std::string detail;
};

struct Options {
    bool full = true;  // full resolutions; quick drops grid sizes for a fast pass
    // Test hook: additive corruption of the quadrature constant used by the
    // closed-form comparisons, to exercise failure reporting.
    double quadrature_fault = 0.0;
};

// Runs the whole verification suite; one result per criterion. Progress
// lines (one per criterion) are written to *progress when given.
std::vector<CriterionResult> run_suite(const Options& options, std::ostream* progress = nullptr);

bool all_pass(const std::vector<CriterionResult>& results);

std::string suite_json(const std::vector<CriterionResult>& results, bool full);

}  // namespace elastica::verify
