#pragma once

#include "mpfa/approx_design.hpp"
#include "mpfa/counting.hpp"
#include "mpfa/pfa.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace mpfa {

enum class KernelKind { Approx, FastExact, Definition };

// Static count read off the kernel's schedule plus, for Approx, its scale stage.
OpCount count_kernel(std::size_t n, KernelKind kind, ScaleMode mode = ScaleMode::None);

// Same, measured by executing the kernel on one random complex input with counted arithmetic.
OpCount instrumented_kernel_count(std::size_t n, KernelKind kind, ScaleMode mode = ScaleMode::None,
                                  unsigned seed = 1);

// Number of invocations of each leaf length in one plan execution.
std::map<std::size_t, std::size_t> leaf_calls(const ExecutionPlan& p);

OpCount count_plan(const ExecutionPlan& p);
OpCount instrumented_count(const ExecutionPlan& p, unsigned seed = 1);

struct ComplexityRow {
    std::string group;  // "ground" or "1023" or "reference"
    std::string name;
    OpCount count;
    bool external = false;  // constant quoted for comparison, not computed here
};

std::vector<ComplexityRow> complexity_report();

enum class ReportFormat { Csv, Text, Json };
ReportFormat report_format_from_string(const std::string& s);

std::string render(const std::vector<ComplexityRow>& rows, ReportFormat fmt);

} // namespace mpfa
