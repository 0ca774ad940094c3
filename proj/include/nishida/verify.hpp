#pragma once

// Session configuration, the verification suites and report formatting.

#include <stdexcept>
#include <string>
#include <vector>

#include "nishida/charnum.hpp"

namespace nishida {

/// Bad option values (exit 2 in the CLI).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested precision beyond the configured budget (exit 3 in the CLI).
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Text, Json };

struct SessionConfig {
    int cap = 8;
    int maxweight = 4;
    FglKind fgl = FglKind::Universal;
    Quadratic quadratic = Quadratic::XF;
    SubstitutionReading reading = SubstitutionReading::Whole;
    OutputFormat output = OutputFormat::Text;
    /// Largest cap accepted.
    int max_cap = 16;

    /// Throws UsageError or BudgetError.
    void validate() const;
};

/// NISHIDA_CAP when set, otherwise 8; throws UsageError on a malformed value.
int default_cap();

FglKind parse_fgl(const std::string& s);
Quadratic parse_quadratic(const std::string& s);
SubstitutionReading parse_reading(const std::string& s);
OutputFormat parse_output(const std::string& s);
const char* fgl_name(FglKind k);

/// Suite names in execution order.
const std::vector<std::string>& suite_names();
/// One suite, or every suite for "all"; throws UsageError on unknown names.
std::vector<Report> run_suites(const std::string& name, const SessionConfig& cfg);
Report run_suite(const std::string& name, const SessionConfig& cfg);

/// One line per case; JSON lines carry "schema":1.
std::string format_report(const Report& r, OutputFormat format);
std::string format_reports(const std::vector<Report>& rs, OutputFormat format);
bool all_pass(const std::vector<Report>& rs);

/// Partitions of n into parts not of the form 2^k - 1.
int count_non_dyadic_partitions(int n);

}  // namespace nishida
