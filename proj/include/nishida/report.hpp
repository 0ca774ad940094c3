#pragma once

#include <string>
#include <vector>

namespace nishida {

enum class Status { Pass, Fail, Skipped, Info };

const char* status_name(Status s);

/// One verified case. `degree` is the largest degree the case covered.
struct CheckLine {
    std::string name;
    int degree = 0;
    Status status = Status::Pass;
    std::string detail;
};

struct Report {
    std::string suite;
    int degree_lo = 0;
    int degree_hi = 0;
    std::vector<CheckLine> lines;

    void add(std::string name, int degree, bool ok, std::string detail = {});
    void info(std::string name, int degree, std::string detail);
    void skip(std::string name, int degree, std::string why);
    void append(const Report& other);
    bool all_pass() const;
    /// First failing line's degree, or -1.
    int first_failure_degree() const;
};

}  // namespace nishida
