#include "nishida/report.hpp"

namespace nishida {

const char* status_name(Status s)
{
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
    case Status::Info: return "info";
    }
    return "?";
}

void Report::add(std::string name, int degree, bool ok, std::string detail)
{
    lines.push_back({std::move(name), degree, ok ? Status::Pass : Status::Fail, std::move(detail)});
}

void Report::info(std::string name, int degree, std::string detail)
{
    lines.push_back({std::move(name), degree, Status::Info, std::move(detail)});
}

void Report::skip(std::string name, int degree, std::string why)
{
    lines.push_back({std::move(name), degree, Status::Skipped, std::move(why)});
}

void Report::append(const Report& other) { lines.insert(lines.end(), other.lines.begin(), other.lines.end()); }

bool Report::all_pass() const
{
    for (auto& l : lines)
        if (l.status == Status::Fail)
            return false;
    return true;
}

int Report::first_failure_degree() const
{
    for (auto& l : lines)
        if (l.status == Status::Fail)
            return l.degree;
    return -1;
}

}  // namespace nishida
