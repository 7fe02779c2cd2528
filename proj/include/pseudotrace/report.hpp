#ifndef PSEUDOTRACE_REPORT_HPP
#define PSEUDOTRACE_REPORT_HPP

#include "json.hpp"

#include <string>
#include <vector>

namespace pt
{

inline constexpr const char *kVersion = "1.0.0";

enum class Status { Pass, Fail, Skipped };

std::string to_string(Status s);

struct Check {
    std::string id;
    nlohmann::json params = nlohmann::json::object();
    Status status = Status::Pass;
    std::string detail;
};

struct Report {
    std::string suite;
    std::vector<Check> checks;

    void add(std::string id, nlohmann::json params, bool ok, std::string detail = "");
    void skip(std::string id, nlohmann::json params, std::string detail);
    void fail(std::string id, nlohmann::json params, std::string detail);
    void merge(const Report &other);

    long count(Status s) const;
    bool ok() const
    {
        return count(Status::Fail) == 0;
    }
    // checks sorted by id
    nlohmann::json to_json() const;
    std::string to_text() const;
};

} // namespace pt

#endif
