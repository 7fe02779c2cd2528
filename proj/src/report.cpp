#include <pseudotrace/report.hpp>

#include <algorithm>
#include <sstream>

namespace pt
{

std::string to_string(Status s)
{
    switch (s) {
    case Status::Pass:
        return "PASS";
    case Status::Fail:
        return "FAIL";
    default:
        return "SKIPPED";
    }
}

void Report::add(std::string id, nlohmann::json params, bool ok, std::string detail)
{
    checks.push_back({std::move(id), std::move(params), ok ? Status::Pass : Status::Fail, std::move(detail)});
}

void Report::skip(std::string id, nlohmann::json params, std::string detail)
{
    checks.push_back({std::move(id), std::move(params), Status::Skipped, std::move(detail)});
}

void Report::fail(std::string id, nlohmann::json params, std::string detail)
{
    checks.push_back({std::move(id), std::move(params), Status::Fail, std::move(detail)});
}

void Report::merge(const Report &other)
{
    for (const auto &c : other.checks) {
        Check copy = c;
        if (!other.suite.empty() && other.suite != suite)
            copy.id = other.suite + "/" + c.id;
        checks.push_back(std::move(copy));
    }
}

long Report::count(Status s) const
{
    return std::count_if(checks.begin(), checks.end(), [s](const Check &c) { return c.status == s; });
}

namespace
{

std::vector<const Check *> sorted(const std::vector<Check> &checks)
{
    std::vector<const Check *> v;
    for (const auto &c : checks)
        v.push_back(&c);
    std::stable_sort(v.begin(), v.end(), [](const Check *a, const Check *b) { return a->id < b->id; });
    return v;
}

} // namespace

nlohmann::json Report::to_json() const
{
    nlohmann::json arr = nlohmann::json::array();
    for (const Check *c : sorted(checks))
        arr.push_back({{"id", c->id}, {"params", c->params}, {"status", pt::to_string(c->status)}, {"detail", c->detail}});
    nlohmann::json summary = {{"total", checks.size()},
                              {"pass", count(Status::Pass)},
                              {"fail", count(Status::Fail)},
                              {"skipped", count(Status::Skipped)}};
    return {{"suite", suite}, {"version", kVersion}, {"checks", arr}, {"summary", summary}};
}

std::string Report::to_text() const
{
    std::ostringstream os;
    os << "suite " << suite << " (version " << kVersion << ")\n";
    for (const Check *c : sorted(checks)) {
        os << pt::to_string(c->status) << "  " << c->id;
        if (!c->params.empty())
            os << "  " << c->params.dump();
        if (!c->detail.empty())
            os << "  " << c->detail;
        os << "\n";
    }
    os << "total " << checks.size() << ", pass " << count(Status::Pass) << ", fail " << count(Status::Fail)
       << ", skipped " << count(Status::Skipped) << "\n";
    return os.str();
}

} // namespace pt
