#include "checks_impl.hpp"

#include <chrono>
#include <future>
#include <stdexcept>

namespace ekcli {

std::string status_str(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skip: return "skip";
    }
    return "?";
}

namespace {

using CheckFn = CheckResult (*)(const VerifyOptions&);
const CheckFn kChecks[] = {check_bernoulli,         check_dirichlet,    check_one_variable, check_generating,
                           check_translation,       check_damerell,     check_theta_integrality,
                           check_kronecker_integrality, check_period,   check_two_variable, check_restriction,
                           check_yager};

}  // namespace

int criterion_count() { return static_cast<int>(std::size(kChecks)); }

CheckResult run_criterion(int id, const VerifyOptions& opt) {
    if (id < 1 || id > criterion_count()) throw std::out_of_range("no criterion " + std::to_string(id));
    auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
        r = kChecks[id - 1](opt);
    } catch (const std::exception& e) {
        r.id = id;
        r.status = Status::Fail;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<int> suite_criteria(const std::string& suite) {
    if (suite == "cyclotomic") return {1, 2, 3};
    if (suite == "generating") return {4, 5};
    if (suite == "damerell") return {6};
    if (suite == "integrality") return {7, 8, 9};
    if (suite == "measures") return {10, 11, 12};
    if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    throw std::invalid_argument("unknown suite '" + suite + "'");
}

bool VerifyReport::failed() const {
    for (const auto& c : checks)
        if (c.status == Status::Fail) return true;
    return false;
}

nlohmann::json VerifyReport::to_json(bool timings) const {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json j{{"id", c.id}, {"name", c.name}, {"status", status_str(c.status)}, {"detail", c.detail}};
        if (timings) j["seconds"] = c.seconds;
        list.push_back(j);
    }
    return {{"suite", suite}, {"checks", list}, {"failed", failed()}};
}

VerifyReport run_suite(const std::string& suite, const VerifyOptions& opt, int jobs) {
    VerifyReport rep{suite, {}};
    std::vector<int> ids = suite_criteria(suite);
    if (jobs <= 1) {
        for (int id : ids) rep.checks.push_back(run_criterion(id, opt));
        return rep;
    }
    // independent checks in parallel; results collected in criterion order
    std::vector<std::future<CheckResult>> fut;
    for (int id : ids) fut.push_back(std::async(std::launch::async, [id, &opt] { return run_criterion(id, opt); }));
    for (auto& f : fut) rep.checks.push_back(f.get());
    return rep;
}

}  // namespace ekcli
