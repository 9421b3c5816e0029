#pragma once
// The acceptance checks, shared by `ekcli verify` and the acceptance test.
#include "json.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace ekcli {

enum class Status { Pass, Fail, Skip };
std::string status_str(Status s);

struct CheckResult {
    int id = 0;
    std::string name;
    Status status = Status::Fail;
    std::string detail;
    double seconds = 0;

    CheckResult() = default;
    CheckResult(int i, std::string n) : id(i), name(std::move(n)) {}
};

struct VerifyOptions {
    std::optional<long> p;        // overrides the prime of the p-adic checks
    std::optional<int> degree;    // overrides the integrality degree
    long bits = 512;
};

int criterion_count();
CheckResult run_criterion(int id, const VerifyOptions& opt = {});

// cyclotomic, generating, damerell, integrality, measures, all
std::vector<int> suite_criteria(const std::string& suite);

struct VerifyReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool failed() const;
    nlohmann::json to_json(bool timings = true) const;
};
// jobs > 1 runs the checks concurrently; the report order is fixed
VerifyReport run_suite(const std::string& suite, const VerifyOptions& opt = {}, int jobs = 1);

// nullopt when p ≥ 5 is split (hence ordinary) for the curve; otherwise the reason
std::optional<std::string> unsupported_prime(const std::string& curve, long p);

// the Damerell pairs of the acceptance check: (c1, c2, c1', c2') per curve
struct DamerellPair {
    std::string curve;
    mpq_class z1, z2, w1, w2;
};
const std::vector<DamerellPair>& damerell_pairs();

}  // namespace ekcli
