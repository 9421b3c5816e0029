// One line per acceptance criterion; exit status 1 if any fails.
// `acceptance 4 7` runs only the listed criteria.
#include "ekcli/checks.hpp"

#include <cstdio>
#include <cstdlib>
#include <vector>

int main(int argc, char** argv) {
    using namespace ekcli;
    std::vector<int> ids;
    for (int k = 1; k < argc; ++k) ids.push_back(std::atoi(argv[k]));
    if (ids.empty())
        for (int k = 1; k <= criterion_count(); ++k) ids.push_back(k);
    int failed = 0;
    for (int id : ids) {
        CheckResult r = run_criterion(id);
        const char* tag = r.status == Status::Pass ? "PASS" : r.status == Status::Skip ? "SKIP" : "FAIL";
        std::printf("criterion %2d %s  %s (%.1f s): %s\n", id, tag, r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
        failed += r.status == Status::Fail;
    }
    std::printf("%d of %zu criteria failed\n", failed, ids.size());
    return failed ? 1 : 0;
}
