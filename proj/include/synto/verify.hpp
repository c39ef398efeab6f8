#ifndef SYNTO_VERIFY_HPP
#define SYNTO_VERIFY_HPP

#include <string>
#include <vector>

namespace synto::verify {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // first failure, or a summary of what was covered
};

// Runs the full acceptance checklist; golden_dir holds the reference chart
// renders. Each check catches its own exceptions and reports them as failures.
std::vector<CheckResult> run_all(const std::string& golden_dir);

bool all_pass(const std::vector<CheckResult>& results);

// "criterion N: PASS - name (detail)" per line.
std::string format_report(const std::vector<CheckResult>& results);

}  // namespace synto::verify

#endif
