#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "synto/verify.hpp"

TEST_CASE("acceptance checklist") {
    auto results = synto::verify::run_all(SYNTO_GOLDEN_DIR);
    std::fputs(synto::verify::format_report(results).c_str(), stdout);
    REQUIRE(results.size() == 9);
    for (const auto& r : results) {
        CAPTURE(r.id);
        CAPTURE(r.detail);
        CHECK(r.pass);
    }
}
