#include "doctest.h"
#include "ncis/errors.hpp"
#include "ncis/verify.hpp"

using namespace ncis;

TEST_CASE("every suite passes at the documented sizes") {
    VerifyOptions o;
    o.n = 3;
    o.max_deg = 4;
    o.trials = 1000;
    o.seed = 7;
    for (const auto& name : suite_names()) {
        const Report r = run_suite(name, o);
        CHECK_MESSAGE(r.pass, name);
        CHECK(r.failure_count == 0);
        CHECK(r.failures.empty());
        CHECK(r.suite == name);
        CHECK(r.cases > 0);
    }
    CHECK(run_suite("lemma3", o).cases >= 1000);
    CHECK(run_suite("products", o).cases >= 1000);
}

TEST_CASE("suites are deterministic in the seed") {
    VerifyOptions o;
    o.trials = 200;
    o.seed = 3;
    const Report a = run_suite("lemma3", o), b = run_suite("lemma3", o);
    CHECK(a.cases == b.cases);
    CHECK(a.pass == b.pass);
}

TEST_CASE("unknown suites are rejected") {
    CHECK_THROWS_AS(run_suite("nope", VerifyOptions{}), InvalidArgument);
}

TEST_CASE("reports cap the listed failures") {
    Report r;
    r.suite = "x";
    for (int i = 0; i < 30; ++i) r.check(i % 2 == 0, "case " + std::to_string(i));
    CHECK_FALSE(r.pass);
    CHECK(r.cases == 30);
    CHECK(r.failure_count == 15);
    CHECK(r.failures.size() == std::min<std::size_t>(15, Report::kMaxListed));
    CHECK(r.failures.front() == "case 1");
}
