#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hammerstein/schedule.hpp"

using namespace hammerstein;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("published schedule evaluates literally") {
    const Schedule s = make_paper_schedule();
    CHECK(s.lambda(1) == 1.0);
    CHECK(s.lambda(2) == 0.5);
    CHECK_THAT(s.lambda(3), WithinRel(1.0 / 3.0, 1e-15));
    CHECK(s.theta(1) == 0.5);
    CHECK(s.theta(3) == 0.25);
    CHECK_THAT(s.description, ContainsSubstring("paper_experiment"));
}

TEST_CASE("power-law schedule uses the shifted index") {
    const Schedule s = make_power_law_schedule(0.6, 0.25, 0.49);
    CHECK_THAT(s.lambda(1), WithinRel(0.6597539553864471, 1e-15));   // 2^-0.6
    CHECK_THAT(s.theta(1), WithinRel(0.4120392434743201, 1e-15));    // 0.49 * 2^-0.25
    CHECK(s.theta(1) < 0.5);
    CHECK(s.lambda(1) < 1.0);
    CHECK_THAT(s.description, ContainsSubstring("power_law"));

    // Even the extreme admissible scale keeps theta below 1/2.
    const Schedule edge = make_power_law_schedule(0.6, 0.25, 0.5);
    CHECK(edge.theta(1) < 0.5);
}

TEST_CASE("power-law schedule rejects out-of-range parameters") {
    CHECK_THROWS_AS(make_power_law_schedule(0.0, 0.25, 0.49), ScheduleError);
    CHECK_THROWS_AS(make_power_law_schedule(-0.6, 0.25, 0.49), ScheduleError);
    CHECK_THROWS_AS(make_power_law_schedule(0.6, 0.0, 0.49), ScheduleError);
    CHECK_THROWS_AS(make_power_law_schedule(0.6, 0.25, 0.0), ScheduleError);
    CHECK_THROWS_AS(make_power_law_schedule(0.6, 0.25, 0.51), ScheduleError);
    CHECK_NOTHROW(make_power_law_schedule(0.6, 0.25, 0.5));
}

TEST_CASE("validator rejects malformed requests") {
    CHECK_THROWS_AS(validate_schedule(make_paper_schedule(), 999), ConfigError);
    CHECK_THROWS_AS(validate_schedule(Schedule{}, 1000), ConfigError);
}

TEST_CASE("validator reports the published schedule's own violations") {
    const ScheduleReport r = validate_schedule(make_paper_schedule(), 1000);

    // theta = 1/(n+1) does tend to zero.
    CHECK(r.theta_to_zero.verdict == Verdict::pass);

    // sum lambda_n theta_n = sum 1/(n(n+1)) telescopes to 1 - 1/(N+1):
    // bounded, hence the divergence condition fails.
    CHECK(r.sum_diverges.verdict == Verdict::fail);
    REQUIRE(r.sum_diverges.probes.size() == 2);
    CHECK(r.sum_diverges.probes[0].n == 1000);
    CHECK_THAT(r.sum_diverges.probes[0].value, WithinRel(0.9990009990009997, 1e-9));
    CHECK(r.sum_diverges.probes[1].n == 10000);
    CHECK_THAT(r.sum_diverges.probes[1].value, WithinRel(0.9999000099990007, 1e-9));

    // lambda/theta = (n+1)/n -> 1, not 0.
    CHECK(r.lambda_little_o.verdict == Verdict::fail);

    // (theta_{n-1}/theta_n - 1)/(lambda_n theta_n) = n + 1: grows.
    CHECK(r.ratio_limit.verdict == Verdict::fail);
    REQUIRE(r.ratio_limit.probes.size() == 4);
    CHECK_THAT(r.ratio_limit.probes[0].value, WithinRel(11.0, 1e-9));     // n = 10
    CHECK_THAT(r.ratio_limit.probes[3].value, WithinRel(10001.0, 1e-9)); // n = 10H

    // lambda_1 = 1 and theta_1 = 1/2 sit on the open-range boundary: flagged,
    // not rejected.
    REQUIRE(r.range_flags.size() == 2);
    CHECK_THAT(r.range_flags[0], ContainsSubstring("lambda_1"));
    CHECK_THAT(r.range_flags[1], ContainsSubstring("theta_1"));

    // Every verdict ships with its numeric evidence.
    CHECK_FALSE(r.theta_to_zero.probes.empty());
    CHECK_FALSE(r.lambda_little_o.probes.empty());
    CHECK_FALSE(r.theta_to_zero.note.empty());
    CHECK_FALSE(r.sum_diverges.note.empty());
}

TEST_CASE("compliant power-law schedule passes every condition") {
    const Schedule s = make_power_law_schedule(0.6, 0.25, 0.49);
    const ScheduleReport r = validate_schedule(s, 1000);
    CHECK(r.theta_to_zero.verdict == Verdict::pass);
    CHECK(r.sum_diverges.verdict == Verdict::pass);
    CHECK(r.lambda_little_o.verdict == Verdict::pass);
    CHECK(r.ratio_limit.verdict == Verdict::pass);
    CHECK(r.range_flags.empty());

    REQUIRE(r.sum_diverges.probes.size() == 2);
    const double rel = (r.sum_diverges.probes[1].value - r.sum_diverges.probes[0].value) /
                       r.sum_diverges.probes[0].value;
    CHECK(rel > 0.6);
    CHECK(rel < 0.7);
}

TEST_CASE("constant theta fails the decay condition") {
    Schedule s;
    s.lambda_fn = [](std::uint64_t n) { return 1.0 / static_cast<double>(n); };
    s.theta_fn = [](std::uint64_t) { return 0.4; };
    s.description = "constant theta";
    const ScheduleReport r = validate_schedule(s, 1000);
    CHECK(r.theta_to_zero.verdict == Verdict::fail);
    // Constant theta makes the ratio condition identically zero.
    CHECK(r.ratio_limit.verdict == Verdict::pass);
}

TEST_CASE("verdict labels render") {
    CHECK(std::string(to_string(Verdict::pass)) == "pass");
    CHECK(std::string(to_string(Verdict::fail)) == "fail");
    CHECK(std::string(to_string(Verdict::inconclusive)) == "inconclusive");
}
