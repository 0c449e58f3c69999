#include <doctest.h>

#include "geomsched/instance.hpp"
#include "support/gen.hpp"

using namespace geomsched;

TEST_CASE("validate accepts a consistent two-job chain") {
    auto inst = testing::make_e1();
    auto report = validate_instance(inst);
    CHECK(report.ok());
}

TEST_CASE("validate flags self-precedence") {
    auto inst = testing::make_e1();
    inst.jobs[0].preds = {1};
    auto report = validate_instance(inst);
    REQUIRE_FALSE(report.ok());
    bool found = false;
    for (const auto& v : report.violations)
        if (v.find("self-precedence at job 1") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("validate reports the smallest cycle with a witness") {
    auto inst = testing::make_e1();
    inst.jobs[0].preds = {2};  // 1 -> 2 and 2 -> 1
    auto report = validate_instance(inst);
    REQUIRE_FALSE(report.ok());
    bool found = false;
    for (const auto& v : report.violations)
        if (v.find("cycle") != std::string::npos &&
            v.find("1") != std::string::npos && v.find("2") != std::string::npos)
            found = true;
    CHECK(found);
}

TEST_CASE("validate flags dangling ids, bad demands, and bad availabilities") {
    auto inst = testing::make_e1();
    inst.jobs[1].preds = {7};
    inst.jobs[0].demands = {-1.0};
    inst.jobs[1].demands = {1.0, 2.0};
    inst.resources.push_back(ResourceProfile(2, std::vector<double>{1.0, 2.0}));
    auto report = validate_instance(inst);
    std::string all;
    for (const auto& v : report.violations) all += v + "\n";
    CHECK(all.find("dangling predecessor id 7") != std::string::npos);
    CHECK(all.find("negative demand") != std::string::npos);
    CHECK(all.find("demands length") != std::string::npos);
    CHECK(all.find("availability vector length") != std::string::npos);
}

TEST_CASE("resource profiles extend past their horizon") {
    ResourceProfile constant(1, 2.5);
    CHECK(constant.available(100) == doctest::Approx(2.5));
    CHECK(constant.cumulative_available(4) == doctest::Approx(10.0));

    ResourceProfile vec(2, std::vector<double>{1.0, 2.0, 3.0});
    CHECK(vec.available(2) == doctest::Approx(2.0));
    CHECK(vec.available(5) == doctest::Approx(3.0));  // repeats the last value
    CHECK(vec.cumulative_available(5) == doctest::Approx(12.0));
    CHECK(vec.cumulative_available(0) == 0.0);
}

TEST_CASE("random instances validate cleanly") {
    std::mt19937 rng(12345);
    for (int i = 0; i < 200; ++i) {
        auto inst = testing::random_instance(rng);
        CHECK(validate_instance(inst).ok());
    }
}
