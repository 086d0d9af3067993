#include <doctest.h>

#include <sstream>

#include "ffqaoa/errors.hpp"
#include "ffqaoa/experiment.hpp"

using namespace ffqaoa;

namespace {

ExperimentConfig parse(const std::string& text) {
    std::istringstream in(text);
    return ExperimentConfig::from_stream(in, "test");
}

} // namespace

TEST_CASE("defaults survive a serialize/parse round trip") {
    ExperimentConfig config;
    auto back = parse(config.serialize());
    CHECK(back.task == config.task);
    CHECK(back.model.kind == config.model.kind);
    CHECK(back.model.n == config.model.n);
    CHECK(back.model.jw == config.model.jw);
    CHECK(back.model.jw_prime == config.model.jw_prime);
    CHECK(back.model.jf == config.model.jf);
    CHECK(back.model.h == config.model.h);
    CHECK(back.s_target == config.s_target);
    CHECK(back.seed == config.seed);
    CHECK(back.threads == config.threads);
    CHECK(back.optimizer.n_samples == config.optimizer.n_samples);
    CHECK(back.optimizer.max_iterations == config.optimizer.max_iterations);
    CHECK(back.optimizer.numerical_zero == config.optimizer.numerical_zero);
    CHECK(back.optimizer.polish == config.optimizer.polish);
    CHECK(back.optimizer.polish_max_iterations == config.optimizer.polish_max_iterations);
    CHECK(back.depth.value == config.depth.value);
    CHECK(back.depth.window_lo == config.depth.window_lo);
    CHECK(back.depth.window_hi == config.depth.window_hi);
    CHECK(back.scan.points == config.scan.points);
    CHECK(back.scan.refine == config.scan.refine);
    CHECK(back.sweep.realizations == config.sweep.realizations);
    CHECK(back.sweep.symmetric == config.sweep.symmetric);
}

TEST_CASE("non-default values round trip") {
    ExperimentConfig config;
    config.task = "gap-scan";
    config.model.kind = "disordered";
    config.model.n = 21;
    config.model.disorder_symmetric = true;
    config.model.disorder_seed = 91;
    config.s_target = 0.4;
    config.optimizer.n_samples = 17;
    config.optimizer.polish = false;
    config.optimizer.angle_hi = 3.5;
    config.depth.window_lo = 40;
    config.depth.window_hi = 44;
    config.scan.points = 11;
    config.scan.refine = false;
    config.seed = 999;
    config.threads = 4;

    auto back = parse(config.serialize());
    CHECK(back.task == "gap-scan");
    CHECK(back.model.kind == "disordered");
    CHECK(back.model.n == 21);
    CHECK(back.model.disorder_symmetric);
    CHECK(back.model.disorder_seed == 91);
    CHECK(back.s_target == 0.4);
    CHECK(back.optimizer.n_samples == 17);
    CHECK_FALSE(back.optimizer.polish);
    CHECK(back.optimizer.angle_hi == 3.5);
    CHECK(back.depth.window_lo == 40);
    CHECK(back.depth.window_hi == 44);
    CHECK(back.scan.points == 11);
    CHECK_FALSE(back.scan.refine);
    CHECK(back.seed == 999);
    CHECK(back.threads == 4);
}

TEST_CASE("explicit couplings round trip") {
    ExperimentConfig config;
    config.model.kind = "explicit";
    config.model.n = 4;
    config.model.couplings = {1.0, -0.5, 0.25, 1.0};
    auto back = parse(config.serialize());
    CHECK(back.model.couplings == config.model.couplings);
    auto built = back.model.build();
    CHECK(built.couplings == config.model.couplings);
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_AS(parse("model.coupling_strength = 2\n"), config_error);
    CHECK_THROWS_AS(parse("typo = 1\n"), config_error);
}

TEST_CASE("malformed values are rejected with the key named") {
    try {
        parse("model.n = nope\n");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("model.n") != std::string::npos);
    }
    CHECK_THROWS_AS(parse("optimizer.polish = maybe\n"), config_error);
    CHECK_THROWS_AS(parse("seed = -1\n"), config_error);
}

TEST_CASE("overrides apply after parsing") {
    ExperimentConfig config;
    config.apply_override("model.n=21");
    CHECK(config.model.n == 21);
    config.apply_override("optimizer.n_samples=5");
    CHECK(config.optimizer.n_samples == 5);
    config.apply_override("model.couplings=1,0.5,-1");
    CHECK(config.model.couplings == std::vector<double>{1.0, 0.5, -1.0});
    CHECK_THROWS_AS(config.apply_override("nosuchkey=3"), config_error);
    CHECK_THROWS_AS(config.apply_override("model.n"), config_error);
}

TEST_CASE("validation catches inconsistent configs") {
    ExperimentConfig config;
    config.task = "wat";
    CHECK_THROWS_AS(config.validate(), config_error);

    config = ExperimentConfig();
    config.s_target = 1.5;
    CHECK_THROWS_AS(config.validate(), config_error);

    config = ExperimentConfig();
    config.optimizer.n_samples = 0;
    CHECK_THROWS_AS(config.validate(), config_error);

    config = ExperimentConfig();
    config.optimizer.polish_max_iterations = -1;
    CHECK_THROWS_AS(config.validate(), config_error);

    config = ExperimentConfig();
    config.threads = 0;
    CHECK_THROWS_AS(config.validate(), config_error);

    config = ExperimentConfig();
    config.scan.points = 0;
    CHECK_THROWS_AS(config.validate(), config_error);

    config = ExperimentConfig();
    config.scan.s_min = 0.8;
    config.scan.s_max = 0.2;
    CHECK_THROWS_AS(config.validate(), config_error);

    config = ExperimentConfig();
    CHECK_NOTHROW(config.validate());
}

TEST_CASE("model build dispatches on kind") {
    ExperimentConfig config;
    config.model.kind = "uniform";
    config.model.n = 6;
    CHECK(config.model.build().couplings == std::vector<double>(6, 1.0));
    config.model.kind = "bogus";
    CHECK_THROWS_AS(config.model.build(), config_error);
}

TEST_CASE("comments and blank lines are ignored") {
    auto config =
        parse("# a comment\n\nmodel.n = 7\n  # indented comment\nschedule.s_target = 0.5\n");
    CHECK(config.model.n == 7);
    CHECK(config.s_target == 0.5);
}
