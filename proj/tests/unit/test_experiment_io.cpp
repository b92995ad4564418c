#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <string>

#include "relucost/errors.hpp"
#include "relucost/experiment.hpp"
#include "relucost/geometry.hpp"
#include "relucost/io.hpp"

using namespace relucost;

namespace {

const char* kHeader =
    "d,m,depth,width,lambda,theta,alpha,seed,train_loss,test_loss,test_se,cost,"
    "tent_bound,status";

ExperimentConfig tiny_config() {
    ExperimentConfig cfg;
    cfg.d_list = {2};
    cfg.m_list = {8};
    cfg.seeds = 1;
    cfg.root_seed = 5;
    cfg.theta_override = 0.5;
    cfg.depth2_width = 16;
    cfg.depth3_width1 = 8;
    cfg.depth3_width2 = 4;
    cfg.lambda_count = 3;
    cfg.lambda_min = 1e-3;
    cfg.lambda_max = 1.0;
    cfg.test_samples = 400;
    cfg.iters = 40;
    cfg.adam_lr = 0.02;
    cfg.restarts = 1;
    return cfg;
}

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "relucost_unit_io";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("a one-cell experiment yields paired rows with shared tent bound") {
    const ExperimentResult res = run_separation_experiment(tiny_config());
    REQUIRE(res.rows.size() == 2);

    const ExperimentRow& shallow = res.rows[0];
    const ExperimentRow& deep = res.rows[1];
    CHECK(shallow.depth == 2);
    CHECK(deep.depth == 3);
    CHECK(shallow.width == 16);
    CHECK(deep.width == 8);
    for (const ExperimentRow* r : {&shallow, &deep}) {
        CHECK(r->d == 2);
        CHECK(r->m == 8);
        CHECK(r->seed == 0);
        CHECK(r->theta == 0.5);
        CHECK(r->alpha == 2.0);
        CHECK(!r->status.empty());
    }
    CHECK(shallow.tent_bound == deep.tent_bound);
    CHECK(shallow.tent_bound > 0.0);
    CHECK(std::isfinite(shallow.test_loss));
    CHECK(shallow.test_se >= 0.0);

    // Same configuration, same bytes.
    const ExperimentResult again = run_separation_experiment(tiny_config());
    CHECK(experiment_csv(res) == experiment_csv(again));
}

TEST_CASE("the results table round-trips through its own parser") {
    const ExperimentResult res = run_separation_experiment(tiny_config());
    const std::string csv = experiment_csv(res);
    CHECK(csv.rfind(kHeader, 0) == 0);

    const ExperimentResult parsed = parse_experiment_csv(csv);
    REQUIRE(parsed.rows.size() == res.rows.size());
    CHECK(experiment_csv(parsed) == csv);

    const std::string summary = experiment_summary(res);
    CHECK(summary.find("rows 2") != std::string::npos);
    CHECK(summary.find("d=2 m=8 depth=2") != std::string::npos);

    // Long format: six metric lines per row plus the header line.
    const std::string long_csv = experiment_long_csv(res);
    CHECK(long_csv.rfind("d,m,depth,seed,metric,value\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : long_csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 1 + 6 * res.rows.size());
}

TEST_CASE("an empty result is a bare header that still parses") {
    ExperimentResult empty;
    const std::string csv = experiment_csv(empty);
    CHECK(csv == std::string(kHeader) + "\n");
    CHECK(parse_experiment_csv(csv).rows.empty());
    CHECK(experiment_summary(empty).find("rows 0") != std::string::npos);
}

TEST_CASE("the parser rejects schema drift") {
    CHECK_THROWS_AS(parse_experiment_csv(""), ParseError);
    CHECK_THROWS_AS(parse_experiment_csv("d,m,depth\n1,2,3\n"), ParseError);
    const std::string bad_row = std::string(kHeader) + "\n1,2,3\n";
    CHECK_THROWS_AS(parse_experiment_csv(bad_row), ParseError);
    const std::string bad_field =
        std::string(kHeader) + "\n2,8,2,16,x,0.5,2,0,0,0,0,0,0,ok\n";
    CHECK_THROWS_AS(parse_experiment_csv(bad_field), ParseError);
}

TEST_CASE("experiment configuration round-trips through the key-value format") {
    const auto dir = scratch_dir();
    const auto path = (dir / "exp.cfg").string();

    const ExperimentConfig cfg = tiny_config();
    const std::string text = experiment_config_text(cfg);
    write_text_file(path, text);

    ExperimentConfig parsed;  // defaults, then overridden by the file
    apply_experiment_config(parse_kv_file(path), parsed);
    CHECK(experiment_config_text(parsed) == text);

    std::map<std::string, std::string> unknown{{"nonsense", "1"}};
    CHECK_THROWS_AS(apply_experiment_config(unknown, parsed), UsageError);
    std::map<std::string, std::string> malformed{{"iters", "abc"}};
    CHECK_THROWS_AS(apply_experiment_config(malformed, parsed), UsageError);

    write_text_file(path, "iters = 5\niters = 6\n");
    CHECK_THROWS_AS(parse_kv_file(path), ParseError);

    write_text_file(path, "# comment only\n\niters = 7\n");
    const auto kv = parse_kv_file(path);
    REQUIRE(kv.size() == 1);
    CHECK(kv.at("iters") == "7");
}

TEST_CASE("datasets round-trip through their text format") {
    const auto dir = scratch_dir();
    const auto path = (dir / "data.txt").string();

    SphereDataset data = sample_product_sphere(3, 5, 77);
    label_with_target(data);
    save_dataset(path, data);
    const SphereDataset back = load_dataset(path);
    CHECK(back.d == 3);
    CHECK(back.m() == 5);
    CHECK(back.seed == 77);
    REQUIRE(back.labeled());
    CHECK((back.X - data.X).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.y - data.y).cwiseAbs().maxCoeff() == 0.0);

    SphereDataset plain = sample_product_sphere(2, 4, 9);
    save_dataset(path, plain);
    const SphereDataset back2 = load_dataset(path);
    CHECK(!back2.labeled());
    CHECK((back2.X - plain.X).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(load_dataset((dir / "absent.txt").string()), IoError);
}
