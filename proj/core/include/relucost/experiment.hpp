#ifndef RELUCOST_EXPERIMENT_HPP
#define RELUCOST_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "relucost/learning.hpp"

namespace relucost {

struct ExperimentConfig {
    std::vector<int> d_list{2, 3, 4, 5};
    std::vector<int> m_list{50, 200, 800};
    int seeds = 10;
    std::uint64_t root_seed = 20240817;
    double epsilon = 0.05;       // theta = epsilon / 4 unless overridden
    double theta_override = -1;  // > 0 replaces epsilon / 4
    double alpha = 2.0;
    int depth2_width = 128;
    int depth3_width1 = 64;
    int depth3_width2 = 32;
    int lambda_count = 12;
    double lambda_min = 1e-6;
    double lambda_max = 10.0;
    long test_samples = 100000;
    long iters = 300;
    double adam_lr = 0.01;
    int restarts = 1;

    double theta() const { return theta_override > 0.0 ? theta_override : epsilon / 4.0; }
};

// One row per (cell, depth); the depth-2 row carries the oracle-proxy pick,
// the depth-3 row the rule_srm outcome. seed is the per-cell index, not the
// derived sampling seed.
struct ExperimentRow {
    int d = 0, m = 0, depth = 0, width = 0;
    double lambda = 0.0, theta = 0.0, alpha = 0.0;
    int seed = 0;
    double train_loss = 0.0, test_loss = 0.0, test_se = 0.0, cost = 0.0, tent_bound = 0.0;
    std::string status;  // "ok", "infeasible", "error:..."; ';'-separated tags
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<ExperimentRow> rows;  // cell-major: d, then m, then seed, then depth
};

// Mean and standard error of the squared error of net on a held-out set.
struct HoldoutLoss {
    double mean = 0.0;
    double se = 0.0;
};
HoldoutLoss holdout_loss(const ReluNet& net, const SphereDataset& test);

ExperimentResult run_separation_experiment(const ExperimentConfig& cfg);

}  // namespace relucost

#endif
