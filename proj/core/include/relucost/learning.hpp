#ifndef RELUCOST_LEARNING_HPP
#define RELUCOST_LEARNING_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "relucost/dataset.hpp"
#include "relucost/relu_net.hpp"

namespace relucost {

struct AdamParams {
    double lr = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct TrainConfig {
    int depth = 2;
    int width = 64;
    int width2 = 0;  // second hidden width; required when depth == 3
    double lambda = 0.0;
    long iters = 500;
    int restarts = 5;
    std::uint64_t seed = 0;
    double init_scale = -1.0;       // < 0 means 1/sqrt(fan_in) per layer
    long checkpoint_every = 50;     // best-objective log cadence
    const ReluNet* warm_start = nullptr;  // replaces the random init of restart 0
    AdamParams adam;
};

struct TrainResult {
    ReluNet net;       // best candidate seen across all restarts and iterations
    double objective = 0.0;
    double loss = 0.0;
    double cost = 0.0;  // weight_sq_norm / depth
    std::vector<double> checkpoints;  // best objective so far, every checkpoint_every iters
    int chosen_restart = 0;
};

// Full-batch adaptive-moment descent on loss + (lambda/depth) |phi|^2,
// best of cfg.restarts independent starts. Deterministic under cfg.seed.
// Throws TrainingError (with the iteration) if the objective turns non-finite.
TrainResult train_weight_decay(const SphereDataset& data, const TrainConfig& cfg);

struct ParetoPoint {
    ReluNet net;
    double lambda = 0.0;
    double loss = 0.0;
    double cost = 0.0;
};

struct SweepResult {
    std::vector<ParetoPoint> frontier;  // non-dominated, sorted by loss
    std::vector<ParetoPoint> swept;     // every successful cell, grid order
    std::vector<std::pair<double, std::string>> failures;  // (lambda, reason)
    std::vector<std::string> flags;     // non-fatal diagnostics
};

// One training run per grid value, descending lambda with warm starts, then a
// dominance filter. lambda_grid must be positive and sorted ascending.
SweepResult pareto_sweep(const SphereDataset& data, int depth, int width,
                         const std::vector<double>& lambda_grid, const TrainConfig& base);

struct RuleConfig {
    double theta = 0.0;  // loss threshold, > 0
    double alpha = 1.0;  // >= 1
    int depth = 3;
    int width = 64;
    int width2 = 0;
};

struct RuleResult {
    ReluNet net;
    CostCertificate cert;
    bool feasible = false;
    double loss = 0.0;
    double lambda = 0.0;
    double best_loss_found = 0.0;  // smallest loss seen anywhere in the search
    bool alpha_cost_ok = false;    // cost within alpha of the cheapest feasible candidate found
    bool grid_fallback = false;    // bisection bracket was inconsistent
    int trainings = 0;
};

// Largest-lambda model with loss <= theta, by 20-step bisection on a log
// bracket between lambda_lo and lambda_hi (grid fallback if the feasibility
// pattern is non-monotone). Infeasible searches return feasible = false and
// the best loss found; nothing is thrown.
RuleResult rule_srm(const SphereDataset& data, const RuleConfig& rule, double lambda_lo,
                    double lambda_hi, const TrainConfig& base);

struct ProxySelection {
    int index = 0;
    double test_loss = 0.0;
    double test_se = 0.0;
};

// Index of the frontier point with least loss on the held-out set; ties go to
// the least cost, then the earliest index. test_se is the sample standard
// error of that point's held-out loss.
ProxySelection oracle_rule_proxy(const std::vector<ParetoPoint>& frontier,
                                 const SphereDataset& test);

}  // namespace relucost

#endif
