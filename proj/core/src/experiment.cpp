#include "relucost/experiment.hpp"

#include <cmath>
#include <limits>

#include "relucost/compensated.hpp"
#include "relucost/constructions.hpp"
#include "relucost/errors.hpp"
#include "relucost/geometry.hpp"
#include "relucost/rng.hpp"

namespace relucost {

namespace {

constexpr std::uint64_t kTrainTag = 0x65787031;
constexpr std::uint64_t kTestTag = 0x65787032;
constexpr std::uint64_t kSweepTag = 0x65787033;
constexpr std::uint64_t kRuleTag = 0x65787034;

std::uint64_t cell_seed(std::uint64_t root, std::uint64_t tag, int d, int m, int seed_idx) {
    std::uint64_t s = seed_combine(root, tag);
    s = seed_combine(s, static_cast<std::uint64_t>(d));
    s = seed_combine(s, static_cast<std::uint64_t>(m));
    return seed_combine(s, static_cast<std::uint64_t>(seed_idx));
}

const double kNan = std::numeric_limits<double>::quiet_NaN();

}  // namespace

HoldoutLoss holdout_loss(const ReluNet& net, const SphereDataset& test) {
    if (test.m() < 2) throw UsageError("holdout_loss: need at least two points");
    if (!test.labeled()) throw UsageError("holdout_loss: held-out set has no labels");
    const Eigen::VectorXd f = evaluate_batch(net, test.X);
    NeumaierSum sum_z, sum_z2;
    for (Eigen::Index k = 0; k < f.size(); ++k) {
        const double e = f[k] - test.y[k];
        const double z = e * e;
        sum_z.add(z);
        sum_z2.add(z * z);
    }
    const double n = static_cast<double>(test.m());
    HoldoutLoss out;
    out.mean = sum_z.value() / n;
    const double var = std::max(0.0, sum_z2.value() / n - out.mean * out.mean);
    out.se = std::sqrt(var / n);
    return out;
}

ExperimentResult run_separation_experiment(const ExperimentConfig& cfg) {
    if (cfg.d_list.empty() || cfg.m_list.empty())
        throw UsageError("experiment: d_list and m_list must be nonempty");
    for (int d : cfg.d_list)
        if (d < 2) throw UsageError("experiment: every d must be >= 2");
    for (int m : cfg.m_list)
        if (m < 1) throw UsageError("experiment: every m must be >= 1");
    if (cfg.seeds < 1) throw UsageError("experiment: seeds must be >= 1");
    if (cfg.lambda_count < 1 || cfg.lambda_min <= 0.0 || cfg.lambda_min > cfg.lambda_max)
        throw UsageError("experiment: invalid lambda grid");
    if (cfg.test_samples < 2) throw UsageError("experiment: test_samples must be >= 2");

    std::vector<double> grid(cfg.lambda_count);
    for (int i = 0; i < cfg.lambda_count; ++i) {
        const double frac = cfg.lambda_count == 1 ? 0.0 : double(i) / (cfg.lambda_count - 1);
        grid[i] = std::exp(std::log(cfg.lambda_min) +
                           frac * (std::log(cfg.lambda_max) - std::log(cfg.lambda_min)));
    }

    const double theta = cfg.theta();
    ExperimentResult result;
    result.config = cfg;

    for (int d : cfg.d_list) {
        SphereDataset test = sample_product_sphere(
            d, static_cast<int>(cfg.test_samples), cell_seed(cfg.root_seed, kTestTag, d, 0, 0));
        label_with_target(test);

        for (int m : cfg.m_list) {
            for (int seed_idx = 0; seed_idx < cfg.seeds; ++seed_idx) {
                SphereDataset data = sample_product_sphere(
                    d, m, cell_seed(cfg.root_seed, kTrainTag, d, m, seed_idx));
                label_with_target(data);

                double tent_cost = kNan;
                std::string tent_note;
                try {
                    tent_cost = tent_interpolant(data).cert.cost_value;
                } catch (const std::exception& e) {
                    tent_note = std::string(";tent_error:") + e.what();
                }

                ExperimentRow base_row;
                base_row.d = d;
                base_row.m = m;
                base_row.theta = theta;
                base_row.alpha = cfg.alpha;
                base_row.seed = seed_idx;
                base_row.tent_bound = tent_cost;

                // Depth-2 side: sweep the lambda grid, let the held-out set pick.
                {
                    ExperimentRow row = base_row;
                    row.depth = 2;
                    row.width = cfg.depth2_width;
                    TrainConfig tc;
                    tc.iters = cfg.iters;
                    tc.restarts = cfg.restarts;
                    tc.adam.lr = cfg.adam_lr;
                    tc.seed = cell_seed(cfg.root_seed, kSweepTag, d, m, seed_idx);
                    SweepResult sweep = pareto_sweep(data, 2, cfg.depth2_width, grid, tc);
                    if (sweep.frontier.empty()) {
                        row.lambda = kNan;
                        row.train_loss = kNan;
                        row.test_loss = kNan;
                        row.test_se = kNan;
                        row.cost = kNan;
                        row.status = "error:empty_frontier" + tent_note;
                    } else {
                        const ProxySelection sel = oracle_rule_proxy(sweep.frontier, test);
                        const ParetoPoint& p = sweep.frontier[sel.index];
                        row.lambda = p.lambda;
                        row.train_loss = p.loss;
                        row.test_loss = sel.test_loss;
                        row.test_se = sel.test_se;
                        row.cost = p.cost;
                        row.status = "ok" + tent_note;
                        if (!sweep.failures.empty())
                            row.status += ";sweep_failures:" + std::to_string(sweep.failures.size());
                    }
                    result.rows.push_back(std::move(row));
                }

                // Depth-3 side: the practical rule at threshold theta.
                {
                    ExperimentRow row = base_row;
                    row.depth = 3;
                    row.width = cfg.depth3_width1;
                    TrainConfig tc;
                    tc.iters = cfg.iters;
                    tc.restarts = cfg.restarts;
                    tc.adam.lr = cfg.adam_lr;
                    tc.seed = cell_seed(cfg.root_seed, kRuleTag, d, m, seed_idx);
                    RuleConfig rule;
                    rule.theta = theta;
                    rule.alpha = cfg.alpha;
                    rule.depth = 3;
                    rule.width = cfg.depth3_width1;
                    rule.width2 = cfg.depth3_width2;
                    RuleResult rr = rule_srm(data, rule, cfg.lambda_min, cfg.lambda_max, tc);
                    const bool have_net = !rr.net.hidden.empty();
                    row.lambda = have_net ? rr.lambda : kNan;
                    row.train_loss = have_net ? rr.loss : kNan;
                    row.cost = have_net ? rr.cert.cost_value : kNan;
                    if (have_net) {
                        const HoldoutLoss hl = holdout_loss(rr.net, test);
                        row.test_loss = hl.mean;
                        row.test_se = hl.se;
                    } else {
                        row.test_loss = kNan;
                        row.test_se = kNan;
                    }
                    if (!have_net) {
                        row.status = "error:all_trainings_diverged" + tent_note;
                    } else if (!rr.feasible) {
                        row.status = "infeasible;best_loss=" + std::to_string(rr.best_loss_found) +
                                     tent_note;
                    } else {
                        row.status = "ok" + tent_note;
                    }
                    if (rr.grid_fallback) row.status += ";grid_fallback";
                    result.rows.push_back(std::move(row));
                }
            }
        }
    }
    return result;
}

}  // namespace relucost
