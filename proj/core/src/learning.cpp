#include "relucost/learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "relucost/compensated.hpp"
#include "relucost/errors.hpp"
#include "relucost/rng.hpp"

namespace relucost {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw UsageError(msg);
}

void check_train_config(const SphereDataset& data, const TrainConfig& cfg) {
    require(data.m() >= 1, "train: dataset is empty");
    require(data.labeled(), "train: dataset has no labels");
    require(cfg.depth == 2 || cfg.depth == 3, "train: depth must be 2 or 3");
    require(cfg.width >= 1, "train: width must be >= 1");
    require(cfg.depth == 2 || cfg.width2 >= 1, "train: depth 3 needs width2 >= 1");
    require(cfg.lambda >= 0.0, "train: lambda must be nonnegative");
    require(cfg.iters >= 1, "train: iters must be >= 1");
    require(cfg.restarts >= 1, "train: restarts must be >= 1");
    require(cfg.checkpoint_every >= 1, "train: checkpoint_every must be >= 1");
    require(cfg.adam.lr > 0.0, "train: step size must be positive");
}

ReluNet random_init(const TrainConfig& cfg, int input_dim, Rng& rng) {
    std::vector<int> widths{cfg.width};
    if (cfg.depth == 3) widths.push_back(cfg.width2);
    ReluNet net;
    net.hidden.resize(widths.size());
    int fan_in = input_dim;
    for (std::size_t l = 0; l < widths.size(); ++l) {
        const int w = widths[l];
        const double sc = cfg.init_scale > 0.0 ? cfg.init_scale : 1.0 / std::sqrt(double(fan_in));
        net.hidden[l].W.resize(w, fan_in);
        for (int i = 0; i < w; ++i)
            for (int j = 0; j < fan_in; ++j) net.hidden[l].W(i, j) = sc * rng.normal();
        net.hidden[l].b = Eigen::VectorXd::Zero(w);
        fan_in = w;
    }
    const double sc = cfg.init_scale > 0.0 ? cfg.init_scale : 1.0 / std::sqrt(double(fan_in));
    net.out_w.resize(fan_in);
    for (int i = 0; i < fan_in; ++i) net.out_w[i] = sc * rng.normal();
    net.out_b = 0.0;
    return net;
}

// First/second moment state, shaped like the parameters.
struct Moments {
    NetGrad m, v;
};

Moments zero_moments(const ReluNet& net) {
    Moments mo;
    for (NetGrad* g : {&mo.m, &mo.v}) {
        g->hidden.resize(net.hidden.size());
        for (std::size_t l = 0; l < net.hidden.size(); ++l) {
            g->hidden[l].W = Eigen::MatrixXd::Zero(net.hidden[l].W.rows(), net.hidden[l].W.cols());
            g->hidden[l].b = Eigen::VectorXd::Zero(net.hidden[l].b.size());
        }
        g->out_w = Eigen::VectorXd::Zero(net.out_w.size());
        g->out_b = 0.0;
    }
    return mo;
}

void adam_step_block(Eigen::Ref<Eigen::MatrixXd> w, Eigen::Ref<Eigen::MatrixXd> m,
                     Eigen::Ref<Eigen::MatrixXd> v, const Eigen::Ref<const Eigen::MatrixXd>& g,
                     const AdamParams& p, double bc1, double bc2) {
    m = p.beta1 * m + (1.0 - p.beta1) * g;
    v = (p.beta2 * v.array() + (1.0 - p.beta2) * g.array().square()).matrix();
    w.array() -= p.lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + p.eps);
}

void adam_step(ReluNet& net, Moments& mo, const NetGrad& g, const AdamParams& p, long t) {
    const double bc1 = 1.0 - std::pow(p.beta1, double(t));
    const double bc2 = 1.0 - std::pow(p.beta2, double(t));
    for (std::size_t l = 0; l < net.hidden.size(); ++l) {
        adam_step_block(net.hidden[l].W, mo.m.hidden[l].W, mo.v.hidden[l].W, g.hidden[l].W, p,
                        bc1, bc2);
        adam_step_block(net.hidden[l].b, mo.m.hidden[l].b, mo.v.hidden[l].b, g.hidden[l].b, p,
                        bc1, bc2);
    }
    adam_step_block(net.out_w, mo.m.out_w, mo.v.out_w, g.out_w, p, bc1, bc2);
    {
        double& w = net.out_b;
        double& m = mo.m.out_b;
        double& v = mo.v.out_b;
        m = p.beta1 * m + (1.0 - p.beta1) * g.out_b;
        v = p.beta2 * v + (1.0 - p.beta2) * g.out_b * g.out_b;
        w -= p.lr * (m / bc1) / (std::sqrt(v / bc2) + p.eps);
    }
}

}  // namespace

TrainResult train_weight_decay(const SphereDataset& data, const TrainConfig& cfg) {
    check_train_config(data, cfg);
    if (cfg.warm_start) {
        validate(*cfg.warm_start);
        require(cfg.warm_start->input_dim() == 2 * data.d &&
                    cfg.warm_start->depth() == cfg.depth,
                "train: warm start shape does not match the configuration");
    }

    const double lam = cfg.lambda;
    Rng root(cfg.seed);
    bool have_best = false;
    TrainResult result;

    for (int r = 0; r < cfg.restarts; ++r) {
        Rng rng = root.stream(static_cast<std::uint64_t>(r));
        ReluNet net = (r == 0 && cfg.warm_start) ? *cfg.warm_start
                                                 : random_init(cfg, 2 * data.d, rng);
        Moments mo = zero_moments(net);

        double best_obj = std::numeric_limits<double>::infinity();
        ReluNet best_net = net;
        std::vector<double> checkpoints;
        for (long t = 1; t <= cfg.iters; ++t) {
            double loss = 0.0;
            const NetGrad g = analytic_gradient(net, data, lam, &loss);
            const double obj = loss + (lam / cfg.depth) * weight_sq_norm(net);
            if (!std::isfinite(obj)) throw TrainingError("objective became non-finite", t);
            if (obj < best_obj) {
                best_obj = obj;
                best_net = net;
            }
            if (t % cfg.checkpoint_every == 0) checkpoints.push_back(best_obj);
            adam_step(net, mo, g, cfg.adam, t);
        }
        {
            // The parameters after the final step are a candidate too.
            const double loss = empirical_loss(net, data);
            const double obj = loss + (lam / cfg.depth) * weight_sq_norm(net);
            if (!std::isfinite(obj)) throw TrainingError("objective became non-finite", cfg.iters);
            if (obj < best_obj) {
                best_obj = obj;
                best_net = net;
            }
            checkpoints.push_back(best_obj);
        }
        if (!have_best || best_obj < result.objective) {
            have_best = true;
            result.net = best_net;
            result.objective = best_obj;
            result.checkpoints = std::move(checkpoints);
            result.chosen_restart = r;
        }
    }

    result.loss = empirical_loss(result.net, data);
    result.cost = weight_sq_norm(result.net) / cfg.depth;
    result.objective = result.loss + lam * result.cost;
    return result;
}

SweepResult pareto_sweep(const SphereDataset& data, int depth, int width,
                         const std::vector<double>& lambda_grid, const TrainConfig& base) {
    require(!lambda_grid.empty(), "pareto_sweep: lambda grid is empty");
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        require(lambda_grid[i] > 0.0, "pareto_sweep: lambda grid must be positive");
        require(i == 0 || lambda_grid[i - 1] < lambda_grid[i],
                "pareto_sweep: lambda grid must be strictly ascending");
    }

    SweepResult out;
    std::vector<bool> ok(lambda_grid.size(), false);
    std::vector<ParetoPoint> trained(lambda_grid.size());

    // Descending lambda: each solution warm-starts the next, so the path is
    // traced from the heavily regularized end where optima are simple.
    ReluNet warm;
    bool have_warm = false;
    for (std::size_t step = 0; step < lambda_grid.size(); ++step) {
        const std::size_t idx = lambda_grid.size() - 1 - step;
        TrainConfig cfg = base;
        cfg.depth = depth;
        cfg.width = width;
        cfg.lambda = lambda_grid[idx];
        cfg.seed = seed_combine(base.seed, static_cast<std::uint64_t>(idx));
        if (have_warm) cfg.warm_start = &warm;
        try {
            TrainResult res = train_weight_decay(data, cfg);
            ParetoPoint p;
            p.lambda = lambda_grid[idx];
            p.loss = res.loss;
            p.cost = res.cost;
            p.net = std::move(res.net);
            warm = p.net;
            have_warm = true;
            trained[idx] = std::move(p);
            ok[idx] = true;
        } catch (const TrainingError& e) {
            out.failures.emplace_back(lambda_grid[idx], e.what());
        }
    }

    for (std::size_t i = 0; i < lambda_grid.size(); ++i)
        if (ok[i]) out.swept.push_back(trained[i]);

    // Dominance filter: drop any point beaten in both coordinates.
    for (std::size_t i = 0; i < out.swept.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < out.swept.size() && !dominated; ++j) {
            if (i == j) continue;
            const ParetoPoint& p = out.swept[i];
            const ParetoPoint& q = out.swept[j];
            if (q.loss <= p.loss && q.cost <= p.cost && (q.loss < p.loss || q.cost < p.cost))
                dominated = true;
        }
        if (!dominated) out.frontier.push_back(out.swept[i]);
    }
    std::sort(out.frontier.begin(), out.frontier.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
        if (a.loss != b.loss) return a.loss < b.loss;
        if (a.cost != b.cost) return a.cost < b.cost;
        return a.lambda < b.lambda;
    });

    // Diagnostic only: cost should fall as lambda grows along the kept path.
    std::vector<const ParetoPoint*> by_lambda;
    for (const ParetoPoint& p : out.frontier) by_lambda.push_back(&p);
    std::sort(by_lambda.begin(), by_lambda.end(),
              [](const ParetoPoint* a, const ParetoPoint* b) { return a->lambda < b->lambda; });
    for (std::size_t i = 0; i + 1 < by_lambda.size(); ++i) {
        if (by_lambda[i + 1]->cost > 1.05 * by_lambda[i]->cost) {
            out.flags.push_back("cost rises from lambda=" + std::to_string(by_lambda[i]->lambda) +
                                " to lambda=" + std::to_string(by_lambda[i + 1]->lambda));
        }
    }
    return out;
}

namespace {

struct RuleCandidate {
    double lambda = 0.0;
    double loss = std::numeric_limits<double>::infinity();
    double cost = 0.0;
    ReluNet net;
    bool trained = false;
};

}  // namespace

RuleResult rule_srm(const SphereDataset& data, const RuleConfig& rule, double lambda_lo,
                    double lambda_hi, const TrainConfig& base) {
    require(rule.theta > 0.0, "rule_srm: theta must be positive");
    require(rule.alpha >= 1.0, "rule_srm: alpha must be >= 1");
    require(lambda_lo > 0.0 && lambda_lo <= lambda_hi, "rule_srm: need 0 < lambda_lo <= lambda_hi");

    std::vector<RuleCandidate> all;
    int trainings = 0;
    const auto train_at = [&](double lam, const ReluNet* warm) -> const RuleCandidate& {
        TrainConfig cfg = base;
        cfg.depth = rule.depth;
        cfg.width = rule.width;
        cfg.width2 = rule.width2;
        cfg.lambda = lam;
        cfg.seed = seed_combine(base.seed, static_cast<std::uint64_t>(trainings) + 1000);
        cfg.warm_start = warm;
        RuleCandidate cand;
        cand.lambda = lam;
        try {
            TrainResult res = train_weight_decay(data, cfg);
            cand.loss = res.loss;
            cand.cost = res.cost;
            cand.net = std::move(res.net);
            cand.trained = true;
        } catch (const TrainingError&) {
            // Treated as infeasible at this lambda; the search continues.
        }
        ++trainings;
        all.push_back(std::move(cand));
        return all.back();
    };

    const double theta = rule.theta;
    const RuleCandidate lo_cand = train_at(lambda_lo, base.warm_start);
    const bool lo_feasible = lo_cand.trained && lo_cand.loss <= theta;

    bool fallback = false;
    if (lambda_hi > lambda_lo) {
        const RuleCandidate hi_cand =
            train_at(lambda_hi, lo_cand.trained ? &lo_cand.net : base.warm_start);
        const bool hi_feasible = hi_cand.trained && hi_cand.loss <= theta;
        if (lo_feasible && !hi_feasible) {
            double lo = lambda_lo, hi = lambda_hi;
            ReluNet lo_net = lo_cand.net;
            for (int it = 0; it < 20; ++it) {
                const double mid = std::exp(0.5 * (std::log(lo) + std::log(hi)));
                const RuleCandidate mc = train_at(mid, &lo_net);
                if (mc.trained && mc.loss <= theta) {
                    lo = mid;
                    lo_net = mc.net;
                } else {
                    hi = mid;
                }
            }
            // The bisection trusts that loss grows with lambda; a trained
            // infeasible point below a feasible one contradicts that.
            std::vector<const RuleCandidate*> by_lambda;
            for (const RuleCandidate& c : all)
                if (c.trained) by_lambda.push_back(&c);
            std::sort(by_lambda.begin(), by_lambda.end(),
                      [](const RuleCandidate* a, const RuleCandidate* b) {
                          return a->lambda < b->lambda;
                      });
            for (std::size_t i = 0; i + 1 < by_lambda.size(); ++i) {
                if (by_lambda[i]->loss > theta && by_lambda[i + 1]->loss <= theta) {
                    fallback = true;
                    break;
                }
            }
        } else if (!lo_feasible && hi_feasible) {
            fallback = true;  // feasibility pattern inverted; map the bracket
        }
        if (fallback) {
            const int grid_n = 20;
            ReluNet warm;
            bool have_warm = false;
            if (lo_cand.trained) {
                warm = lo_cand.net;
                have_warm = true;
            }
            for (int i = grid_n - 1; i >= 0; --i) {
                const double frac = double(i) / (grid_n - 1);
                const double lam = std::exp(std::log(lambda_lo) +
                                            frac * (std::log(lambda_hi) - std::log(lambda_lo)));
                const RuleCandidate c = train_at(lam, have_warm ? &warm : nullptr);
                if (c.trained) {
                    warm = c.net;
                    have_warm = true;
                }
            }
        }
    }

    RuleResult out;
    out.grid_fallback = fallback;
    double best_loss = std::numeric_limits<double>::infinity();
    const RuleCandidate* best_loss_cand = nullptr;
    const RuleCandidate* winner = nullptr;  // trained, loss <= theta, largest lambda
    double cheapest_feasible = std::numeric_limits<double>::infinity();
    for (const RuleCandidate& c : all) {
        if (!c.trained) continue;
        if (c.loss < best_loss) {
            best_loss = c.loss;
            best_loss_cand = &c;
        }
        if (c.loss <= theta) {
            cheapest_feasible = std::min(cheapest_feasible, c.cost);
            if (!winner || c.lambda > winner->lambda) winner = &c;
        }
    }
    out.trainings = trainings;
    out.best_loss_found = best_loss;

    if (!winner) {
        out.feasible = false;
        if (best_loss_cand) {
            out.net = best_loss_cand->net;
            out.loss = best_loss_cand->loss;
            out.lambda = best_loss_cand->lambda;
            out.cert = make_certificate(out.net);
            out.alpha_cost_ok = false;
        }
        return out;
    }

    out.feasible = true;
    out.net = winner->net;
    out.loss = winner->loss;
    out.lambda = winner->lambda;
    out.cert = make_certificate(out.net);
    out.alpha_cost_ok = winner->cost <= rule.alpha * cheapest_feasible + 1e-12;
    return out;
}

ProxySelection oracle_rule_proxy(const std::vector<ParetoPoint>& frontier,
                                 const SphereDataset& test) {
    require(!frontier.empty(), "oracle_rule_proxy: empty frontier");
    require(test.m() >= 2, "oracle_rule_proxy: held-out set needs at least two points");
    require(test.labeled(), "oracle_rule_proxy: held-out set has no labels");

    ProxySelection sel;
    bool have = false;
    double best_loss = 0.0, best_cost = 0.0;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
        const Eigen::VectorXd f = evaluate_batch(frontier[i].net, test.X);
        NeumaierSum sum_z, sum_z2;
        for (Eigen::Index k = 0; k < f.size(); ++k) {
            const double e = f[k] - test.y[k];
            const double z = e * e;
            sum_z.add(z);
            sum_z2.add(z * z);
        }
        const double n = static_cast<double>(test.m());
        const double mean = sum_z.value() / n;
        const double var = std::max(0.0, sum_z2.value() / n - mean * mean);
        const double se = std::sqrt(var / n);
        const bool better =
            !have || mean < best_loss ||
            (mean == best_loss && (frontier[i].cost < best_cost));
        if (better) {
            have = true;
            best_loss = mean;
            best_cost = frontier[i].cost;
            sel.index = static_cast<int>(i);
            sel.test_loss = mean;
            sel.test_se = se;
        }
    }
    return sel;
}

}  // namespace relucost
