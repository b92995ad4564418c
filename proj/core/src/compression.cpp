#include "relucost/compression.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "relucost/errors.hpp"
#include "relucost/geometry.hpp"
#include "relucost/net_transform.hpp"
#include "relucost/rng.hpp"

namespace relucost {

double maurey_error_bound(double a_mass, int omega) {
    if (a_mass < 0.0) throw UsageError("maurey_error_bound: mass must be nonnegative");
    if (omega < 1) throw UsageError("maurey_error_bound: omega must be >= 1");
    return std::sqrt(3.0) * a_mass / std::sqrt(static_cast<double>(omega));
}

MaureyResult maurey_compress(const ReluNet& net, int omega, std::uint64_t seed, int restarts,
                             long mc_samples) {
    if (omega < 1) throw UsageError("maurey_compress: omega must be >= 1");
    if (restarts < 1) throw UsageError("maurey_compress: restarts must be >= 1");
    if (mc_samples < 1) throw UsageError("maurey_compress: mc_samples must be >= 1");
    if (net.input_dim() % 2 != 0)
        throw ShapeError("maurey_compress: input dimension must be even (product domain)");
    const int d = net.input_dim() / 2;

    const NormalizedDepth2Form form = balance_depth2(net).form;
    const int w = form.width();
    double a_mass = 0.0;
    for (int k = 0; k < w; ++k) a_mass += std::abs(form.a[k]);

    MaureyResult out;
    out.a_mass = a_mass;

    if (a_mass == 0.0) {
        // Nothing to resample; the function is the constant c.
        ReluNet constant;
        constant.hidden.resize(1);
        constant.hidden[0].W = Eigen::MatrixXd::Zero(omega, net.input_dim());
        constant.hidden[0].b = Eigen::VectorXd::Zero(omega);
        constant.out_w = Eigen::VectorXd::Zero(omega);
        constant.out_b = form.c;
        out.cert = make_certificate(constant, omega);
        out.net = std::move(constant);
        out.mc_l2 = 0.0;
        out.chosen_restart = 0;
        return out;
    }

    std::vector<double> cum(w);
    double run = 0.0;
    for (int k = 0; k < w; ++k) {
        run += std::abs(form.a[k]) / a_mass;
        cum[k] = run;
    }
    cum[w - 1] = 1.0;

    const double unit_scale = std::sqrt(a_mass / static_cast<double>(omega));

    // Fixed Monte Carlo comparison set, shared by every restart; the input
    // net is evaluated on it once.
    const std::uint64_t mc_seed = seed_combine(seed, 0x6d635f7365740000ULL);
    const SphereDataset mc = sample_product_sphere(d, static_cast<int>(mc_samples), mc_seed);
    const Eigen::VectorXd f_in = evaluate_batch(net, mc.X);

    Rng root(seed);
    bool have_best = false;
    double best_l2 = 0.0;
    ReluNet best_net;
    int best_restart = 0;
    for (int r = 0; r < restarts; ++r) {
        Rng stream = root.stream(static_cast<std::uint64_t>(r));
        ReluNet cand;
        cand.hidden.resize(1);
        cand.hidden[0].W.resize(omega, net.input_dim());
        cand.hidden[0].b.resize(omega);
        cand.out_w.resize(omega);
        cand.out_b = form.c;
        for (int j = 0; j < omega; ++j) {
            const double u = stream.uniform();
            const int pick = static_cast<int>(
                std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
            const int k = std::min(pick, w - 1);
            cand.hidden[0].W.row(j) = unit_scale * form.units.row(k).head(net.input_dim());
            cand.hidden[0].b[j] = unit_scale * form.units(k, net.input_dim());
            cand.out_w[j] = (form.a[k] < 0.0 ? -unit_scale : unit_scale);
        }
        const double l2 = std::sqrt((evaluate_batch(cand, mc.X) - f_in).squaredNorm() /
                                    static_cast<double>(mc_samples));
        if (!have_best || l2 < best_l2) {
            have_best = true;
            best_l2 = l2;
            best_net = std::move(cand);
            best_restart = r;
        }
    }

    out.cert = make_certificate(best_net, omega);
    out.net = std::move(best_net);
    out.mc_l2 = best_l2;
    out.chosen_restart = best_restart;
    return out;
}

}  // namespace relucost
