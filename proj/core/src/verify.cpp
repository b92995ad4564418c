#include "relucost/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "relucost/bounds.hpp"
#include "relucost/compression.hpp"
#include "relucost/constructions.hpp"
#include "relucost/errors.hpp"
#include "relucost/geometry.hpp"
#include "relucost/net_transform.hpp"
#include "relucost/relu_net.hpp"
#include "relucost/rng.hpp"
#include "relucost/spectral.hpp"

namespace relucost {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

Check le_check(std::string name, double value, double bound, std::string detail = {}) {
    Check c;
    c.name = std::move(name);
    c.value = value;
    c.bound = bound;
    c.pass = value <= bound;
    c.detail = std::move(detail);
    return c;
}

Check ge_check(std::string name, double value, double bound, std::string detail = {}) {
    Check c;
    c.name = std::move(name);
    c.value = value;
    c.bound = bound;
    c.pass = value >= bound;
    c.detail = std::move(detail);
    return c;
}

Check eq_check(std::string name, double value, double bound, std::string detail = {}) {
    Check c;
    c.name = std::move(name);
    c.value = value;
    c.bound = bound;
    c.pass = value == bound;
    c.detail = std::move(detail);
    return c;
}

double eval_scalar(const ReluNet& net, double t) {
    Eigen::VectorXd x(1);
    x[0] = t;
    return evaluate(net, x);
}

// Random depth-2 or depth-3 net used by the probe corpora. Entries are scaled
// to 1/sqrt(fan_in) so activations stay O(1) at every width.
ReluNet random_net(Rng& rng, int input_dim, const std::vector<int>& widths) {
    ReluNet net;
    net.hidden.resize(widths.size());
    int fan = input_dim;
    for (std::size_t l = 0; l < widths.size(); ++l) {
        Layer& lay = net.hidden[l];
        lay.W.resize(widths[l], fan);
        lay.b.resize(widths[l]);
        const double s = 1.0 / std::sqrt(static_cast<double>(fan));
        for (Eigen::Index i = 0; i < lay.W.size(); ++i) lay.W.data()[i] = s * rng.normal();
        for (int i = 0; i < widths[l]; ++i) lay.b[i] = 0.3 * rng.normal();
        fan = widths[l];
    }
    net.out_w.resize(fan);
    const double s = 1.0 / std::sqrt(static_cast<double>(fan));
    for (int i = 0; i < fan; ++i) net.out_w[i] = s * rng.normal();
    net.out_b = 0.1 * rng.normal();
    return net;
}

}  // namespace

bool SuiteResult::pass() const {
    for (const Check& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string format_suite(const SuiteResult& r) {
    std::string out = "[suite " + r.suite + "]\n";
    int passed = 0;
    for (const Check& c : r.checks) {
        if (c.pass) ++passed;
        out += c.pass ? " PASS  " : " FAIL  ";
        std::string name = c.name;
        if (name.size() < 36) name.resize(36, ' ');
        out += name + " value=" + fmt(c.value) + " bound=" + fmt(c.bound);
        if (!c.detail.empty()) out += "  [" + c.detail + "]";
        out += "\n";
    }
    out += " result: ";
    out += (passed == static_cast<int>(r.checks.size())) ? "PASS" : "FAIL";
    out += " (" + std::to_string(passed) + "/" + std::to_string(r.checks.size()) + " checks)\n";
    return out;
}

SuiteResult verify_sawtooth(const std::vector<int>& ns) {
    SuiteResult r;
    r.suite = "sawtooth";
    for (int n : ns) {
        const ReluNet net = sawtooth_net(n);
        r.checks.push_back(eq_check("n=" + std::to_string(n) + " width", net.width(0),
                                    2.0 * n + 2.0));
        std::vector<double> ts;
        const int grid = 10000;
        ts.reserve(grid + 4 * n + 4);
        for (int i = 0; i < grid; ++i)
            ts.push_back(-1.2 + 2.4 * static_cast<double>(i) / (grid - 1));
        ts.push_back(-1.0);
        ts.push_back(1.0);
        for (int k = 1; k <= 2 * n; ++k) {
            ts.push_back(-1.0 + (2.0 * k - 1.0) / (2.0 * n));  // kinks
            ts.push_back(-1.0 + static_cast<double>(k) / n);   // zeros
        }
        double max_err = 0.0;
        for (double t : ts)
            max_err = std::max(max_err, std::abs(eval_scalar(net, t) - sawtooth(n, t)));
        r.checks.push_back(
            le_check("n=" + std::to_string(n) + " max_abs_err", max_err, 1e-12));
    }
    return r;
}

SuiteResult verify_square(double s, const std::vector<int>& ks) {
    SuiteResult r;
    r.suite = "square";
    for (int K : ks) {
        const ReluNet net = square_net(s, K);
        std::vector<double> ts;
        const int grid = 10000;
        ts.reserve(grid + 2 * K);
        for (int i = 0; i < grid; ++i)
            ts.push_back(-s + 2.0 * s * static_cast<double>(i) / (grid - 1));
        for (int k = 1; k <= K; ++k) {
            ts.push_back(s * k / K);
            ts.push_back(-s * k / K);
        }
        double max_err = 0.0;
        for (double t : ts)
            max_err = std::max(max_err, std::abs(eval_scalar(net, t) - t * t));
        const double bound = s * s * (1.0 / K + 1.0 / (static_cast<double>(K) * K));
        r.checks.push_back(le_check("K=" + std::to_string(K) + " grid_sup_err", max_err, bound));
    }
    return r;
}

SuiteResult verify_inner(const std::vector<int>& ds, const std::vector<int>& ks,
                         long samples, std::uint64_t seed) {
    SuiteResult r;
    r.suite = "inner";
    for (int d : ds) {
        const RefFn ip = [d](const Eigen::Ref<const Eigen::VectorXd>& x) {
            return x.head(d).dot(x.tail(d));
        };
        for (int K : ks) {
            const CertifiedNet cn = inner_net(d, K, 1.0);
            const double sup = mc_sup_distance(
                cn.net, d, ip, samples,
                seed_combine(seed, static_cast<std::uint64_t>(d) * 1000 + K));
            const double bound = 2.0 * d * (1.0 / K + 1.0 / (static_cast<double>(K) * K));
            r.checks.push_back(le_check(
                "d=" + std::to_string(d) + " K=" + std::to_string(K) + " mc_sup_err", sup,
                bound));
        }
    }
    return r;
}

SuiteResult verify_fdk(const std::vector<int>& ds, const std::vector<int>& ks,
                       long samples, std::uint64_t seed) {
    SuiteResult r;
    r.suite = "fdk";
    for (int d : ds) {
        const RefFn target = [d](const Eigen::Ref<const Eigen::VectorXd>& x) {
            return target_f(d, x);
        };
        for (int K : ks) {
            const CertifiedNet cn = deep_approximant(d, K);
            const std::string tag = "d=" + std::to_string(d) + " K=" + std::to_string(K);
            r.checks.push_back(eq_check(tag + " width1", cn.net.width(0), 2.0 * K * d));
            r.checks.push_back(eq_check(tag + " width2", cn.net.width(1), 6.0 * d + 2.0));
            const double sup = mc_sup_distance(
                cn.net, d, target, samples,
                seed_combine(seed, 7000 + static_cast<std::uint64_t>(d) * 1000 + K));
            const double bound =
                12.0 * std::pow(d, 2.5) * (1.0 / K + 1.0 / (static_cast<double>(K) * K));
            r.checks.push_back(le_check(tag + " mc_sup_err", sup, bound));
        }
    }
    return r;
}

SuiteResult verify_fdk_scaling(int d_lo, int d_hi, int k, double factor) {
    SuiteResult r;
    r.suite = "fdk_scaling";
    double lo = 0.0, hi = 0.0;
    bool first = true;
    std::string detail = "cost/d^2.5:";
    for (int d = d_lo; d <= d_hi; ++d) {
        const CertifiedNet cn = deep_approximant(d, k);
        const double ratio = cn.cert.cost_value / std::pow(d, 2.5);
        detail += " " + fmt(ratio);
        if (first) {
            lo = hi = ratio;
            first = false;
        } else {
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    }
    r.checks.push_back(le_check("cost_ratio_spread", hi / lo, factor, detail));
    return r;
}

SuiteResult verify_tent(int d, int m, int trials, double delta, std::uint64_t seed) {
    SuiteResult r;
    r.suite = "tent";
    double max_residual = 0.0;
    int cert_violations = 0;
    int within_prob_bound = 0;
    int degenerate = 0;
    const double prob_bound = interpolant_cost_bound(m, d, delta);
    for (int t = 0; t < trials; ++t) {
        SphereDataset data =
            sample_product_sphere(d, m, seed_combine(seed, 2 * static_cast<std::uint64_t>(t)));
        Rng lab(seed_combine(seed, 2 * static_cast<std::uint64_t>(t) + 1));
        data.y.resize(m);
        for (int j = 0; j < m; ++j) data.y[j] = 2.0 * lab.uniform() - 1.0;
        TentResult tent;
        try {
            tent = tent_interpolant(data);
        } catch (const DegeneracyError&) {
            ++degenerate;
            continue;
        }
        const double res =
            (evaluate_batch(tent.net, data.X) - data.y).lpNorm<Eigen::Infinity>();
        max_residual = std::max(max_residual, res);
        if (tent.cert.cost_value > tent_cost_bound(m, tent.eta) + 1e-9) ++cert_violations;
        if (tent.cert.cost_value <= prob_bound) ++within_prob_bound;
    }
    r.checks.push_back(le_check("max_interpolation_residual", max_residual, 1e-9));
    r.checks.push_back(le_check("cost_bound_violations", cert_violations, 0.0));
    r.checks.push_back(ge_check("prob_bound_fraction",
                                static_cast<double>(within_prob_bound) / trials, 1.0 - delta,
                                "bound=" + fmt(prob_bound)));
    r.checks.push_back(le_check("degenerate_datasets", degenerate, 0.0));
    return r;
}

SuiteResult verify_maurey(int width, int d, const std::vector<int>& omegas, int corpus,
                          std::uint64_t seed) {
    SuiteResult r;
    r.suite = "maurey";
    Rng root(seed);
    std::vector<ReluNet> nets;
    nets.reserve(corpus);
    for (int i = 0; i < corpus; ++i) {
        Rng stream = root.stream(static_cast<std::uint64_t>(i));
        nets.push_back(balance_depth2(random_net(stream, 2 * d, {width})).form.to_net());
    }
    double max_mass_excess = -1e300;
    double max_recompress_dev = 0.0;
    for (std::size_t oi = 0; oi < omegas.size(); ++oi) {
        const int omega = omegas[oi];
        double ratio_sum = 0.0;
        for (int i = 0; i < corpus; ++i) {
            const MaureyResult res = maurey_compress(
                nets[i], omega,
                seed_combine(seed, 1000 + static_cast<std::uint64_t>(i) * 16 + oi));
            ratio_sum += res.mc_l2 / maurey_error_bound(res.a_mass, omega);
            const double wsq = weight_sq_norm(res.net);
            const double c = res.net.out_b;
            max_mass_excess = std::max(max_mass_excess, wsq - (4.0 * res.a_mass + c * c));
            const double a2 = balance_depth2(res.net).form.a.cwiseAbs().sum();
            max_recompress_dev =
                std::max(max_recompress_dev,
                         std::abs(a2 - res.a_mass) / std::max(1.0, res.a_mass));
        }
        r.checks.push_back(le_check("omega=" + std::to_string(omega) + " mean_l2_ratio",
                                    ratio_sum / corpus, 1.2));
    }
    r.checks.push_back(le_check("max_mass_excess_over_4A_c2", max_mass_excess, 1e-9));
    r.checks.push_back(le_check("max_recompression_mass_dev", max_recompress_dev, 1e-9));
    return r;
}

SuiteResult verify_lift(int count, std::uint64_t seed) {
    SuiteResult r;
    r.suite = "lift";
    Rng root(seed);
    const int width_cycle[3] = {4, 16, 64};
    double max_disagree = 0.0;
    double max_cert_ratio = 0.0;
    for (int i = 0; i < count; ++i) {
        const int d = 2 + (i % 4);
        const int width = width_cycle[i % 3];
        Rng stream = root.stream(static_cast<std::uint64_t>(i));
        const ReluNet net = random_net(stream, 2 * d, {width});
        const LiftResult lifted = lift_to_depth3(net);
        const SphereDataset probes =
            sample_product_sphere(d, 1000, seed_combine(seed, 500 + static_cast<std::uint64_t>(i)));
        const double dis = (evaluate_batch(lifted.net, probes.X) - evaluate_batch(net, probes.X))
                               .lpNorm<Eigen::Infinity>();
        max_disagree = std::max(max_disagree, dis);
        const double bal = balance_depth2(net).cert.cost_value;
        const double allowed = 4.0 * d / 3.0 + (4.0 / 3.0) * bal;
        max_cert_ratio = std::max(max_cert_ratio, lifted.cert.cost_value / allowed);
    }
    r.checks.push_back(le_check("max_probe_disagreement", max_disagree, 1e-9));
    r.checks.push_back(le_check("max_certificate_to_affine_bound", max_cert_ratio, 1.0));
    return r;
}

SuiteResult verify_collision(int d, int m, int trials, const std::vector<double>& etas,
                             std::uint64_t seed) {
    SuiteResult r;
    r.suite = "collision";
    std::vector<int> counts(etas.size(), 0);
    for (int t = 0; t < trials; ++t) {
        const SphereDataset data =
            sample_product_sphere(d, m, seed_combine(seed, static_cast<std::uint64_t>(t)));
        const double dmin = min_pairwise_distance(data.X);
        for (std::size_t e = 0; e < etas.size(); ++e)
            if (dmin <= etas[e]) ++counts[e];
    }
    for (std::size_t e = 0; e < etas.size(); ++e) {
        const double pbar = std::min(1.0, collision_probability_bound(d, m, etas[e]));
        const double slack = 3.0 * std::sqrt(pbar * (1.0 - pbar) / trials);
        const double emp = static_cast<double>(counts[e]) / trials;
        r.checks.push_back(
            le_check("eta=" + fmt(etas[e]) + " empirical_freq", emp, pbar + slack,
                     "bound=" + fmt(pbar) + " slack=" + fmt(slack)));
    }
    return r;
}

SuiteResult verify_spectral(int d_max) {
    SuiteResult r;
    r.suite = "spectral";
    int mismatches = 0;
    for (int n = 0; n <= 10; ++n)
        if (harmonic_dim(3, n) != 2 * n + 1) ++mismatches;
    r.checks.push_back(le_check("harmonic_dim_d3_mismatches", mismatches, 0.0));

    int smallest = -1;
    std::string hd_detail;
    for (int d = 2; d <= 64; ++d) {
        const boost::multiprecision::cpp_int n_d = harmonic_dim(d, 2 * d);
        const boost::multiprecision::cpp_int pow2 = boost::multiprecision::cpp_int(1) << d;
        if (n_d > pow2) {
            smallest = d;
            hd_detail = "N=" + n_d.str() + " 2^d=" + pow2.str();
            break;
        }
    }
    {
        Check c;
        c.name = "smallest_d_harmonic_exceeds_2^d";
        c.value = smallest;
        c.bound = 0.0;
        c.pass = smallest > 0;
        c.detail = hd_detail;
        r.checks.push_back(c);
    }

    double max_gap = 0.0;
    int onset = -1;
    double min_a_from_onset = 1e300;
    std::string a_detail = "A:";
    for (int d = 3; d <= d_max; ++d) {
        const PolyDistanceResult pd = target_poly_distance(d, 2 * d);
        max_gap = std::max(max_gap, pd.pythagoras_gap);
        a_detail += " " + fmt(pd.a);
        if (onset < 0 && pd.a >= kSeparationThresholdA) onset = d;
        if (onset >= 0 && d >= onset) min_a_from_onset = std::min(min_a_from_onset, pd.a);
    }
    r.checks.push_back(le_check("max_pythagoras_gap", max_gap, 1e-8));
    {
        Check c;
        c.name = "poly_distance_onset";
        c.value = onset;
        c.bound = 0.0;
        c.pass = onset > 0;
        c.detail = a_detail;
        r.checks.push_back(c);
    }
    r.checks.push_back(ge_check("min_A_from_onset", onset > 0 ? min_a_from_onset : 0.0,
                                kSeparationThresholdA));
    return r;
}

SuiteResult verify_gradients(int triples, double h, std::uint64_t seed) {
    SuiteResult r;
    r.suite = "gradients";
    const int width_cycle[3] = {8, 16, 32};
    const double lambda_cycle[3] = {0.0, 0.01, 1.0};
    const int m_cycle[4] = {4, 8, 16, 32};
    double max_rel_err = 0.0;
    long resamples = 0;
    for (int t = 0; t < triples; ++t) {
        const int depth = 2 + (t & 1);
        const int d = 2 + (t % 3);
        const int w1 = width_cycle[(t / 2) % 3];
        const int m = m_cycle[(t / 3) % 4];
        const double lambda = lambda_cycle[(t / 5) % 3];

        SphereDataset data =
            sample_product_sphere(d, m, seed_combine(seed, 9000 + static_cast<std::uint64_t>(t)));
        Rng lab(seed_combine(seed, 12000 + static_cast<std::uint64_t>(t)));
        data.y.resize(m);
        for (int j = 0; j < m; ++j) data.y[j] = 2.0 * lab.uniform() - 1.0;

        Rng nr(seed_combine(seed, 15000 + static_cast<std::uint64_t>(t)));
        std::vector<int> widths{w1};
        if (depth == 3) widths.push_back(std::max(2, w1 / 2));
        ReluNet net = random_net(nr, 2 * d, widths);
        // Finite differences need a margin around every kink.
        for (int attempt = 0; attempt < 200 && min_abs_preactivation(net, data) < 1e-3;
             ++attempt) {
            net = random_net(nr, 2 * d, widths);
            ++resamples;
        }

        const NetGrad ga = analytic_gradient(net, data, lambda);
        const NetGrad gf = finite_difference_gradient(net, data, lambda, h);
        double max_diff = 0.0, max_mag = 0.0;
        for (std::size_t l = 0; l < ga.hidden.size(); ++l) {
            max_diff = std::max(max_diff,
                                (ga.hidden[l].W - gf.hidden[l].W).cwiseAbs().maxCoeff());
            max_diff = std::max(max_diff,
                                (ga.hidden[l].b - gf.hidden[l].b).cwiseAbs().maxCoeff());
            max_mag = std::max(max_mag, ga.hidden[l].W.cwiseAbs().maxCoeff());
            max_mag = std::max(max_mag, ga.hidden[l].b.cwiseAbs().maxCoeff());
        }
        max_diff = std::max(max_diff, (ga.out_w - gf.out_w).cwiseAbs().maxCoeff());
        max_diff = std::max(max_diff, std::abs(ga.out_b - gf.out_b));
        max_mag = std::max(max_mag, ga.out_w.cwiseAbs().maxCoeff());
        max_mag = std::max(max_mag, std::abs(ga.out_b));
        max_rel_err = std::max(max_rel_err, max_diff / std::max(1.0, max_mag));
    }
    r.checks.push_back(le_check("max_gradient_rel_err", max_rel_err, 1e-5,
                                "resamples=" + std::to_string(resamples)));
    return r;
}

}  // namespace relucost
