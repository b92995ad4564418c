#include "relucost/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/beta.hpp>

#include "relucost/compensated.hpp"
#include "relucost/constructions.hpp"
#include "relucost/errors.hpp"
#include "relucost/rng.hpp"

namespace relucost {

namespace {

constexpr long kChunk = 8192;

void fill_point(Rng& stream, int d, Eigen::Ref<Eigen::VectorXd> col) {
    for (int half = 0; half < 2; ++half) {
        double norm_sq;
        do {
            norm_sq = 0.0;
            for (int i = 0; i < d; ++i) {
                const double g = stream.normal();
                col[half * d + i] = g;
                norm_sq += g * g;
            }
        } while (norm_sq < 1e-24);
        col.segment(half * d, d) /= std::sqrt(norm_sq);
    }
}

}  // namespace

double ip_density(int d, double t) {
    if (d < 2) throw UsageError("ip_density: d must be >= 2");
    if (std::abs(t) >= 1.0) return 0.0;
    const double e = 0.5 * (d - 3);
    const double log_c = std::lgamma(0.5 * d) - 0.5 * std::log(M_PI) - std::lgamma(0.5 * (d - 1));
    return std::exp(log_c + e * std::log1p(-t * t));
}

double ip_cdf(int d, double t) {
    if (d < 2) throw UsageError("ip_cdf: d must be >= 2");
    if (t <= -1.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = 0.5 * (d - 1);
    return boost::math::ibeta(a, a, 0.5 * (1.0 + t));
}

SphereDataset sample_product_sphere(int d, int m, std::uint64_t seed) {
    if (d < 1) throw UsageError("sample_product_sphere: d must be >= 1");
    if (m < 1) throw UsageError("sample_product_sphere: m must be >= 1");
    SphereDataset data;
    data.d = d;
    data.seed = seed;
    data.X.resize(2 * d, m);
    data.y.resize(0);
    Rng root(seed);
    for (int i = 0; i < m; ++i) {
        Rng stream = root.stream(static_cast<std::uint64_t>(i));
        fill_point(stream, d, data.X.col(i));
    }
    return data;
}

void label_with_target(SphereDataset& data) {
    data.y.resize(data.m());
    for (int i = 0; i < data.m(); ++i) data.y[i] = target_f(data.d, data.X.col(i));
}

double min_pairwise_distance(const Eigen::MatrixXd& X) {
    const int m = static_cast<int>(X.cols());
    if (m < 2) throw UsageError("min_pairwise_distance: need at least two points");
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            best = std::min(best, (X.col(i) - X.col(j)).norm());
    return best;
}

double collision_probability_bound(int d, int m, double eta) {
    if (d < 2 || m < 1 || eta <= 0.0)
        throw UsageError("collision_probability_bound: need d >= 2, m >= 1, eta > 0");
    return static_cast<double>(m) * static_cast<double>(m) * std::pow(eta, d - 1);
}

McEstimate mc_l2_distance(const ReluNet& net, int d, const RefFn& ref, long n,
                          std::uint64_t seed) {
    if (n < 1) throw UsageError("mc_l2_distance: n must be >= 1");
    if (net.input_dim() != 2 * d) throw ShapeError("mc_l2_distance: net input dim must be 2d");
    Rng root(seed);
    NeumaierSum sum_z, sum_z2;
    Eigen::MatrixXd X(2 * d, kChunk);
    for (long start = 0; start < n; start += kChunk) {
        const long cnt = std::min(kChunk, n - start);
        for (long i = 0; i < cnt; ++i) {
            Rng stream = root.stream(static_cast<std::uint64_t>(start + i));
            fill_point(stream, d, X.col(i));
        }
        const Eigen::VectorXd f = evaluate_batch(net, X.leftCols(cnt));
        for (long i = 0; i < cnt; ++i) {
            const double diff = f[i] - ref(X.col(i));
            const double z = diff * diff;
            sum_z.add(z);
            sum_z2.add(z * z);
        }
    }
    const double mean = sum_z.value() / static_cast<double>(n);
    const double var = std::max(0.0, sum_z2.value() / static_cast<double>(n) - mean * mean);
    McEstimate est;
    est.n = n;
    est.value = std::sqrt(std::max(0.0, mean));
    const double se_mean = std::sqrt(var / static_cast<double>(n));
    est.se = est.value > 0.0 ? se_mean / (2.0 * est.value) : 0.0;
    return est;
}

double mc_sup_distance(const ReluNet& net, int d, const RefFn& ref, long n,
                       std::uint64_t seed) {
    if (n < 1) throw UsageError("mc_sup_distance: n must be >= 1");
    if (net.input_dim() != 2 * d) throw ShapeError("mc_sup_distance: net input dim must be 2d");
    Rng root(seed);
    double worst = 0.0;
    Eigen::MatrixXd X(2 * d, kChunk);
    for (long start = 0; start < n; start += kChunk) {
        const long cnt = std::min(kChunk, n - start);
        for (long i = 0; i < cnt; ++i) {
            Rng stream = root.stream(static_cast<std::uint64_t>(start + i));
            fill_point(stream, d, X.col(i));
        }
        const Eigen::VectorXd f = evaluate_batch(net, X.leftCols(cnt));
        for (long i = 0; i < cnt; ++i)
            worst = std::max(worst, std::abs(f[i] - ref(X.col(i))));
    }
    return worst;
}

}  // namespace relucost
