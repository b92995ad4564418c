#include "relucost/constructions.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "relucost/compensated.hpp"
#include "relucost/errors.hpp"
#include "relucost/net_transform.hpp"

namespace relucost {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw UsageError(msg);
}

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt6 = 2.449489742783178;

}  // namespace

double sawtooth(int n, double t) {
    require(n >= 1, "sawtooth: n must be >= 1");
    if (std::abs(t) >= 1.0) return 0.0;
    // u counts half-periods from the left edge; the nearest integer k picks
    // the surrounding kink and the parity of k fixes the slope sign.
    const double u = static_cast<double>(n) * (t + 1.0);
    const long k = static_cast<long>(std::nearbyint(u));
    return ((k & 1L) ? 2.0 : -2.0) * (u - static_cast<double>(k));
}

ReluNet sawtooth_net(int n) {
    require(n >= 1, "sawtooth_net: n must be >= 1");
    const int width = 2 * n + 2;
    ReluNet net;
    net.hidden.resize(1);
    Layer& l = net.hidden[0];
    l.W = Eigen::MatrixXd::Ones(width, 1);
    l.b = Eigen::VectorXd::Zero(width);
    net.out_w = Eigen::VectorXd::Zero(width);
    net.out_b = 0.0;

    const double dn = static_cast<double>(n);
    // Edge units pin f to zero outside [-1, 1].
    l.b[0] = 1.0;
    net.out_w[0] = -2.0 * dn;
    l.b[1] = -1.0;
    net.out_w[1] = 2.0 * dn;
    // One unit per kink; the slope flips by 4n with alternating sign.
    for (int j = 1; j <= n; ++j) {
        const double pos = (2.0 * j - 1.0) / (2.0 * dn);
        const double sign = ((j + n) & 1) ? -1.0 : 1.0;
        l.b[2 * j] = -pos;
        net.out_w[2 * j] = -4.0 * dn * sign;
        l.b[2 * j + 1] = pos;
        net.out_w[2 * j + 1] = 4.0 * dn * sign;
    }
    return net;
}

double SawtoothParams::evaluate(double t) const {
    DdAccumulator acc;
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        const double z = u[k] * t + q[k];
        if (z > 0.0) acc.add_product(a[k], z);
    }
    return acc.value();
}

SawtoothParams normalized_sawtooth_params(int n, double beta) {
    require(n >= 1, "normalized_sawtooth_params: n must be >= 1");
    require(beta > 0.0, "normalized_sawtooth_params: beta must be positive");
    const ReluNet net = sawtooth_net(n);
    const int width = 2 * n + 2;
    // The raw parameterization has inner weight beta on every unit and the
    // net's biases; rescaling by the inner-layer norm makes |u| = 1 while the
    // biases keep their paired signs, so u'q telescopes to zero exactly.
    const double norm = beta * std::sqrt(static_cast<double>(width));
    SawtoothParams p;
    p.u = Eigen::VectorXd::Constant(width, beta / norm);
    p.q = net.hidden[0].b / norm;
    p.a = norm * net.out_w;
    return p;
}

ReluNet square_net(double s, int K) {
    require(s > 0.0, "square_net: s must be positive");
    require(K >= 1, "square_net: K must be >= 1");
    ReluNet net;
    net.hidden.resize(1);
    Layer& l = net.hidden[0];
    l.W = Eigen::MatrixXd::Zero(2 * K, 1);
    l.b = Eigen::VectorXd::Zero(2 * K);
    net.out_w = Eigen::VectorXd::Constant(2 * K, 2.0 * s / K);
    net.out_b = 0.0;
    for (int k = 1; k <= K; ++k) {
        const double knot = s * k / K;
        l.W(2 * (k - 1), 0) = 1.0;
        l.b[2 * (k - 1)] = -knot;
        l.W(2 * k - 1, 0) = -1.0;
        l.b[2 * k - 1] = -knot;
    }
    return net;
}

CertifiedNet inner_net(int d, int K, double beta) {
    require(d >= 1, "inner_net: d must be >= 1");
    require(K >= 1, "inner_net: K must be >= 1");
    require(beta > 0.0, "inner_net: beta must be positive");
    const int width = 2 * K * d;
    ReluNet net;
    net.hidden.resize(1);
    Layer& l = net.hidden[0];
    l.W = Eigen::MatrixXd::Zero(width, 2 * d);
    l.b = Eigen::VectorXd::Zero(width);
    net.out_w = Eigen::VectorXd::Constant(width, 2.0 * kSqrt2 / (beta * K));
    net.out_b = -1.0 / beta;

    // Each coordinate pair feeds a squaring net in the direction
    // (e_i; e_i)/sqrt(2); the sum of squares recovers the inner product after
    // subtracting the constant half-norm.
    int row = 0;
    for (int i = 0; i < d; ++i) {
        for (int k = 1; k <= K; ++k) {
            const double knot = kSqrt2 * k / K;
            for (double sign : {1.0, -1.0}) {
                l.W(row, i) = sign / kSqrt2;
                l.W(row, d + i) = sign / kSqrt2;
                l.b[row] = -knot;
                ++row;
            }
        }
    }
    CertifiedNet out;
    out.cert = balance_depth2(net).cert;
    out.net = std::move(net);
    return out;
}

double inner_net_cost_bound(int d, double beta) {
    require(d >= 1, "inner_net_cost_bound: d must be >= 1");
    require(beta > 0.0, "inner_net_cost_bound: beta must be positive");
    return 4.0 * kSqrt6 * d / beta + 0.5 / (beta * beta);
}

double default_inner_scale(int d) {
    require(d >= 1, "default_inner_scale: d must be >= 1");
    return std::pow(static_cast<double>(d), -1.25);
}

double target_f(int d, const Eigen::Ref<const Eigen::VectorXd>& x) {
    require(d >= 1, "target_f: d must be >= 1");
    if (x.size() != 2 * d) throw ShapeError("target_f: x must have length 2d");
    const double n1 = x.head(d).norm();
    const double n2 = x.tail(d).norm();
    if (std::abs(n1 - 1.0) > 1e-9 || std::abs(n2 - 1.0) > 1e-9)
        throw DomainError("target_f: halves of x must lie on the unit sphere");
    const double ip = x.head(d).dot(x.tail(d));
    return sawtooth(3 * d, std::sqrt(static_cast<double>(d)) * ip);
}

CertifiedNet deep_approximant(int d, int K, double beta) {
    require(d >= 1, "deep_approximant: d must be >= 1");
    require(K >= 1, "deep_approximant: K must be >= 1");
    if (beta <= 0.0) beta = default_inner_scale(d);

    CertifiedNet inner = inner_net(d, K, beta);
    // The first layer computes (1/beta) f_inner; the sawtooth head absorbs
    // beta through its scaled argument, so the composition needs no extra
    // rescaling of the inner output weights.
    const SawtoothParams head =
        normalized_sawtooth_params(3 * d, std::sqrt(static_cast<double>(d)) * beta);

    ReluNet net;
    net.hidden.resize(2);
    net.hidden[0] = std::move(inner.net.hidden[0]);
    net.hidden[1].W = head.u * inner.net.out_w.transpose();
    net.hidden[1].b = inner.net.out_b * head.u + head.q;
    net.out_w = head.a;
    net.out_b = 0.0;

    CertifiedNet out;
    const int w1 = net.hidden[0].W.rows() > net.hidden[1].W.rows()
                       ? static_cast<int>(net.hidden[0].W.rows())
                       : static_cast<int>(net.hidden[1].W.rows());
    // The raw composition is badly scale-unbalanced (the inner layer's norm
    // grows with K while the head's shrinks); rebalancing the ReLU scale
    // symmetry is what makes the certified cost track d^(5/2).
    ReluNet balanced = balance_depth3_scales(net);
    out.cert = make_certificate(balanced, w1);
    out.net = std::move(balanced);
    return out;
}

double tent_cost_bound(int m, double eta) {
    require(m >= 1, "tent_cost_bound: m must be >= 1");
    require(eta > 0.0, "tent_cost_bound: eta must be positive");
    return 16.0 * kSqrt2 * m / (eta * eta);
}

TentResult tent_interpolant(const SphereDataset& data) {
    const int m = data.m();
    const int d = data.d;
    require(m >= 1, "tent_interpolant: need at least one sample");
    if (!data.labeled()) throw UsageError("tent_interpolant: dataset has no labels");
    for (int j = 0; j < m; ++j)
        require(std::abs(data.y[j]) <= 1.0, "tent_interpolant: labels must lie in [-1, 1]");
    if (max_half_norm_deviation(data) > 1e-9)
        throw DomainError("tent_interpolant: points must lie on the product of unit spheres");

    double eta = 1.0;  // a single point needs no separation; any width works
    if (m > 1) {
        eta = std::numeric_limits<double>::infinity();
        std::vector<std::pair<int, int>> colliding;
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                const double dist = (data.X.col(i) - data.X.col(j)).norm();
                if (dist <= 1e-12) colliding.emplace_back(i, j);
                if (dist < eta) eta = dist;
            }
        }
        if (!colliding.empty())
            throw DegeneracyError("tent_interpolant: coincident sample points", colliding);
    }
    const double eta0 = eta * eta / (2.0 * kSqrt2);

    // Three hinges per sample form a ridge tent of height 1 at x_j that dies
    // off before any other sample: v_j.x - sqrt(2) = -|x - x_j|^2 / (2 sqrt(2))
    // is at most -eta0 at every other sample point.
    ReluNet net;
    net.hidden.resize(1);
    Layer& l = net.hidden[0];
    l.W = Eigen::MatrixXd::Zero(3 * m, 2 * d);
    l.b = Eigen::VectorXd::Zero(3 * m);
    net.out_w = Eigen::VectorXd::Zero(3 * m);
    net.out_b = 0.0;
    for (int j = 0; j < m; ++j) {
        const Eigen::VectorXd v = data.X.col(j) / kSqrt2;
        const double yj = data.y[j];
        l.W.row(3 * j) = v.transpose();
        l.b[3 * j] = -(kSqrt2 - eta0);
        net.out_w[3 * j] = yj / eta0;
        l.W.row(3 * j + 1) = v.transpose();
        l.b[3 * j + 1] = -kSqrt2;
        net.out_w[3 * j + 1] = -2.0 * yj / eta0;
        l.W.row(3 * j + 2) = v.transpose();
        l.b[3 * j + 2] = -(kSqrt2 + eta0);
        net.out_w[3 * j + 2] = yj / eta0;
    }

    TentResult out;
    out.cert = balance_depth2(net).cert;
    out.net = std::move(net);
    out.eta = eta;
    out.eta0 = eta0;
    return out;
}

}  // namespace relucost
