#include "relucost/relu_net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "relucost/compensated.hpp"
#include "relucost/errors.hpp"

namespace relucost {

void validate(const ReluNet& net) {
    if (net.hidden.empty() || net.hidden.size() > 2)
        throw ShapeError("network must have one or two hidden layers");
    for (std::size_t l = 0; l < net.hidden.size(); ++l) {
        const Layer& layer = net.hidden[l];
        if (layer.W.rows() == 0 || layer.W.cols() == 0)
            throw ShapeError("empty weight matrix in hidden layer " + std::to_string(l + 1));
        if (layer.b.size() != layer.W.rows())
            throw ShapeError("bias length does not match unit count in hidden layer " + std::to_string(l + 1));
        if (l > 0 && layer.W.cols() != net.hidden[l - 1].W.rows())
            throw ShapeError("hidden layer " + std::to_string(l + 1) + " input width does not chain");
        if (!layer.W.allFinite() || !layer.b.allFinite())
            throw ShapeError("non-finite entry in hidden layer " + std::to_string(l + 1));
    }
    if (net.out_w.size() != net.hidden.back().W.rows())
        throw ShapeError("output weight length does not match last hidden width");
    if (!net.out_w.allFinite() || !std::isfinite(net.out_b))
        throw ShapeError("non-finite entry in output layer");
}

double evaluate(const ReluNet& net, const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (x.size() != net.input_dim())
        throw ShapeError("input has length " + std::to_string(x.size()) + ", expected " +
                         std::to_string(net.input_dim()));
    Eigen::VectorXd h = (net.hidden[0].W * x + net.hidden[0].b).cwiseMax(0.0);
    for (std::size_t l = 1; l < net.hidden.size(); ++l)
        h = (net.hidden[l].W * h + net.hidden[l].b).cwiseMax(0.0);
    DdAccumulator acc;
    for (Eigen::Index k = 0; k < h.size(); ++k) acc.add_product(net.out_w[k], h[k]);
    acc.add(net.out_b);
    return acc.value();
}

Eigen::VectorXd evaluate_batch(const ReluNet& net, const Eigen::Ref<const Eigen::MatrixXd>& X) {
    if (X.rows() != net.input_dim())
        throw ShapeError("batch has row count " + std::to_string(X.rows()) + ", expected " +
                         std::to_string(net.input_dim()));
    Eigen::MatrixXd h = ((net.hidden[0].W * X).colwise() + net.hidden[0].b).cwiseMax(0.0);
    for (std::size_t l = 1; l < net.hidden.size(); ++l)
        h = ((net.hidden[l].W * h).colwise() + net.hidden[l].b).cwiseMax(0.0);
    return (h.transpose() * net.out_w).array() + net.out_b;
}

double weight_sq_norm(const ReluNet& net) {
    NeumaierSum s;
    for (const Layer& layer : net.hidden) {
        const double* w = layer.W.data();
        for (Eigen::Index i = 0; i < layer.W.size(); ++i) s.add(w[i] * w[i]);
        for (Eigen::Index i = 0; i < layer.b.size(); ++i) s.add(layer.b[i] * layer.b[i]);
    }
    for (Eigen::Index i = 0; i < net.out_w.size(); ++i) s.add(net.out_w[i] * net.out_w[i]);
    s.add(net.out_b * net.out_b);
    return s.value();
}

CostCertificate make_certificate(ReluNet witness, int width_bound) {
    validate(witness);
    CostCertificate cert;
    cert.depth = witness.depth();
    cert.cost_value = weight_sq_norm(witness) / cert.depth;
    cert.width_bound = width_bound;
    cert.witness = std::move(witness);
    return cert;
}

double empirical_loss(const ReluNet& net, const SphereDataset& data) {
    if (data.m() == 0) throw UsageError("empty batch");
    if (!data.labeled()) throw UsageError("dataset has no labels");
    Eigen::VectorXd f = evaluate_batch(net, data.X);
    return (f - data.y).squaredNorm() / data.m();
}

double objective(const ReluNet& net, const SphereDataset& data, double lambda) {
    return empirical_loss(net, data) + (lambda / net.depth()) * weight_sq_norm(net);
}

NetGrad analytic_gradient(const ReluNet& net, const SphereDataset& data, double lambda,
                          double* loss_out) {
    if (data.m() == 0) throw UsageError("empty batch");
    if (!data.labeled()) throw UsageError("dataset has no labels");
    const int m = data.m();
    const int L = net.depth();

    // Forward, keeping pre-activation signs. The mask uses strict positivity,
    // which pins the subgradient at a kink to 0.
    std::vector<Eigen::MatrixXd> acts;  // post-ReLU activations per hidden layer
    std::vector<Eigen::ArrayXXd> masks;
    acts.reserve(net.hidden.size());
    masks.reserve(net.hidden.size());
    {
        Eigen::MatrixXd cur = data.X;
        for (const Layer& layer : net.hidden) {
            Eigen::MatrixXd z = (layer.W * cur).colwise() + layer.b;
            masks.push_back((z.array() > 0.0).cast<double>());
            acts.push_back(z.cwiseMax(0.0));
            cur = acts.back();
        }
    }
    Eigen::VectorXd f = (acts.back().transpose() * net.out_w).array() + net.out_b;
    if (loss_out) *loss_out = (f - data.y).squaredNorm() / m;
    Eigen::VectorXd r = (2.0 / m) * (f - data.y);

    NetGrad g;
    g.hidden.resize(net.hidden.size());
    g.out_w = acts.back() * r;
    g.out_b = r.sum();

    // Backward pass.
    Eigen::MatrixXd delta = (net.out_w * r.transpose()).array() * masks.back();
    for (int l = static_cast<int>(net.hidden.size()) - 1; l >= 0; --l) {
        const Eigen::MatrixXd& input = (l == 0) ? data.X : acts[l - 1];
        g.hidden[l].W = delta * input.transpose();
        g.hidden[l].b = delta.rowwise().sum();
        if (l > 0) delta = (net.hidden[l].W.transpose() * delta).array() * masks[l - 1];
    }

    // Weight-decay term: d/dphi (lambda/L)|phi|^2 = 2(lambda/L) phi.
    const double wd = 2.0 * lambda / L;
    if (wd != 0.0) {
        for (std::size_t l = 0; l < net.hidden.size(); ++l) {
            g.hidden[l].W += wd * net.hidden[l].W;
            g.hidden[l].b += wd * net.hidden[l].b;
        }
        g.out_w += wd * net.out_w;
        g.out_b += wd * net.out_b;
    }
    return g;
}

NetGrad finite_difference_gradient(const ReluNet& net, const SphereDataset& data, double lambda,
                                   double h) {
    if (h <= 0.0) throw UsageError("finite_difference_gradient: h must be positive");
    ReluNet work = net;
    const auto probe = [&](double& param) {
        const double saved = param;
        param = saved + h;
        const double up = objective(work, data, lambda);
        param = saved - h;
        const double down = objective(work, data, lambda);
        param = saved;
        return (up - down) / (2.0 * h);
    };
    NetGrad g;
    g.hidden.resize(work.hidden.size());
    for (std::size_t l = 0; l < work.hidden.size(); ++l) {
        Layer& layer = work.hidden[l];
        g.hidden[l].W.resize(layer.W.rows(), layer.W.cols());
        g.hidden[l].b.resize(layer.b.size());
        for (Eigen::Index i = 0; i < layer.W.size(); ++i)
            g.hidden[l].W.data()[i] = probe(layer.W.data()[i]);
        for (Eigen::Index i = 0; i < layer.b.size(); ++i)
            g.hidden[l].b[i] = probe(layer.b[i]);
    }
    g.out_w.resize(work.out_w.size());
    for (Eigen::Index i = 0; i < work.out_w.size(); ++i) g.out_w[i] = probe(work.out_w[i]);
    g.out_b = probe(work.out_b);
    return g;
}

double min_abs_preactivation(const ReluNet& net, const SphereDataset& data) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd cur = data.X;
    for (const Layer& layer : net.hidden) {
        const Eigen::MatrixXd z = (layer.W * cur).colwise() + layer.b;
        best = std::min(best, z.cwiseAbs().minCoeff());
        cur = z.cwiseMax(0.0);
    }
    return best;
}

double max_half_norm_deviation(const SphereDataset& data) {
    const int d = data.d;
    double worst = 0.0;
    for (int i = 0; i < data.m(); ++i) {
        worst = std::max(worst, std::abs(data.X.col(i).head(d).norm() - 1.0));
        worst = std::max(worst, std::abs(data.X.col(i).tail(d).norm() - 1.0));
    }
    return worst;
}

}  // namespace relucost
