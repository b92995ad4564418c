#include "relucost/net_transform.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "relucost/compensated.hpp"
#include "relucost/errors.hpp"

namespace relucost {

double NormalizedDepth2Form::reduced_cost() const {
    NeumaierSum s;
    for (Eigen::Index k = 0; k < a.size(); ++k) s.add(std::abs(a[k]));
    s.add(0.5 * c * c);
    return s.value();
}

double NormalizedDepth2Form::evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (x.size() != input_dim) throw ShapeError("input length does not match form");
    DdAccumulator acc;
    for (Eigen::Index k = 0; k < units.rows(); ++k) {
        double z = units.row(k).head(input_dim).dot(x) + units(k, input_dim);
        if (z > 0.0) acc.add_product(a[k], z);
    }
    acc.add(c);
    return acc.value();
}

ReluNet NormalizedDepth2Form::to_net() const {
    const int w = width();
    ReluNet net;
    net.hidden.resize(1);
    net.hidden[0].W.resize(w, input_dim);
    net.hidden[0].b.resize(w);
    net.out_w.resize(w);
    net.out_b = c;
    for (int k = 0; k < w; ++k) {
        const double s = std::sqrt(std::abs(a[k]));
        if (s > 0.0) {
            net.hidden[0].W.row(k) = s * units.row(k).head(input_dim);
            net.hidden[0].b[k] = s * units(k, input_dim);
            net.out_w[k] = a[k] / s;
        } else {
            // Zero outer coefficient: the unit contributes nothing, so it must
            // carry no mass in the witness either.
            net.hidden[0].W.row(k).setZero();
            net.hidden[0].b[k] = 0.0;
            net.out_w[k] = 0.0;
        }
    }
    if (w == 0) {
        // Constant function; emit a single massless unit so shapes stay valid.
        net.hidden[0].W = Eigen::MatrixXd::Zero(1, input_dim);
        net.hidden[0].b = Eigen::VectorXd::Zero(1);
        net.out_w = Eigen::VectorXd::Zero(1);
    }
    return net;
}

BalanceResult balance_depth2(const ReluNet& net) {
    validate(net);
    if (net.depth() != 2) throw UsageError("balance_depth2 requires a depth-2 network");
    const int in = net.input_dim();
    const int w = net.width(0);

    std::vector<int> kept;
    kept.reserve(w);
    int dropped = 0;
    for (int k = 0; k < w; ++k) {
        const double r2 = net.hidden[0].W.row(k).squaredNorm() + net.hidden[0].b[k] * net.hidden[0].b[k];
        if (r2 > 0.0)
            kept.push_back(k);
        else
            ++dropped;  // [0]_+ = 0 regardless of the outer weight
    }

    NormalizedDepth2Form form;
    form.input_dim = in;
    form.units.resize(static_cast<int>(kept.size()), in + 1);
    form.a.resize(static_cast<int>(kept.size()));
    form.c = net.out_b;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const int k = kept[i];
        const double r = std::sqrt(net.hidden[0].W.row(k).squaredNorm() +
                                   net.hidden[0].b[k] * net.hidden[0].b[k]);
        form.units.row(static_cast<int>(i)).head(in) = net.hidden[0].W.row(k) / r;
        form.units(static_cast<int>(i), in) = net.hidden[0].b[k] / r;
        form.a[static_cast<int>(i)] = net.out_w[k] * r;
    }

    BalanceResult out;
    out.cert = make_certificate(form.to_net(), form.width());
    if (dropped > 0)
        out.cert.notes.push_back("dropped " + std::to_string(dropped) + " degenerate unit(s) with w=0, b=0");
    out.form = std::move(form);
    return out;
}

LiftResult lift_to_depth3(const ReluNet& net) {
    BalanceResult balanced = balance_depth2(net);
    const ReluNet base = balanced.form.to_net();
    const int in = base.input_dim();
    const int w = base.width(0);

    ReluNet lifted;
    lifted.hidden.resize(2);
    lifted.hidden[0].W.resize(2 * in, in);
    lifted.hidden[0].W << Eigen::MatrixXd::Identity(in, in), -Eigen::MatrixXd::Identity(in, in);
    lifted.hidden[0].b = Eigen::VectorXd::Zero(2 * in);
    lifted.hidden[1].W.resize(w, 2 * in);
    lifted.hidden[1].W << base.hidden[0].W, -base.hidden[0].W;
    lifted.hidden[1].b = base.hidden[0].b;
    lifted.out_w = base.out_w;
    lifted.out_b = base.out_b;

    LiftResult out;
    out.cert = make_certificate(lifted, std::max(2 * in, w));
    out.cert.notes.push_back("identity lift of a balanced depth-2 network with cost " +
                             std::to_string(balanced.cert.cost_value));
    out.net = std::move(lifted);
    return out;
}

ReluNet balance_depth3_scales(const ReluNet& net) {
    validate(net);
    if (net.depth() != 3) throw UsageError("balance_depth3_scales requires a depth-3 network");
    const double A = net.hidden[0].W.squaredNorm() + net.hidden[0].b.squaredNorm();
    const double Bw = net.hidden[1].W.squaredNorm();
    const double Bb = net.hidden[1].b.squaredNorm();
    const double C = net.out_w.squaredNorm();
    if (A <= 0.0 || C <= 0.0 || Bw + Bb <= 0.0) return net;

    // wsq(u, v) = u A + v (Bw / u + Bb) + C / v with u = s^2, v = t^2; the
    // inner minimum over u is closed-form, the rest is a ternary search on
    // log v (convex there).
    double u = 1.0, v = 1.0;
    if (Bw > 0.0) {
        const auto g = [&](double lv) {
            const double vv = std::exp(lv);
            return 2.0 * std::sqrt(A * Bw * vv) + Bb * vv + C / vv;
        };
        double lo = -120.0, hi = 120.0;
        for (int it = 0; it < 240; ++it) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (g(m1) < g(m2))
                hi = m2;
            else
                lo = m1;
        }
        v = std::exp(0.5 * (lo + hi));
        u = std::sqrt(v * Bw / A);
    } else {
        v = std::sqrt(C / Bb);
    }

    const double s = std::sqrt(u);
    const double t = std::sqrt(v);
    ReluNet out = net;
    out.hidden[0].W *= s;
    out.hidden[0].b *= s;
    out.hidden[1].W *= t / s;
    out.hidden[1].b *= t;
    out.out_w /= t;
    return out;
}

}  // namespace relucost
