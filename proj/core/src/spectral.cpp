#include "relucost/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "relucost/constructions.hpp"
#include "relucost/errors.hpp"
#include "relucost/quadrature.hpp"

namespace relucost {

namespace {

using boost::multiprecision::cpp_int;

cpp_int factorial(int k) {
    cpp_int r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

// Recurrence coefficients of the orthonormal polynomials of mu_d:
// t p_k = beta_{k+1} p_{k+1} + beta_k p_{k-1} (the weight is symmetric, so
// the diagonal terms vanish). The k = 1 value is E[t^2] = 1/d, which also
// covers d = 2 where the general expression degenerates to 0/0.
std::vector<double> recurrence_betas(int d, int count) {
    const double e = 0.5 * (d - 3);
    std::vector<double> beta(count + 1, 0.0);
    for (int k = 1; k <= count; ++k) {
        if (k == 1) {
            beta[k] = 1.0 / std::sqrt(static_cast<double>(d));
        } else {
            const double num = k * (k + 2.0 * e);
            const double den = (2.0 * k + 2.0 * e + 1.0) * (2.0 * k + 2.0 * e - 1.0);
            beta[k] = std::sqrt(num / den);
        }
    }
    return beta;
}

void eval_basis(const std::vector<double>& beta, int n, double t, Eigen::VectorXd& p) {
    p[0] = 1.0;
    if (n > 1) p[1] = t / beta[1];
    for (int k = 1; k + 1 < n; ++k) p[k + 1] = (t * p[k] - beta[k] * p[k - 1]) / beta[k + 1];
}

struct Piece {
    double x0, x1;
    enum Kind { interior, left_end, right_end, full } kind;
};

// Quadrature nodes and total weights (including the density) for one piece.
// End pieces use Jacobi rules that absorb the vanishing (1 -+ t)^e factor.
void piece_nodes(const Piece& pc, int d, int order, std::vector<double>& ts,
                 std::vector<double>& ws) {
    const double e = 0.5 * (d - 3);
    const double log_c =
        std::lgamma(0.5 * d) - 0.5 * std::log(M_PI) - std::lgamma(0.5 * (d - 1));
    const double c_d = std::exp(log_c);
    ts.clear();
    ws.clear();
    QuadRule rule;
    switch (pc.kind) {
        case Piece::interior: {
            rule = gauss_legendre(order);
            const double mid = 0.5 * (pc.x0 + pc.x1);
            const double half = 0.5 * (pc.x1 - pc.x0);
            for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
                const double t = mid + half * rule.nodes[i];
                ts.push_back(t);
                ws.push_back(half * rule.weights[i] * c_d * std::pow(1.0 - t * t, e));
            }
            break;
        }
        case Piece::right_end: {
            rule = gauss_jacobi(order, e, 0.0);
            const double h = 0.5 * (1.0 - pc.x0);
            const double factor = std::pow(h, e + 1.0);
            for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
                const double t = pc.x0 + h * (rule.nodes[i] + 1.0);
                ts.push_back(t);
                ws.push_back(factor * rule.weights[i] * c_d * std::pow(1.0 + t, e));
            }
            break;
        }
        case Piece::left_end: {
            rule = gauss_jacobi(order, 0.0, e);
            const double h = 0.5 * (pc.x1 + 1.0);
            const double factor = std::pow(h, e + 1.0);
            for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
                const double t = -1.0 + h * (rule.nodes[i] + 1.0);
                ts.push_back(t);
                ws.push_back(factor * rule.weights[i] * c_d * std::pow(1.0 - t, e));
            }
            break;
        }
        case Piece::full: {
            rule = gauss_jacobi(order, e, e);
            for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
                ts.push_back(rule.nodes[i]);
                ws.push_back(rule.weights[i] * c_d);
            }
            break;
        }
    }
}

}  // namespace

cpp_int harmonic_dim(int d, int n) {
    if (d < 2) throw UsageError("harmonic_dim: d must be >= 2");
    if (n < 0) throw UsageError("harmonic_dim: n must be >= 0");
    if (n == 0) return 1;
    return cpp_int(2 * n + d - 2) * factorial(n + d - 3) / (factorial(n) * factorial(d - 2));
}

double target_profile(int d, double t) {
    if (d < 1) throw UsageError("target_profile: d must be >= 1");
    return sawtooth(3 * d, std::sqrt(static_cast<double>(d)) * t);
}

std::vector<double> target_profile_breakpoints(int d) {
    if (d < 1) throw UsageError("target_profile_breakpoints: d must be >= 1");
    const int n = 6 * d;
    const double root_d = std::sqrt(static_cast<double>(d));
    std::vector<double> bp;
    bp.push_back(-1.0 / root_d);
    for (int k = 1; k <= n; ++k) bp.push_back((-1.0 + (2.0 * k - 1.0) / n) / root_d);
    bp.push_back(1.0 / root_d);
    std::sort(bp.begin(), bp.end());
    return bp;
}

PolyDistanceResult poly_distance_A(int d, int n, const std::function<double(double)>& g,
                                   const std::vector<double>& breakpoints, int quad_order) {
    if (d < 2) throw UsageError("poly_distance_A: d must be >= 2");
    if (n < 1) throw UsageError("poly_distance_A: n must be >= 1");
    if (quad_order <= 0) quad_order = std::max(8, 4 * n);

    PolyDistanceResult res;
    if (quad_order < n)
        res.note = "quadrature order below polynomial degree count; projections may be inexact";

    std::vector<double> edges;
    edges.push_back(-1.0);
    for (double b : breakpoints)
        if (b > -1.0 + 1e-15 && b < 1.0 - 1e-15) edges.push_back(b);
    edges.push_back(1.0);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-15; }),
                edges.end());

    std::vector<Piece> pieces;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        Piece pc;
        pc.x0 = edges[i];
        pc.x1 = edges[i + 1];
        const bool at_left = (i == 0);
        const bool at_right = (i + 2 == edges.size());
        pc.kind = at_left && at_right ? Piece::full
                  : at_left           ? Piece::left_end
                  : at_right          ? Piece::right_end
                                      : Piece::interior;
        pieces.push_back(pc);
    }

    const std::vector<double> beta = recurrence_betas(d, n);
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(n);
    double g_norm_sq = 0.0;
    Eigen::VectorXd p(n);
    std::vector<double> ts, ws;
    for (const Piece& pc : pieces) {
        piece_nodes(pc, d, quad_order, ts, ws);
        for (size_t i = 0; i < ts.size(); ++i) {
            const double gv = g(ts[i]);
            eval_basis(beta, n, ts[i], p);
            coeffs += (ws[i] * gv) * p;
            g_norm_sq += ws[i] * gv * gv;
        }
    }

    double a_sq = g_norm_sq - coeffs.squaredNorm();

    double direct = 0.0;
    for (const Piece& pc : pieces) {
        piece_nodes(pc, d, quad_order, ts, ws);
        for (size_t i = 0; i < ts.size(); ++i) {
            eval_basis(beta, n, ts[i], p);
            const double r = g(ts[i]) - coeffs.dot(p);
            direct += ws[i] * r * r;
        }
    }

    res.coeffs = coeffs;
    res.g_norm_sq = g_norm_sq;
    res.a_sq_direct = direct;
    res.pythagoras_gap = std::abs(a_sq - direct);
    res.a = std::sqrt(std::max(0.0, a_sq));
    return res;
}

PolyDistanceResult target_poly_distance(int d, int n, int quad_order) {
    return poly_distance_A(
        d, n, [d](double t) { return target_profile(d, t); },
        target_profile_breakpoints(d), quad_order);
}

}  // namespace relucost
