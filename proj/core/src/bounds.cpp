#include "relucost/bounds.hpp"

#include <cmath>

#include "relucost/compression.hpp"
#include "relucost/constructions.hpp"
#include "relucost/errors.hpp"
#include "relucost/geometry.hpp"

namespace relucost {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw UsageError(msg);
}

double get(const std::map<std::string, double>& inputs, const std::string& key) {
    auto it = inputs.find(key);
    if (it == inputs.end()) throw UsageError("evaluate_bound: missing input '" + key + "'");
    return it->second;
}

long get_count(const std::map<std::string, double>& inputs, const std::string& key) {
    const double v = get(inputs, key);
    if (v < 0.0 || v != std::floor(v)) throw UsageError("evaluate_bound: '" + key + "' must be a nonnegative integer");
    return static_cast<long>(v);
}

}  // namespace

double separation_sample_size(double eps, double delta, int d, double exponent) {
    require(eps > 0.0, "separation_sample_size: eps must be positive");
    require(delta > 0.0 && delta < 1.0, "separation_sample_size: delta must be in (0,1)");
    require(d >= 1, "separation_sample_size: d must be >= 1");
    return std::pow(static_cast<double>(d), exponent) * std::log(1.0 / delta) / (eps * eps);
}

double rademacher_bound(double M, long m) {
    require(M >= 0.0, "rademacher_bound: M must be nonnegative");
    require(m >= 1, "rademacher_bound: m must be >= 1");
    return 4.0 * std::sqrt(6.0) * std::pow(M + 2.0 / 3.0, 1.5) / std::sqrt(static_cast<double>(m));
}

double estimation_error_bound(double M, long m, double delta) {
    require(M >= 0.0, "estimation_error_bound: M must be nonnegative");
    require(m >= 1, "estimation_error_bound: m must be >= 1");
    require(delta > 0.0 && delta < 1.0, "estimation_error_bound: delta must be in (0,1)");
    return kEstimationConstant * M * M * M *
           std::sqrt(std::log(1.0 / delta) / static_cast<double>(m));
}

double estimation_error_chain(double M, long m, double delta) {
    require(M >= 0.0, "estimation_error_chain: M must be nonnegative");
    require(m >= 1, "estimation_error_chain: m must be >= 1");
    require(delta > 0.0 && delta < 1.0, "estimation_error_chain: delta must be in (0,1)");
    const double dm = static_cast<double>(m);
    // Sup-norm envelope of the centered predictor against bounded labels.
    const double b = 1.0 + std::sqrt(3.0) * std::pow(M + 2.0 / 3.0, 1.5);
    // Uniform deviation: twice the loss-class Rademacher complexity (Lipschitz
    // contraction with constant 2b, plus the label-shift term b/sqrt(m)),
    // then a bounded-differences tail with range b^2.
    const double rad_loss = 2.0 * b * (rademacher_bound(M, m) + 1.0 / std::sqrt(dm));
    return 2.0 * rad_loss + b * b * std::sqrt(std::log(1.0 / delta) / (2.0 * dm));
}

double interpolant_cost_bound(long m, int d, double delta) {
    require(m >= 1, "interpolant_cost_bound: m must be >= 1");
    require(d >= 3, "interpolant_cost_bound: d must be >= 3");
    require(delta > 0.0 && delta < 1.0, "interpolant_cost_bound: delta must be in (0,1)");
    const double p = (d + 3.0) / (d - 1.0);
    return 16.0 * std::sqrt(2.0) * std::pow(static_cast<double>(m), p) *
           std::pow(delta, -2.0 / (d - 1.0));
}

double m3_sample_complexity(double eps, double delta, int d, double m2_value, double alpha) {
    require(eps > 0.0, "m3_sample_complexity: eps must be positive");
    require(delta > 0.0 && delta < 1.0, "m3_sample_complexity: delta must be in (0,1)");
    require(d >= 2, "m3_sample_complexity: d must be >= 2");
    require(m2_value > 0.0, "m3_sample_complexity: m2_value must be positive");
    require(alpha >= 1.0, "m3_sample_complexity: alpha must be >= 1");
    const double inner = d + std::pow(m2_value, (d + 3.0) / (d - 1.0));
    return kM3Constant * std::pow(alpha, 6.0) * std::pow(inner, 6.0) * std::log(1.0 / delta) /
           (eps * eps);
}

BoundReport evaluate_bound(const std::string& id, const std::map<std::string, double>& inputs) {
    BoundReport rep;
    rep.id = id;
    rep.inputs = inputs;
    if (id == "rademacher") {
        rep.value = rademacher_bound(get(inputs, "M"), get_count(inputs, "m"));
        rep.formula = "4*sqrt(6)*(M+2/3)^(3/2)/sqrt(m)";
    } else if (id == "estimation") {
        rep.value = estimation_error_bound(get(inputs, "M"), get_count(inputs, "m"),
                                           get(inputs, "delta"));
        rep.formula = "520*M^3*sqrt(log(1/delta)/m)";
    } else if (id == "tent") {
        rep.value = interpolant_cost_bound(get_count(inputs, "m"),
                                           static_cast<int>(get_count(inputs, "d")),
                                           get(inputs, "delta"));
        rep.formula = "16*sqrt(2)*m^((d+3)/(d-1))*delta^(-2/(d-1))";
    } else if (id == "m3") {
        rep.value = m3_sample_complexity(get(inputs, "eps"), get(inputs, "delta"),
                                         static_cast<int>(get_count(inputs, "d")),
                                         get(inputs, "m2"), get(inputs, "alpha"));
        rep.formula = "alpha^6*(d+m2^((d+3)/(d-1)))^6*log(1/delta)/eps^2";
    } else if (id == "collision") {
        rep.value = collision_probability_bound(static_cast<int>(get_count(inputs, "d")),
                                                static_cast<int>(get_count(inputs, "m")),
                                                get(inputs, "eta"));
        rep.formula = "m^2*eta^(d-1)";
    } else if (id == "inner") {
        rep.value = inner_net_cost_bound(static_cast<int>(get_count(inputs, "d")),
                                         get(inputs, "beta"));
        rep.formula = "4*sqrt(6)*d/beta+1/(2*beta^2)";
    } else if (id == "maurey") {
        rep.value = maurey_error_bound(get(inputs, "A"),
                                       static_cast<int>(get_count(inputs, "omega")));
        rep.formula = "sqrt(3)*A/sqrt(omega)";
    } else if (id == "sample") {
        const auto it = inputs.find("exponent");
        rep.value = separation_sample_size(get(inputs, "eps"), get(inputs, "delta"),
                                           static_cast<int>(get_count(inputs, "d")),
                                           it == inputs.end() ? 15.0 : it->second);
        rep.formula = "d^exponent*log(1/delta)/eps^2";
    } else {
        throw UsageError("evaluate_bound: unknown bound id '" + id + "'");
    }
    return rep;
}

}  // namespace relucost
