#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "relucost/compression.hpp"
#include "relucost/errors.hpp"
#include "relucost/net_transform.hpp"
#include "relucost/serialize.hpp"

using namespace relucost;
using test_helpers::make_net;
using test_helpers::random_points;

TEST_CASE("resampling a single-atom network reconstructs it exactly") {
    ReluNet net;
    net.hidden.resize(1);
    net.hidden[0].W.resize(1, 4);
    net.hidden[0].W << 0.6, -0.8, 0.2, 0.1;
    net.hidden[0].b.resize(1);
    net.hidden[0].b << 0.4;
    net.out_w.resize(1);
    net.out_w << 2.0;
    net.out_b = 0.3;

    const int omega = 32;
    const MaureyResult res = maurey_compress(net, omega, 17, 4, 512);
    CHECK(res.net.width(0) == omega);

    // Only one atom to draw: the mixture puts everything back.
    const Eigen::MatrixXd X = random_points(3, 4, 40);
    CHECK((evaluate_batch(res.net, X) - evaluate_batch(net, X)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(res.mc_l2 <= 1e-10);
}

TEST_CASE("compressed networks carry the mass-A parameter budget exactly") {
    const ReluNet net = make_net(71, 6, {24});
    const NormalizedDepth2Form form = balance_depth2(net).form;
    const double A = form.a.cwiseAbs().sum();
    const double c = form.c;

    const MaureyResult res = maurey_compress(net, 16, 5, 3, 1024);
    CHECK(res.a_mass == doctest::Approx(A).epsilon(1e-12));
    CHECK(weight_sq_norm(res.net) == doctest::Approx(2.0 * A + c * c).epsilon(1e-11));
    CHECK(res.cert.cost_value == doctest::Approx(A + c * c / 2.0).epsilon(1e-11));
    CHECK(res.cert.width_bound == 16);

    // Rebalancing the compressed net must keep the resampled mass intact.
    const double mass_back = balance_depth2(res.net).form.a.cwiseAbs().sum();
    CHECK(mass_back == doctest::Approx(A).epsilon(1e-10));
}

TEST_CASE("zero-mass networks compress to their constant part") {
    ReluNet net = make_net(72, 4, {5});
    net.out_w.setZero();
    net.out_b = 0.7;
    const MaureyResult res = maurey_compress(net, 8, 2, 2, 256);
    CHECK(res.a_mass == 0.0);
    CHECK(res.mc_l2 == 0.0);
    CHECK(res.net.width(0) == 8);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
    x[0] = 1.0;
    CHECK(evaluate(res.net, x) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(res.cert.cost_value == doctest::Approx(0.7 * 0.7 / 2.0).epsilon(1e-14));
}

TEST_CASE("compression is deterministic in the seed") {
    const ReluNet net = make_net(73, 4, {12});
    const MaureyResult a = maurey_compress(net, 8, 99, 3, 512);
    const MaureyResult b = maurey_compress(net, 8, 99, 3, 512);
    CHECK(serialize(a.net) == serialize(b.net));
    CHECK(a.mc_l2 == b.mc_l2);
    CHECK(a.chosen_restart == b.chosen_restart);
}

TEST_CASE("compression rejects malformed requests") {
    const ReluNet net = make_net(74, 4, {6});
    CHECK_THROWS_AS(maurey_compress(net, 0, 1), UsageError);
    CHECK_THROWS_AS(maurey_compress(net, 4, 1, 0), UsageError);
    CHECK_THROWS_AS(maurey_compress(net, 4, 1, 1, 0), UsageError);

    const ReluNet odd = make_net(75, 5, {6});
    CHECK_THROWS_AS(maurey_compress(odd, 4, 1), ShapeError);

    const ReluNet deep = make_net(76, 4, {6, 4});
    CHECK_THROWS_AS(maurey_compress(deep, 4, 1), UsageError);
}

TEST_CASE("the resampling error bound is the stated formula") {
    CHECK(maurey_error_bound(2.0, 16) ==
          doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
    CHECK(maurey_error_bound(0.0, 4) == 0.0);
    CHECK_THROWS_AS(maurey_error_bound(-1.0, 4), UsageError);
    CHECK_THROWS_AS(maurey_error_bound(1.0, 0), UsageError);
}
