#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "relucost/compression.hpp"
#include "relucost/geometry.hpp"
#include "relucost/quadrature.hpp"
#include "relucost/relu_net.hpp"
#include "relucost/rng.hpp"
#include "relucost/spectral.hpp"

namespace {

using namespace relucost;

// Dense random net with nonzero biases, matching the shapes the library
// actually sees in training and compression.
ReluNet random_net(std::uint64_t seed, int input_dim, const std::vector<int>& widths) {
    Rng rng(seed);
    ReluNet net;
    int fan_in = input_dim;
    for (int w : widths) {
        Layer layer;
        layer.W.resize(w, fan_in);
        layer.b.resize(w);
        const double sc = 1.0 / std::sqrt(static_cast<double>(fan_in));
        for (int i = 0; i < w; ++i) {
            for (int j = 0; j < fan_in; ++j) layer.W(i, j) = sc * rng.normal();
            layer.b(i) = 0.3 * rng.normal();
        }
        net.hidden.push_back(std::move(layer));
        fan_in = w;
    }
    net.out_w.resize(fan_in);
    const double sc = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (int i = 0; i < fan_in; ++i) net.out_w(i) = sc * rng.normal();
    net.out_b = 0.1 * rng.normal();
    return net;
}

void bench_evaluate_batch(benchmark::State& state) {
    const int width = static_cast<int>(state.range(0));
    const ReluNet net = random_net(11, 8, {width});
    const SphereDataset data = sample_product_sphere(4, 1024, 7);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_batch(net, data.X));
}
BENCHMARK(bench_evaluate_batch)->Arg(64)->Arg(512);

void bench_analytic_gradient(benchmark::State& state) {
    const ReluNet net = random_net(13, 8, {64});
    SphereDataset data = sample_product_sphere(4, 200, 3);
    label_with_target(data);
    for (auto _ : state) {
        double loss = 0.0;
        NetGrad grad = analytic_gradient(net, data, 0.01, &loss);
        benchmark::DoNotOptimize(grad);
        benchmark::DoNotOptimize(loss);
    }
}
BENCHMARK(bench_analytic_gradient);

void bench_gauss_jacobi(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gauss_jacobi(32, 0.5, 0.5));
}
BENCHMARK(bench_gauss_jacobi);

void bench_target_poly_distance(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(target_poly_distance(6, 12));
}
BENCHMARK(bench_target_poly_distance);

void bench_sample_product_sphere(benchmark::State& state) {
    std::uint64_t seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(sample_product_sphere(4, 1000, seed++));
}
BENCHMARK(bench_sample_product_sphere);

void bench_maurey_compress(benchmark::State& state) {
    const ReluNet net = random_net(17, 6, {128});
    for (auto _ : state) benchmark::DoNotOptimize(maurey_compress(net, 32, 5, 2, 512));
}
BENCHMARK(bench_maurey_compress);

}  // namespace

BENCHMARK_MAIN();
