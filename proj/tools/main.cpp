// Command-line front end: constructions, verification suites, compression,
// training, sweeps, the separation experiment, bound evaluation, and report
// regeneration. Every run writes a manifest echoing its resolved parameters;
// outputs are deterministic functions of (flags, seeds).

#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "relucost/bounds.hpp"
#include "relucost/compression.hpp"
#include "relucost/constructions.hpp"
#include "relucost/errors.hpp"
#include "relucost/experiment.hpp"
#include "relucost/geometry.hpp"
#include "relucost/io.hpp"
#include "relucost/learning.hpp"
#include "relucost/net_transform.hpp"
#include "relucost/relu_net.hpp"
#include "relucost/serialize.hpp"
#include "relucost/verify.hpp"

using namespace relucost;

namespace {

std::string resolve_out_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("RELUCOST_OUT"))
        if (*env) return env;
    return ".";
}

std::string join_path(const std::string& dir, const std::string& name) {
    if (!name.empty() && name.front() == '/') return name;
    if (dir.empty() || dir == ".") return name;
    if (dir.back() == '/') return dir + name;
    return dir + "/" + name;
}

// Ordered key = value record; used for manifests, certificate records, and
// report files. Insertion order is preserved so reruns are byte-identical.
class Record {
  public:
    void add(const std::string& key, const std::string& value) { kv_.emplace_back(key, value); }
    void add(const std::string& key, const char* value) { kv_.emplace_back(key, value); }
    void add(const std::string& key, double value) { kv_.emplace_back(key, format_double(value)); }
    void add(const std::string& key, int value) { kv_.emplace_back(key, std::to_string(value)); }
    void add(const std::string& key, long value) { kv_.emplace_back(key, std::to_string(value)); }
    void add(const std::string& key, std::uint64_t value) {
        kv_.emplace_back(key, std::to_string(value));
    }
    template <typename T>
    void add_list(const std::string& key, const std::vector<T>& values) {
        std::string s;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) s += ',';
            if constexpr (std::is_same_v<T, double>)
                s += format_double(values[i]);
            else
                s += std::to_string(values[i]);
        }
        kv_.emplace_back(key, s);
    }
    void append(const Record& other) {
        kv_.insert(kv_.end(), other.kv_.begin(), other.kv_.end());
    }

    std::string text() const {
        std::string out;
        for (const auto& [k, v] : kv_) out += k + " = " + v + "\n";
        return out;
    }
    void write(const std::string& path) const { write_text_file(path, text()); }

  private:
    std::vector<std::pair<std::string, std::string>> kv_;
};

std::string widths_string(const ReluNet& net) {
    std::string s;
    for (std::size_t l = 0; l < net.hidden.size(); ++l) {
        if (l) s += 'x';
        s += std::to_string(net.width(static_cast<int>(l)));
    }
    return s;
}

struct ConstructOut {
    std::string out_dir;
    std::string out;
};

// Emits the network, a companion certificate record, and the run manifest.
void emit_construction(const ConstructOut& where, const std::string& name, const ReluNet& net,
                       const CostCertificate& cert, double bound_value,
                       const std::string& bound_formula_id, Record params) {
    const std::string dir = resolve_out_dir(where.out_dir);
    const std::string out = join_path(dir, where.out.empty() ? name + ".json" : where.out);
    save_net(net, out);

    Record cert_rec;
    cert_rec.add("construction", name);
    cert_rec.add("depth", net.depth());
    cert_rec.add("widths", widths_string(net));
    cert_rec.add("cost_value", cert.cost_value);
    cert_rec.add("bound_value", bound_value);
    cert_rec.add("bound_formula_id", bound_formula_id);
    cert_rec.write(out + ".cert");

    Record manifest;
    manifest.add("subcommand", "construct " + name);
    manifest.add("out_dir", dir);
    manifest.add("out", out);
    manifest.append(params);
    manifest.write(out + ".manifest");

    std::cout << "construct " << name << ": depth=" << net.depth() << " widths="
              << widths_string(net) << " cost=" << format_double(cert.cost_value)
              << " bound=" << format_double(bound_value) << " (" << bound_formula_id << ") -> "
              << out << "\n";
}

SphereDataset dataset_from_flags(const std::string& data_file, int d, int m, std::uint64_t seed,
                                 bool want_labels) {
    if (!data_file.empty()) {
        SphereDataset data = load_dataset(data_file);
        if (want_labels && !data.labeled())
            throw UsageError("dataset file '" + data_file + "' carries no labels");
        return data;
    }
    if (d < 1 || m < 1) throw UsageError("either --data or both --d and --m are required");
    SphereDataset data = sample_product_sphere(d, m, seed);
    if (want_labels) label_with_target(data);
    return data;
}

std::vector<double> geometric_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi >= lo)) throw UsageError("lambda grid needs 0 < min <= max");
    if (count < 1) throw UsageError("lambda grid needs at least one value");
    std::vector<double> g(count);
    if (count == 1) {
        g[0] = lo;
        return g;
    }
    for (int i = 0; i < count; ++i)
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    g.back() = hi;
    return g;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"norm-controlled ReLU networks: constructions, certificates, and experiments"};
    app.require_subcommand(1);

    int code = 0;
    std::string out_dir_flag;
    app.add_option("--out-dir", out_dir_flag,
                   "output directory (default: $RELUCOST_OUT, else the working directory)");

    // ---- construct ----------------------------------------------------------
    auto* construct = app.add_subcommand("construct", "build a named network with a certificate");
    construct->require_subcommand(1);
    ConstructOut cons_out;
    construct->add_option("--out", cons_out.out, "output net file (default <name>.json)");

    {
        auto* c = construct->add_subcommand("sawtooth", "exact n-cycle wave, width 2n+2");
        auto n = std::make_shared<int>(8);
        c->add_option("--n", *n, "cycle count")->required()->check(CLI::PositiveNumber);
        c->callback([&, n]() {
            const ReluNet net = sawtooth_net(*n);
            const BalanceResult bal = balance_depth2(net);
            Record params;
            params.add("n", *n);
            cons_out.out_dir = out_dir_flag;
            emit_construction(cons_out, "sawtooth", net, bal.cert,
                              4.0 * std::sqrt(2.0) * *n * (2.0 * *n + 1.0), "sawtooth_cost",
                              std::move(params));
        });
    }
    {
        auto* c = construct->add_subcommand("square", "t^2 approximation on [-s, s]");
        auto s = std::make_shared<double>(std::sqrt(2.0));
        auto K = std::make_shared<int>(20);
        c->add_option("--s", *s, "half-width of the approximation interval")
            ->check(CLI::PositiveNumber);
        c->add_option("--K", *K, "knots per side")->required()->check(CLI::PositiveNumber);
        c->callback([&, s, K]() {
            const ReluNet net = square_net(*s, *K);
            const BalanceResult bal = balance_depth2(net);
            Record params;
            params.add("s", *s);
            params.add("K", *K);
            cons_out.out_dir = out_dir_flag;
            emit_construction(cons_out, "square", net, bal.cert,
                              4.0 * *s * std::sqrt(1.0 + *s * *s), "square_cost",
                              std::move(params));
        });
    }
    {
        auto* c = construct->add_subcommand("inner", "inner-product net on the sphere product");
        auto d = std::make_shared<int>(3);
        auto K = std::make_shared<int>(50);
        auto beta = std::make_shared<double>(1.0);
        c->add_option("--d", *d, "sphere dimension parameter")->required()
            ->check(CLI::PositiveNumber);
        c->add_option("--K", *K, "knots per squaring net")->required()
            ->check(CLI::PositiveNumber);
        c->add_option("--beta", *beta, "output scale (net realizes (1/beta) x approximation)")
            ->check(CLI::PositiveNumber);
        c->callback([&, d, K, beta]() {
            const CertifiedNet cn = inner_net(*d, *K, *beta);
            Record params;
            params.add("d", *d);
            params.add("K", *K);
            params.add("beta", *beta);
            cons_out.out_dir = out_dir_flag;
            emit_construction(cons_out, "inner", cn.net, cn.cert,
                              inner_net_cost_bound(*d, *beta), "inner", std::move(params));
        });
    }
    {
        auto* c = construct->add_subcommand("fdk", "depth-3 approximant of the target");
        auto d = std::make_shared<int>(3);
        auto K = std::make_shared<int>(200);
        auto beta = std::make_shared<double>(0.0);
        c->add_option("--d", *d, "sphere dimension parameter")->required()
            ->check(CLI::PositiveNumber);
        c->add_option("--K", *K, "knots per squaring net")->required()
            ->check(CLI::PositiveNumber);
        c->add_option("--beta", *beta, "inner scale (default d^(-5/4))");
        c->callback([&, d, K, beta]() {
            const CertifiedNet cn = deep_approximant(*d, *K, *beta);
            Record params;
            params.add("d", *d);
            params.add("K", *K);
            params.add("beta", *beta > 0.0 ? *beta : default_inner_scale(*d));
            cons_out.out_dir = out_dir_flag;
            emit_construction(cons_out, "fdk", cn.net, cn.cert, cn.cert.cost_value,
                              "certificate", std::move(params));
        });
    }
    {
        auto* c = construct->add_subcommand("tent", "exact interpolant of a labeled dataset");
        auto data_file = std::make_shared<std::string>();
        auto d = std::make_shared<int>(0);
        auto m = std::make_shared<int>(0);
        auto seed = std::make_shared<std::uint64_t>(1);
        c->add_option("--data", *data_file, "labeled dataset file");
        c->add_option("--d", *d, "sphere dimension parameter (sampled data)");
        c->add_option("--m", *m, "sample count (sampled data)");
        c->add_option("--seed", *seed, "sampling seed");
        c->callback([&, data_file, d, m, seed]() {
            const SphereDataset data = dataset_from_flags(*data_file, *d, *m, *seed, true);
            const TentResult tent = tent_interpolant(data);
            Record params;
            params.add("data", data_file->empty() ? "(sampled)" : *data_file);
            params.add("d", data.d);
            params.add("m", data.m());
            params.add("seed", *seed);
            params.add("eta", tent.eta);
            params.add("eta0", tent.eta0);
            cons_out.out_dir = out_dir_flag;
            emit_construction(cons_out, "tent", tent.net, tent.cert,
                              tent_cost_bound(data.m(), tent.eta), "tent_eta",
                              std::move(params));
        });
    }

    // ---- verify -------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->require_subcommand(1);

    const auto run_suites = [&](const std::string& name, Record params,
                                const std::vector<SuiteResult>& results) {
        bool ok = true;
        for (const SuiteResult& r : results) {
            std::cout << format_suite(r);
            ok = ok && r.pass();
        }
        const std::string dir = resolve_out_dir(out_dir_flag);
        Record manifest;
        manifest.add("subcommand", "verify " + name);
        manifest.add("out_dir", dir);
        manifest.append(params);
        manifest.add("result", ok ? "PASS" : "FAIL");
        manifest.write(join_path(dir, "verify_" + name + ".manifest"));
        if (!ok) code = 1;
    };

    {
        auto* v = verify->add_subcommand("sawtooth", "closed-form match and exact width");
        auto ns = std::make_shared<std::vector<int>>(std::vector<int>{1, 2, 4, 8, 16, 64});
        v->add_option("--n", *ns, "cycle counts")->expected(-1);
        v->callback([&, ns]() {
            Record p;
            p.add_list("n", *ns);
            run_suites("sawtooth", std::move(p), {verify_sawtooth(*ns)});
        });
    }
    {
        auto* v = verify->add_subcommand("square", "grid sup error of the squaring net");
        auto s = std::make_shared<double>(std::sqrt(2.0));
        auto ks = std::make_shared<std::vector<int>>(std::vector<int>{5, 20, 100});
        v->add_option("--s", *s)->check(CLI::PositiveNumber);
        v->add_option("--K", *ks)->expected(-1);
        v->callback([&, s, ks]() {
            Record p;
            p.add("s", *s);
            p.add_list("K", *ks);
            run_suites("square", std::move(p), {verify_square(*s, *ks)});
        });
    }
    {
        auto* v = verify->add_subcommand("inner", "Monte Carlo sup error of the inner net");
        auto ds = std::make_shared<std::vector<int>>(std::vector<int>{2, 3, 4});
        auto ks = std::make_shared<std::vector<int>>(std::vector<int>{20, 100});
        auto samples = std::make_shared<long>(100000);
        auto seed = std::make_shared<std::uint64_t>(1);
        v->add_option("--d", *ds)->expected(-1);
        v->add_option("--K", *ks)->expected(-1);
        v->add_option("--samples", *samples);
        v->add_option("--seed", *seed);
        v->callback([&, ds, ks, samples, seed]() {
            Record p;
            p.add_list("d", *ds);
            p.add_list("K", *ks);
            p.add("samples", *samples);
            p.add("seed", *seed);
            run_suites("inner", std::move(p), {verify_inner(*ds, *ks, *samples, *seed)});
        });
    }
    {
        auto* v = verify->add_subcommand("fdk", "approximant sup error, widths, cost scaling");
        auto ds = std::make_shared<std::vector<int>>(std::vector<int>{2, 3, 4});
        auto ks = std::make_shared<std::vector<int>>(std::vector<int>{50, 200});
        auto samples = std::make_shared<long>(100000);
        auto seed = std::make_shared<std::uint64_t>(1);
        v->add_option("--d", *ds)->expected(-1);
        v->add_option("--K", *ks)->expected(-1);
        v->add_option("--samples", *samples);
        v->add_option("--seed", *seed);
        v->callback([&, ds, ks, samples, seed]() {
            Record p;
            p.add_list("d", *ds);
            p.add_list("K", *ks);
            p.add("samples", *samples);
            p.add("seed", *seed);
            run_suites("fdk", std::move(p), {verify_fdk(*ds, *ks, *samples, *seed)});
        });
    }
    {
        auto* v = verify->add_subcommand("scaling", "certified cost against d^(5/2)");
        auto d_lo = std::make_shared<int>(2);
        auto d_hi = std::make_shared<int>(8);
        auto K = std::make_shared<int>(200);
        auto factor = std::make_shared<double>(3.0);
        v->add_option("--d-lo", *d_lo);
        v->add_option("--d-hi", *d_hi);
        v->add_option("--K", *K);
        v->add_option("--factor", *factor);
        v->callback([&, d_lo, d_hi, K, factor]() {
            Record p;
            p.add("d_lo", *d_lo);
            p.add("d_hi", *d_hi);
            p.add("K", *K);
            p.add("factor", *factor);
            run_suites("scaling", std::move(p),
                       {verify_fdk_scaling(*d_lo, *d_hi, *K, *factor)});
        });
    }
    {
        auto* v = verify->add_subcommand("tent", "interpolation residual and cost bounds");
        auto d = std::make_shared<int>(4);
        auto m = std::make_shared<int>(20);
        auto trials = std::make_shared<int>(1000);
        auto delta = std::make_shared<double>(0.1);
        auto seed = std::make_shared<std::uint64_t>(1);
        v->add_option("--d", *d);
        v->add_option("--m", *m);
        v->add_option("--trials", *trials);
        v->add_option("--delta", *delta);
        v->add_option("--seed", *seed);
        v->callback([&, d, m, trials, delta, seed]() {
            Record p;
            p.add("d", *d);
            p.add("m", *m);
            p.add("trials", *trials);
            p.add("delta", *delta);
            p.add("seed", *seed);
            run_suites("tent", std::move(p), {verify_tent(*d, *m, *trials, *delta, *seed)});
        });
    }
    {
        auto* v = verify->add_subcommand("maurey", "compression error and mass accounting");
        auto width = std::make_shared<int>(512);
        auto d = std::make_shared<int>(3);
        auto omegas = std::make_shared<std::vector<int>>(std::vector<int>{16, 64, 256});
        auto corpus = std::make_shared<int>(50);
        auto seed = std::make_shared<std::uint64_t>(1);
        v->add_option("--width", *width);
        v->add_option("--d", *d);
        v->add_option("--omega", *omegas)->expected(-1);
        v->add_option("--corpus", *corpus);
        v->add_option("--seed", *seed);
        v->callback([&, width, d, omegas, corpus, seed]() {
            Record p;
            p.add("width", *width);
            p.add("d", *d);
            p.add_list("omega", *omegas);
            p.add("corpus", *corpus);
            p.add("seed", *seed);
            run_suites("maurey", std::move(p),
                       {verify_maurey(*width, *d, *omegas, *corpus, *seed)});
        });
    }
    {
        auto* v = verify->add_subcommand("lift", "identity lift agreement and certificate");
        auto count = std::make_shared<int>(100);
        auto seed = std::make_shared<std::uint64_t>(1);
        v->add_option("--count", *count);
        v->add_option("--seed", *seed);
        v->callback([&, count, seed]() {
            Record p;
            p.add("count", *count);
            p.add("seed", *seed);
            run_suites("lift", std::move(p), {verify_lift(*count, *seed)});
        });
    }
    {
        auto* v = verify->add_subcommand("collision", "min-distance tail bound");
        auto d = std::make_shared<int>(4);
        auto m = std::make_shared<int>(20);
        auto trials = std::make_shared<int>(10000);
        auto etas = std::make_shared<std::vector<double>>(std::vector<double>{0.05, 0.1, 0.2});
        auto seed = std::make_shared<std::uint64_t>(1);
        v->add_option("--d", *d);
        v->add_option("--m", *m);
        v->add_option("--trials", *trials);
        v->add_option("--eta", *etas)->expected(-1);
        v->add_option("--seed", *seed);
        v->callback([&, d, m, trials, etas, seed]() {
            Record p;
            p.add("d", *d);
            p.add("m", *m);
            p.add("trials", *trials);
            p.add_list("eta", *etas);
            p.add("seed", *seed);
            run_suites("collision", std::move(p),
                       {verify_collision(*d, *m, *trials, *etas, *seed)});
        });
    }
    {
        auto* v = verify->add_subcommand("spectral", "harmonic dimensions and poly distance");
        auto d_max = std::make_shared<int>(12);
        v->add_option("--d-max", *d_max);
        v->callback([&, d_max]() {
            Record p;
            p.add("d_max", *d_max);
            run_suites("spectral", std::move(p), {verify_spectral(*d_max)});
        });
    }
    {
        auto* v = verify->add_subcommand("gradients", "analytic vs finite differences");
        auto triples = std::make_shared<int>(200);
        auto h = std::make_shared<double>(1e-5);
        auto seed = std::make_shared<std::uint64_t>(1);
        v->add_option("--triples", *triples);
        v->add_option("--step", *h, "finite-difference step");
        v->add_option("--seed", *seed);
        v->callback([&, triples, h, seed]() {
            Record p;
            p.add("triples", *triples);
            p.add("step", *h);
            p.add("seed", *seed);
            run_suites("gradients", std::move(p), {verify_gradients(*triples, *h, *seed)});
        });
    }
    {
        auto* v = verify->add_subcommand("all", "every suite at its default parameters");
        v->callback([&]() {
            Record p;
            p.add("suites", "sawtooth,square,inner,fdk,scaling,tent,maurey,lift,collision,"
                            "spectral,gradients");
            run_suites("all", std::move(p),
                       {verify_sawtooth({1, 2, 4, 8, 16, 64}),
                        verify_square(std::sqrt(2.0), {5, 20, 100}),
                        verify_inner({2, 3, 4}, {20, 100}, 100000, 1),
                        verify_fdk({2, 3, 4}, {50, 200}, 100000, 1),
                        verify_fdk_scaling(2, 8, 200, 3.0),
                        verify_tent(4, 20, 1000, 0.1, 1),
                        verify_maurey(512, 3, {16, 64, 256}, 50, 1),
                        verify_lift(100, 1),
                        verify_collision(4, 20, 10000, {0.05, 0.1, 0.2}, 1),
                        verify_spectral(12),
                        verify_gradients(200, 1e-5, 1)});
        });
    }

    // ---- compress -----------------------------------------------------------
    {
        auto* c = app.add_subcommand("compress", "Maurey-resample a depth-2 network");
        auto in = std::make_shared<std::string>();
        auto width = std::make_shared<int>(0);
        auto restarts = std::make_shared<int>(8);
        auto samples = std::make_shared<long>(4096);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto out = std::make_shared<std::string>("compressed.json");
        c->add_option("--in", *in, "input net file")->required();
        c->add_option("--width", *width, "units in the compressed net")->required()
            ->check(CLI::PositiveNumber);
        c->add_option("--restarts", *restarts)->check(CLI::PositiveNumber);
        c->add_option("--samples", *samples, "Monte Carlo comparison points")
            ->check(CLI::PositiveNumber);
        c->add_option("--seed", *seed);
        c->add_option("--out", *out);
        c->callback([&, in, width, restarts, samples, seed, out]() {
            const ReluNet net = load_net(*in);
            const MaureyResult res = maurey_compress(net, *width, *seed, *restarts, *samples);
            const std::string dir = resolve_out_dir(out_dir_flag);
            const std::string out_path = join_path(dir, *out);
            save_net(res.net, out_path);

            Record report;
            report.add("omega", *width);
            report.add("a_mass", res.a_mass);
            report.add("error_bound", maurey_error_bound(res.a_mass, *width));
            report.add("mc_l2", res.mc_l2);
            report.add("cost_value", res.cert.cost_value);
            report.add("chosen_restart", res.chosen_restart);
            report.write(out_path + ".report");

            Record manifest;
            manifest.add("subcommand", "compress");
            manifest.add("in", *in);
            manifest.add("width", *width);
            manifest.add("restarts", *restarts);
            manifest.add("samples", *samples);
            manifest.add("seed", *seed);
            manifest.add("out_dir", dir);
            manifest.add("out", out_path);
            manifest.write(out_path + ".manifest");

            std::cout << "compress: omega=" << *width << " A=" << format_double(res.a_mass)
                      << " mc_l2=" << format_double(res.mc_l2)
                      << " bound=" << format_double(maurey_error_bound(res.a_mass, *width))
                      << " cost=" << format_double(res.cert.cost_value) << " -> " << out_path
                      << "\n";
        });
    }

    // ---- train --------------------------------------------------------------
    {
        auto* c = app.add_subcommand("train", "weight-decay training on one dataset");
        auto data_file = std::make_shared<std::string>();
        auto d = std::make_shared<int>(0);
        auto m = std::make_shared<int>(0);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto depth = std::make_shared<int>(2);
        auto width = std::make_shared<int>(64);
        auto width2 = std::make_shared<int>(0);
        auto lambda = std::make_shared<double>(0.0);
        auto iters = std::make_shared<long>(500);
        auto restarts = std::make_shared<int>(5);
        auto lr = std::make_shared<double>(0.01);
        auto ckpt = std::make_shared<long>(50);
        auto train_seed = std::make_shared<std::uint64_t>(1);
        auto out = std::make_shared<std::string>("trained.json");
        c->add_option("--data", *data_file, "labeled dataset file");
        c->add_option("--d", *d, "sphere dimension parameter (sampled data)");
        c->add_option("--m", *m, "sample count (sampled data)");
        c->add_option("--seed", *seed, "sampling seed");
        c->add_option("--depth", *depth)->check(CLI::Range(2, 3));
        c->add_option("--width", *width)->check(CLI::PositiveNumber);
        c->add_option("--width2", *width2, "second hidden width (depth 3)");
        c->add_option("--lambda", *lambda)->check(CLI::NonNegativeNumber);
        c->add_option("--iters", *iters)->check(CLI::PositiveNumber);
        c->add_option("--restarts", *restarts)->check(CLI::PositiveNumber);
        c->add_option("--lr", *lr)->check(CLI::PositiveNumber);
        c->add_option("--checkpoint-every", *ckpt)->check(CLI::PositiveNumber);
        c->add_option("--train-seed", *train_seed);
        c->add_option("--out", *out);
        c->callback([&, data_file, d, m, seed, depth, width, width2, lambda, iters, restarts, lr,
                     ckpt, train_seed, out]() {
            const SphereDataset data = dataset_from_flags(*data_file, *d, *m, *seed, true);
            TrainConfig cfg;
            cfg.depth = *depth;
            cfg.width = *width;
            cfg.width2 = *width2;
            cfg.lambda = *lambda;
            cfg.iters = *iters;
            cfg.restarts = *restarts;
            cfg.adam.lr = *lr;
            cfg.checkpoint_every = *ckpt;
            cfg.seed = *train_seed;
            const TrainResult res = train_weight_decay(data, cfg);
            const std::string dir = resolve_out_dir(out_dir_flag);
            const std::string out_path = join_path(dir, *out);
            save_net(res.net, out_path);

            Record report;
            report.add("loss", res.loss);
            report.add("cost", res.cost);
            report.add("objective", res.objective);
            report.add("chosen_restart", res.chosen_restart);
            report.add_list("checkpoints", res.checkpoints);
            report.write(out_path + ".report");

            Record manifest;
            manifest.add("subcommand", "train");
            manifest.add("data", data_file->empty() ? "(sampled)" : *data_file);
            manifest.add("d", data.d);
            manifest.add("m", data.m());
            manifest.add("seed", *seed);
            manifest.add("depth", *depth);
            manifest.add("width", *width);
            manifest.add("width2", *width2);
            manifest.add("lambda", *lambda);
            manifest.add("iters", *iters);
            manifest.add("restarts", *restarts);
            manifest.add("lr", *lr);
            manifest.add("checkpoint_every", *ckpt);
            manifest.add("train_seed", *train_seed);
            manifest.add("out_dir", dir);
            manifest.add("out", out_path);
            manifest.write(out_path + ".manifest");

            std::cout << "train: loss=" << format_double(res.loss)
                      << " cost=" << format_double(res.cost)
                      << " objective=" << format_double(res.objective) << " -> " << out_path
                      << "\n";
        });
    }

    // ---- sweep ----------------------------------------------------------------
    {
        auto* c = app.add_subcommand("sweep", "regularization path and Pareto frontier");
        auto data_file = std::make_shared<std::string>();
        auto d = std::make_shared<int>(0);
        auto m = std::make_shared<int>(0);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto depth = std::make_shared<int>(2);
        auto width = std::make_shared<int>(64);
        auto width2 = std::make_shared<int>(0);
        auto lmin = std::make_shared<double>(1e-6);
        auto lmax = std::make_shared<double>(10.0);
        auto lcount = std::make_shared<int>(12);
        auto lambdas = std::make_shared<std::vector<double>>();
        auto iters = std::make_shared<long>(500);
        auto restarts = std::make_shared<int>(2);
        auto lr = std::make_shared<double>(0.01);
        auto train_seed = std::make_shared<std::uint64_t>(1);
        auto prefix = std::make_shared<std::string>("sweep");
        c->add_option("--data", *data_file, "labeled dataset file");
        c->add_option("--d", *d, "sphere dimension parameter (sampled data)");
        c->add_option("--m", *m, "sample count (sampled data)");
        c->add_option("--seed", *seed, "sampling seed");
        c->add_option("--depth", *depth)->check(CLI::Range(2, 3));
        c->add_option("--width", *width)->check(CLI::PositiveNumber);
        c->add_option("--width2", *width2);
        c->add_option("--lambda-min", *lmin);
        c->add_option("--lambda-max", *lmax);
        c->add_option("--lambda-count", *lcount);
        c->add_option("--lambdas", *lambdas, "explicit ascending grid")->expected(-1);
        c->add_option("--iters", *iters)->check(CLI::PositiveNumber);
        c->add_option("--restarts", *restarts)->check(CLI::PositiveNumber);
        c->add_option("--lr", *lr)->check(CLI::PositiveNumber);
        c->add_option("--train-seed", *train_seed);
        c->add_option("--out-prefix", *prefix);
        c->callback([&, data_file, d, m, seed, depth, width, width2, lmin, lmax, lcount, lambdas,
                     iters, restarts, lr, train_seed, prefix]() {
            const SphereDataset data = dataset_from_flags(*data_file, *d, *m, *seed, true);
            const std::vector<double> grid =
                lambdas->empty() ? geometric_grid(*lmin, *lmax, *lcount) : *lambdas;
            TrainConfig base;
            base.depth = *depth;
            base.width = *width;
            base.width2 = *width2;
            base.iters = *iters;
            base.restarts = *restarts;
            base.adam.lr = *lr;
            base.seed = *train_seed;
            const SweepResult res = pareto_sweep(data, *depth, *width, grid, base);

            const std::string dir = resolve_out_dir(out_dir_flag);
            const auto path = [&](const char* suffix) {
                return join_path(dir, *prefix + suffix);
            };
            std::ostringstream frontier_csv;
            frontier_csv << "lambda,loss,cost\n";
            for (const ParetoPoint& p : res.frontier)
                frontier_csv << format_double(p.lambda) << ',' << format_double(p.loss) << ','
                             << format_double(p.cost) << '\n';
            write_text_file(path("_frontier.csv"), frontier_csv.str());

            std::ostringstream all_csv;
            all_csv << "lambda,loss,cost\n";
            for (const ParetoPoint& p : res.swept)
                all_csv << format_double(p.lambda) << ',' << format_double(p.loss) << ','
                        << format_double(p.cost) << '\n';
            write_text_file(path("_all.csv"), all_csv.str());

            std::string report = "frontier " + std::to_string(res.frontier.size()) + " of " +
                                 std::to_string(res.swept.size()) + " swept\n";
            for (const auto& [lam, reason] : res.failures)
                report += "failure lambda=" + format_double(lam) + " " + reason + "\n";
            for (const std::string& flag : res.flags) report += "flag " + flag + "\n";
            write_text_file(path("_report.txt"), report);

            Record manifest;
            manifest.add("subcommand", "sweep");
            manifest.add("data", data_file->empty() ? "(sampled)" : *data_file);
            manifest.add("d", data.d);
            manifest.add("m", data.m());
            manifest.add("seed", *seed);
            manifest.add("depth", *depth);
            manifest.add("width", *width);
            manifest.add("width2", *width2);
            manifest.add_list("lambda_grid", grid);
            manifest.add("iters", *iters);
            manifest.add("restarts", *restarts);
            manifest.add("lr", *lr);
            manifest.add("train_seed", *train_seed);
            manifest.add("out_dir", dir);
            manifest.add("out_prefix", *prefix);
            manifest.write(path(".manifest"));

            std::cout << "sweep: " << res.frontier.size() << " frontier points, "
                      << res.swept.size() << " swept, " << res.failures.size()
                      << " failures -> " << path("_frontier.csv") << "\n";
        });
    }

    // ---- experiment -----------------------------------------------------------
    {
        auto* c = app.add_subcommand("experiment", "seeded depth-2 vs depth-3 separation sweep");
        auto cfg = std::make_shared<ExperimentConfig>();
        auto config_file = std::make_shared<std::string>();
        auto prefix = std::make_shared<std::string>("experiment");
        c->add_option("--config", *config_file, "key = value config file; overrides flags");
        c->add_option("--d-list", cfg->d_list)->expected(-1);
        c->add_option("--m-list", cfg->m_list)->expected(-1);
        c->add_option("--seeds", cfg->seeds);
        c->add_option("--root-seed", cfg->root_seed);
        c->add_option("--epsilon", cfg->epsilon);
        c->add_option("--theta", cfg->theta_override);
        c->add_option("--alpha", cfg->alpha);
        c->add_option("--depth2-width", cfg->depth2_width);
        c->add_option("--depth3-width1", cfg->depth3_width1);
        c->add_option("--depth3-width2", cfg->depth3_width2);
        c->add_option("--lambda-count", cfg->lambda_count);
        c->add_option("--lambda-min", cfg->lambda_min);
        c->add_option("--lambda-max", cfg->lambda_max);
        c->add_option("--test-samples", cfg->test_samples);
        c->add_option("--iters", cfg->iters);
        c->add_option("--adam-lr", cfg->adam_lr);
        c->add_option("--restarts", cfg->restarts);
        c->add_option("--out-prefix", *prefix);
        c->callback([&, cfg, config_file, prefix]() {
            if (!config_file->empty()) apply_experiment_config(parse_kv_file(*config_file), *cfg);
            const ExperimentResult result = run_separation_experiment(*cfg);

            const std::string dir = resolve_out_dir(out_dir_flag);
            const auto path = [&](const char* suffix) {
                return join_path(dir, *prefix + suffix);
            };
            write_text_file(path("_results.csv"), experiment_csv(result));
            write_text_file(path("_summary.txt"), experiment_summary(result));
            write_text_file(path("_long.csv"), experiment_long_csv(result));

            std::string manifest = "subcommand = experiment\n";
            manifest += "config_file = " + (config_file->empty() ? "(none)" : *config_file) + "\n";
            manifest += "out_dir = " + dir + "\n";
            manifest += "out_prefix = " + *prefix + "\n";
            manifest += experiment_config_text(*cfg);
            write_text_file(path(".manifest"), manifest);

            std::cout << "experiment: " << result.rows.size() << " rows -> "
                      << path("_results.csv") << "\n";
        });
    }

    // ---- bound -----------------------------------------------------------------
    {
        auto* c = app.add_subcommand("bound", "evaluate a named bound");
        auto id = std::make_shared<std::string>();
        c->add_option("id", *id, "rademacher|estimation|tent|m3|collision|inner|maurey|sample")
            ->required();
        struct Flag {
            const char* name;
            double value;
            CLI::Option* opt;
        };
        auto flags = std::make_shared<std::vector<Flag>>(std::vector<Flag>{
            {"M", 0, nullptr},     {"m", 0, nullptr},        {"delta", 0, nullptr},
            {"d", 0, nullptr},     {"eta", 0, nullptr},      {"A", 0, nullptr},
            {"omega", 0, nullptr}, {"eps", 0, nullptr},      {"m2", 0, nullptr},
            {"alpha", 0, nullptr}, {"exponent", 0, nullptr}, {"beta", 0, nullptr},
        });
        for (Flag& f : *flags) f.opt = c->add_option("--" + std::string(f.name), f.value);
        auto batch = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>("bounds.csv");
        c->add_option("--batch", *batch, "CSV of parameter rows (header = input names)");
        c->add_option("--out", *out, "batch output file");
        c->callback([&, id, flags, batch, out]() {
            const std::string dir = resolve_out_dir(out_dir_flag);
            if (batch->empty()) {
                std::map<std::string, double> inputs;
                for (const Flag& f : *flags)
                    if (f.opt->count() > 0) inputs[f.name] = f.value;
                const BoundReport rep = evaluate_bound(*id, inputs);
                std::string line = "bound " + rep.id + " value=" + format_double(rep.value) +
                                   " formula=\"" + rep.formula + "\"";
                for (const auto& [k, v] : rep.inputs) line += " " + k + "=" + format_double(v);
                std::cout << line << "\n";

                Record manifest;
                manifest.add("subcommand", "bound");
                manifest.add("id", *id);
                for (const auto& [k, v] : rep.inputs) manifest.add(k, v);
                manifest.add("value", rep.value);
                manifest.add("out_dir", dir);
                manifest.write(join_path(dir, "bound_" + *id + ".manifest"));
                return;
            }
            // Batch mode: one bound evaluation per CSV row.
            const std::string text = read_text_file(*batch);
            std::istringstream in(text);
            std::string line;
            if (!std::getline(in, line)) throw ParseError("empty batch file '" + *batch + "'", 0);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::vector<std::string> names;
            {
                std::istringstream hs(line);
                std::string col;
                while (std::getline(hs, col, ',')) names.push_back(col);
            }
            if (names.empty()) throw ParseError("batch header has no columns", 0);
            std::ostringstream out_csv;
            out_csv << line << ",value\n";
            int rows = 0;
            int line_no = 1;
            while (std::getline(in, line)) {
                ++line_no;
                if (!line.empty() && line.back() == '\r') line.pop_back();
                if (line.empty()) continue;
                std::istringstream rs(line);
                std::string cell;
                std::map<std::string, double> inputs;
                for (const std::string& name : names) {
                    if (!std::getline(rs, cell, ','))
                        throw ParseError("short batch row at line " + std::to_string(line_no), 0);
                    try {
                        std::size_t pos = 0;
                        const double v = std::stod(cell, &pos);
                        if (pos != cell.size()) throw std::invalid_argument("trailing");
                        inputs[name] = v;
                    } catch (const std::exception&) {
                        throw ParseError("bad number '" + cell + "' at line " +
                                             std::to_string(line_no),
                                         0);
                    }
                }
                const BoundReport rep = evaluate_bound(*id, inputs);
                out_csv << line << ',' << format_double(rep.value) << '\n';
                ++rows;
            }
            const std::string out_path = join_path(dir, *out);
            write_text_file(out_path, out_csv.str());

            Record manifest;
            manifest.add("subcommand", "bound");
            manifest.add("id", *id);
            manifest.add("batch", *batch);
            manifest.add("rows", rows);
            manifest.add("out_dir", dir);
            manifest.add("out", out_path);
            manifest.write(out_path + ".manifest");
            std::cout << "bound " << *id << ": " << rows << " rows -> " << out_path << "\n";
        });
    }

    // ---- report ----------------------------------------------------------------
    {
        auto* c = app.add_subcommand("report", "regenerate summary and long CSV from results");
        auto results = std::make_shared<std::string>();
        auto prefix = std::make_shared<std::string>("report");
        c->add_option("--results", *results, "experiment results CSV")->required();
        c->add_option("--out-prefix", *prefix);
        c->callback([&, results, prefix]() {
            const ExperimentResult res = parse_experiment_csv(read_text_file(*results));
            const std::string dir = resolve_out_dir(out_dir_flag);
            const auto path = [&](const char* suffix) {
                return join_path(dir, *prefix + suffix);
            };
            write_text_file(path("_summary.txt"), experiment_summary(res));
            write_text_file(path("_long.csv"), experiment_long_csv(res));

            Record manifest;
            manifest.add("subcommand", "report");
            manifest.add("results", *results);
            manifest.add("rows", static_cast<long>(res.rows.size()));
            manifest.add("out_dir", dir);
            manifest.add("out_prefix", *prefix);
            manifest.write(path(".manifest"));
            std::cout << "report: " << res.rows.size() << " rows -> " << path("_summary.txt")
                      << "\n";
        });
    }

    // Let --out-dir (declared on the root) be written after any subcommand.
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        for (CLI::App* s : a->get_subcommands([](CLI::App*) { return true; })) {
            s->fallthrough();
            enable_fallthrough(s);
        }
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        std::cerr << "usage error: " << e.what() << "\n";
        std::cerr << app.help();
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ShapeError& e) {
        std::cerr << "shape error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const TrainingError& e) {
        std::cerr << "training error: " << e.what() << "\n";
        return 1;
    } catch (const DegeneracyError& e) {
        std::cerr << "degeneracy error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return code;
}
