// Acceptance gate: one criterion per numbered block, each printing its check
// table and a final "criterion N: PASS|FAIL" line. Exit 0 iff every selected
// criterion passes. Tolerances and parameters are pinned here on purpose;
// loosening them is a change to what the project promises, not a test detail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "relucost/bounds.hpp"
#include "relucost/experiment.hpp"
#include "relucost/io.hpp"
#include "relucost/verify.hpp"

namespace {

using namespace relucost;

constexpr std::uint64_t kSeed = 20240817;

bool print_suites(const std::vector<SuiteResult>& suites) {
    bool ok = true;
    for (const SuiteResult& s : suites) {
        std::cout << format_suite(s);
        ok = ok && s.pass();
    }
    return ok;
}

bool criterion_sawtooth() { return print_suites({verify_sawtooth({1, 2, 4, 8, 16, 64})}); }

bool criterion_squaring() {
    return print_suites({verify_square(std::sqrt(2.0), {5, 20, 100}),
                         verify_inner({2, 3, 4}, {20, 100}, 100000, kSeed)});
}

bool criterion_approximant() {
    return print_suites(
        {verify_fdk({2, 3, 4}, {50, 200}, 100000, kSeed), verify_fdk_scaling(2, 8, 200, 3.0)});
}

bool criterion_interpolation() { return print_suites({verify_tent(4, 20, 1000, 0.1, kSeed)}); }

bool criterion_compression() {
    return print_suites({verify_maurey(512, 3, {16, 64, 256}, 50, kSeed)});
}

bool criterion_lift() { return print_suites({verify_lift(100, kSeed)}); }

bool criterion_collision() {
    return print_suites({verify_collision(4, 20, 10000, {0.05, 0.1, 0.2}, kSeed)});
}

bool criterion_spectral() { return print_suites({verify_spectral(12)}); }

bool criterion_gradients() { return print_suites({verify_gradients(200, 1e-5, kSeed)}); }

// ---- full separation experiment ---------------------------------------------

std::string cell_name(int d, int m, int seed) {
    return "d=" + std::to_string(d) + " m=" + std::to_string(m) + " seed=" + std::to_string(seed);
}

bool criterion_experiment() {
    const ExperimentConfig cfg;  // defaults are the pinned experiment grid
    const ExperimentResult result = run_separation_experiment(cfg);
    std::cout << experiment_summary(result);

    std::map<std::tuple<int, int, int>, std::pair<const ExperimentRow*, const ExperimentRow*>>
        cells;
    for (const ExperimentRow& row : result.rows) {
        auto& slot = cells[{row.d, row.m, row.seed}];
        (row.depth == 2 ? slot.first : slot.second) = &row;
    }

    SuiteResult out;
    out.suite = "separation experiment";

    {
        Check c;
        c.name = "depth-2 proxy cost <= 1.1 x interpolant certificate";
        c.bound = 1.1;
        bool rows_ok = true;
        double worst = 0.0;
        for (const auto& [key, rows] : cells) {
            const ExperimentRow* r = rows.first;
            const auto [d, m, seed] = key;
            if (r == nullptr) {
                rows_ok = false;
                if (c.detail.empty()) c.detail = "missing depth-2 row at " + cell_name(d, m, seed);
                continue;
            }
            if (r->status.rfind("ok", 0) != 0) {
                rows_ok = false;
                if (c.detail.empty())
                    c.detail = cell_name(d, m, seed) + " status " + r->status;
            }
            const double ratio = r->cost / r->tent_bound;
            if (!std::isfinite(ratio)) {
                rows_ok = false;
                if (c.detail.empty()) c.detail = cell_name(d, m, seed) + " non-finite cost ratio";
                continue;
            }
            worst = std::max(worst, ratio);
        }
        c.value = worst;
        c.pass = rows_ok && worst <= c.bound;
        out.checks.push_back(c);
    }

    {
        Check c;
        c.name = "depth-3 rule beats depth-2 proxy on >= 0.7 of d >= 4 cells";
        c.bound = 0.7;
        long total = 0;
        long wins = 0;
        for (const auto& [key, rows] : cells) {
            const auto [d, m, seed] = key;
            if (d < 4) continue;
            ++total;
            const ExperimentRow* r2 = rows.first;
            const ExperimentRow* r3 = rows.second;
            if (r2 == nullptr || r3 == nullptr) continue;
            if (!std::isfinite(r3->test_loss)) continue;
            if (!std::isfinite(r2->test_loss) || r3->test_loss <= r2->test_loss) ++wins;
        }
        c.value = total > 0 ? static_cast<double>(wins) / static_cast<double>(total) : 0.0;
        c.pass = total > 0 && c.value >= c.bound;
        c.detail = std::to_string(wins) + " of " + std::to_string(total) + " cells";
        out.checks.push_back(c);
    }

    {
        Check c;
        c.name = "depth-3 generalization gap within the estimation bound";
        c.bound = 1.0;
        bool rows_ok = true;
        double worst = 0.0;
        const double delta = 0.1;
        for (const auto& [key, rows] : cells) {
            const ExperimentRow* r = rows.second;
            const auto [d, m, seed] = key;
            if (r == nullptr) {
                rows_ok = false;
                if (c.detail.empty()) c.detail = "missing depth-3 row at " + cell_name(d, m, seed);
                continue;
            }
            const double gap = r->test_loss - r->train_loss;
            const double allowed = estimation_error_bound(std::max(1.0, r->cost), r->m, delta);
            const double ratio = gap / allowed;
            if (!std::isfinite(ratio)) {
                rows_ok = false;
                if (c.detail.empty()) c.detail = cell_name(d, m, seed) + " non-finite gap ratio";
                continue;
            }
            if (ratio > worst) {
                worst = ratio;
                if (ratio > c.bound) c.detail = "worst at " + cell_name(d, m, seed);
            }
        }
        c.value = worst;
        c.pass = rows_ok && worst <= c.bound;
        out.checks.push_back(c);
    }

    std::cout << format_suite(out);
    return out.pass();
}

// ---- byte-identical reruns ---------------------------------------------------

bool criterion_determinism() {
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "relucost_acceptance_rerun";
    std::error_code ec;
    fs::remove_all(base, ec);
    const fs::path work = base / "work";
    fs::create_directories(work);

    // The experiment config lives outside the compared tree so the manifests
    // that embed its path stay stable across both runs.
    const fs::path cfg_path = base / "exp.cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "d_list = 2\n"
               "m_list = 6\n"
               "seeds = 1\n"
               "root_seed = 9\n"
               "theta = 0.4\n"
               "depth2_width = 8\n"
               "depth3_width1 = 8\n"
               "depth3_width2 = 4\n"
               "lambda_count = 2\n"
               "lambda_min = 0.001\n"
               "lambda_max = 0.1\n"
               "test_samples = 300\n"
               "iters = 25\n"
               "adam_lr = 0.02\n"
               "restarts = 1\n";
    }

    const std::vector<std::string> commands = {
        "construct sawtooth --n 8",
        "construct fdk --d 3 --K 50",
        "construct inner --d 2 --K 10",
        "bound tent --m 20 --d 4 --delta 0.1",
        "verify sawtooth --n 4",
        "train --d 2 --m 6 --seed 3 --width 8 --iters 40 --train-seed 2",
        "compress --in '" + (work / "inner.json").string() +
            "' --width 6 --restarts 2 --seed 4",
        "experiment --config '" + cfg_path.string() + "'",
    };

    const auto run_all = [&]() {
        int failures = 0;
        for (std::size_t i = 0; i < commands.size(); ++i) {
            const std::string log = (work / ("cmd_" + std::to_string(i) + ".out")).string();
            const std::string shell = "RELUCOST_OUT='" + work.string() + "' '" + RELUCOST_CLI_PATH +
                                      "' " + commands[i] + " > '" + log + "' 2>&1";
            if (std::system(shell.c_str()) != 0) ++failures;
        }
        return failures;
    };

    const auto snapshot = [&]() {
        std::map<std::string, std::string> files;
        for (const auto& entry : fs::recursive_directory_iterator(work)) {
            if (!entry.is_regular_file()) continue;
            std::ifstream in(entry.path(), std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            files[fs::relative(entry.path(), work).string()] = buf.str();
        }
        return files;
    };

    const int failures_first = run_all();
    const std::map<std::string, std::string> first = snapshot();
    const int failures_second = run_all();
    const std::map<std::string, std::string> second = snapshot();
    fs::remove_all(base, ec);

    SuiteResult out;
    out.suite = "seeded rerun";

    {
        Check c;
        c.name = "every command exits 0 on both runs";
        c.value = failures_first + failures_second;
        c.bound = 0.0;
        c.pass = c.value == 0.0;
        out.checks.push_back(c);
    }

    {
        Check c;
        c.name = "both runs produce the same file set";
        c.bound = 0.0;
        for (const auto& [path, bytes] : first)
            if (second.find(path) == second.end()) {
                c.value += 1.0;
                if (c.detail.empty()) c.detail = "only in first run: " + path;
            }
        for (const auto& [path, bytes] : second)
            if (first.find(path) == first.end()) {
                c.value += 1.0;
                if (c.detail.empty()) c.detail = "only in second run: " + path;
            }
        c.pass = c.value == 0.0 && !first.empty();
        if (first.empty()) c.detail = "no output files found";
        out.checks.push_back(c);
    }

    {
        Check c;
        c.name = "every shared file is byte-identical";
        c.bound = 0.0;
        for (const auto& [path, bytes] : first) {
            const auto it = second.find(path);
            if (it == second.end() || it->second == bytes) continue;
            c.value += 1.0;
            if (!c.detail.empty()) c.detail += ", ";
            if (c.value <= 3.0) c.detail += path;
        }
        c.pass = c.value == 0.0;
        out.checks.push_back(c);
    }

    std::cout << format_suite(out);
    return out.pass();
}

bool run_criterion(int idx) {
    switch (idx) {
        case 1: return criterion_sawtooth();
        case 2: return criterion_squaring();
        case 3: return criterion_approximant();
        case 4: return criterion_interpolation();
        case 5: return criterion_compression();
        case 6: return criterion_lift();
        case 7: return criterion_collision();
        case 8: return criterion_spectral();
        case 9: return criterion_gradients();
        case 10: return criterion_experiment();
        case 11: return criterion_determinism();
        default: return false;
    }
}

}  // namespace

int main(int argc, char** argv) {
    int which = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            which = std::atoi(argv[++i]);
            continue;
        }
        std::cerr << "usage: relucost_acceptance [--criterion N]  (N in 1..11)\n";
        return 2;
    }
    if (which < 0 || which > 11) {
        std::cerr << "usage: relucost_acceptance [--criterion N]  (N in 1..11)\n";
        return 2;
    }

    bool all_pass = true;
    for (int c = 1; c <= 11; ++c) {
        if (which != 0 && c != which) continue;
        bool ok = false;
        const auto started = std::chrono::steady_clock::now();
        try {
            ok = run_criterion(c);
        } catch (const std::exception& e) {
            std::cout << "unhandled exception: " << e.what() << "\n";
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        char line[96];
        std::snprintf(line, sizeof line, "criterion %d: %s (%.1f s)\n", c,
                      ok ? "PASS" : "FAIL", elapsed);
        std::cout << line;
        all_pass = all_pass && ok;
    }
    return all_pass ? 0 : 1;
}
