// SPDX-License-Identifier: Apache-2.0
// Acceptance checks. Prints one PASS/FAIL line per criterion; exits 1 if any fails.
#include "boolvox/boolean_sim.hpp"
#include "boolvox/cube_geometry.hpp"
#include "boolvox/errors.hpp"
#include "boolvox/estimate_engine.hpp"
#include "boolvox/expansion_tables.hpp"
#include "boolvox/lattice_configs.hpp"
#include "boolvox/rng.hpp"
#include "boolvox/voxel_grid.hpp"
#include "boolvox/weights.hpp"

#include "fixtures.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace boolvox;

namespace {

constexpr std::uint64_t kSeed = 7;
const BallModelParams kModel(0.1, RadiusLaw::constant(1));

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome class_structure() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& table = ClassTable::instance();
    const int orbits = count_orbits(table.group());
    std::vector<int> got, want(fixtures::kMultiplicities.begin(), fixtures::kMultiplicities.end());
    int total = 0;
    for (ClassId j = 1; j <= kNumClasses; ++j) {
        got.push_back(table.multiplicity(j));
        total += table.multiplicity(j);
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    const bool empty_ok = table.multiplicity(kNumClassesWithEmpty) == 1 &&
                          table.classify(ConfigMask(0xFF)) == kNumClassesWithEmpty;
    const double dt = seconds_since(t0);
    const bool pass = orbits == 22 && got == want && total == 255 && empty_ok && dt < 1.0;
    return {pass, fmt("classes=%d sum D=%d+1 multiset %s, %.3f s", orbits, total, got == want ? "equal" : "differs", dt)};
}

Outcome matrix_m() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& m = ClassTable::instance().inclusion_exclusion();
    int mismatches = 0;
    for (int i = 0; i < kNumClasses; ++i) {
        for (int j = 0; j < kNumClasses; ++j) mismatches += m(i, j) != fixtures::kInclusionExclusion[i][j];
    }
    const double dt = seconds_since(t0);
    return {mismatches == 0 && dt < 1.0, fmt("%d of 441 entries differ, %.3f s", mismatches, dt)};
}

Outcome geometry() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& table = ClassTable::instance();
    const auto ref = fixtures::class_geometry();
    double worst = 0;
    for (ClassId j = 1; j <= kNumClasses; ++j) {
        const auto hull = convex_hull<double>(table.representative(j).white());
        const auto v = intrinsic_volumes(hull);
        const auto& r = ref[j - 1];
        worst = std::max({worst, std::abs(v.v1 - r.v1), std::abs(v.v2 - r.v2), std::abs(v.v3 - r.v3),
                          std::abs(24 * power_volume_v13(hull) - r.power_volume_x24)});
    }
    const double dt = seconds_since(t0);
    return {worst <= 1e-9 && dt < 1.0, fmt("max deviation %.2e (tol 1e-9), %.3f s", worst, dt)};
}

Outcome q_matrix_check() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& q = ExpansionTables::instance().q();
    const auto ref = fixtures::q_closed_forms();
    double closed = 0, printed = 0;
    for (int j = 0; j < kNumClasses; ++j) {
        closed = std::max({closed, std::abs(q(j, 2) - ref[j].q3), std::abs(q(j, 3) - ref[j].q4),
                           std::abs(q(j, 5) - ref[j].q6)});
        printed = std::max(printed, std::abs(q(j, 4) - ref[j].q5_printed));
    }
    const double dt = seconds_since(t0);
    return {closed <= 1e-9 && printed <= 5e-5 && dt < 1.0,
            fmt("closed-form max %.2e (tol 1e-9), printed column max %.2e (tol 5e-5), %.3f s", closed, printed, dt)};
}

Outcome optimal_weights() {
    const auto t0 = std::chrono::steady_clock::now();
    const double pi = std::numbers::pi;
    bool pass = true;
    std::ostringstream detail;
    for (int q = 2; q >= 0; --q) {
        const Row8d target = b_targets(q);
        const Row8d res = verify_weights(fixtures::optimal_weights(q));
        double worst_ratio = 0;
        for (int k = 0; k < kExpansionOrder; ++k) {
            const double tol = std::abs(target(k) + pi) < 1e-12 ? 6e-3 : 2e-3;
            worst_ratio = std::max(worst_ratio, std::abs(res(k)) / tol);
        }
        const double solved = verify_weights(solve_weights(q)).cwiseAbs().maxCoeff();
        pass = pass && worst_ratio <= 1.0 && solved <= 1e-10;
        detail << "q=" << q << " residual/tol " << fmt("%.2f", worst_ratio) << " solve " << fmt("%.1e", solved) << "; ";
    }
    const double dt = seconds_since(t0);
    detail << fmt("%.3f s", dt);
    return {pass && dt < 1.0, detail.str()};
}

Outcome first_order_cross_check() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& table = ClassTable::instance();
    const auto& q = ExpansionTables::instance().q();
    double worst = 0;
    bool ok = true;
    for (ClassId j = 2; j <= kNumClasses; ++j) {
        const ConfigMask rep = table.representative(j);
        try {
            const auto r = support_deficit_integral(rep.black(), rep.white());
            worst = std::max(worst, std::abs(r.value + std::numbers::pi * q(j - 1, 2)));
        } catch (const QuadratureError& e) {
            std::printf("  class %d: %s\n", j, e.what());
            ok = false;
        }
    }
    const double dt = seconds_since(t0);
    return {ok && worst <= 1e-3 && dt < 30.0, fmt("max |integral + pi Q3| %.2e (tol 1e-3), %.2f s", worst, dt)};
}

Outcome hit_miss_expansion() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& table = ClassTable::instance();
    const double widths[] = {0.2, 0.1, 0.05};
    const std::uint64_t reps = 100'000'000;
    bool within = true;
    std::vector<double> shrink;
    std::ostringstream detail;
    for (std::size_t ai = 0; ai < 3; ++ai) {
        const double a = widths[ai];
        const auto hist = hit_miss_histogram(kModel, a, reps, derive_seed(kSeed, 100 + ai));
        double weighted = 0, worst_ratio = 0;
        for (ClassId j = 1; j <= kNumClasses; ++j) {
            const auto mc = hist.class_mean(j);
            double pred = 0;
            try {
                pred = predict_hit_miss(j, kModel, a);
            } catch (const ExpansionRangeError&) {
                within = false;
                continue;
            }
            const double dev = std::abs(mc.value - pred);
            const double tol = 3 * mc.std_error + 5 * std::pow(a, 4);
            worst_ratio = std::max(worst_ratio, dev / tol);
            weighted += table.multiplicity(j) * dev;
        }
        within = within && worst_ratio <= 1.0;
        shrink.push_back(weighted);
        detail << fmt("a=%g max dev/tol %.2f sum D|res| %.2e; ", a, worst_ratio, weighted);
    }
    const bool shrinks = shrink[0] > shrink[1] && shrink[1] > shrink[2];
    detail << (shrinks ? "residual shrinks" : "residual does not shrink") << fmt(", %.1f s", seconds_since(t0));
    return {within && shrinks, detail.str()};
}

struct ConvergenceResult {
    Outcome estimators;
    Outcome bias_witness;
};

ConvergenceResult convergence() {
    const auto t0 = std::chrono::steady_clock::now();
    const Row8d mistarget = [] {
        Row8d t = b_targets(1);
        t(3) = -1.5;
        return t;
    }();
    const std::vector<NamedWeights> sets = {
        {"V3", WeightVector::volume()},
        {"V2", fixtures::optimal_weights(2)},
        {"V1", fixtures::optimal_weights(1)},
        {"V0", fixtures::optimal_weights(0)},
        {"V1-mistargeted", solve_for_target(1, mistarget)},
    };
    ExperimentConfig config;
    config.window = 16;
    config.grid_widths = {1.0 / 4, 1.0 / 8, 1.0 / 16};
    config.replications = 32;
    config.seed = kSeed;
    const auto report = run_experiment(kModel, sets, config);
    const double dt = seconds_since(t0);

    for (const auto& r : report.rows) {
        std::printf("  %-15s a=1/%-3.0f mean %+.6f se %.6f truth %+.6f bias %+.6f\n", r.name.c_str(), 1 / r.a, r.mean,
                    r.std_error, r.miles, r.mean - r.miles);
    }

    const auto& widths = config.grid_widths;
    auto dev = [&](const std::string& name, double a) { return std::abs(report.row(name, a).mean - report.row(name, a).miles); };

    std::ostringstream detail;
    bool pass = true;

    bool v3 = true;
    for (double a : widths) v3 = v3 && dev("V3", a) <= 3 * report.row("V3", a).std_error;
    detail << "V3 " << (v3 ? "ok" : "FAIL");
    pass = pass && v3;

    for (const char* name : {"V2", "V1"}) {
        const auto& fine = report.row(name, widths[2]);
        const bool close = dev(name, widths[2]) <= 3 * fine.std_error + 0.02 * std::abs(fine.miles);
        const bool monotone = dev(name, widths[0]) > dev(name, widths[1]) && dev(name, widths[1]) > dev(name, widths[2]);
        detail << "; " << name << (close ? " close" : " FAIL close") << (monotone ? ", |bias| decreasing" : ", FAIL |bias| not decreasing")
               << fmt(" (%.2e %.2e %.2e)", dev(name, widths[0]), dev(name, widths[1]), dev(name, widths[2]));
        pass = pass && close && monotone;
    }

    const bool v0 = dev("V0", widths[2]) < dev("V0", widths[0]);
    detail << "; V0 " << (v0 ? "approaching" : "FAIL not approaching")
           << fmt(" (%.2e at 1/4, %.2e at 1/16)", dev("V0", widths[0]), dev("V0", widths[2]));
    pass = pass && v0;
    detail << fmt("; %.1f s", dt);

    bool persistent = true;
    for (double a : widths) persistent = persistent && dev("V1-mistargeted", a) > 3 * report.row("V1-mistargeted", a).std_error;
    const bool not_vanishing = dev("V1-mistargeted", widths[2]) >= 0.5 * dev("V1-mistargeted", widths[0]);
    const std::string witness =
        fmt("deviation %.4f %.4f %.4f, se %.4f at a=1/16", dev("V1-mistargeted", widths[0]), dev("V1-mistargeted", widths[1]),
            dev("V1-mistargeted", widths[2]), report.row("V1-mistargeted", widths[2]).std_error);

    return {{pass && dt <= 900.0, detail.str()}, {persistent && not_vanishing, witness}};
}

Outcome kernel() {
    RandomStream dims(kSeed, 1);
    int mismatches = 0;
    for (int t = 0; t < 100; ++t) {
        const int nx = 2 + static_cast<int>(dims.next_u32() % 79);
        const int ny = 2 + static_cast<int>(dims.next_u32() % 47);
        const int nz = 2 + static_cast<int>(dims.next_u32() % 47);
        const double density = dims.uniform01();
        VoxelGrid grid(nx, ny, nz);
        RandomStream bits(kSeed, 1000 + t);
        for (int k = 0; k < nz; ++k) {
            for (int j = 0; j < ny; ++j) {
                for (int i = 0; i < nx; ++i) {
                    if (bits.uniform01() < density) grid.set(i, j, k);
                }
            }
        }
        mismatches += !(count_configurations(grid) == count_configurations_naive(grid));
    }

    const int n = 256;
    VoxelGrid big(n, n, n);
    RandomStream fill(kSeed, 2);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            auto row = big.row(j, k);
            for (auto& w : row) w = fill.next_u64();
        }
    }
    double best = 1e30;
    std::uint64_t windows = 0;
    for (int rep = 0; rep < 5; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        windows = count_configurations(big).window_total();
        best = std::min(best, seconds_since(t0));
    }
    const double rate = static_cast<double>(windows) / best / 1e6;
    return {mismatches == 0, fmt("%d of 100 random grids differ from the reference; %.0f Mwindows/s single-threaded on 256^3 "
                                 "(soft target 100: %s)",
                                 mismatches, rate, rate >= 100 ? "met" : "missed")};
}

}  // namespace

int main() {
    std::vector<std::pair<int, Outcome>> results;
    auto report = [&](int id, const Outcome& o) {
        std::printf("criterion %2d %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        results.emplace_back(id, o);
    };

    report(1, class_structure());
    report(2, matrix_m());
    report(3, geometry());
    report(4, q_matrix_check());
    report(5, optimal_weights());
    {
        WeightVector literal = fixtures::optimal_weights(0);
        literal(17) = fixtures::kPrintedW0Class17;
        std::ostringstream res;
        res << verify_weights(literal);
        std::printf("  info: residual with w0 class 17 = %.3f: %s\n", fixtures::kPrintedW0Class17, res.str().c_str());
    }
    report(6, first_order_cross_check());
    report(7, hit_miss_expansion());
    const auto conv = convergence();
    report(8, conv.estimators);
    report(9, conv.bias_witness);
    report(10, kernel());

    const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.second.pass; });
    std::printf("%zu of %zu criteria passed\n", results.size() - static_cast<std::size_t>(failed), results.size());
    return failed == 0 ? 0 : 1;
}
