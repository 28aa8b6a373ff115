// SPDX-License-Identifier: Apache-2.0
#include "boolvox/cli.hpp"

#include "boolvox/boolean_sim.hpp"
#include "boolvox/errors.hpp"
#include "boolvox/estimate_engine.hpp"
#include "boolvox/rng.hpp"
#include "boolvox/weights.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#ifndef BOOLVOX_VERSION
#define BOOLVOX_VERSION "unknown"
#endif

namespace boolvox {

namespace fs = std::filesystem;

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

template <typename T>
std::string join(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        if constexpr (std::is_floating_point_v<T>) {
            out += format_double(values[i]);
        } else {
            out += std::to_string(values[i]);
        }
    }
    return out;
}

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

void write_csv(std::ostream& out, const Table& table, const RunConfig& config) {
    out << "# " << config.describe() << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        out << format_double(v);
                    } else if constexpr (std::is_same_v<T, long long> || std::is_same_v<T, std::string>) {
                        out << v;
                    }
                },
                row[c]);
        }
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& table, const RunConfig& config) {
    nlohmann::ordered_json doc;
    doc["tool"] = "boolvox";
    doc["version"] = BOOLVOX_VERSION;
    doc["config"] = config.describe();
    doc["columns"] = table.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        auto& jrow = doc["rows"].emplace_back(nlohmann::ordered_json::array());
        for (const auto& cell : row) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::monostate>) {
                        jrow.push_back(nullptr);
                    } else if constexpr (std::is_same_v<T, double>) {
                        if (std::isfinite(v)) {
                            jrow.push_back(v);
                        } else {
                            jrow.push_back(nullptr);
                        }
                    } else {
                        jrow.push_back(v);
                    }
                },
                cell);
        }
    }
    out << doc.dump(2) << '\n';
}

void write_table(std::ostream& out, const Table& table, const RunConfig& config) {
    if (config.format == "json") {
        write_json(out, table, config);
    } else {
        write_csv(out, table, config);
    }
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot write " + path.string());
    return file;
}

void save_table(const fs::path& dir, const std::string& stem, const Table& table, const RunConfig& config) {
    const fs::path path = dir / (stem + (config.format == "json" ? ".json" : ".csv"));
    auto file = open_output(path);
    write_table(file, table, config);
    if (!file) throw IoError("write failed for " + path.string());
}

fs::path output_dir(const RunConfig& config) {
    const fs::path dir = config.out.empty() ? fs::path(".") : fs::path(config.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
    return dir;
}

std::vector<std::string> component_columns(const std::string& first) {
    std::vector<std::string> cols{first};
    for (int k = 1; k <= kExpansionOrder; ++k) cols.push_back("c" + std::to_string(k));
    return cols;
}

std::vector<Cell> row_cells(Cell head, const Row8d& row) {
    std::vector<Cell> cells{std::move(head)};
    for (int k = 0; k < kExpansionOrder; ++k) cells.emplace_back(row(k));
    return cells;
}

BallModelParams model_params(const RunConfig& config) {
    return BallModelParams(config.gamma, RadiusLaw::parse(config.radius));
}

void run_tables(const RunConfig& config, std::ostream& out) {
    const fs::path dir = output_dir(config);
    const auto& table = ClassTable::instance();
    const auto& tables = ExpansionTables::instance();

    Table classes{{"class", "representative_mask", "white_points", "multiplicity", "v1", "v2", "v3",
                   "power_volume_x24"},
                  {}};
    for (ClassId j = 1; j <= kNumClassesWithEmpty; ++j) {
        const ConfigMask rep = table.representative(j);
        std::vector<Cell> row{static_cast<long long>(j), static_cast<long long>(rep.bits()),
                              static_cast<long long>(rep.white().size()), static_cast<long long>(table.multiplicity(j))};
        if (j <= kNumClasses) {
            const auto poly = convex_hull<double>(rep.white());
            const auto v = intrinsic_volumes(poly);
            row.insert(row.end(), {v.v1, v.v2, v.v3, 24.0 * power_volume_v13(poly)});
        } else {
            row.insert(row.end(), {0.0, 0.0, 0.0, 0.0});
        }
        classes.rows.push_back(std::move(row));
    }
    save_table(dir, "classes", classes, config);

    Table m{{"class"}, {}};
    for (ClassId j = 1; j <= kNumClasses; ++j) m.columns.push_back("eta" + std::to_string(j));
    for (ClassId i = 1; i <= kNumClasses; ++i) {
        std::vector<Cell> row{static_cast<long long>(i)};
        for (ClassId j = 1; j <= kNumClasses; ++j) {
            row.emplace_back(static_cast<long long>(table.inclusion_exclusion()(i - 1, j - 1)));
        }
        m.rows.push_back(std::move(row));
    }
    save_table(dir, "m", m, config);

    Table p{component_columns("class"), {}};
    Table q{component_columns("class"), {}};
    Table c{{"class", "c1", "c2", "c3"}, {}};
    for (ClassId j = 1; j <= kNumClasses; ++j) {
        p.rows.push_back(row_cells(static_cast<long long>(j), tables.p_row(j)));
        q.rows.push_back(row_cells(static_cast<long long>(j), tables.q_row(j)));
        const auto cc = tables.c_constants(j);
        c.rows.push_back({static_cast<long long>(j), cc.c1, cc.c2, cc.c3});
    }
    save_table(dir, "p", p, config);
    save_table(dir, "q", q, config);
    save_table(dir, "c", c, config);

    Table b{component_columns("q"), {}};
    for (int k = 0; k <= 3; ++k) b.rows.push_back(row_cells(static_cast<long long>(k), b_targets(k)));
    save_table(dir, "b", b, config);

    out << "wrote classes, m, p, q, b, c tables to " << dir.string() << '\n';
}

Table residual_table(const WeightVector& w) {
    Table t{component_columns("quantity"), {}};
    t.rows.push_back(row_cells(std::string("wdq"), wdq_row(w)));
    t.rows.push_back(row_cells(std::string("target"), b_targets(w.q)));
    t.rows.push_back(row_cells(std::string("residual"), verify_weights(w)));
    return t;
}

void run_solve(const RunConfig& config, std::ostream& out) {
    if (config.q < 0 || config.q > 2) throw ConfigError("solve needs --q in 0..2");
    std::optional<std::vector<ClassId>> support;
    if (!config.support.empty()) support = config.support;
    const WeightVector w = solve_weights(config.q, support);
    const Row8d residual = verify_weights(w);

    if (config.out.empty()) {
        out << "# " << config.describe() << '\n';
        out << "# residual";
        for (int k = 0; k < kExpansionOrder; ++k) out << ' ' << format_double(residual(k));
        out << '\n';
        write_weights(out, w);
        return;
    }
    const fs::path dir = output_dir(config);
    save_weights(w, dir / ("weights_q" + std::to_string(config.q) + ".txt"));
    save_table(dir, "residual_q" + std::to_string(config.q), residual_table(w), config);
    out << "max |residual| = " << format_double(residual.cwiseAbs().maxCoeff()) << '\n';
}

void run_verify(const RunConfig& config, std::ostream& out) {
    if (config.weights_path.empty()) throw ConfigError("verify needs --weights");
    if (config.q < 0 || config.q > 3) throw ConfigError("--q must be in 0..3");
    const WeightVector w = load_weights(config.weights_path, config.q);
    const Table t = residual_table(w);
    if (config.out.empty()) {
        write_table(out, t, config);
        return;
    }
    auto file = open_output(config.out);
    write_table(file, t, config);
}

void run_simulate(const RunConfig& config, std::ostream& out) {
    const BallModelParams params = model_params(config);
    if (config.q < 0 || config.q > 3) throw ConfigError("--q must be in 0..3");
    WeightVector w;
    if (!config.weights_path.empty()) {
        w = load_weights(config.weights_path, config.q);
    } else if (config.q == 3) {
        w = WeightVector::volume();
    } else {
        throw ConfigError("simulate needs --weights for q < 3");
    }
    ExperimentConfig experiment;
    experiment.window = config.window;
    experiment.grid_widths = config.grid_widths;
    experiment.replications = static_cast<int>(config.replications);
    experiment.seed = config.seed;
    const fs::path dir = output_dir(config);
    const ExperimentReport report = run_experiment(params, {{"estimator", w}}, experiment);

    Table rows{{"q", "a", "L", "replications", "estimator_mean", "stderr", "predicted_mean", "miles_truth", "abs_bias"},
               {}};
    Table plot{{"a", "abs_bias", "log_a", "log_abs_bias"}, {}};
    for (const auto& r : report.rows) {
        rows.rows.push_back({static_cast<long long>(r.q), r.a, r.window, static_cast<long long>(r.replications), r.mean,
                             r.std_error, r.predicted ? Cell(*r.predicted) : Cell(), r.miles, r.abs_bias});
        plot.rows.push_back({r.a, r.abs_bias, std::log(r.a), r.abs_bias > 0 ? Cell(std::log(r.abs_bias)) : Cell()});
    }
    save_table(dir, "experiment", rows, config);
    save_table(dir, "plot", plot, config);
    const auto& order = report.series.front().order;
    out << "empirical order: " << (order ? format_double(*order) : std::string("n/a")) << '\n';
}

void run_probe(const RunConfig& config, std::ostream& out) {
    const BallModelParams params = model_params(config);
    std::vector<ClassId> classes;
    if (config.class_id == 0) {
        for (ClassId j = 1; j <= kNumClasses; ++j) classes.push_back(j);
    } else if (config.class_id >= 1 && config.class_id <= kNumClasses) {
        classes.push_back(config.class_id);
    } else {
        throw ConfigError("--class must be in 1..21 (0 for all)");
    }
    Table t{{"class", "a", "mc_estimate", "stderr", "prediction", "deviation"}, {}};
    for (std::size_t ai = 0; ai < config.grid_widths.size(); ++ai) {
        const double a = config.grid_widths[ai];
        const auto hist = hit_miss_histogram(params, a, config.replications, derive_seed(config.seed, ai));
        for (ClassId j : classes) {
            const McEstimate mc = hist.class_mean(j);
            std::vector<Cell> row{static_cast<long long>(j), a, mc.value, mc.std_error};
            try {
                const double prediction = predict_hit_miss(j, params, a);
                row.insert(row.end(), {prediction, mc.value - prediction});
            } catch (const ExpansionRangeError&) {
                row.insert(row.end(), {Cell(), Cell()});
            }
            t.rows.push_back(std::move(row));
        }
    }
    if (config.out.empty()) {
        write_table(out, t, config);
        return;
    }
    auto file = open_output(config.out);
    write_table(file, t, config);
}

void apply_config_file(CLI::App& sub, const std::string& path) {
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigINI().from_file(path);
    } catch (const CLI::FileError& e) {
        throw IoError(e.what());
    } catch (const CLI::ParseError& e) {
        throw ConfigError(std::string("config file: ") + e.what());
    }
    for (const auto& item : items) {
        if (item.name == "++" || item.name == "--" || item.name == "config") continue;
        if (!item.parents.empty() && item.parents.front() != sub.get_name()) continue;
        CLI::Option* opt = sub.get_option_no_throw("--" + item.name);
        if (opt == nullptr) throw ConfigError("unknown key '" + item.name + "' in " + path);
        // command-line flags win
        if (opt->count() > 0) continue;
        for (const auto& input : item.inputs) opt->add_result(input);
        opt->run_callback();
    }
}

}  // namespace

std::string RunConfig::describe() const {
    std::ostringstream s;
    s << "boolvox " << BOOLVOX_VERSION << " " << subcommand << " gamma=" << format_double(gamma) << " radius=" << radius
      << " L=" << format_double(window) << " a=" << join(grid_widths) << " reps=" << replications << " seed=" << seed
      << " q=" << q << " class=" << class_id << " support=" << join(support) << " weights=" << weights_path
      << " out=" << out << " format=" << format;
    return s.str();
}

std::uint64_t default_seed() {
    const char* env = std::getenv("BOOLVOX_SEED");
    if (env == nullptr || *env == '\0') return 1;
    std::uint64_t seed = 0;
    const std::string_view text(env);
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc() || end != text.data() + text.size()) throw ConfigError("BOOLVOX_SEED is not an integer");
    return seed;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    std::string config_file;
    std::uint64_t replications = 0;

    CLI::App app{"Local estimators of intrinsic volumes from 2x2x2 configuration counts"};
    app.set_version_flag("--version", BOOLVOX_VERSION);
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_file, "key=value file; flags override it");
        sub->add_option("--format", config.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };
    auto model = [&](CLI::App* sub) {
        sub->add_option("--gamma", config.gamma, "intensity of the germ process");
        sub->add_option("--radius", config.radius, "const:R or uniform:RMIN:RMAX");
        sub->add_option("--a", config.grid_widths, "grid widths")->delimiter(',');
        sub->add_option("--reps", replications, "replications");
        sub->add_option("--seed", config.seed, "master seed (default $BOOLVOX_SEED or 1)");
    };

    auto* tables = app.add_subcommand("tables", "write class table, M, P, Q, b and c constants");
    common(tables);
    tables->add_option("--out", config.out, "output directory");

    auto* solve = app.add_subcommand("solve", "minimum-norm optimal weights");
    common(solve);
    solve->add_option("--q", config.q, "0, 1 or 2");
    solve->add_option("--support", config.support, "allowed classes")->delimiter(',');
    solve->add_option("--out", config.out, "output directory (stdout when omitted)");

    auto* verify = app.add_subcommand("verify", "print w D Q and its residual against b_q");
    common(verify);
    verify->add_option("--weights", config.weights_path, "weight file");
    verify->add_option("--q", config.q, "0..3");
    verify->add_option("--out", config.out, "output file (stdout when omitted)");

    auto* simulate = app.add_subcommand("simulate", "estimator convergence experiment");
    common(simulate);
    model(simulate);
    simulate->add_option("--L", config.window, "window side");
    simulate->add_option("--q", config.q, "0..3");
    simulate->add_option("--weights", config.weights_path, "weight file (volume weights when q = 3)");
    simulate->add_option("--out", config.out, "output directory");

    auto* probe = app.add_subcommand("probe", "Monte-Carlo hit-and-miss probabilities against the expansion");
    common(probe);
    model(probe);
    probe->add_option("--class", config.class_id, "class 1..21, 0 for all");
    probe->add_option("--out", config.out, "output file (stdout when omitted)");

    try {
        config.seed = default_seed();
        app.parse(argc, argv);
        CLI::App* sub = app.get_subcommands().front();
        config.subcommand = sub->get_name();
        if (!config_file.empty()) apply_config_file(*sub, config_file);

        if (config.subcommand == "simulate") {
            config.replications = replications ? replications : 32;
            if (config.grid_widths.empty()) config.grid_widths = {0.25, 0.125, 0.0625};
        } else if (config.subcommand == "probe") {
            config.replications = replications ? replications : 1000000;
            if (config.grid_widths.empty()) config.grid_widths = {0.1};
        } else {
            config.replications = 0;
        }
        if (config.format != "csv" && config.format != "json") throw ConfigError("--format must be csv or json");

        if (config.subcommand == "tables") run_tables(config, out);
        if (config.subcommand == "solve") run_solve(config, out);
        if (config.subcommand == "verify") run_verify(config, out);
        if (config.subcommand == "simulate") run_simulate(config, out);
        if (config.subcommand == "probe") run_probe(config, out);
        return kExitOk;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitConfig;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const WeightFileError& e) {
        err << "weight file: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    }
}

}  // namespace boolvox
