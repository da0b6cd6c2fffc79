// Command-line driver: reads a flat key=value config, runs one experiment, and
// writes a CSV (or JSON) result file with a metadata header that round-trips
// the producing config.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moran/config.hpp"
#include "moran/dims.hpp"
#include "moran/errors.hpp"
#include "moran/estimators.hpp"
#include "moran/probability.hpp"
#include "moran/realization.hpp"
#include "moran/rng.hpp"
#include "moran/stats.hpp"

using namespace moran;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct OutputTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> meta;
};

void write_output(const std::string& path, const std::string& format, OutputTable table) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw ConfigError("cannot write output file: " + path);
        if (format == "json") {
            nlohmann::ordered_json j;
            for (const auto& [k, v] : table.meta) j["meta"][k] = v;
            j["columns"] = table.columns;
            j["rows"] = table.rows;
            out << j.dump(2) << "\n";
        } else {
            for (const auto& [k, v] : table.meta) out << "# " << k << "=" << v << "\n";
            for (std::size_t i = 0; i < table.columns.size(); ++i)
                out << (i ? "," : "") << table.columns[i];
            out << "\n";
            for (const auto& row : table.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
                out << "\n";
            }
        }
    }
    std::filesystem::rename(tmp, path);
}

OutputTable base_table(const std::string& command, const ConfigMap& cfg) {
    OutputTable t;
    t.meta.emplace_back("tool", "moran_cli");
    t.meta.emplace_back("version", kVersion);
    t.meta.emplace_back("command", command);
    for (const auto& [k, v] : cfg.entries()) t.meta.emplace_back("cfg." + k, v);
    return t;
}

std::string address_string(const CubeAddress& a) {
    std::string s;
    for (std::size_t i = 0; i < a.digits.size(); ++i)
        s += (i ? "-" : "") + std::to_string(a.digits[i]);
    return s.empty() ? "root" : s;
}

int run_generate(ConfigMap& cfg, const std::string& out, const std::string& format) {
    ExperimentSetup setup = read_construction(cfg);
    int level = static_cast<int>(cfg.get_int("generate.level", setup.params.max_depth));
    cfg.reject_unknown();
    Realization realization(setup.params, setup.strategy, setup.budget);
    OutputTable table = base_table("generate", cfg);
    table.columns = {"level", "address"};
    for (int a = 0; a < setup.params.d; ++a) table.columns.push_back("corner_" + std::to_string(a));
    realization.enumerate_level(level, [&](const CubeAddress& cube) {
        std::vector<std::string> row = {std::to_string(level), address_string(cube)};
        for (double c : realization.corner(cube)) row.push_back(fmt(c));
        table.rows.push_back(std::move(row));
    });
    write_output(out, format, std::move(table));
    return 0;
}

int run_dims(ConfigMap& cfg, const std::string& out, const std::string& format) {
    ExperimentSetup setup = read_construction(cfg);
    cfg.reject_unknown();
    DimensionReport rep = report(setup.params, setup.params.max_depth);
    OutputTable table = base_table("dims", cfg);
    table.columns = {"kind", "n", "value"};
    for (const auto& profile : rep.profiles) {
        for (const auto& [n, q] : profile.values)
            table.rows.push_back({dim_kind_name(profile.kind), std::to_string(n), fmt(q)});
        table.meta.emplace_back("tail." + dim_kind_name(profile.kind),
                                fmt(profile.limit_estimate));
        if (profile.exact_limit)
            table.meta.emplace_back("exact." + dim_kind_name(profile.kind),
                                    fmt(*profile.exact_limit));
    }
    table.meta.emplace_back("summary.as_hausdorff", fmt(rep.as_hausdorff));
    table.meta.emplace_back("summary.as_lower_box", fmt(rep.as_hausdorff));
    table.meta.emplace_back("summary.as_packing", fmt(rep.as_packing));
    table.meta.emplace_back("summary.as_upper_box", fmt(rep.as_packing));
    table.meta.emplace_back("summary.assouad", fmt(rep.assouad));
    table.meta.emplace_back("summary.typical_hausdorff", fmt(rep.typical_hausdorff));
    table.meta.emplace_back("summary.typical_packing", fmt(rep.typical_packing));
    table.meta.emplace_back("summary.lower_dimension", fmt(rep.lower_dimension));
    table.meta.emplace_back("summary.lower_dimension_regime",
                            rep.lower_dim_heuristic ? "heuristic - unproven regime" : "proven");
    std::cout << "a.s. Hausdorff = " << fmt(rep.as_hausdorff)
              << ", a.s. packing = " << fmt(rep.as_packing)
              << ", Assouad = " << fmt(rep.assouad)
              << ", typical Hausdorff = " << fmt(rep.typical_hausdorff) << "\n";
    write_output(out, format, std::move(table));
    return 0;
}

int run_boxdim(ConfigMap& cfg, const std::string& out, const std::string& format) {
    ExperimentSetup setup = read_construction(cfg);
    auto levels = cfg.get_int_list("boxdim.scale_levels");
    cfg.reject_unknown();
    Realization realization(setup.params, setup.strategy, setup.budget);
    std::vector<double> log_deltas;
    for (auto j : levels)
        log_deltas.push_back(realization.scales().log_r[static_cast<int>(j)]);
    BoxCountCurve curve = box_count_curve(realization, setup.params.max_depth, log_deltas);
    SlopeFit fit = box_dim_fit(curve);
    OutputTable table = base_table("boxdim", cfg);
    table.columns = {"log_inv_delta", "log_count"};
    for (const auto& [x, y] : curve.points) table.rows.push_back({fmt(x), fmt(y)});
    table.meta.emplace_back("slope", fmt(fit.least_squares_slope));
    table.meta.emplace_back("lower_slope", fmt(fit.lower_slope));
    table.meta.emplace_back("upper_slope", fmt(fit.upper_slope));
    std::cout << "box-dimension slope = " << fmt(fit.least_squares_slope) << "\n";
    write_output(out, format, std::move(table));
    return 0;
}

int run_localdim(ConfigMap& cfg, const std::string& out, const std::string& format) {
    ExperimentSetup setup = read_construction(cfg);
    int samples = static_cast<int>(cfg.get_int("localdim.samples", 20));
    auto radius_levels = cfg.get_int_list("localdim.radius_levels");
    bool fresh = cfg.get_bool("localdim.fresh_realization_per_sample", false);
    cfg.reject_unknown();

    Realization realization(setup.params, setup.strategy, setup.budget);
    std::vector<double> log_radii;
    for (auto j : radius_levels)
        log_radii.push_back(realization.scales().log_r[static_cast<int>(j)]);

    OutputTable table = base_table("localdim", cfg);
    table.columns = {"sample", "log_r", "log_mass"};
    double sum = 0.0;
    for (int s = 0; s < samples; ++s) {
        PlacementStrategy strat = setup.strategy;
        if (fresh && strat.kind == PlacementStrategy::Kind::UniformRandom)
            strat.master_seed = hash_combine(setup.seed, s);
        Realization r(setup.params, strat, setup.budget);
        auto result = local_dim_curve(r, {r.sample_mu(hash_combine(0x4c44u, s))}, log_radii,
                                      setup.params.max_depth);
        for (const auto& [lr, lm] : result.curves[0])
            table.rows.push_back({std::to_string(s), fmt(lr), fmt(lm)});
        sum += result.fits[0].least_squares_slope;
    }
    table.meta.emplace_back("mean_slope", fmt(sum / samples));
    std::cout << "mean local-dimension slope = " << fmt(sum / samples) << "\n";
    write_output(out, format, std::move(table));
    return 0;
}

int run_assouad(ConfigMap& cfg, const std::string& out, const std::string& format) {
    ExperimentSetup setup = read_construction(cfg);
    std::vector<std::pair<int, int>> pairs;
    for (const auto& part_levels : cfg.get_int_list("assouad.base_levels"))
        pairs.emplace_back(static_cast<int>(part_levels),
                           static_cast<int>(part_levels +
                                            cfg.get_int("assouad.window", 4)));
    std::size_t max_centers = cfg.get_u64("assouad.max_centers", 256);
    bool block_scales = cfg.get_bool("assouad.block_scales", false);
    cfg.reject_unknown();
    Realization realization(setup.params, setup.strategy, setup.budget);
    AssouadProbe probe = assouad_probe(realization, setup.params.max_depth, pairs, max_centers,
                                       block_scales);
    OutputTable table = base_table("assouad", cfg);
    table.columns = {"center_0", "log_R", "log_r", "count", "exponent"};
    for (const auto& s : probe.samples)
        table.rows.push_back({fmt(s.center[0]), fmt(s.log_R), fmt(s.log_r),
                              std::to_string(s.count), fmt(s.exponent)});
    table.meta.emplace_back("max_exponent", fmt(probe.max_exponent));
    std::cout << "max localized exponent = " << fmt(probe.max_exponent) << "\n";
    write_output(out, format, std::move(table));
    return 0;
}

int run_hit(ConfigMap& cfg, const std::string& out, const std::string& format, bool check) {
    ExperimentSetup setup = read_construction(cfg);
    if (setup.params.seq.kind != SequenceSpec::Kind::Constant)
        throw ConfigError("hit experiments require a constant sequence");
    std::string mode = cfg.get_string("hit.mode", "curve");
    TargetSet target;
    target.M = setup.params.seq.pairs[0].first;
    target.d = setup.params.d;
    for (auto v : cfg.get_int_list("hit.target_pattern"))
        target.pattern.push_back(static_cast<std::uint32_t>(v));
    McConfig mc;
    mc.trials = cfg.get_u64("hit.trials", 10'000);
    mc.depth = setup.params.max_depth;
    mc.seed = setup.seed;
    cfg.reject_unknown();
    const std::uint64_t N = setup.params.seq.pairs[0].second;

    OutputTable table = base_table("hit", cfg);
    table.meta.emplace_back("target_alpha", fmt(target.alpha()));
    int rc = 0;
    if (mode == "curve") {
        HitCurveResult result = hit_probability_mc(target.M, N, target, mc);
        table.columns = {"n", "empirical_probability", "ci_low", "ci_high"};
        for (const auto& p : result.curve)
            table.rows.push_back(
                {std::to_string(p.n), fmt(p.probability), fmt(p.ci_low), fmt(p.ci_high)});
        table.meta.emplace_back("indicators_monotone",
                                result.indicators_monotone ? "true" : "false");
        if (check && !result.indicators_monotone) rc = 4;
    } else if (mode == "expected") {
        table.columns = {"n", "log_expected", "expected"};
        for (int n = 1; n <= mc.depth; ++n) {
            double lg = expected_intersection_log(target, target.M, N, n);
            table.rows.push_back({std::to_string(n), fmt(lg), fmt(std::exp(lg))});
        }
    } else if (mode == "survivor") {
        SurvivorDimensionResult result = survivor_dimension_mc(target.M, N, target, mc);
        table.columns = {"slope"};
        for (double s : result.slopes) table.rows.push_back({fmt(s)});
        table.meta.emplace_back("surviving_trials", std::to_string(result.surviving_trials));
        table.meta.emplace_back("upper_quartile", fmt(result.upper_quartile));
        table.meta.emplace_back("median", fmt(result.median));
        table.meta.emplace_back("target_exponent", fmt(result.target_exponent));
        table.meta.emplace_back("essential_sup_proxy", "upper quartile of conditional slopes");
        std::cout << "survivor slope upper quartile = " << fmt(result.upper_quartile)
                  << " (target " << fmt(result.target_exponent) << ")\n";
    } else {
        throw ConfigError("unknown hit.mode: " + mode);
    }
    write_output(out, format, std::move(table));
    return rc;
}

int run_lemmas(ConfigMap& cfg, const std::string& out, const std::string& format, bool check) {
    std::uint64_t max_m = cfg.get_u64("lemmas.max_m", 12);
    std::uint64_t trials = cfg.get_u64("lemmas.ld_trials", 100'000);
    std::uint64_t seed = cfg.get_u64("seed", 0);
    cfg.reject_unknown();
    if (max_m > 20) throw ConfigError("lemmas.max_m must be <= 20");

    auto violations = hit_bound_check(max_m);
    OutputTable table = base_table("lemmas", cfg);
    table.columns = {"record", "m", "k", "n", "exact", "bound"};
    for (const auto& v : violations)
        table.rows.push_back({"violation", std::to_string(v.triple.m),
                              std::to_string(v.triple.k), std::to_string(v.triple.n),
                              fmt(v.exact), fmt(v.bound)});
    table.meta.emplace_back("hit_bound_violations", std::to_string(violations.size()));

    bool ld_ok = true;
    auto run_ld = [&](TailDistribution::Kind kind, std::uint64_t N, std::uint64_t n,
                      const std::string& name) {
        TailDistribution dist{kind, N};
        auto r = large_deviation_mc(dist, n, trials, seed);
        table.rows.push_back({"large_deviation:" + name, std::to_string(N), "-",
                              std::to_string(n), fmt(r.frequency), fmt(r.bound)});
        if (r.frequency - 3.0 * r.sigma > r.bound) ld_ok = false;
    };
    run_ld(TailDistribution::Kind::UniformInt, 10, 16, "uniform");
    run_ld(TailDistribution::Kind::ScaledBernoulliHalf, 4, 32, "bernoulli");

    std::cout << violations.size() << " violations\n";
    write_output(out, format, std::move(table));
    if (check && (!violations.empty() || !ld_ok)) return 4;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random Cantor set construction, dimension estimation, and hitting-law checks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path = "result.csv";
    std::optional<std::uint64_t> seed_override;
    int threads = 1;
    bool check = false;
    app.add_option("--config", config_path, "experiment config file")->required();
    app.add_option("--out", out_path, "output file path");
    app.add_option("--seed", seed_override, "override the config seed");
    app.add_option("--threads", threads, "worker threads for Monte Carlo loops");
    app.add_flag("--check", check, "exit 4 when a statistical assertion fails");

    for (const char* name :
         {"generate", "dims", "boxdim", "localdim", "assouad", "hit", "lemmas"})
        app.add_subcommand(name);

    CLI11_PARSE(app, argc, argv);
    std::string command = app.get_subcommands().front()->get_name();

    try {
        ConfigMap cfg = ConfigMap::parse_file(config_path);
        if (seed_override) cfg.set("seed", std::to_string(*seed_override));
        std::string format = cfg.get_string("out.format", "csv");
        if (format != "csv" && format != "json")
            throw ConfigError("out.format must be csv or json");
        if (command == "generate") return run_generate(cfg, out_path, format);
        if (command == "dims") return run_dims(cfg, out_path, format);
        if (command == "boxdim") return run_boxdim(cfg, out_path, format);
        if (command == "localdim") return run_localdim(cfg, out_path, format);
        if (command == "assouad") return run_assouad(cfg, out_path, format);
        if (command == "hit") return run_hit(cfg, out_path, format, check);
        if (command == "lemmas") return run_lemmas(cfg, out_path, format, check);
        throw ConfigError("unknown command: " + command);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidSequence& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExhausted& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const DepthOutOfRange& e) {
        std::cerr << "depth error: " << e.what() << "\n";
        return 3;
    } catch (const ScaleTooFine& e) {
        std::cerr << "scale error: " << e.what() << "\n";
        return 3;
    }
}
