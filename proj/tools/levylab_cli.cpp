#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "levylab/config.hpp"
#include "levylab/gsd.hpp"
#include "levylab/grid.hpp"
#include "levylab/levy.hpp"
#include "levylab/mc.hpp"
#include "levylab/potential.hpp"
#include "levylab/report.hpp"
#include "levylab/spectral.hpp"
#include "levylab/verify.hpp"

using namespace levylab;

namespace {

struct GlobalArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = 0;
    std::string format = "csv";
};

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

// Collects artifact names so the manifest lists exactly what was written.
struct Sink {
    std::string dir;
    std::vector<std::string> artifacts;

    bool enabled() const { return !dir.empty(); }

    std::string path(const std::string& name) {
        artifacts.push_back(name);
        return (std::filesystem::path(dir) / name).string();
    }

    void finalize(std::uint64_t config_hash, std::uint64_t seed, const std::string& command) {
        if (!enabled()) return;
        const ordered_json manifest = manifest_record(config_hash, seed, command, artifacts);
        write_text_file((std::filesystem::path(dir) / "manifest.json").string(),
                        manifest.dump(2) + "\n");
    }
};

void emit(const GlobalArgs& g, const ordered_json& record,
          const std::vector<std::pair<std::string, std::string>>& csv_rows) {
    if (g.format == "json") {
        std::cout << record.dump(2) << "\n";
        return;
    }
    std::cout << "key,value\n";
    for (const auto& [key, value] : csv_rows) {
        std::cout << key << "," << csv_quote(value) << "\n";
    }
}

int cmd_catalog(const GlobalArgs& g, Sink& sink) {
    const std::vector<CatalogEntry> entries = list_catalog();
    ordered_json arr = ordered_json::array();
    for (const CatalogEntry& e : entries) {
        arr.push_back({{"id", e.id}, {"parameters", e.parameters}, {"description", e.description}});
    }
    if (g.format == "json") {
        std::cout << arr.dump(2) << "\n";
    } else {
        std::cout << "id,parameters,description\n";
        for (const CatalogEntry& e : entries) {
            std::cout << csv_quote(e.id) << "," << csv_quote(e.parameters) << ","
                      << csv_quote(e.description) << "\n";
        }
    }
    if (sink.enabled()) write_text_file(sink.path("catalog.json"), arr.dump(2) + "\n");
    return 0;
}

int cmd_check_model(const GlobalArgs& g, const Config& cfg, Sink& sink) {
    const LevyModel model = model_from_config(cfg);
    ordered_json out;
    out["model"] = model.id;
    ordered_json params = ordered_json::object();
    for (const auto& [key, value] : model.params) params[key] = value;
    out["parameters"] = params;

    std::vector<std::pair<std::string, std::string>> rows;
    rows.emplace_back("model", model.id);

    const IntegrabilityTime tb = minimal_integrability_time(model.symbol, 1e-2);
    out["t_b"] = tb.t_b;
    out["t_b_determined"] = tb.determined;
    if (!tb.note.empty()) out["t_b_note"] = tb.note;
    rows.emplace_back("t_b", fmt6(tb.t_b) + (tb.determined ? "" : " (undetermined)"));

    if (model.has_jumps()) {
        const JumpProfile& profile = *model.profile;
        const bool nonincreasing = profile_nonincreasing(profile);
        const double mass = profile_small_large_mass(profile);
        out["profile_nonincreasing"] = nonincreasing;
        out["small_large_mass"] = mass;
        rows.emplace_back("profile_nonincreasing", nonincreasing ? "true" : "false");
        rows.emplace_back("small_large_mass", fmt6(mass));

        const std::vector<double> default_radii =
            profile.tail == TailFamily::gaussian_tail
                ? std::vector<double>{2.0, 3.0, 4.0, 5.0, 6.0}
                : std::vector<double>{2.0, 5.0, 10.0, 20.0, 50.0};
        const std::vector<double> radii = cfg.get_list("check", "radii", default_radii);

        const JumpParingResult jp = jump_paring_ratio(profile, radii);
        out["jump_paring_bounded"] = jp.bounded;
        ordered_json ratios = ordered_json::array();
        std::string ratio_text;
        for (const auto& [r, q] : jp.ratios) {
            ratios.push_back({{"r", r}, {"ratio", q}});
            if (!ratio_text.empty()) ratio_text += " ";
            ratio_text += fmt6(r) + ":" + fmt6(q);
        }
        out["jump_paring_ratios"] = ratios;
        if (!jp.note.empty()) out["jump_paring_note"] = jp.note;
        rows.emplace_back("jump_paring_bounded", jp.bounded ? "true" : "false");
        rows.emplace_back("jump_paring_ratios", ratio_text);

        const ComparabilityResult comp = comparability_check(profile, radii);
        out["comparability_bounded"] = comp.bounded;
        out["comparability_min_quotient"] = comp.min_quotient;
        out["comparability_max_quotient"] = comp.max_quotient;
        rows.emplace_back("comparability_bounded", comp.bounded ? "true" : "false");
        rows.emplace_back("comparability_quotients",
                          fmt6(comp.min_quotient) + ".." + fmt6(comp.max_quotient));
    } else {
        out["jump_part"] = "none";
        rows.emplace_back("jump_part", "none");
    }

    emit(g, out, rows);
    if (sink.enabled()) write_text_file(sink.path("check_model.json"), out.dump(2) + "\n");
    return 0;
}

int cmd_classify(const GlobalArgs& g, const Config& cfg, Sink& sink) {
    const LevyModel model = model_from_config(cfg);
    std::vector<Potential> pots;
    if (cfg.has("classify", "d1_list") || cfg.has("classify", "d2_list") ||
        cfg.has("classify", "d3_list")) {
        const double amp = cfg.get_double("potential", "amplitude", 1.0);
        const auto d1s = cfg.get_list("classify", "d1_list", {cfg.get_double("potential", "d1", 0.0)});
        const auto d2s = cfg.get_list("classify", "d2_list", {cfg.get_double("potential", "d2", 0.0)});
        const auto d3s = cfg.get_list("classify", "d3_list", {cfg.get_double("potential", "d3", 0.0)});
        for (double d1 : d1s)
            for (double d2 : d2s)
                for (double d3 : d3s)
                    pots.push_back(Potential::power_log_loglog(model.dim, d1, d2, d3, amp));
    } else {
        pots.push_back(potential_from_config(cfg));
    }

    ordered_json arr = ordered_json::array();
    std::string csv = "potential,behavior,gsd_all_p,agsd_all_p,witness_c,witness_r\n";
    for (const Potential& pot : pots) {
        const ContractivityVerdict v = classify_contractivity(pot, model);
        ordered_json row;
        row["potential"] = describe(pot);
        row["behavior"] = to_string(v.behavior);
        row["gsd_all_p"] = v.gsd_all_p;
        row["agsd_all_p"] = v.agsd_all_p;
        row["witness_c"] = v.witness_c;
        row["witness_r"] = v.witness_r;
        arr.push_back(row);
        csv += csv_quote(describe(pot)) + "," + to_string(v.behavior) + "," +
               (v.gsd_all_p ? "true" : "false") + "," + (v.agsd_all_p ? "true" : "false") + "," +
               fmt6(v.witness_c) + "," + fmt6(v.witness_r) + "\n";
    }
    ordered_json out;
    out["model"] = model.id;
    out["verdicts"] = arr;
    if (g.format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << csv;
    }
    if (sink.enabled()) write_text_file(sink.path("classify.json"), out.dump(2) + "\n");
    return 0;
}

int cmd_groundstate(const GlobalArgs& g, const Config& cfg, Sink& sink) {
    const LevyModel model = model_from_config(cfg);
    const Potential pot = potential_from_config(cfg);
    const Grid grid = grid_from_config(cfg);
    const double tol = cfg.get_double("run", "gs_tol", 1e-6);
    const SpectralResult gs = ground_state(model.symbol, pot, grid, tol);

    ordered_json out;
    out["command"] = "groundstate";
    out["model"] = model.id;
    out["potential"] = describe(pot);
    out["d"] = grid.dim;
    out["r_box"] = grid.r_box;
    out["n"] = grid.n;
    out["lambda0"] = gs.lambda0;
    out["residual"] = gs.residual;
    out["iterations"] = gs.iterations;
    std::vector<std::pair<std::string, std::string>> rows = {
        {"lambda0", fmt17(gs.lambda0)},
        {"residual", fmt6(gs.residual)},
        {"iterations", std::to_string(gs.iterations)},
    };
    if (cfg.get_int("run", "dense_oracle", 0) == 1) {
        const DenseOracleResult dense = dense_oracle(model.symbol, pot, grid);
        out["dense_lambda0"] = dense.lambda0;
        out["dense_lambda1"] = dense.lambda1;
        rows.emplace_back("dense_lambda0", fmt17(dense.lambda0));
        rows.emplace_back("dense_lambda1", fmt17(dense.lambda1));
    }
    emit(g, out, rows);
    if (sink.enabled()) {
        write_csv(gs.phi0, sink.path("phi0.csv"));
        write_text_file(sink.path("groundstate.json"), out.dump(2) + "\n");
    }
    return 0;
}

std::size_t center_index(const Grid& grid) {
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        const std::vector<double> x = grid.node(flat);
        bool center = true;
        for (double v : x) {
            if (std::abs(v) > 0.25 * grid.h) center = false;
        }
        if (center) return flat;
    }
    return grid.size() / 2;
}

int cmd_heatkernel(const GlobalArgs& g, const Config& cfg, Sink& sink) {
    const LevyModel model = model_from_config(cfg);
    const Grid grid = grid_from_config(cfg);
    const double t = cfg.get_double("run", "t", 1.0);
    const Field p = heat_kernel(model.symbol, t, grid);

    double min_value = std::numeric_limits<double>::infinity();
    for (double v : p.values) min_value = std::min(min_value, v);
    const double center = p.values[center_index(grid)];

    ordered_json out;
    out["command"] = "heatkernel";
    out["model"] = model.id;
    out["t"] = t;
    out["d"] = grid.dim;
    out["r_box"] = grid.r_box;
    out["n"] = grid.n;
    out["mass"] = p.mass();
    out["center_value"] = center;
    out["min_value"] = min_value;
    emit(g, out,
         {{"mass", fmt17(p.mass())},
          {"center_value", fmt17(center)},
          {"min_value", fmt6(min_value)}});
    if (sink.enabled()) {
        write_csv(p, sink.path("kernel.csv"));
        write_text_file(sink.path("heatkernel.json"), out.dump(2) + "\n");
    }
    return 0;
}

int cmd_propagate(const GlobalArgs& g, const Config& cfg, Sink& sink) {
    const LevyModel model = model_from_config(cfg);
    const Potential pot = potential_from_config(cfg);
    const Grid grid = grid_from_config(cfg);
    const double t = cfg.get_double("run", "t", 1.0);
    const int steps = static_cast<int>(cfg.get_int("run", "steps", propagation_steps(t)));
    const std::string initial = cfg.get("run", "initial", "one");
    if (initial != "one") throw ConfigError("unknown initial field: " + initial);

    const Field f0 = Field::constant(grid, 1.0, "one");
    const Field ft = propagate_semigroup(f0, model.symbol, pot, t, steps);
    const double center = ft.values[center_index(grid)];

    ordered_json out;
    out["command"] = "propagate";
    out["model"] = model.id;
    out["potential"] = describe(pot);
    out["t"] = t;
    out["steps"] = steps;
    out["mass"] = ft.mass();
    out["center_value"] = center;
    out["max_abs"] = ft.max_abs();
    emit(g, out,
         {{"mass", fmt17(ft.mass())},
          {"center_value", fmt17(center)},
          {"max_abs", fmt6(ft.max_abs())}});
    if (sink.enabled()) {
        write_csv(ft, sink.path("field.csv"));
        write_text_file(sink.path("propagate.json"), out.dump(2) + "\n");
    }
    return 0;
}

int cmd_mc_fk(const GlobalArgs& g, const Config& cfg, Sink& sink) {
    const LevyModel model = model_from_config(cfg);
    const Potential pot = potential_from_config(cfg);
    McConfig mc = mc_from_config(cfg);
    if (g.seed_given) mc.seed = g.seed;
    if (g.threads > 0) mc.threads = g.threads;
    const double t = cfg.get_double("run", "t", 1.0);
    const std::vector<double> x0 =
        cfg.get_list("run", "x0", std::vector<double>(static_cast<std::size_t>(model.dim), 0.0));
    if (static_cast<int>(x0.size()) != model.dim) {
        throw ConfigError("x0 length does not match model dimension");
    }

    const McEstimate est = fk_estimate(model, pot, x0, t, mc);
    const ordered_json record = mc_record(model.id, describe(pot), x0, t, est);
    if (g.format == "json") {
        std::cout << record.dump(2) << "\n";
    } else {
        std::cout << "mean,stderr,n_paths\n"
                  << fmt17(est.mean) << "," << fmt17(est.std_error) << "," << est.n_paths << "\n";
    }
    if (sink.enabled()) write_text_file(sink.path("mc.json"), record.dump(2) + "\n");
    return 0;
}

int cmd_gsd_scan(const GlobalArgs& g, const Config& cfg, Sink& sink) {
    const LevyModel model = model_from_config(cfg);
    const Potential pot = potential_from_config(cfg);
    const ScanConfig scan = scan_from_config(cfg);
    const GsdReport report = gsd_scan(model, pot, scan);
    if (g.format == "json") {
        std::cout << gsd_record(report).dump(2) << "\n";
    } else {
        std::cout << gsd_csv(report);
    }
    if (sink.enabled()) {
        write_text_file(sink.path("gsd_scan.csv"), gsd_csv(report));
        write_text_file(sink.path("gsd_scan.json"), gsd_record(report).dump(2) + "\n");
    }
    return 0;
}

int cmd_verify(const GlobalArgs& g, Sink& sink) {
    VerifyOptions opts;
    opts.threads = g.threads;
    const std::vector<CriterionResult> results = run_acceptance(opts);

    ordered_json arr = ordered_json::array();
    std::size_t passed = 0;
    for (const CriterionResult& r : results) {
        std::printf("[%s] %02d %s (%.1fs): %s\n", r.pass ? "PASS" : "FAIL", r.index,
                    r.name.c_str(), r.seconds, r.detail.c_str());
        ordered_json row;
        row["index"] = r.index;
        row["name"] = r.name;
        row["pass"] = r.pass;
        row["seconds"] = r.seconds;
        row["detail"] = r.detail;
        arr.push_back(row);
        if (r.pass) ++passed;
    }
    std::printf("%zu/%zu acceptance criteria passed\n", passed, results.size());
    if (sink.enabled()) {
        ordered_json out;
        out["command"] = "verify";
        out["passed"] = passed;
        out["total"] = results.size();
        out["criteria"] = arr;
        write_text_file(sink.path("verify.json"), out.dump(2) + "\n");
    }
    return all_passed(results) ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"levylab: numerical laboratory for non-local Schrodinger operators"};
    app.require_subcommand(1);

    GlobalArgs g;
    app.add_option("--config", g.config_path, "Path to INI config file");
    app.add_option("--out", g.out_dir, "Directory for artifacts and the run manifest");
    CLI::Option* seed_opt = app.add_option("--seed", g.seed, "Seed override for Monte Carlo runs");
    app.add_option("--threads", g.threads, "Worker thread count (0 = auto)");
    app.add_option("--format", g.format, "Output format for stdout reports")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* sub_catalog = app.add_subcommand("catalog", "List the built-in model catalog");
    CLI::App* sub_check = app.add_subcommand("check-model", "Run structural checks on a model");
    CLI::App* sub_classify = app.add_subcommand("classify", "Classify contractivity properties");
    CLI::App* sub_gs = app.add_subcommand("groundstate", "Compute the ground state (lambda0, phi0)");
    CLI::App* sub_hk = app.add_subcommand("heatkernel", "Evaluate the free heat kernel");
    CLI::App* sub_prop = app.add_subcommand("propagate", "Apply the Feynman-Kac semigroup to a field");
    CLI::App* sub_mc = app.add_subcommand("mc-fk", "Monte Carlo Feynman-Kac estimate");
    CLI::App* sub_scan = app.add_subcommand("gsd-scan", "Scan intrinsic L^p norms over (t, p, box)");
    CLI::App* sub_verify = app.add_subcommand("verify", "Run the acceptance suite");
    for (CLI::App* sub : {sub_catalog, sub_check, sub_classify, sub_gs, sub_hk, sub_prop, sub_mc,
                          sub_scan, sub_verify}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    g.seed_given = seed_opt->count() > 0;

    try {
        Config cfg;
        const bool needs_config = !(sub_catalog->parsed() || sub_verify->parsed());
        if (!g.config_path.empty()) {
            cfg = Config::parse_file(g.config_path);
        } else if (needs_config) {
            throw ConfigError("--config PATH is required for this command");
        }

        Sink sink;
        sink.dir = g.out_dir;
        if (sink.enabled()) std::filesystem::create_directories(sink.dir);

        const std::uint64_t seed =
            g.seed_given ? g.seed : static_cast<std::uint64_t>(cfg.get_int("run", "seed", 0));

        int rc = 0;
        std::string command;
        if (sub_catalog->parsed()) {
            command = "catalog";
            rc = cmd_catalog(g, sink);
        } else if (sub_check->parsed()) {
            command = "check-model";
            rc = cmd_check_model(g, cfg, sink);
        } else if (sub_classify->parsed()) {
            command = "classify";
            rc = cmd_classify(g, cfg, sink);
        } else if (sub_gs->parsed()) {
            command = "groundstate";
            rc = cmd_groundstate(g, cfg, sink);
        } else if (sub_hk->parsed()) {
            command = "heatkernel";
            rc = cmd_heatkernel(g, cfg, sink);
        } else if (sub_prop->parsed()) {
            command = "propagate";
            rc = cmd_propagate(g, cfg, sink);
        } else if (sub_mc->parsed()) {
            command = "mc-fk";
            rc = cmd_mc_fk(g, cfg, sink);
        } else if (sub_scan->parsed()) {
            command = "gsd-scan";
            rc = cmd_gsd_scan(g, cfg, sink);
        } else if (sub_verify->parsed()) {
            command = "verify";
            rc = cmd_verify(g, sink);
        }
        sink.finalize(cfg.hash(), seed, command);
        return rc;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
