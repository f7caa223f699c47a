#include <iostream>

#include <CLI11.hpp>

#include "auvctl/data_collection.hpp"
#include "auvctl/data_matrix.hpp"
#include "auvctl/errors.hpp"
#include "auvctl/metrics.hpp"
#include "auvctl/scenario_runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitDiverged = 4;

int cmd_collect(const std::string& config, const std::string& out_dir) {
    const auto plan = auvctl::load_collection_plan(config);
    const auto files = auvctl::run_collection(plan, out_dir);
    for (const auto& f : files) {
        std::cout << "wrote " << f.string() << "\n";
    }
    return kExitOk;
}

int cmd_run(const std::string& scenario_file, std::optional<std::uint64_t> seed,
            const std::string& out_dir) {
    auvctl::Scenario sc = auvctl::load_scenario(scenario_file);
    if (seed) sc.seed = *seed;
    const auto result = auvctl::run_scenario(sc);
    auvctl::write_outputs(result, out_dir);
    std::cout << result.metrics.to_json();
    if (result.metrics.solver_failures > 0) {
        std::cerr << "warning: " << result.metrics.solver_failures
                  << " solver ticks fell back to the previous input\n";
    }
    return kExitOk;
}

int cmd_compare(const std::string& a_file, const std::string& b_file) {
    const auto a = auvctl::MetricsReport::from_json_file(a_file);
    const auto b = auvctl::MetricsReport::from_json_file(b_file);
    std::cout << auvctl::format_compare_table(a, b);
    return kExitOk;
}

int cmd_check_data(const std::string& dataset, int t_ini, int t_fut,
                   const std::string& kind_name, int t_d) {
    const auto ds = auvctl::Dataset::read_csv(dataset);
    auvctl::PartitionSpec spec;
    spec.T_ini = t_ini;
    spec.N = t_fut;
    spec.kind = kind_name == "hankel" ? auvctl::DataMatrixKind::Hankel
                                      : auvctl::DataMatrixKind::Page;
    spec.max_cols = t_d;
    const auto blocks = auvctl::partition(ds.u, ds.y, spec);

    Eigen::MatrixXd u_stacked(blocks.U_p.rows() + blocks.U_f.rows(), blocks.cols());
    u_stacked << blocks.U_p, blocks.U_f;
    const auto ur = auvctl::persistency_report(u_stacked);

    Eigen::MatrixXd uy(u_stacked.rows() + blocks.Y_p.rows() + blocks.Y_f.rows(),
                       blocks.cols());
    uy << blocks.U_p, blocks.U_f, blocks.Y_p, blocks.Y_f;
    const auto uyr = auvctl::persistency_report(uy);

    std::cout << "input stack  : " << ur.rows << " x " << ur.cols << ", rank " << ur.rank
              << ", sigma_min " << ur.sigma_min << " -> "
              << (ur.full_row_rank ? "PASS" : "FAIL") << "\n";
    std::cout << "[U;Y] stack  : " << uyr.rows << " x " << uyr.cols << ", rank "
              << uyr.rank << ", sigma_min " << uyr.sigma_min << " -> "
              << (uyr.full_row_rank ? "PASS" : "FAIL") << "\n";
    return ur.full_row_rank ? kExitOk : kExitSolver;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Data-driven predictive control toolkit for the REMUS-100 AUV"};
    app.require_subcommand(1);

    auto* collect = app.add_subcommand("collect", "Run excitation data collection");
    std::string collect_config;
    std::string collect_out = ".";
    collect->add_option("--config", collect_config, "collection config JSON")->required();
    collect->add_option("--out", collect_out, "output directory");

    auto* run = app.add_subcommand("run", "Run a simulation scenario");
    std::string scenario_file;
    std::string run_out = ".";
    std::uint64_t seed_val = 0;
    bool seed_set = false;
    run->add_option("--scenario", scenario_file, "scenario JSON")->required();
    run->add_option("--seed", seed_val, "override the scenario seed")
        ->each([&](const std::string&) { seed_set = true; });
    run->add_option("--out", run_out, "output directory");

    auto* cmp = app.add_subcommand("compare", "Compare two metrics reports");
    std::string cmp_a, cmp_b;
    cmp->add_option("a", cmp_a, "first metrics JSON")->required();
    cmp->add_option("b", cmp_b, "second metrics JSON")->required();

    auto* chk = app.add_subcommand("check-data", "Persistency-of-excitation report");
    std::string chk_dataset;
    int chk_tini = 6, chk_tfut = 10, chk_td = 0;
    std::string chk_kind = "page";
    chk->add_option("dataset", chk_dataset, "dataset CSV")->required();
    chk->add_option("--t-ini", chk_tini, "past horizon");
    chk->add_option("--t-fut", chk_tfut, "future horizon");
    chk->add_option("--kind", chk_kind, "page|hankel");
    chk->add_option("--t-d", chk_td, "column count (0 = all)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*collect) return cmd_collect(collect_config, collect_out);
        if (*run) {
            return cmd_run(scenario_file,
                           seed_set ? std::optional<std::uint64_t>(seed_val) : std::nullopt,
                           run_out);
        }
        if (*cmp) return cmd_compare(cmp_a, cmp_b);
        if (*chk) return cmd_check_data(chk_dataset, chk_tini, chk_tfut, chk_kind, chk_td);
    } catch (const auvctl::SimDivergedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDiverged;
    } catch (const auvctl::InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const auvctl::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
