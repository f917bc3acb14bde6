#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mhdadm/config.hpp"
#include "mhdadm/errors.hpp"
#include "mhdadm/workflows.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral approximate-deconvolution LES of MHD on the periodic torus"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;

    auto* run = app.add_subcommand("run", "Integrate a configuration and write diagnostics and snapshots");
    run->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
    run->add_option("--out-dir", out_dir, "Override run.out_dir");

    std::vector<int> orders{0, 1, 2, 4, 8, 16};
    int reference = 64;
    auto* sweep = app.add_subcommand("sweep-n", "Distance to a high-order reference run as the order N grows");
    sweep->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--orders", orders, "Comma separated deconvolution orders")->delimiter(',')->capture_default_str();
    sweep->add_option("--ref", reference, "Reference order")->capture_default_str()->check(CLI::NonNegativeNumber);
    sweep->add_option("--out-dir", out_dir, "Override run.out_dir");

    auto* check = app.add_subcommand("check-invariants", "Run the operator property suite");
    check->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);

    std::string snapshot, out_path, op_name;
    double alpha = 1.0;
    std::optional<int> order;
    auto* filter = app.add_subcommand("filter", "Apply G, D_N or A to the fields of a snapshot");
    filter->add_option("snapshot", snapshot, "Input snapshot")->required()->check(CLI::ExistingFile);
    filter->add_option("--alpha", alpha, "Filter radius")->required()->check(CLI::NonNegativeNumber);
    filter->add_option("--order", order, "Deconvolution order N")->check(CLI::NonNegativeNumber);
    filter->add_option("--op", op_name, "filter, deconv or inverse (default: deconv with --order, else filter)")
        ->check(CLI::IsMember({"filter", "deconv", "inverse"}));
    filter->add_option("--out", out_path, "Output snapshot")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*filter) {
            const std::string name = !op_name.empty() ? op_name : order ? "deconv" : "filter";
            const mhdadm::DeconvSpec spec{{alpha}, order.value_or(0)};
            return mhdadm::run_filter(snapshot, mhdadm::parse_filter_op(name), spec, out_path, std::cout);
        }
        mhdadm::SimConfig cfg = mhdadm::load_config(config_path);
        if (out_dir) cfg.out_dir = *out_dir;
        if (*run) return mhdadm::run(cfg, std::cout, std::cerr);
        if (*sweep) return mhdadm::run_sweep(cfg, orders, reference, std::cout, std::cerr);
        if (*check) return mhdadm::run_check_invariants(cfg, std::cout);
    } catch (const mhdadm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
