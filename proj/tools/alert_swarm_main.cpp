#include <CLI11.hpp>

#include <string>

#include "alertswarm/config.hpp"
#include "alertswarm/errors.hpp"
#include "alertswarm/log.hpp"
#include "alertswarm/runner.hpp"

using namespace alertswarm;

int main(int argc, char** argv) {
    CLI::App app{"alert-swarm: deterministic swarm simulator with GSO-selected "
                 "communication domains and behavioral threat detection"};
    app.require_subcommand(1);

    std::string config_path;
    std::string seeds_arg;
    std::string out_dir = "out";
    std::string format_name = "csv";

    CLI::App* run = app.add_subcommand("run", "run one or more seeded experiments");
    run->add_option("--config", config_path, "experiment config (YAML)")->required();
    run->add_option("--seeds", seeds_arg,
                    "seed count (e.g. 5) or comma-separated list (e.g. 3,17,42); "
                    "default: the config's seed");
    run->add_option("--out", out_dir, "output directory (default: out)");
    run->add_option("--format", format_name, "per-tick metrics format: csv|json|both");

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "check a config file");
    validate->add_option("--config", validate_path, "experiment config (YAML)")->required();

    std::string report_in;
    std::string report_out;
    CLI::App* report =
        app.add_subcommand("report", "re-aggregate an existing metrics directory");
    report->add_option("--in", report_in, "directory holding metrics_<seed>.csv files")
        ->required();
    report->add_option("--out", report_out, "write the summary here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            cli::RunManifest manifest;
            manifest.config_path = config_path;
            manifest.out_dir = out_dir;
            manifest.format = cli::parse_format(format_name);

            std::uint64_t base_seed = 42;
            try {
                base_seed = cli::load_config(config_path).seed;
            } catch (const std::exception&) {
                // run_command reports config problems with a proper exit code
            }
            manifest.seeds = cli::resolve_seeds(seeds_arg, base_seed);
            return cli::run_command(manifest);
        }
        if (validate->parsed()) {
            return cli::validate_command(validate_path);
        }
        if (report->parsed()) {
            return cli::report_command(report_in, report_out);
        }
    } catch (const InvalidConfig& e) {
        log_error(std::string("ValidationError: ") + e.what());
        return cli::kExitValidationError;
    } catch (const std::exception& e) {
        log_error(e.what());
        return cli::kExitFailure;
    }
    return cli::kExitFailure;
}
