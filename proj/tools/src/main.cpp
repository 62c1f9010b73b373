#include "covkit/cli/json_io.hpp"
#include "covkit/cli/runner.hpp"
#include "covkit/cli/schema.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace covkit::cli;

    CLI::App app{"covariant-kit: numerical checks of field transformation laws and Heisenberg relations"};
    app.set_version_flag("--version", std::string(kArtifactVersion));
    app.require_subcommand(1);

    std::string scenario_path;
    RunOptions options;
    auto* run = app.add_subcommand("run", "Run a scenario file and write its report");
    run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    run->add_option("--threads", options.threads, "Worker threads for quadrature (0 = default)");
    run->add_option("--out", options.report_path, "Report path (default: output.report, else stdout)");
    run->add_option("--override", options.overrides, "Set a scenario value, e.g. fd.step=1e-3")->take_all();

    std::string which = "all";
    auto* schema = app.add_subcommand("schema", "Print the scenario and report JSON schemas");
    schema->add_option("--which", which, "scenario, report or all")->check(CLI::IsMember({"scenario", "report", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfigError;
    }

    if (*schema) {
        Json out;
        if (which == "scenario") out = scenario_schema();
        else if (which == "report") out = report_schema();
        else out = Json{{"scenario", scenario_schema()}, {"report", report_schema()}};
        std::cout << dump(out) << "\n";
        return kExitPass;
    }
    return run_command(scenario_path, options, std::cout, std::cerr);
}
