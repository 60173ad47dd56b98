#include "tsgronwall/harness.hpp"
#include "tsgronwall/scenario.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

int exit_code_for(bool ok) { return ok ? 0 : 1; }

int cmd_verify(const std::string& config_path, const std::string& csv_path) {
    tsg::Scenario sc = tsg::load_scenario_file(config_path);
    tsg::BoundReport rep = tsg::run_verify(sc);
    tsg::write_summary(std::cout, rep);
    if (!csv_path.empty()) {
        if (csv_path == "-") {
            tsg::write_csv(std::cout, rep);
        } else {
            std::ofstream out(csv_path);
            if (!out) {
                std::cerr << "error: cannot open '" << csv_path << "' for writing\n";
                return 2;
            }
            tsg::write_csv(out, rep);
        }
    }
    return exit_code_for(rep.ok());
}

int cmd_fuzz(const tsg::FuzzOptions& opt) {
    tsg::FuzzSummary sum = tsg::run_fuzz(opt);
    std::cout << sum.text();
    return exit_code_for(sum.ok());
}

int cmd_converge(const std::string& task, const std::vector<std::size_t>& levels) {
    std::cout << tsg::run_converge(task, levels).text();
    return 0;
}

int cmd_demo() {
    const char* config = R"({
        "axis1": {"type": "integers", "lo": 0, "hi": 4},
        "axis2": {"type": "integers", "lo": 0, "hi": 4},
        "functions": {"p": "0.25", "k": "2"},
        "task": "const",
        "tolerances": {"rel": 1e-9},
        "seed": 42
    })";
    std::cout << "== verify: constant free term on the 5x5 integer grid ==\n";
    tsg::BoundReport rep = tsg::run_verify(tsg::parse_scenario(config));
    tsg::write_summary(std::cout, rep);
    tsg::write_csv(std::cout, rep);

    std::cout << "\n== fuzz: 25 random trials over every bound ==\n";
    tsg::FuzzOptions fopt;
    fopt.trials = 25;
    fopt.seed = 7;
    tsg::FuzzSummary sum = tsg::run_fuzz(fopt);
    std::cout << sum.text();

    std::cout << "\n== converge: uniform refinement of the constant-free-term bound ==\n";
    std::cout << tsg::run_converge("const", {4, 8, 16, 32, 64}).text();
    return exit_code_for(rep.ok() && sum.ok());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Explicit Gronwall-type bounds on finite two-variable time scales: "
                 "verification, fuzzing, and refinement studies"};
    app.require_subcommand(1);

    std::string config_path;
    std::string csv_path;
    auto* verify = app.add_subcommand("verify", "check one scenario config against its bound");
    verify->add_option("config", config_path, "JSON scenario file")->required();
    verify->add_option("--csv", csv_path, "write per-point rows to this file ('-' for stdout)");

    tsg::FuzzOptions fopt;
    std::vector<std::string> family_names;
    auto* fuzz = app.add_subcommand("fuzz", "random grids and data against every bound");
    fuzz->add_option("--trials", fopt.trials, "number of random trials")
        ->capture_default_str();
    fuzz->add_option("--seed", fopt.seed, "RNG seed")->capture_default_str();
    fuzz->add_option("--family", family_names,
                     "restrict axis families (integers, uniform, geometric, random); "
                     "repeatable");
    fuzz->add_option("--tol", fopt.rel_tol, "relative violation tolerance")
        ->capture_default_str();
    fuzz->add_option("--max-points", fopt.max_axis_points, "max points per axis")
        ->capture_default_str();

    std::string task;
    std::vector<std::size_t> levels;
    auto* converge = app.add_subcommand("converge", "refinement study on uniform grids");
    converge->add_option("--task", task, "const, zero, or solve")->required();
    converge->add_option("--levels", levels, "comma-separated subinterval counts")
        ->required()
        ->delimiter(',');

    auto* demo = app.add_subcommand("demo", "small end-to-end tour of the toolkit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify(config_path, csv_path);
        if (fuzz->parsed()) {
            for (const auto& name : family_names)
                fopt.families.push_back(tsg::family_from_name(name));
            return cmd_fuzz(fopt);
        }
        if (converge->parsed()) return cmd_converge(task, levels);
        if (demo->parsed()) return cmd_demo();
    } catch (const tsg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
