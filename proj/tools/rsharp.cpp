#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rsharp/app.hpp"

namespace {

constexpr const char* footer = R"(Commands:
  constants      p,c,q,S,R,a,b,A,B
  certify        kernel,p,c,x0[,x1[,x2]],value   (CSV lists violations)
  scan           kernel,p,c,min,x0[,x1[,x2]],refined_min,violations
  projections    index,p,c,ratio,a,holds
  extremal       p,c,gamma,closed_form,numeric,abs_err,converged
  subharmonic    p,lift,tests,failures,worst_excess
  proof-checks   kernel,p,c,x0[,x1],value        (CSV lists violations)
  all            id,title,pass,detail
  tabulate-h     p,t,h
Kernels: theorem lemma counterexample thisin secondquad shtune discriminant
Exit status: 0 ok, 1 inequality violated, 2 usage or parameter error.)";

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Sharp-constant inequality verifier"};
    cli.footer(footer);
    std::string command;
    std::string config_path;
    cli.add_option("command", command, "Command to run")->required();
    cli.add_option("--config", config_path, "key=value file; flags override it");

    const std::vector<std::pair<std::string, std::string>> flag_help{
        {"p", "Comma-separated p values"},
        {"c", "Comma-separated c values"},
        {"kernel", "Kernel for certify/scan"},
        {"grid-r", "First grid axis lo:hi:count[:log|lin]"},
        {"grid-t", "Second grid axis lo:hi:count[:log|lin]"},
        {"N", "Samples on the circle"},
        {"seed", "Corpus seed"},
        {"margin", "Allowed negative slack"},
        {"format", "json or csv"},
        {"out", "Output file (written atomically)"},
        {"gamma", "Comma-separated gamma values"},
        {"signal", "Signal file (.json or CSV index,re,im)"},
        {"count", "Corpus size or tests per p"},
        {"degree", "Maximum trigonometric degree"},
        {"threads", "Worker threads, 0 = all cores"},
    };
    std::map<std::string, std::string> values;
    std::vector<std::pair<std::string, CLI::Option*>> opts;
    for (const auto& [name, help] : flag_help) {
        opts.emplace_back(name, cli.add_option("--" + name, values[name], help));
    }

    try {
        cli.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return cli.exit(e);
    } catch (const CLI::ParseError& e) {
        cli.exit(e);
        return rsharp::app::exit_usage;
    }

    rsharp::RunConfig cfg;
    try {
        std::map<std::string, std::string> file;
        if (!config_path.empty()) file = rsharp::read_config_file(config_path);
        std::vector<std::pair<std::string, std::string>> flags{{"command", command}};
        for (const auto& [name, opt] : opts) {
            if (opt->count() > 0) flags.emplace_back(name, values[name]);
        }
        cfg = rsharp::build_config(file, flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return rsharp::app::exit_usage;
    }
    return rsharp::app::run(cfg, std::cout, std::cerr);
}
