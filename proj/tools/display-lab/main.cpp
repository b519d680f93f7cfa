#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "displaylab/errors.hpp"

using namespace dlab;
using namespace dlab::cli;

int main(int argc, char** argv) {
    CLI::App app{"display-lab: Witt vectors, displays and their Newton points"};
    app.require_subcommand(1);
    JobConfig c;

    // options shared by every subcommand
    auto common = [&](CLI::App* s) {
        s->add_option("--ring", c.ring, "base ring, e.g. F_3, F_3^2, F_3[t], F_5[eps]");
        s->add_option("--level", c.level, "Witt length")->check(CLI::Range(1, 64));
        s->add_option("--seed", c.seed, "random seed");
        s->add_option("--limit", c.limit, "refuse searches larger than this");
        s->add_option("--out", c.out, "output file (default stdout)");
        s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };

    struct Sub {
        const char* name;
        const char* help;
        int (*run)(const JobConfig&, std::ostream&);
        int inputs;
    };
    const Sub subs[] = {
        {"witt", "evaluate prefix Witt expressions, one per line", cmd_witt, 1},
        {"classify", "sort displays into isomorphism classes", cmd_classify, 1},
        {"newton", "Newton points and the ordinary bound", cmd_newton, 1},
        {"mazur-scan", "histogram of Newton points over random or Teichmuller displays", cmd_mazur_scan, 0},
        {"family-scan", "Newton points along the family joining two displays", cmd_family_scan, 1},
        {"flex", "apply a gauged flex to a display", cmd_flex, 2},
        {"gauge-validate", "check a gauge or a theta-gauge instance", cmd_gauge_validate, 1},
    };
    for (const auto& s : subs) {
        auto* sc = app.add_subcommand(s.name, s.help);
        common(sc);
        if (s.inputs > 0) sc->add_option("inputs", c.inputs, "input file(s)")->required()->expected(s.inputs);
        if (std::string(s.name) == "mazur-scan") {
            sc->add_option("--shape", c.shape, "linear:h:d or graded:h:d0,d1,...");
            sc->add_option("--mode", c.mode, "sample or teich")->check(CLI::IsMember({"sample", "teich"}));
            sc->add_option("--samples", c.samples, "number of random displays");
        }
        if (std::string(s.name) == "family-scan") sc->add_option("--target", c.target, "field holding the sample points");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : Usage;
    }

    const Sub* chosen = nullptr;
    for (const auto& s : subs)
        if (app.got_subcommand(s.name)) chosen = &s;
    c.command = chosen->name;

    std::ostringstream buf;
    int code = Ok;
    try {
        code = chosen->run(c, buf);
    } catch (const Error& e) {
        std::cerr << "display-lab: " << e.what() << "\n";
        return e.code() == Errc::SearchSpaceTooLarge || e.code() == Errc::LevelTooLarge ? Guard : Usage;
    } catch (const std::exception& e) {
        std::cerr << "display-lab: " << e.what() << "\n";
        return Usage;
    }
    if (c.out.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream f(c.out);
        if (!f) {
            std::cerr << "display-lab: cannot write '" << c.out << "'\n";
            return Usage;
        }
        f << buf.str();
    }
    return code;
}
