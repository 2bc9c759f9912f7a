#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "supergeom/cli/runner.hpp"

int main(int argc, char **argv)
{
    using namespace supergeom::cli;
    CLI::App app{"supergeom: batch computations on projective superspaces"};
    Options opt;
    std::string format = "json", input;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--max-degree", opt.max_degree, "cap on twists and Koszul windows")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", opt.seed, "seed for selftest commands");
    app.add_option("input", input, "session file (standard input when omitted)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    opt.format = format == "table" ? Format::table : Format::json;

    std::string src;
    if (input.empty() || input == "-") {
        src.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream f(input, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot open " << input << "\n";
            return 1;
        }
        src.assign(std::istreambuf_iterator<char>(f), {});
    }
    auto r = run_source(src, opt);
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}
