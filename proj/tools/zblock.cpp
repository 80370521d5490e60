// zblock: block decompositions of centers of modular group algebras, their
// Loewy-length invariants, and a batch verifier for the classical bounds.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "zblock/aut_oracle.hpp"
#include "zblock/verify.hpp"

#ifndef ZBLOCK_CATALOG_DIR
#define ZBLOCK_CATALOG_DIR "catalog"
#endif

namespace {

int run_analyze(const std::string& group_file, const std::string& builtin, int prime, int field_degree,
                uint64_t seed, const std::string& format, const std::string& out_path, int element_cap) {
    zblock::GroupSpec spec;
    if (!group_file.empty()) {
        std::ifstream in(group_file);
        if (!in) throw zblock::ParseError("cannot open group file '" + group_file + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        spec = zblock::parse_group_file(buf.str());
    } else {
        spec = zblock::builtin_spec(builtin);
    }
    zblock::AnalyzeOptions opts;
    opts.field_degree = field_degree;
    opts.seed = seed;
    opts.element_cap = element_cap;
    zblock::AnalysisReport rep = zblock::analyze(spec, prime, opts);
    auto checks = zblock::check_all(rep);

    std::string payload;
    if (format == "json") payload = zblock::report_to_json(rep, checks).dump(2) + "\n";
    else if (format == "csv") payload = zblock::report_to_csv(rep);
    else if (format == "md") payload = zblock::report_to_markdown(rep, checks);
    else throw zblock::ParseError("unknown format '" + format + "'");

    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path);
        if (!out) throw zblock::ParseError("cannot write to '" + out_path + "'");
        out << payload;
    }
    std::cerr << "analyzed " << rep.group << " at p=" << prime << " in " << rep.seconds << "s\n";
    for (const auto& c : checks)
        if (c.verdict == zblock::Verdict::Fail) {
            std::cerr << "check failed: " << c.id << " (" << c.detail << ")\n";
            return 1;
        }
    return 0;
}

int run_verify(const std::string& catalog, int jobs, uint64_t seed, const std::string& out_dir, int element_cap) {
    std::string path = catalog;
    if (catalog == "default") path = std::string(ZBLOCK_CATALOG_DIR) + "/default.json";
    zblock::RunOptions opts;
    opts.jobs = jobs;
    opts.seed = seed;
    opts.out_dir = out_dir;
    opts.element_cap = element_cap;
    zblock::CatalogResult result = zblock::run_catalog(path, opts);
    std::cout << result.summary.dump(2) << "\n";
    return result.exit_code;
}

int run_aut_oracle(int p, int m, int n) {
    long long formula = zblock::aut_order_rank2(p, m, n);
    long long brute = zblock::brute_force_aut_order_rank2(p, m, n);
    std::cout << "formula " << formula << "\n";
    std::cout << "brute-force " << brute << "\n";
    return formula == brute ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"centers of modular group algebras: blocks, Loewy lengths, invariant checks"};
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "analyze one group at one prime");
    std::string group_file, builtin, format = "json", out_path;
    int prime = 0, field_degree = 0, element_cap = zblock::kDefaultElementCap;
    uint64_t seed = 0;
    auto* gf = analyze->add_option("--group", group_file, "group file");
    auto* gb = analyze->add_option("--builtin", builtin, "builtin tag, e.g. 'alternating 4'");
    gf->excludes(gb);
    analyze->add_option("--prime", prime, "characteristic")->required();
    analyze->add_option("--field-degree", field_degree, "field degree override (>= computed splitting degree)");
    analyze->add_option("--seed", seed, "seed for randomized polynomial splitting");
    analyze->add_option("--format", format, "json | csv | md");
    analyze->add_option("--out", out_path, "output file (default stdout)");
    analyze->add_option("--element-cap", element_cap, "group enumeration cap");

    auto* verify = app.add_subcommand("verify", "run a catalog manifest and check every statement");
    std::string catalog;
    int jobs = 0;
    std::string out_dir;
    verify->add_option("--catalog", catalog, "manifest path, or 'default'")->required();
    verify->add_option("--jobs", jobs, "parallel jobs (default: hardware)");
    verify->add_option("--seed", seed, "seed for randomized polynomial splitting");
    verify->add_option("--out", out_dir, "directory for per-analysis JSON reports");
    verify->add_option("--element-cap", element_cap, "group enumeration cap");

    auto* oracle = app.add_subcommand("oracle", "independent cross-checks");
    auto* aut = oracle->add_subcommand("aut-order", "|Aut(C_{p^m} x C_{p^n})|: formula vs brute force");
    int op = 0, om = 0, on = 0;
    aut->add_option("--p", op, "prime (2 or 3)")->required();
    aut->add_option("--m", om, "first exponent")->required();
    aut->add_option("--n", on, "second exponent")->required();
    oracle->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (analyze->parsed()) {
            if (group_file.empty() && builtin.empty())
                throw zblock::ParseError("one of --group or --builtin is required");
            return run_analyze(group_file, builtin, prime, field_degree, seed, format, out_path, element_cap);
        }
        if (verify->parsed()) return run_verify(catalog, jobs, seed, out_dir, element_cap);
        if (aut->parsed()) return run_aut_oracle(op, om, on);
    } catch (const zblock::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const zblock::CapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
