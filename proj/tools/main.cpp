#include "torsion_fano/catalog.hpp"
#include "torsion_fano/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

int main(int argc, char** argv) {
    CLI::App app{"Torsion baskets and equivariant Hilbert series of Fano-Enriques threefolds"};
    app.require_subcommand(1);

    tfano::CommandOptions opts;
    std::string data_dir;
    app.add_flag("--json", opts.json, "emit JSON instead of text");
    app.add_option("--threads", opts.threads, "worker threads for enumeration (0 = hardware)")->capture_default_str();
    app.add_option("--data", data_dir, "catalog directory (default: $TORSION_FANO_DATA or the shipped data)");

    std::string group, table;
    bool golden = false;
    auto* en = app.add_subcommand("enumerate", "all torsion baskets of a group up to automorphism");
    en->add_option("group", group, "group literal such as Z2xZ4")->required();
    en->add_option("--table", table, "cyclic basket table (JSON)");
    en->add_flag("--golden", golden, "compare with the catalog baskets; exit 1 on mismatch");

    std::string target;
    int order = 8;
    bool closed = false;
    auto* hi = app.add_subcommand("hilbert", "equivariant Hilbert series");
    hi->add_option("target", target, "record name, cover name, or BASKET:DEGREE")->required();
    hi->add_option("--order", order, "last degree")->capture_default_str();
    hi->add_flag("--closed-form", closed, "recover the numerator over the generator denominators");

    std::string record;
    int vorder = 12;
    auto* ve = app.add_subcommand("verify", "run every check on a quotient record");
    ve->add_option("record", record, "record name or its key, e.g. no1b")->required();
    ve->add_option("--order", vorder, "series comparison degree")->capture_default_str();

    std::string out_path;
    auto* re = app.add_subcommand("reproduce", "regenerate all tables, exclusions, series and verdicts");
    re->add_option("--out", out_path, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : tfano::kExitInputError;
    }
    if (opts.threads == 0) opts.threads = std::max(1u, std::thread::hardware_concurrency());

    tfano::Catalog cat;
    try {
        cat = tfano::Catalog::load(data_dir.empty() ? tfano::default_data_dir() : data_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return tfano::kExitInputError;
    }

    tfano::CommandOutput out;
    if (*en) {
        out = tfano::run_enumerate(cat, group, table.empty() ? std::nullopt : std::optional<std::string>(table), golden, opts);
    } else if (*hi) {
        out = tfano::run_hilbert(cat, target, order, closed, opts);
    } else if (*ve) {
        out = tfano::run_verify(cat, record, vorder, opts);
    } else {
        out = tfano::run_reproduce(cat, opts);
        if (!out_path.empty() && out.exit_code != tfano::kExitInputError) {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot write " << out_path << "\n";
                return tfano::kExitInputError;
            }
            f << out.text;
            return out.exit_code;
        }
    }
    (out.exit_code == tfano::kExitInputError ? std::cerr : std::cout) << out.text;
    return out.exit_code;
}
