// Command line front end.
//
// Exit codes: 0 success, 2 input validation failure, 3 verification failure,
// 4 computation incomplete pending oracle entries.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "orbicoh/orbicoh.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitVerification = 3;
constexpr int kExitIncomplete = 4;

struct CommonArgs {
    std::string input;
    std::string oracle_path;
    std::string format = "table";
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_oracle) {
    cmd->add_option("input", args.input, "input document (.yaml, .yml or .json)")->required();
    if (with_oracle)
        cmd->add_option("--oracle", args.oracle_path, "Euler-integral oracle document");
    cmd->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"table", "json", "json-like"}));
    cmd->add_option("--out", args.out_path, "write the report to a file instead of stdout");
}

orbicoh::Format format_of(const CommonArgs& args) {
    return args.format == "table" ? orbicoh::Format::table : orbicoh::Format::json;
}

int emit(const std::string& text, const CommonArgs& args) {
    if (args.out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << args.out_path << "\n";
        return kExitValidation;
    }
    out << text;
    return kExitOk;
}

orbicoh::EulerOracle gather_oracle(const orbicoh::InputDocument& doc, const CommonArgs& args) {
    orbicoh::EulerOracle oracle = doc.oracle;
    if (!args.oracle_path.empty()) oracle.merge(orbicoh::load_oracle(args.oracle_path));
    return oracle;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Chen-Ruan cohomology of combinatorially presented odd-dimensional "
                 "orbifolds"};
    app.require_subcommand(1);

    CommonArgs sectors_args, coh_args, ring_args, verify_args;
    CLI::App* cmd_sectors =
        app.add_subcommand("sectors", "list twisted sectors and 3-multisectors");
    add_common(cmd_sectors, sectors_args, false);
    CLI::App* cmd_coh =
        app.add_subcommand("cohomology", "graded dimensions of the orbifold cohomology");
    add_common(cmd_coh, coh_args, false);
    CLI::App* cmd_ring = app.add_subcommand("ring", "structure constants of the orbifold product");
    add_common(cmd_ring, ring_args, true);
    CLI::App* cmd_verify = app.add_subcommand("verify", "recompute and check internal consistency");
    add_common(cmd_verify, verify_args, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_sectors->parsed()) {
            const auto doc = orbicoh::load_input(sectors_args.input);
            return emit(orbicoh::render_sectors(doc, format_of(sectors_args)), sectors_args);
        }
        if (cmd_coh->parsed()) {
            const auto doc = orbicoh::load_input(coh_args.input);
            return emit(orbicoh::render_cohomology(doc, format_of(coh_args)), coh_args);
        }
        if (cmd_ring->parsed()) {
            const auto doc = orbicoh::load_input(ring_args.input);
            const auto oracle = gather_oracle(doc, ring_args);
            const auto render = orbicoh::render_ring(doc, oracle, format_of(ring_args));
            const int rc = emit(render.text, ring_args);
            if (rc != kExitOk) return rc;
            return render.incomplete ? kExitIncomplete : kExitOk;
        }
        if (cmd_verify->parsed()) {
            const auto doc = orbicoh::load_input(verify_args.input);
            const auto oracle = gather_oracle(doc, verify_args);
            const auto render = orbicoh::render_verify(doc, oracle, format_of(verify_args));
            const int rc = emit(render.text, verify_args);
            if (rc != kExitOk) return rc;
            if (!render.pass) return kExitVerification;
            return render.incomplete ? kExitIncomplete : kExitOk;
        }
    } catch (const orbicoh::duality_error& e) {
        std::cerr << "verification error: " << e.what() << "\n";
        return kExitVerification;
    } catch (const orbicoh::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const orbicoh::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
