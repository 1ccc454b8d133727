// dt4: command-line front end. Reports are JSON on stdout; --pretty adds a
// summary on stderr. Exit status: 0 checks pass, 1 a check failed, 2 usage
// or input error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dt4/cli/commands.hpp"

namespace
{

int emit(const dt4::cli::Report &r, bool pretty)
{
    std::cout << r.body.dump(2) << std::endl;
    if (pretty) {
        dt4::cli::print_pretty(r.body, std::cerr);
    }
    return r.exit_code;
}

int emit_error(const std::string &command, const std::string &message)
{
    std::cout << nlohmann::json{{"command", command}, {"error", message}}.dump(2) << std::endl;
    return 2;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Equivariant DT4 invariants of local surfaces: series, chambers, fixed loci, localization, fits"};
    app.require_subcommand(1);

    dt4::cli::Common common;
    std::string variant = "product";
    app.add_flag("--pretty", common.pretty, "human-readable summary on stderr");
    app.add_option("--jobs", common.jobs, "worker threads for fixed-point sums")->check(CLI::PositiveNumber);
    app.add_option("--audit", common.audit_path, "write per-fixed-point terms as JSON lines to this file");
    app.add_option("--prefactor-variant", variant, "product | typeIIB")
        ->check(CLI::IsMember({"product", "typeIIB"}));

    int order = 10;
    auto *zs = app.add_subcommand("zseries", "type I generating series and its modular form");
    zs->add_option("--order", order, "highest q exponent")->required();

    long k = 0;
    long rank = 2;
    std::string delta = "0";
    std::string t = "1";
    std::string u = "3";
    auto *ch = app.add_subcommand("chamber", "ampleness, wall threshold and chamber test");
    ch->add_option("--k", k, "K_S = O(k f)")->check(CLI::NonNegativeNumber);
    ch->add_option("--r", rank, "rank")->check(CLI::PositiveNumber);
    ch->add_option("--delta", delta, "discriminant (rational)");
    ch->add_option("--t", t, "sigma coefficient of h (rational)");
    ch->add_option("--u", u, "fiber coefficient of h (rational)");

    long m = 1;
    long n = 0;
    auto *fl = app.add_subcommand("fixedloci", "type I and type II fixed loci on K3");
    fl->add_option("--m", m, "L = O(m f)")->check(CLI::PositiveNumber);
    fl->add_option("--n", n, "c2 of the sheaf")->check(CLI::NonNegativeNumber);

    dt4::cli::LocalizeArgs la;
    auto *lo = app.add_subcommand("localize", "type II product formula by torus localization");
    lo->add_option("--surface", la.surface, "preset, JSON file, A+B union, or K3");
    lo->add_option("--divisor", la.divisor, "D with L = K + D, as NAME=COEF,...");
    lo->add_option("--n1", la.n1)->check(CLI::NonNegativeNumber);
    lo->add_option("--n2", la.n2)->check(CLI::NonNegativeNumber);
    lo->add_option("--m", la.m, "K3 only: L = O(m f)");

    dt4::cli::MochizukiArgs ma;
    std::optional<long> pg;
    auto *mo = app.add_subcommand("mochizuki", "residue term A of the wall-crossing formula");
    mo->add_option("--surface", ma.surface);
    mo->add_option("--divisor", ma.divisor, "D with L = K + D");
    mo->add_option("--beta1", ma.beta1, "first Chern class of the first summand");
    mo->add_option("--beta2", ma.beta2, "first Chern class of the second summand");
    mo->add_option("--n", ma.n)->check(CLI::NonNegativeNumber);
    mo->add_option("--pg", pg, "override p_g");

    dt4::cli::FitArgs fa;
    std::optional<int> bound;
    auto *fi = app.add_subcommand("fit", "universal polynomial for a type II integral");
    fi->add_option("--n1", fa.n1)->check(CLI::NonNegativeNumber);
    fi->add_option("--n2", fa.n2)->check(CLI::NonNegativeNumber);
    fi->add_option("--degree-bound", bound)->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    }
    common.variant = variant == "typeIIB" ? dt4::PrefactorVariant::typeIIB : dt4::PrefactorVariant::product;

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        if (*zs) {
            return emit(dt4::cli::cmd_zseries(order), common.pretty);
        }
        if (*ch) {
            return emit(dt4::cli::cmd_chamber(k, rank, delta, t, u), common.pretty);
        }
        if (*fl) {
            return emit(dt4::cli::cmd_fixedloci(m, n), common.pretty);
        }
        if (*lo) {
            return emit(dt4::cli::cmd_localize(la, common), common.pretty);
        }
        if (*mo) {
            ma.p_g = pg;
            return emit(dt4::cli::cmd_mochizuki(ma, common), common.pretty);
        }
        if (*fi) {
            fa.degree_bound = bound;
            return emit(dt4::cli::cmd_fit(fa, common), common.pretty);
        }
    } catch (const std::exception &e) {
        return emit_error(name, e.what());
    }
    return 2;
}
