// tunnelnoise: sweeps, single-point dumps and noise budgets from the command line.
//
// Exit codes: 0 success, 2 usage error, 3 domain error, 4 internal consistency failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tunnelnoise/errors.hpp"
#include "tunnelnoise/noise.hpp"
#include "tunnelnoise/report.hpp"
#include "tunnelnoise/selftest.hpp"
#include "tunnelnoise/sweep.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitConsistency = 4;

struct Options {
    std::string barrier = "field";
    double V0 = 5.0;
    double E = 1.0;
    double phi = 0.0;
    double gap = 1.0;
    std::string sweep = "phi";
    double min = 0.0;
    double max = 5.0;
    int steps = 200;
    std::uint64_t N = 1;
    double I0 = 1e-6;
    double mass = 1e-10;
    double temp = 10e-3;
    double f0 = 1e5;
    double Q = 1e7;
    std::string out = "-";
    std::string format = "csv";
    std::string outputs = "T,R,delta_l,delta_p,product";
};

tunnelnoise::BarrierSpec barrier_from(const Options& o) {
    using namespace tunnelnoise;
    const BarrierSpec spec{parse_family(o.barrier), Energy::eV(o.V0), Energy::eV(o.phi), Length::nm(o.gap),
                           Length::meters(0.0)};
    spec.validate();
    return spec;
}

template <class Writer>
void emit(const std::string& path, Writer write) {
    if (path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw tunnelnoise::UsageError("out: cannot open '" + path + "' for writing");
    write(file);
}

int run_sweep_command(const Options& o) {
    using namespace tunnelnoise;
    SweepConfig c;
    c.family = parse_family(o.barrier);
    c.V0_eV = o.V0;
    c.E_eV = o.E;
    c.phi_eV = o.phi;
    c.gap_nm = o.gap;
    c.variable = parse_variable(o.sweep);
    c.min = o.min;
    c.max = o.max;
    c.steps = o.steps;
    c.outputs = parse_outputs(o.outputs);
    c.n_electrons = o.N;
    c.I0 = o.I0;
    c.format = parse_format(o.format);
    c.out_path = o.out;
    const SweepTable table = run_sweep(c);
    emit(c.out_path, [&](std::ostream& os) {
        if (c.format == OutputFormat::csv) {
            write_csv(table, os);
        } else {
            write_json(table, os);
        }
    });
    return 0;
}

int run_feasibility_command(const Options& o) {
    using namespace tunnelnoise;
    const ResonatorSpec res{o.mass, o.f0, o.Q, o.temp};
    const FeasibilityReport r = feasibility_report(o.I0, res, barrier_from(o), Energy::eV(o.E));
    const OutputFormat format = parse_format(o.format);
    emit(o.out, [&](std::ostream& os) {
        if (format == OutputFormat::json) {
            os << to_json(r).dump(2) << "\n";
        } else {
            write_text(r, os);
        }
    });
    return 0;
}

int run_solve_command(const Options& o) {
    using namespace tunnelnoise;
    const auto dump = solve_dump(Energy::eV(o.E), barrier_from(o), o.N);
    emit(o.out, [&](std::ostream& os) { os << dump.dump(2) << "\n"; });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Position/momentum uncertainty and noise budget of a tunnelling displacement sensor"};
    app.set_config("--config", "", "key=value file; command-line flags override its entries");
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--barrier", o.barrier, "barrier family: sym, asym or field")->capture_default_str();
    app.add_option("--V0", o.V0, "barrier height (eV)")->capture_default_str();
    app.add_option("--E", o.E, "electron energy (eV)")->capture_default_str();
    app.add_option("--phi", o.phi, "work-function offset or bias drop (eV)")->capture_default_str();
    app.add_option("--gap", o.gap, "gap l = b - a (nm)")->capture_default_str();
    app.add_option("--sweep", o.sweep, "sweep variable: phi, gap or E")->capture_default_str();
    app.add_option("--min", o.min, "sweep start (eV or nm)")->capture_default_str();
    app.add_option("--max", o.max, "sweep end (eV or nm)")->capture_default_str();
    app.add_option("--steps", o.steps, "grid points, >= 2")->capture_default_str();
    app.add_option("--N", o.N, "electron count")->capture_default_str();
    app.add_option("--I0", o.I0, "tunnel current (A)")->capture_default_str();
    app.add_option("--mass", o.mass, "resonator mass (kg)")->capture_default_str();
    app.add_option("--temp", o.temp, "resonator temperature (K)")->capture_default_str();
    app.add_option("--f0", o.f0, "resonator frequency (Hz)")->capture_default_str();
    app.add_option("--Q", o.Q, "resonator quality factor")->capture_default_str();
    app.add_option("--out", o.out, "output path, - for stdout")->capture_default_str();
    app.add_option("--format", o.format, "csv or json")->capture_default_str();
    app.add_option("--outputs", o.outputs, "sweep columns from T,R,delta_l,delta_p,product,s_fq")
        ->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "tabulate T, R, delta_l, delta_p, product over a parameter grid");
    auto* feas = app.add_subcommand("feasibility", "noise budget and quantum-dominance verdict");
    auto* solve = app.add_subcommand("solve", "full dump of one operating point (JSON)");
    auto* self = app.add_subcommand("selftest", "run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (sweep->parsed()) return run_sweep_command(o);
        if (feas->parsed()) return run_feasibility_command(o);
        if (solve->parsed()) return run_solve_command(o);
        if (self->parsed()) return tunnelnoise::run_selftest(std::cout) ? 0 : kExitConsistency;
    } catch (const tunnelnoise::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const tunnelnoise::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const tunnelnoise::RangeError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const tunnelnoise::ConsistencyError& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return kExitConsistency;
    }
    return kExitUsage;
}
