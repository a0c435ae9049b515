// Command-line front end: `verify` runs the invariant suite, `run`
// simulates rounds under honest or cheating parties, `sweep` writes the
// trade-off dataset (CSV, optionally SVG), `adversary` prints the
// closed-form optimal attacks. All randomness flows from --seed; identical
// argv and seed give byte-identical standard output regardless of
// --threads.

#include <cstdint>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wrot/wrot.hpp"

namespace {

struct AliceSpec {
    enum class Kind { Honest, Pure, Max, Min } kind = Kind::Honest;
    wrot::PureCheatState d;
};

struct BobSpec {
    enum class Kind { Honest, Guess, Optimal } kind = Kind::Honest;
    double theta = 0.0;
};

AliceSpec parse_alice(const std::string& text) {
    if (text == "honest") return {};
    if (text == "max") return {AliceSpec::Kind::Max, {}};
    if (text == "min") return {AliceSpec::Kind::Min, {}};
    if (text.rfind("pure:", 0) == 0) {
        AliceSpec spec{AliceSpec::Kind::Pure, {}};
        char comma = 0;
        std::istringstream in(text.substr(5));
        if (in >> spec.d.d1 >> comma >> spec.d.d2 && comma == ',' &&
            (in >> std::ws).eof())
            return spec;
    }
    throw wrot::OutOfRange("--alice expects honest|pure:d1,d2|max|min, got '" +
                           text + "'");
}

BobSpec parse_bob(const std::string& text) {
    if (text == "honest") return {};
    if (text == "optimal") return {BobSpec::Kind::Optimal, 0.0};
    if (text.rfind("guess:", 0) == 0) {
        BobSpec spec{BobSpec::Kind::Guess, 0.0};
        std::istringstream in(text.substr(6));
        if (in >> spec.theta && (in >> std::ws).eof()) return spec;
    }
    throw wrot::OutOfRange("--bob expects honest|guess:theta|optimal, got '" +
                           text + "'");
}

wrot::BitSource parse_bits(const std::string& text) {
    if (text == "random") return wrot::BitSource::Random;
    if (text == "0") return wrot::BitSource::Fixed0;
    if (text == "1") return wrot::BitSource::Fixed1;
    throw wrot::OutOfRange("--bits expects random|0|1, got '" + text + "'");
}

struct VerifyArgs {
    int a_grid = 99;
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

bool report_line(const std::string& name, bool pass,
                 const std::string& detail) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail
              << "\n";
    return pass;
}

int do_verify(const VerifyArgs& args) {
    namespace vf = wrot::verify;
    using wrot::format_double;
    const auto grid = vf::overlap_grid(args.a_grid);
    const std::vector<double> mc_grid{0.1, 0.3, 0.5, 0.7, 0.9};
    bool ok = true;

    {
        const auto r = vf::povm_grid_report(grid);
        ok &= report_line(
            "povm_validity",
            r.max_completeness_residual <= 1e-12 &&
                r.min_eigenvalue >= -1e-10 && r.max_unambiguity <= 1e-12 &&
                r.max_det_e3 <= 1e-12 && r.max_lambda_max_error <= 1e-10,
            "completeness=" + format_double(r.max_completeness_residual) +
                " min_eig=" + format_double(r.min_eigenvalue) +
                " unambiguity=" + format_double(r.max_unambiguity) +
                " det_e3=" + format_double(r.max_det_e3) +
                " lambda_max_err=" + format_double(r.max_lambda_max_error));
        ok &= report_line(
            "signal_states",
            r.max_overlap_error <= 1e-12 && r.max_bot_deviation <= 1e-12,
            "overlap_err=" + format_double(r.max_overlap_error) +
                " bot_dev=" + format_double(r.max_bot_deviation));
    }
    {
        const auto r = vf::algebra_report(500, args.seed);
        ok &= report_line(
            "qubit_algebra",
            r.max_reconstruction_dev <= 1e-10 &&
                r.max_orthonormality_dev <= 1e-12 &&
                r.max_residual <= 1e-10 && r.expectation_low >= -1e-10 &&
                r.expectation_high <= 1.0 + 1e-10 &&
                r.max_purity_dev <= 1e-10 && r.sampler_reproducible,
            "reconstruction=" + format_double(r.max_reconstruction_dev) +
                " orthonormality=" + format_double(r.max_orthonormality_dev) +
                " residual=" + format_double(r.max_residual) +
                " purity_dev=" + format_double(r.max_purity_dev));
    }
    {
        const auto r = vf::eq2_grid_report(50, 50);
        ok &= report_line(
            "advantage_formula",
            r.max_delta <= 1e-10 && r.max_excess_high <= 1e-10 &&
                r.max_excess_low <= 1e-10,
            "max_delta=" + format_double(r.max_delta) + " points=" +
                std::to_string(r.points) + " bound_excess=" +
                format_double(std::max(r.max_excess_high, r.max_excess_low)));
    }
    {
        const auto r = vf::alice_extremes_report(grid);
        ok &= report_line(
            "alice_extremes",
            r.max_v_error <= 1e-6 && r.max_d1_error <= 1e-3 &&
                r.max_lambda_min <= 1e-12 && r.max_kernel_v_error <= 1e-10,
            "v_err=" + format_double(r.max_v_error) +
                " d1_err=" + format_double(r.max_d1_error) +
                " lambda_min=" + format_double(r.max_lambda_min) +
                " kernel_v_err=" + format_double(r.max_kernel_v_error));
    }
    {
        const auto r = vf::bob_optimum_report(grid, 1e-4, true);
        ok &= report_line(
            "bob_optimum",
            r.max_theta_error <= 2e-4 && r.max_q_closed_error <= 1e-12 &&
                r.max_q_helstrom_error <= 1e-12 &&
                r.max_scan_excess <= 1e-10 && r.max_beta_error <= 2e-4,
            "theta_err=" + format_double(r.max_theta_error) +
                " q_err=" + format_double(r.max_q_closed_error) +
                " helstrom_err=" + format_double(r.max_q_helstrom_error) +
                " scan_excess=" + format_double(r.max_scan_excess) +
                " beta_err=" + format_double(r.max_beta_error));
    }
    {
        const auto r = vf::landmark_scan();
        const bool pass =
            std::abs(r.a_at_v_peak - (std::numbers::sqrt2 - 1.0)) <= 1e-4 &&
            std::abs(r.v_peak - (3.0 - 2.0 * std::numbers::sqrt2)) <= 1e-7 &&
            std::abs(r.a_at_u_peak - 1.0 / std::numbers::sqrt2) <= 1e-4 &&
            std::abs(r.u_peak - (std::numbers::sqrt2 - 1.0) / 2.0) <= 1e-7;
        ok &= report_line(
            "curve_landmarks", pass,
            "v_peak=" + format_double(r.v_peak) + "@a=" +
                format_double(r.a_at_v_peak) + " u_peak=" +
                format_double(r.u_peak) + "@a=" + format_double(r.a_at_u_peak));
    }
    {
        const auto r = vf::entanglement_report(100, args.seed, mc_grid);
        ok &= report_line(
            "entanglement_no_advantage",
            r.max_delta <= 1e-10 && r.min_bot >= -1e-10 &&
                r.max_bot_excess <= 1e-10,
            "marginal_delta=" + format_double(r.max_delta) +
                " states=" + std::to_string(r.states) +
                " bot_excess=" + format_double(r.max_bot_excess));
    }
    {
        const auto r = vf::sweep_invariant_report(wrot::sweep({}));
        ok &= report_line(
            "sweep_invariants",
            r.max_closed_form_dev <= 1e-12 && r.v_less_than_a &&
                r.nonnegative && r.endpoint_residual <= 1e-12 &&
                r.v_monotone_below_peak && r.u_monotone_below_peak,
            "closed_form_dev=" + format_double(r.max_closed_form_dev) +
                " v_less_than_a=" + (r.v_less_than_a ? std::string("yes")
                                                     : std::string("no")) +
                " monotone_below_peaks=" +
                ((r.v_monotone_below_peak && r.u_monotone_below_peak)
                     ? std::string("yes")
                     : std::string("no")));
    }
    {
        const auto r = vf::honest_mc_report(mc_grid, args.trials, args.seed,
                                            args.threads);
        ok &= report_line(
            "monte_carlo_honest",
            r.max_sigmas <= 4.0 && r.max_analytic_dev <= 1e-12 &&
                r.wrong_bits == 0,
            "max_sigmas=" + format_double(r.max_sigmas) +
                " analytic_dev=" + format_double(r.max_analytic_dev) +
                " wrong_bits=" + std::to_string(r.wrong_bits));
    }

    std::cout << (ok ? "verify: all checks passed"
                     : "verify: CHECKS FAILED")
              << "\n";
    return ok ? 0 : 1;
}

struct RunArgs {
    double a = 0.5;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    std::string alice = "honest";
    std::string bob = "honest";
    std::string bits = "random";
    unsigned threads = 1;
    bool json = false;
};

int do_run(const RunArgs& args) {
    const AliceSpec alice = parse_alice(args.alice);
    const BobSpec bob = parse_bob(args.bob);
    if (alice.kind != AliceSpec::Kind::Honest &&
        bob.kind != BobSpec::Kind::Honest) {
        std::cerr << "error: --alice and --bob cannot both cheat; a "
                     "cheating sender prepares no message bit for a "
                     "guessing receiver\n";
        return 2;
    }

    const wrot::ProtocolParams params = wrot::make_params(args.a);
    wrot::McOptions opt;
    opt.trials = args.trials;
    opt.seed = args.seed;
    opt.bits = parse_bits(args.bits);
    opt.threads = args.threads;

    wrot::RunStats stats;
    switch (alice.kind) {
        case AliceSpec::Kind::Pure:
            stats = wrot::run_cheating_alice(params, alice.d, opt);
            break;
        case AliceSpec::Kind::Max:
            stats = wrot::run_cheating_alice(
                params, wrot::max_alice_advantage(args.a).state, opt);
            break;
        case AliceSpec::Kind::Min:
            stats = wrot::run_cheating_alice(
                params, wrot::min_alice_advantage(args.a).state, opt);
            break;
        case AliceSpec::Kind::Honest:
            if (bob.kind == BobSpec::Kind::Honest) {
                stats = wrot::run_monte_carlo(params, opt);
            } else {
                const double theta = bob.kind == BobSpec::Kind::Optimal
                                         ? wrot::optimal_bob(args.a).theta
                                         : bob.theta;
                stats = wrot::run_guessing_bob(
                    params, wrot::bob_guess_basis(theta), opt);
                // stdout keeps the fixed record; diagnostics go to stderr
                std::cerr << "# correct_rate="
                          << wrot::format_double(
                                 *stats.empirical_correct_rate)
                          << "\n";
            }
            break;
    }

    const wrot::Record record = stats.record();
    std::cout << (args.json ? record.json() : record.flat()) << "\n";
    return 0;
}

struct SweepArgs {
    std::size_t steps = 101;
    double a_min = 0.0;
    double a_max = 1.0;
    std::string out;
    std::string svg;
};

int do_sweep(const SweepArgs& args) {
    const auto rows =
        wrot::sweep(wrot::SweepConfig{args.a_min, args.a_max, args.steps});
    if (args.out.empty() || args.out == "-")
        wrot::emit_csv(rows, std::cout);
    else
        wrot::emit_csv(rows, args.out);
    if (!args.svg.empty()) wrot::emit_svg(rows, args.svg);
    return 0;
}

int do_adversary(double a, bool json) {
    const wrot::Record records[3] = {
        wrot::to_record(a, wrot::max_alice_advantage(a), true),
        wrot::to_record(a, wrot::min_alice_advantage(a), false),
        wrot::to_record(a, wrot::optimal_bob(a))};
    for (const auto& r : records)
        std::cout << (json ? r.json() : r.flat()) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "weak all-or-nothing oblivious transfer over two non-orthogonal "
        "qubit states: simulation, cheating analysis, trade-off curves"};
    app.require_subcommand(1);

    VerifyArgs verify_args;
    auto* verify_cmd =
        app.add_subcommand("verify", "run the full invariant suite");
    verify_cmd->add_option("--a-grid", verify_args.a_grid,
                           "number of overlap grid points")
        ->default_val(99)
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--trials", verify_args.trials,
                           "Monte Carlo trials per grid point")
        ->default_val(1000000)
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", verify_args.seed, "master seed")
        ->default_val(0);
    verify_cmd->add_option("--threads", verify_args.threads,
                           "Monte Carlo worker threads")
        ->default_val(1)
        ->check(CLI::PositiveNumber);

    RunArgs run_args;
    auto* run_cmd =
        app.add_subcommand("run", "simulate rounds and print a stats record");
    run_cmd->add_option("--a", run_args.a, "signal-state overlap, in (0,1)")
        ->required();
    run_cmd->add_option("--trials", run_args.trials, "number of rounds")
        ->default_val(100000)
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", run_args.seed, "master seed")
        ->default_val(0);
    run_cmd->add_option("--alice", run_args.alice,
                        "honest | pure:d1,d2 | max | min")
        ->default_val("honest");
    run_cmd->add_option("--bob", run_args.bob,
                        "honest | guess:theta | optimal")
        ->default_val("honest");
    run_cmd->add_option("--bits", run_args.bits,
                        "message bit source: random | 0 | 1")
        ->default_val("random");
    run_cmd->add_option("--threads", run_args.threads, "worker threads")
        ->default_val(1)
        ->check(CLI::PositiveNumber);
    run_cmd->add_flag("--json", run_args.json, "emit strict JSON");

    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "tabulate the advantage curves over the overlap range");
    sweep_cmd->add_option("--steps", sweep_args.steps, "grid points")
        ->default_val(101);
    sweep_cmd->add_option("--a-min", sweep_args.a_min, "range start")
        ->default_val(0.0);
    sweep_cmd->add_option("--a-max", sweep_args.a_max, "range end")
        ->default_val(1.0);
    sweep_cmd->add_option("--out", sweep_args.out,
                          "CSV destination (default: stdout)");
    sweep_cmd->add_option("--svg", sweep_args.svg, "also plot to this SVG");

    double adversary_a = 0.5;
    bool adversary_json = false;
    auto* adversary_cmd = app.add_subcommand(
        "adversary", "print the closed-form optimal attacks for one overlap");
    adversary_cmd->add_option("--a", adversary_a, "signal-state overlap")
        ->required();
    adversary_cmd->add_flag("--json", adversary_json, "emit strict JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify_cmd->parsed()) return do_verify(verify_args);
        if (run_cmd->parsed()) return do_run(run_args);
        if (sweep_cmd->parsed()) return do_sweep(sweep_args);
        if (adversary_cmd->parsed())
            return do_adversary(adversary_a, adversary_json);
    } catch (const wrot::OutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const wrot::OutOfBall& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
