#pragma once

// Measurement campaigns behind `verify` and the acceptance suite. Each
// report gathers worst-case residuals over a grid; callers apply their
// tolerances, so the same campaign serves both the CLI gate and tests.

#include <algorithm>
#include <numbers>
#include <vector>

#include "sweep.hpp"

namespace wrot {
namespace verify {

/// a = i/(n+1), i = 1..n; n = 99 gives {0.01, ..., 0.99}.
inline std::vector<double> overlap_grid(int n) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        grid.push_back(static_cast<double>(i) / (n + 1));
    return grid;
}

struct PovmGridReport {
    double max_completeness_residual = 0.0;  // |E1+E2+E3 - I| entrywise
    double min_eigenvalue = 1.0;             // over all elements
    double max_unambiguity = 0.0;            // <psi0|E1|psi0>, <psi1|E2|psi1>
    double max_bot_deviation = 0.0;          // |<psi_x|E3|psi_x> - a|
    double max_det_e3 = 0.0;                 // |det E3|
    double max_overlap_error = 0.0;          // |<psi0|psi1> - a|
    double max_lambda_max_error = 0.0;       // |lambda_max(E3) - 2a/(1+a)|
};

inline PovmGridReport povm_grid_report(const std::vector<double>& grid) {
    PovmGridReport r;
    for (const double a : grid) {
        const ProtocolParams params = make_params(a);
        const SignalStates st = build_signal_states(params);
        const Povm povm = build_povm(params);

        const HermitianOp sum = povm.e1 + povm.e2 + povm.e3;
        r.max_completeness_residual =
            std::max(r.max_completeness_residual,
                     max_entry_delta(sum, HermitianOp::identity()));
        for (const HermitianOp* e : {&povm.e1, &povm.e2, &povm.e3})
            r.min_eigenvalue = std::min(r.min_eigenvalue, min_eigenvalue(*e));
        r.max_unambiguity = std::max({r.max_unambiguity,
                                      expectation(povm.e1, st.psi0),
                                      expectation(povm.e2, st.psi1)});
        r.max_bot_deviation =
            std::max({r.max_bot_deviation,
                      std::abs(expectation(povm.e3, st.psi0) - a),
                      std::abs(expectation(povm.e3, st.psi1) - a)});
        r.max_det_e3 = std::max(r.max_det_e3, std::abs(povm.e3.det()));
        r.max_overlap_error =
            std::max(r.max_overlap_error,
                     std::abs(inner(st.psi0, st.psi1).real() - a));
        r.max_lambda_max_error =
            std::max(r.max_lambda_max_error,
                     std::abs(max_eigenvalue(povm.e3) - 2.0 * a / (1.0 + a)));
    }
    return r;
}

struct Eq2Report {
    double max_delta = 0.0;  // |analytic - numeric|
    double min_v = 0.0;      // extremes seen, for the range invariant
    double max_excess_high = 0.0;  // v - a(1-a)/(1+a), worst case
    double max_excess_low = 0.0;   // -a - v, worst case
    std::size_t points = 0;
};

/// Dense grid over (a, d1, d2) with d1^2 + d2^2 <= 1; the closed form and
/// the operator route must agree everywhere, and v must respect both
/// closed-form bounds.
inline Eq2Report eq2_grid_report(int n_a, int n_d) {
    Eq2Report r;
    for (int k = 1; k <= n_a; ++k) {
        const double a = static_cast<double>(k) / (n_a + 1);
        const Povm povm = build_povm(make_params(a));
        const double v_hi = a * (1.0 - a) / (1.0 + a);
        for (int i = 0; i < n_d; ++i) {
            const double d1 = -1.0 + 2.0 * i / (n_d - 1);
            for (int j = 0; j < n_d; ++j) {
                const double d2 = -1.0 + 2.0 * j / (n_d - 1);
                if (d1 * d1 + d2 * d2 > 1.0) continue;
                const PureCheatState d{d1, d2};
                const double analytic = alice_advantage_analytic(a, d);
                const double numeric =
                    expectation(povm.e3, cheat_state(d)) - a;
                r.max_delta =
                    std::max(r.max_delta, std::abs(analytic - numeric));
                r.min_v = std::min(r.min_v, analytic);
                r.max_excess_high =
                    std::max(r.max_excess_high, analytic - v_hi);
                r.max_excess_low = std::max(r.max_excess_low, -a - analytic);
                ++r.points;
            }
        }
    }
    return r;
}

struct AliceExtremesReport {
    double max_v_error = 0.0;       // |search v - a(1-a)/(1+a)|
    double max_d1_error = 0.0;      // |search d1 - sqrt((1-a)/2)|
    double max_lambda_min = 0.0;    // |lambda_min(E3)|
    double max_kernel_v_error = 0.0;  // |v(kernel state) + a|, both routes
};

/// Grid-plus-refine search against the closed-form maximizer, and the
/// eigendecomposition route for the minimizer, on every grid point.
inline AliceExtremesReport alice_extremes_report(
    const std::vector<double>& grid, double coarse_step = 1e-3,
    double refine_tol = 1e-6) {
    AliceExtremesReport r;
    for (const double a : grid) {
        const auto closed = max_alice_advantage(a);
        const auto searched =
            search_max_alice_advantage(a, coarse_step, refine_tol);
        r.max_v_error =
            std::max(r.max_v_error, std::abs(searched.v - closed.v));
        r.max_d1_error = std::max(
            r.max_d1_error, std::abs(searched.state.d1 - closed.state.d1));

        const Povm povm = build_povm(make_params(a));
        const auto eig = eigs2(povm.e3);
        r.max_lambda_min =
            std::max(r.max_lambda_min, std::abs(eig[0].value));

        // the kernel eigenvector must reproduce v = -a through E3 itself
        const double kernel_v = expectation(povm.e3, eig[0].vector) - a;
        const auto reported = min_alice_advantage(a);
        r.max_kernel_v_error = std::max(
            {r.max_kernel_v_error, std::abs(kernel_v + a),
             std::abs(alice_advantage_analytic(a, reported.state) + a),
             std::abs(alice_advantage_numeric(a, reported.state) + a)});
    }
    return r;
}

struct BobOptimumReport {
    double max_theta_error = 0.0;      // scan argmax vs pi/4 - alpha/2
    double max_q_closed_error = 0.0;   // q vs (1+sqrt(1-a^2))/2
    double max_q_helstrom_error = 0.0; // q vs Helstrom bound
    double max_scan_excess = 0.0;      // scanned q above Helstrom
    double max_beta_error = 0.0;       // asymmetric-oracle argmax vs alpha/2 - pi/4
};

inline BobOptimumReport bob_optimum_report(const std::vector<double>& grid,
                                           double scan_step = 1e-4,
                                           bool asymmetric_oracle = false) {
    BobOptimumReport r;
    for (const double a : grid) {
        const ProtocolParams params = make_params(a);
        const BobAttackReport opt = optimal_bob(a);
        const double q_closed = 0.5 * (1.0 + std::sqrt(1.0 - a * a));

        const ThetaScan scan = scan_bob_theta(a, scan_step);
        r.max_theta_error =
            std::max(r.max_theta_error, std::abs(scan.theta - opt.theta));
        r.max_q_closed_error =
            std::max(r.max_q_closed_error, std::abs(opt.q - q_closed));
        r.max_q_helstrom_error = std::max(
            r.max_q_helstrom_error, std::abs(opt.q - helstrom_bound(a)));
        r.max_scan_excess =
            std::max(r.max_scan_excess, scan.q - helstrom_bound(a));

        if (asymmetric_oracle) {
            const BasisScan basis = scan_bob_basis(a, scan_step);
            r.max_beta_error = std::max(
                r.max_beta_error,
                std::abs(basis.beta - (params.alpha / 2 -
                                       std::numbers::pi / 4)));
            r.max_scan_excess =
                std::max(r.max_scan_excess, basis.q - helstrom_bound(a));
        }
    }
    return r;
}

struct LandmarkReport {
    double a_at_v_peak = 0.0;
    double v_peak = 0.0;
    double a_at_u_peak = 0.0;
    double u_peak = 0.0;
};

/// Scan of the closed forms over a; the peaks sit at sqrt(2)-1 (value
/// 3-2*sqrt(2)) and 1/sqrt(2) (value (sqrt(2)-1)/2).
inline LandmarkReport landmark_scan(double step = 1e-4) {
    LandmarkReport r;
    const long n = std::lround(1.0 / step);
    for (long i = 1; i < n; ++i) {
        const double a = static_cast<double>(i) * step;
        const SweepRow row = sweep_row(a);
        if (row.v_max > r.v_peak) {
            r.v_peak = row.v_max;
            r.a_at_v_peak = a;
        }
        if (row.u > r.u_peak) {
            r.u_peak = row.u;
            r.a_at_u_peak = a;
        }
    }
    return r;
}

struct EntanglementReport {
    double max_delta = 0.0;       // joint route vs reduced route
    double min_bot = 1.0;         // lowest inconclusive probability seen
    double max_bot_excess = 0.0;  // above the pure-state ceiling
    int states = 0;
};

inline EntanglementReport entanglement_report(
    int n_states, std::uint64_t seed, const std::vector<double>& a_values) {
    EntanglementReport r;
    SplitMix64 rng = derive_stream(seed, 0x7e57);
    for (int i = 0; i < n_states; ++i) {
        const JointState joint = random_joint_state(rng);
        for (const double a : a_values) {
            const MarginalCheck check =
                entangled_alice_no_advantage(make_params(a), joint);
            r.max_delta = std::max(r.max_delta, check.max_delta);
            r.min_bot = std::min(r.min_bot, check.bot_probability);
            r.max_bot_excess = std::max(
                r.max_bot_excess, check.bot_probability - check.bot_upper);
        }
        ++r.states;
    }
    return r;
}

struct HonestMcReport {
    double max_sigmas = 0.0;        // worst |observed - a| / stderr
    double max_analytic_dev = 0.0;  // analytic bot rate vs a
    std::uint64_t wrong_bits = 0;   // decoded bits unequal to the sent bit
};

/// Monte Carlo column of the suite: empirical inconclusive rates within
/// four standard errors, and not one incorrectly decoded bit anywhere.
inline HonestMcReport honest_mc_report(const std::vector<double>& a_values,
                                       std::uint64_t trials,
                                       std::uint64_t seed,
                                       unsigned threads = 1) {
    HonestMcReport r;
    SplitMix64 seeder(seed);
    for (const double a : a_values) {
        const ProtocolParams params = make_params(a);
        const SignalStates st = build_signal_states(params);
        const Povm povm = build_povm(params);
        r.max_analytic_dev =
            std::max({r.max_analytic_dev,
                      std::abs(expectation(povm.e3, st.psi0) - a),
                      std::abs(expectation(povm.e3, st.psi1) - a)});

        McOptions opt;
        opt.trials = trials;
        opt.seed = seeder();
        opt.threads = threads;

        opt.bits = BitSource::Random;
        const RunStats random_bits = run_monte_carlo(params, opt);
        const double sigma =
            std::sqrt(a * (1.0 - a) / static_cast<double>(trials));
        r.max_sigmas =
            std::max(r.max_sigmas,
                     std::abs(random_bits.empirical_bot_rate - a) / sigma);
        // every conclusive outcome must match the sent bit
        r.wrong_bits +=
            random_bits.count0 + random_bits.count1 - random_bits.correct;

        opt.bits = BitSource::Fixed1;
        opt.seed = seeder();
        const RunStats fixed1 = run_monte_carlo(params, opt);
        r.wrong_bits += fixed1.count0;
        opt.bits = BitSource::Fixed0;
        opt.seed = seeder();
        const RunStats fixed0 = run_monte_carlo(params, opt);
        r.wrong_bits += fixed0.count1;
    }
    return r;
}

struct AlgebraReport {
    double max_reconstruction_dev = 0.0;  // sum(lambda_i |v_i><v_i|) vs op
    double max_orthonormality_dev = 0.0;  // eigenpair inner products
    double max_residual = 0.0;            // |op v - lambda v| entrywise
    double expectation_low = 0.0;         // <psi|E|psi> below 0, PSD E <= I
    double expectation_high = 1.0;        // ... above 1
    double max_purity_dev = 0.0;          // product-state marginals
    bool sampler_reproducible = true;
};

/// Randomized spot checks of the algebra layer: eigendecomposition
/// faithfulness, Born-rule bounds for PSD operators below identity,
/// purity of product-state marginals, and sampler determinism.
inline AlgebraReport algebra_report(int samples, std::uint64_t seed) {
    AlgebraReport r;
    SplitMix64 rng = derive_stream(seed, 0xa19e);

    const auto random_state = [&](SplitMix64& g) {
        cdouble a0{gaussian(g), gaussian(g)};
        cdouble a1{gaussian(g), gaussian(g)};
        const double n = std::sqrt(std::norm(a0) + std::norm(a1));
        return make_state(a0 / n, a1 / n);
    };

    for (int i = 0; i < samples; ++i) {
        const HermitianOp op{4.0 * uniform_double(rng) - 2.0,
                             4.0 * uniform_double(rng) - 2.0,
                             {2.0 * uniform_double(rng) - 1.0,
                              2.0 * uniform_double(rng) - 1.0}};
        const auto eig = eigs2(op);
        const HermitianOp rebuilt =
            eig[0].value * HermitianOp::outer(eig[0].vector) +
            eig[1].value * HermitianOp::outer(eig[1].vector);
        r.max_reconstruction_dev = std::max(r.max_reconstruction_dev,
                                            max_entry_delta(rebuilt, op));
        r.max_orthonormality_dev = std::max(
            {r.max_orthonormality_dev,
             std::abs(inner(eig[0].vector, eig[1].vector)),
             std::abs(std::abs(inner(eig[0].vector, eig[0].vector)) - 1.0),
             std::abs(std::abs(inner(eig[1].vector, eig[1].vector)) - 1.0)});
        for (const auto& [value, vec] : eig) {
            const cdouble r0 =
                op.m00 * vec.amp0 + op.m01 * vec.amp1 - value * vec.amp0;
            const cdouble r1 = std::conj(op.m01) * vec.amp0 +
                               op.m11 * vec.amp1 - value * vec.amp1;
            r.max_residual =
                std::max({r.max_residual, std::abs(r0), std::abs(r1)});
        }

        // a PSD operator no larger than identity, in a random eigenbasis
        const double mu0 = uniform_double(rng);
        const double mu1 = uniform_double(rng);
        const HermitianOp bounded =
            mu0 * HermitianOp::outer(eig[0].vector) +
            mu1 * HermitianOp::outer(eig[1].vector);
        const double e = expectation(bounded, random_state(rng));
        r.expectation_low = std::min(r.expectation_low, e);
        r.expectation_high = std::max(r.expectation_high, e);

        const DensityMatrix marginal = reduce_to_bob(
            product_state(random_state(rng), random_state(rng)));
        r.max_purity_dev =
            std::max(r.max_purity_dev, std::abs(marginal.purity() - 1.0));
    }

    const double weights[3] = {0.2, 0.3, 0.5};
    for (int rep = 0; rep < 4; ++rep) {
        SplitMix64 s1 = derive_stream(seed, 11);
        SplitMix64 s2 = derive_stream(seed, 11);
        for (int i = 0; i < 64; ++i)
            if (sample_outcome(std::span<const double>(weights, 3), s1) !=
                sample_outcome(std::span<const double>(weights, 3), s2))
                r.sampler_reproducible = false;
    }
    return r;
}

struct SweepInvariantReport {
    double max_closed_form_dev = 0.0;  // row fields vs closed forms of row.a
    bool v_less_than_a = true;         // v_max < a at interior points
    bool nonnegative = true;           // u, v_max >= 0 everywhere
    double endpoint_residual = 0.0;    // u, v_max at the interval ends
    bool v_monotone_below_peak = true; // strictly rising up to sqrt(2)-1
    bool u_monotone_below_peak = true; // strictly rising up to 1/sqrt(2)
};

inline SweepInvariantReport sweep_invariant_report(
    const std::vector<SweepRow>& rows) {
    SweepInvariantReport r;
    const double v_peak_a = std::numbers::sqrt2 - 1.0;
    const double u_peak_a = 1.0 / std::numbers::sqrt2;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& row = rows[i];
        const SweepRow expect = sweep_row(row.a);
        r.max_closed_form_dev = std::max(
            {r.max_closed_form_dev, std::abs(row.p - expect.p),
             std::abs(row.v_max - expect.v_max),
             std::abs(row.v_min - expect.v_min), std::abs(row.q - expect.q),
             std::abs(row.u - expect.u)});
        if (row.a > 0.0 && row.a < 1.0 && row.v_max >= row.a)
            r.v_less_than_a = false;
        if (row.u < 0.0 || row.v_max < 0.0) r.nonnegative = false;
        if (row.a == 0.0 || row.a == 1.0)
            r.endpoint_residual = std::max(
                {r.endpoint_residual, std::abs(row.u), std::abs(row.v_max)});
        if (i > 0) {
            const SweepRow& prev = rows[i - 1];
            if (prev.a > 0.0 && row.a <= v_peak_a &&
                row.v_max <= prev.v_max)
                r.v_monotone_below_peak = false;
            if (prev.a > 0.0 && row.a <= u_peak_a && row.u <= prev.u)
                r.u_monotone_below_peak = false;
        }
    }
    return r;
}

}  // namespace verify
}  // namespace wrot
