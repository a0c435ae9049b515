#pragma once

// Both cheating models.
//
// A cheating sender prepares an arbitrary pure qubit instead of a signal
// state and thereby shifts the receiver's inconclusive probability by a
// signed advantage v; the closed-form extremes and the entanglement
// no-gain check live here. A cheating receiver never outputs the
// inconclusive symbol and instead projects onto an optimized orthogonal
// basis, guessing the bit with success rate q.

#include <cmath>
#include <numbers>
#include <optional>
#include <utility>

#include "protocol.hpp"

namespace wrot {

struct OutOfBall : std::domain_error {
    using std::domain_error::domain_error;
};

/// Sender's general pure preparation sqrt(1-d1^2-d2^2)|0> + (d1+i d2)|1>.
struct PureCheatState {
    double d1 = 0.0;
    double d2 = 0.0;
};

inline StateVector cheat_state(const PureCheatState& d) {
    const double ball = d.d1 * d.d1 + d.d2 * d.d2;
    if (ball > 1.0 + 1e-12)
        throw OutOfBall("d1^2 + d2^2 = " + format_double(ball) +
                        " exceeds 1");
    const double c = std::sqrt(std::max(0.0, 1.0 - ball));
    return StateVector{{c, 0.0}, {d.d1, d.d2}};
}

/// Closed form for the inconclusive-probability shift,
/// v = 2a(-a d1^2 - a d2^2 + d1 sqrt((1-a^2)(1-d1^2-d2^2))) / (1+a).
inline double alice_advantage_analytic(double a, const PureCheatState& d) {
    const double ball = d.d1 * d.d1 + d.d2 * d.d2;
    const double root =
        std::sqrt((1.0 - a * a) * std::max(0.0, 1.0 - ball));
    return 2.0 * a * (-a * ball + d.d1 * root) / (1.0 + a);
}

/// The same quantity straight from the measurement operator:
/// <psi|E3|psi> - a. Agreement with the closed form is the machine check
/// that the closed form is right.
inline double alice_advantage_numeric(double a, const PureCheatState& d) {
    const ProtocolParams params = make_params(a);
    return expectation(build_povm(params).e3, cheat_state(d)) - a;
}

/// v plus the sender's view of the inconclusive probability p' = a + v.
struct AliceAttackReport {
    double v = 0.0;
    double p_bot_observed = 0.0;
    PureCheatState state;
};

/// Best possible raise of the inconclusive probability:
/// v = a(1-a)/(1+a), reached at d1 = sqrt((1-a)/2), d2 = 0.
inline AliceAttackReport max_alice_advantage(double a) {
    make_params(a);
    const double v = a * (1.0 - a) / (1.0 + a);
    return AliceAttackReport{v, a + v, {std::sqrt((1.0 - a) / 2.0), 0.0}};
}

/// Best possible suppression: v = -a, reached on the kernel of E3 at
/// d1 = -sqrt((1+a)/2), d2 = 0 (the sign picks the kernel branch; the
/// positive branch is the maximizer's side).
inline AliceAttackReport min_alice_advantage(double a) {
    make_params(a);
    return AliceAttackReport{-a, 0.0, {-std::sqrt((1.0 + a) / 2.0), 0.0}};
}

namespace detail {
/// Golden-section maximization of a unimodal-enough f on [lo, hi].
template <class F>
double golden_max(F f, double lo, double hi, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = f(x1);
        }
    }
    return 0.5 * (lo + hi);
}
}  // namespace detail

struct AliceSearchResult {
    double v = 0.0;
    PureCheatState state;
};

/// Brute-force maximization of v over the whole preparation disk: a coarse
/// grid (ties broken toward the lexicographically larger (v, d1, d2)),
/// then golden-section refinement of each coordinate. The closed form in
/// max_alice_advantage is required to match this within 1e-6.
inline AliceSearchResult search_max_alice_advantage(double a,
                                                    double coarse_step = 1e-3,
                                                    double refine_tol = 1e-6) {
    make_params(a);
    const auto value = [a](double d1, double d2) {
        return alice_advantage_analytic(a, {d1, d2});
    };

    const long n = std::lround(1.0 / coarse_step);
    double best_v = -2.0, best_d1 = 0.0, best_d2 = 0.0;
    for (long i = -n; i <= n; ++i) {
        const double d1 = static_cast<double>(i) * coarse_step;
        for (long j = -n; j <= n; ++j) {
            const double d2 = static_cast<double>(j) * coarse_step;
            if (d1 * d1 + d2 * d2 > 1.0) continue;
            const double v = value(d1, d2);
            if (v > best_v || (v == best_v && (d1 > best_d1 ||
                               (d1 == best_d1 && d2 > best_d2)))) {
                best_v = v;
                best_d1 = d1;
                best_d2 = d2;
            }
        }
    }

    const auto clamp_ball = [](double x) {
        return std::min(1.0, std::max(-1.0, x));
    };
    best_d1 = detail::golden_max(
        [&](double d1) { return value(d1, best_d2); },
        clamp_ball(best_d1 - coarse_step), clamp_ball(best_d1 + coarse_step),
        refine_tol);
    best_d2 = detail::golden_max(
        [&](double d2) { return value(best_d1, d2); },
        clamp_ball(best_d2 - coarse_step), clamp_ball(best_d2 + coarse_step),
        refine_tol);
    return AliceSearchResult{value(best_d1, best_d2), {best_d1, best_d2}};
}

/// Receiver-side marginal of a joint preparation computed two ways: by
/// contracting I (x) E_i against the joint state, and through the reduced
/// density matrix. The two must agree, and the inconclusive probability
/// must stay inside the pure-state range [0, 2a/(1+a)] -- entanglement
/// buys the sender nothing.
struct MarginalCheck {
    std::array<double, 3> direct{};   // order (1, 0, bot)
    std::array<double, 3> reduced{};
    double max_delta = 0.0;
    double bot_probability = 0.0;
    double bot_upper = 0.0;  // 2a/(1+a) = lambda_max(E3)
    bool consistent = false;
    bool bot_in_range = false;
};

inline MarginalCheck entangled_alice_no_advantage(const ProtocolParams& params,
                                                  const JointState& joint) {
    const Povm povm = build_povm(params);
    const HermitianOp* elems[3] = {&povm.e1, &povm.e2, &povm.e3};
    const DensityMatrix rho = reduce_to_bob(joint);

    MarginalCheck check;
    for (int i = 0; i < 3; ++i) {
        // I (x) E is block diagonal over the sender's basis.
        check.direct[i] =
            quad_form(*elems[i], joint.amps[0], joint.amps[1]) +
            quad_form(*elems[i], joint.amps[2], joint.amps[3]);
        check.reduced[i] = expectation(*elems[i], rho);
        check.max_delta = std::max(
            check.max_delta, std::abs(check.direct[i] - check.reduced[i]));
    }
    check.bot_probability = check.direct[2];
    check.bot_upper = 2.0 * params.a / (1.0 + params.a);
    check.consistent = check.max_delta <= 1e-10;
    check.bot_in_range = check.bot_probability >= -1e-10 &&
                         check.bot_probability <= check.bot_upper + 1e-10;
    return check;
}

/// Haar-agnostic random joint state: four standard-Gaussian complex
/// amplitudes, normalized.
template <class Rng>
JointState random_joint_state(Rng& rng) {
    std::array<cdouble, 4> amps;
    double n2 = 0.0;
    for (auto& z : amps) {
        z = cdouble{gaussian(rng), gaussian(rng)};
        n2 += std::norm(z);
    }
    const double n = std::sqrt(n2);
    for (auto& z : amps) z /= n;
    return make_joint(amps);
}

/// Receiver's guessing measurement: an orthogonal basis in the real plane
/// of the signal states, phi0 rotated theta away from psi0 on the side
/// opposite psi1 (so both signal angles shrink together).
struct BobGuessStrategy {
    double theta = 0.0;
    StateVector phi0;
    StateVector phi1;
};

inline BobGuessStrategy bob_guess_basis(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 4 + 1e-12))
        throw OutOfRange("guess angle must lie in [0, pi/4], got " +
                         format_double(theta));
    const double beta = -theta;
    return BobGuessStrategy{
        theta,
        make_state({std::cos(beta), 0.0}, {std::sin(beta), 0.0}),
        make_state({-std::sin(beta), 0.0}, {std::cos(beta), 0.0})};
}

/// Success rate of guessing a uniform bit with the given basis:
/// (|<phi0|psi0>|^2 + |<phi1|psi1>|^2) / 2. Equals cos^2(theta) for the
/// symmetric strategy.
inline double bob_success_rate(const SignalStates& states,
                               const BobGuessStrategy& strategy) {
    return 0.5 * (std::norm(inner(strategy.phi0, states.psi0)) +
                  std::norm(inner(strategy.phi1, states.psi1)));
}

inline double bob_success_rate(const ProtocolParams& params,
                               const BobGuessStrategy& strategy) {
    return bob_success_rate(build_signal_states(params), strategy);
}

/// Maximum success probability for distinguishing two equiprobable pure
/// states with the given overlap; no measurement whatsoever beats this.
inline double helstrom_bound(double overlap) {
    return 0.5 * (1.0 + std::sqrt(1.0 - overlap * overlap));
}

/// q, the advantage u over the honest baseline p + (1-p)/2, and the
/// optimal angle theta = pi/4 - alpha/2.
struct BobAttackReport {
    double q = 0.0;
    double u = 0.0;
    double baseline = 0.0;
    double theta = 0.0;
};

inline BobAttackReport optimal_bob(double a) {
    const ProtocolParams params = make_params(a);
    const double theta = std::numbers::pi / 4 - params.alpha / 2;
    const double c = std::cos(theta);
    const double q = c * c;  // = (1 + sqrt(1-a^2))/2
    const double baseline = params.p + (1.0 - params.p) / 2.0;
    return BobAttackReport{q, q - baseline, baseline, theta};
}

struct ThetaScan {
    double theta = 0.0;
    double q = 0.0;
};

/// Brute-force scan of the symmetric family over theta in [0, pi/4].
inline ThetaScan scan_bob_theta(double a, double step = 1e-4) {
    const SignalStates states = build_signal_states(make_params(a));
    const long n = std::lround(std::numbers::pi / 4 / step);
    ThetaScan best{0.0, -1.0};
    for (long i = 0; i <= n; ++i) {
        const double theta =
            std::min(std::numbers::pi / 4, static_cast<double>(i) * step);
        const double q = bob_success_rate(states, bob_guess_basis(theta));
        if (q > best.q) best = ThetaScan{theta, q};
    }
    return best;
}

struct BasisScan {
    double beta = 0.0;  // angle of phi0 against |0>
    double q = 0.0;
};

/// Exhaustive oracle over every real projective basis (phi0 at angle beta,
/// phi1 at beta + pi/2), one period of the family. Confirms the symmetric
/// optimum without assuming it.
inline BasisScan scan_bob_basis(double a, double step = 1e-4) {
    const SignalStates states = build_signal_states(make_params(a));
    const long n = std::lround(std::numbers::pi / 2 / step);
    BasisScan best{0.0, -1.0};
    for (long i = -n; i <= n; ++i) {
        const double beta = static_cast<double>(i) * step;
        const StateVector phi0 =
            make_state({std::cos(beta), 0.0}, {std::sin(beta), 0.0});
        const StateVector phi1 =
            make_state({-std::sin(beta), 0.0}, {std::cos(beta), 0.0});
        const double q = 0.5 * (std::norm(inner(phi0, states.psi0)) +
                                std::norm(inner(phi1, states.psi1)));
        if (q > best.q) best = BasisScan{beta, q};
    }
    return best;
}

/// Monte Carlo with a cheating sender: the fixed preparation goes out
/// every trial, the honest receiver measures the POVM. There is no
/// message bit, so no correctness rate.
inline RunStats run_cheating_alice(const ProtocolParams& params,
                                   const PureCheatState& d,
                                   const McOptions& opt) {
    const StateVector prepared = cheat_state(d);
    const Povm povm = build_povm(params);
    return detail::run_trials(
        params.a, opt,
        [&](SplitMix64&) {
            return std::pair<std::optional<int>, StateVector>(std::nullopt,
                                                              prepared);
        },
        [&](const StateVector& state, SplitMix64& rng) {
            return detail::sample_povm_outcome(bob_distribution(povm, state),
                                               rng);
        });
}

/// Monte Carlo with a guessing receiver: honest sender, projective
/// receiver that never outputs the inconclusive symbol.
inline RunStats run_guessing_bob(const ProtocolParams& params,
                                 const BobGuessStrategy& strategy,
                                 const McOptions& opt) {
    const SignalStates states = build_signal_states(params);
    auto stats = detail::run_trials(
        params.a, opt,
        [&](SplitMix64& rng) {
            const int x = detail::draw_bit(opt.bits, rng);
            return std::pair<std::optional<int>, StateVector>(
                x, x ? states.psi1 : states.psi0);
        },
        [&](const StateVector& state, SplitMix64& rng) {
            const double weights[2] = {std::norm(inner(strategy.phi1, state)),
                                       std::norm(inner(strategy.phi0, state))};
            return sample_outcome(std::span<const double>(weights, 2), rng) ==
                           0
                       ? BobOutput::Bit1
                       : BobOutput::Bit0;
        });
    stats.empirical_correct_rate =
        static_cast<double>(stats.correct) / static_cast<double>(stats.trials);
    return stats;
}

/// External record format shared with RunStats: keys in the fixed order
/// a, kind, v|u, q, d1, d2, theta (only the fields the kind carries).
inline Record to_record(double a, const AliceAttackReport& report,
                        bool maximizer) {
    return Record{}
        .add("a", a)
        .add("kind", maximizer ? std::string("alice_max")
                               : std::string("alice_min"))
        .add("v", report.v)
        .add("d1", report.state.d1)
        .add("d2", report.state.d2);
}

inline Record to_record(double a, const BobAttackReport& report) {
    return Record{}
        .add("a", a)
        .add("kind", std::string("bob_opt"))
        .add("u", report.u)
        .add("q", report.q)
        .add("theta", report.theta);
}

}  // namespace wrot
