#pragma once

// The honest protocol. The sender encodes a bit into one of two
// non-orthogonal qubit states with overlap a; the receiver applies the
// unambiguous-discrimination POVM and either decodes the bit (never
// incorrectly) or outputs the inconclusive symbol. Honest decode
// probability is p = 1 - a.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qubit.hpp"
#include "record.hpp"
#include "rng.hpp"

namespace wrot {

struct OutOfRange : std::domain_error {
    using std::domain_error::domain_error;
};

/// The public protocol parameter a = cos(alpha) and its derived values.
struct ProtocolParams {
    double a;      // overlap <psi0|psi1>, strictly inside (0, 1)
    double alpha;  // angle between the signal states, radians
    double p;      // honest decode probability, 1 - a
};

/// Rejects a outside the open interval: a = 0 means orthogonal
/// (perfectly distinguishable) states, a = 1 identical ones. Closed-form
/// endpoint limits are handled by the sweep, never by the protocol.
inline ProtocolParams make_params(double a) {
    if (!(a > 0.0) || !(a < 1.0))
        throw OutOfRange("overlap a must lie strictly inside (0,1), got " +
                         format_double(a));
    return ProtocolParams{a, std::acos(a), 1.0 - a};
}

/// psi0 = |0>, psi1 = a|0> + sqrt(1-a^2)|1>; real non-negative amplitudes.
struct SignalStates {
    StateVector psi0;
    StateVector psi1;
};

inline SignalStates build_signal_states(const ProtocolParams& params) {
    const double s = std::sqrt(1.0 - params.a * params.a);
    return SignalStates{make_state({1.0, 0.0}, {0.0, 0.0}),
                        make_state({params.a, 0.0}, {s, 0.0})};
}

/// The three-outcome measurement. e1 fires only on psi1, e2 only on psi0,
/// e3 is the inconclusive remainder I - e1 - e2 (singular by construction).
struct Povm {
    HermitianOp e1;
    HermitianOp e2;
    HermitianOp e3;
};

inline Povm build_povm(const ProtocolParams& params) {
    const double a = params.a;
    const double s = std::sqrt(1.0 - a * a);
    const double k = 1.0 / (1.0 + a);
    const HermitianOp e1{0.0, k, {0.0, 0.0}};
    // (s|0> - a|1>)(s<0| - a<1|) / (1+a)
    const HermitianOp e2{k * s * s, k * a * a, {-k * s * a, 0.0}};
    const HermitianOp e3 = HermitianOp::identity() - e1 - e2;
    return Povm{e1, e2, e3};
}

/// Receiver output: a decoded bit, or the inconclusive symbol.
enum class BobOutput { Bit0, Bit1, Bot };

inline bool is_bit(BobOutput o) { return o != BobOutput::Bot; }

/// Outcome probabilities in the fixed transcript order (1, 0, bot),
/// clamped into [0,1] to absorb dust from the singular element.
struct OutcomeDistribution {
    double p_sym1;
    double p_sym0;
    double p_bot;
};

inline OutcomeDistribution bob_distribution(const Povm& povm,
                                            const StateVector& state) {
    const auto clamp01 = [](double x) {
        return std::min(1.0, std::max(0.0, x));
    };
    return OutcomeDistribution{clamp01(expectation(povm.e1, state)),
                               clamp01(expectation(povm.e2, state)),
                               clamp01(expectation(povm.e3, state))};
}

namespace detail {
template <class Rng>
BobOutput sample_povm_outcome(const OutcomeDistribution& dist, Rng& rng) {
    const double weights[3] = {dist.p_sym1, dist.p_sym0, dist.p_bot};
    switch (sample_outcome(std::span<const double>(weights, 3), rng)) {
        case 0: return BobOutput::Bit1;
        case 1: return BobOutput::Bit0;
        default: return BobOutput::Bot;
    }
}
}  // namespace detail

/// One honest round: sender transmits psi_x, receiver measures the POVM.
template <class Rng>
BobOutput honest_round(int x, const ProtocolParams& params, const Povm& povm,
                       Rng& rng) {
    const SignalStates states = build_signal_states(params);
    const StateVector& sent = x ? states.psi1 : states.psi0;
    return detail::sample_povm_outcome(bob_distribution(povm, sent), rng);
}

enum class BitSource { Random, Fixed0, Fixed1 };

struct McOptions {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    BitSource bits = BitSource::Random;
    unsigned threads = 1;
    bool record_bits = false;  // keep the per-trial sent bits
};

struct RunStats {
    double a = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t count0 = 0;
    std::uint64_t count1 = 0;
    std::uint64_t count_bot = 0;
    std::uint64_t correct = 0;  // bit outputs equal to the sent bit
    double empirical_bot_rate = 0.0;
    double stderr_bot = 0.0;
    std::optional<double> empirical_correct_rate;  // absent without a sent bit
    std::optional<std::vector<std::uint8_t>> sent_bits;

    /// Fixed external format: a, trials, seed, count0, count1, countBot,
    /// bot_rate, stderr.
    Record record() const {
        return Record{}
            .add("a", a)
            .add("trials", trials)
            .add("seed", seed)
            .add("count0", count0)
            .add("count1", count1)
            .add("countBot", count_bot)
            .add("bot_rate", empirical_bot_rate)
            .add("stderr", stderr_bot);
    }
};

namespace detail {

struct TrialCounters {
    std::uint64_t count0 = 0, count1 = 0, count_bot = 0, correct = 0;
    TrialCounters& operator+=(const TrialCounters& o) {
        count0 += o.count0;
        count1 += o.count1;
        count_bot += o.count_bot;
        correct += o.correct;
        return *this;
    }
};

/// Shared trial engine. `sender(rng)` yields (optional bit, state sent);
/// `receiver(state, rng)` yields the output. Trial i draws only from
/// derive_stream(seed, i), so the fold is independent of the chunking.
template <class Sender, class Receiver>
RunStats run_trials(double a, const McOptions& opt, Sender&& sender,
                    Receiver&& receiver) {
    if (opt.trials < 1) throw OutOfRange("trials must be >= 1");

    std::vector<std::uint8_t> bits;
    std::uint8_t* bit_slots = nullptr;
    if (opt.record_bits) {
        bits.assign(opt.trials, 0);
        bit_slots = bits.data();
    }

    const auto run_range = [&](std::uint64_t begin, std::uint64_t end,
                               TrialCounters& out) {
        TrialCounters local;
        for (std::uint64_t i = begin; i < end; ++i) {
            SplitMix64 rng = derive_stream(opt.seed, i);
            const auto [bit, state] = sender(rng);
            const BobOutput outcome = receiver(state, rng);
            switch (outcome) {
                case BobOutput::Bit0: ++local.count0; break;
                case BobOutput::Bit1: ++local.count1; break;
                case BobOutput::Bot: ++local.count_bot; break;
            }
            if (bit) {
                if (bit_slots) bit_slots[i] = static_cast<std::uint8_t>(*bit);
                if (is_bit(outcome) &&
                    *bit == (outcome == BobOutput::Bit1 ? 1 : 0))
                    ++local.correct;
            }
        }
        out = local;
    };

    const unsigned threads =
        static_cast<unsigned>(std::min<std::uint64_t>(
            std::max(1u, opt.threads), opt.trials));
    std::vector<TrialCounters> partial(threads);
    if (threads == 1) {
        run_range(0, opt.trials, partial[0]);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(threads);
        const std::uint64_t chunk = (opt.trials + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t begin = chunk * t;
            const std::uint64_t end = std::min(opt.trials, begin + chunk);
            workers.emplace_back(run_range, begin, end, std::ref(partial[t]));
        }
        for (auto& w : workers) w.join();
    }

    TrialCounters total;
    for (const auto& c : partial) total += c;

    RunStats stats;
    stats.a = a;
    stats.trials = opt.trials;
    stats.seed = opt.seed;
    stats.count0 = total.count0;
    stats.count1 = total.count1;
    stats.count_bot = total.count_bot;
    stats.correct = total.correct;
    const double n = static_cast<double>(opt.trials);
    const double r = static_cast<double>(total.count_bot) / n;
    stats.empirical_bot_rate = r;
    stats.stderr_bot = std::sqrt(r * (1.0 - r) / n);
    if (opt.record_bits) stats.sent_bits = std::move(bits);
    return stats;
}

template <class Rng>
int draw_bit(BitSource source, Rng& rng) {
    switch (source) {
        case BitSource::Fixed0: return 0;
        case BitSource::Fixed1: return 1;
        default: return uniform_double(rng) < 0.5 ? 0 : 1;
    }
}

}  // namespace detail

/// Honest-vs-honest Monte Carlo batch. When the bit source is random, the
/// message bit is drawn from the trial's stream before the measurement
/// draw, so whole transcripts are reproducible from (seed, trials).
inline RunStats run_monte_carlo(const ProtocolParams& params,
                                const McOptions& opt) {
    const SignalStates states = build_signal_states(params);
    const Povm povm = build_povm(params);
    auto stats = detail::run_trials(
        params.a, opt,
        [&](SplitMix64& rng) {
            const int x = detail::draw_bit(opt.bits, rng);
            return std::pair<std::optional<int>, StateVector>(
                x, x ? states.psi1 : states.psi0);
        },
        [&](const StateVector& state, SplitMix64& rng) {
            return detail::sample_povm_outcome(bob_distribution(povm, state),
                                               rng);
        });
    stats.empirical_correct_rate =
        static_cast<double>(stats.correct) / static_cast<double>(stats.trials);
    return stats;
}

}  // namespace wrot
