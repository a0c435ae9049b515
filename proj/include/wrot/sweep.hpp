#pragma once

// Parameter sweeps of the u/v trade-off curves, Monte Carlo validation of
// individual rows, and deterministic CSV/SVG emission.

#include <array>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "adversaries.hpp"

namespace wrot {

struct EmptySweep : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// One grid point of the trade-off dataset. All six values are closed
/// forms of a; the interval endpoints hold the limits (both advantages
/// vanish there).
struct SweepRow {
    double a;
    double p;      // 1 - a
    double v_max;  // a(1-a)/(1+a)
    double v_min;  // -a
    double q;      // (1 + sqrt(1-a^2))/2
    double u;      // q - p - (1-p)/2
};

inline SweepRow sweep_row(double a) {
    const double p = 1.0 - a;
    const double root = std::sqrt(std::max(0.0, 1.0 - a * a));
    const double q = 0.5 * (1.0 + root);
    // 0.0 - a rather than -a keeps the a = 0 endpoint at +0
    return SweepRow{a, p, a * (1.0 - a) / (1.0 + a), 0.0 - a, q,
                    q - p - (1.0 - p) / 2.0};
}

struct SweepConfig {
    double a_min = 0.0;
    double a_max = 1.0;
    std::size_t steps = 101;
};

inline std::vector<SweepRow> sweep(const SweepConfig& config) {
    if (!(config.a_min >= 0.0) || !(config.a_min < config.a_max) ||
        !(config.a_max <= 1.0))
        throw OutOfRange("sweep range must satisfy 0 <= a_min < a_max <= 1");
    if (config.steps < 2) throw OutOfRange("sweep needs at least 2 steps");

    std::vector<SweepRow> rows;
    rows.reserve(config.steps);
    const double span = config.a_max - config.a_min;
    for (std::size_t i = 0; i < config.steps; ++i) {
        const double a =
            i + 1 == config.steps
                ? config.a_max
                : config.a_min + span * static_cast<double>(i) /
                                     static_cast<double>(config.steps - 1);
        rows.push_back(sweep_row(a));
    }
    return rows;
}

/// One empirical rate checked against its closed-form prediction.
struct SimCheck {
    std::string name;
    double expected = 0.0;
    double observed = 0.0;
    double stderr_ = 0.0;
    double sigmas = 0.0;
    bool pass = false;
};

struct SweepValidation {
    double a = 0.0;
    std::array<SimCheck, 4> checks;
    bool all_pass = false;
};

namespace detail {
inline SimCheck sim_check(std::string name, double expected, double observed,
                          std::uint64_t trials) {
    SimCheck c;
    c.name = std::move(name);
    c.expected = expected;
    c.observed = observed;
    c.stderr_ = std::sqrt(expected * (1.0 - expected) /
                          static_cast<double>(trials));
    c.sigmas = c.stderr_ > 0.0
                   ? std::abs(observed - expected) / c.stderr_
                   : (observed == expected ? 0.0 : HUGE_VAL);
    c.pass = c.sigmas <= 4.0;
    return c;
}
}  // namespace detail

/// Runs the four protocol configurations behind a row -- honest parties,
/// the two extremal cheating senders, the optimal guessing receiver --
/// and requires every empirical rate to land within four standard errors
/// of the row's closed form.
inline SweepValidation validate_sweep_by_simulation(const SweepRow& row,
                                                    std::uint64_t trials,
                                                    std::uint64_t seed,
                                                    unsigned threads = 1) {
    const ProtocolParams params = make_params(row.a);
    SplitMix64 seeder(seed);
    const auto opt = [&](BitSource bits) {
        McOptions o;
        o.trials = trials;
        o.seed = seeder();
        o.bits = bits;
        o.threads = threads;
        return o;
    };

    const RunStats honest = run_monte_carlo(params, opt(BitSource::Random));
    const RunStats amax = run_cheating_alice(
        params, max_alice_advantage(row.a).state, opt(BitSource::Random));
    const RunStats amin = run_cheating_alice(
        params, min_alice_advantage(row.a).state, opt(BitSource::Random));
    const RunStats bob = run_guessing_bob(
        params, bob_guess_basis(optimal_bob(row.a).theta),
        opt(BitSource::Random));

    SweepValidation v;
    v.a = row.a;
    v.checks[0] = detail::sim_check("honest_bot_rate", row.a,
                                    honest.empirical_bot_rate, trials);
    v.checks[1] = detail::sim_check("alice_max_bot_rate", row.a + row.v_max,
                                    amax.empirical_bot_rate, trials);
    v.checks[2] = detail::sim_check("alice_min_bot_rate", row.a + row.v_min,
                                    amin.empirical_bot_rate, trials);
    v.checks[3] = detail::sim_check("bob_opt_correct_rate", row.q,
                                    *bob.empirical_correct_rate, trials);
    v.all_pass = true;
    for (const auto& c : v.checks) v.all_pass = v.all_pass && c.pass;
    return v;
}

/// CSV: fixed header `a,p,v_max,v_min,q,u`, one LF-terminated line per
/// row, shortest round-trip decimals. Identical rows give identical bytes.
inline void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    if (rows.empty()) throw EmptySweep("refusing to write an empty sweep");
    out << "a,p,v_max,v_min,q,u\n";
    for (const auto& r : rows) {
        out << format_double(r.a) << ',' << format_double(r.p) << ','
            << format_double(r.v_max) << ',' << format_double(r.v_min) << ','
            << format_double(r.q) << ',' << format_double(r.u) << '\n';
    }
    if (!out) throw std::runtime_error("CSV write failed");
}

inline void emit_csv(const std::vector<SweepRow>& rows,
                     const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    emit_csv(rows, out);
    out.flush();
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

namespace detail {

struct SvgFrame {
    static constexpr double width = 800.0, height = 600.0;
    static constexpr double left = 70.0, right = 776.0;
    static constexpr double top = 24.0, bottom = 540.0;
    double a_min, a_span, y_max;

    double x(double a) const {
        return left + (a - a_min) / a_span * (right - left);
    }
    double y(double v) const {
        return bottom - v / y_max * (bottom - top);
    }
};

inline void svg_polyline(std::ostream& out, const SvgFrame& f,
                         const std::vector<SweepRow>& rows,
                         double SweepRow::* field, const char* id,
                         const char* color) {
    out << "  <polyline id=\"" << id << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) out << ' ';
        out << format_double(f.x(rows[i].a)) << ','
            << format_double(f.y(rows[i].*field));
    }
    out << "\"/>\n";
}

}  // namespace detail

/// Self-contained SVG (800x600 viewBox, no external assets) with the two
/// advantage curves as polylines `v_max` and `u` over the overlap axis.
inline void emit_svg(const std::vector<SweepRow>& rows, std::ostream& out) {
    if (rows.size() < 2)
        throw EmptySweep("an SVG plot needs at least 2 rows");

    detail::SvgFrame f{};
    f.a_min = rows.front().a;
    f.a_span = rows.back().a - rows.front().a;
    f.y_max = 0.0;
    for (const auto& r : rows) f.y_max = std::max({f.y_max, r.v_max, r.u});
    f.y_max = f.y_max > 0.0 ? f.y_max * 1.08 : 1.0;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
           "height=\"600\" viewBox=\"0 0 800 600\">\n"
           "  <rect width=\"800\" height=\"600\" fill=\"white\"/>\n";

    // axes
    out << "  <line x1=\"" << format_double(f.left) << "\" y1=\""
        << format_double(f.bottom) << "\" x2=\"" << format_double(f.right)
        << "\" y2=\"" << format_double(f.bottom)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "  <line x1=\"" << format_double(f.left) << "\" y1=\""
        << format_double(f.top) << "\" x2=\"" << format_double(f.left)
        << "\" y2=\"" << format_double(f.bottom)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double a = f.a_min + f.a_span * i / 5.0;
        const double x = f.x(a);
        out << "  <line x1=\"" << format_double(x) << "\" y1=\""
            << format_double(f.bottom) << "\" x2=\"" << format_double(x)
            << "\" y2=\"" << format_double(f.bottom + 6)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "  <text x=\"" << format_double(x) << "\" y=\""
            << format_double(f.bottom + 22)
            << "\" font-family=\"sans-serif\" font-size=\"13\" "
               "text-anchor=\"middle\">"
            << format_double(std::round(a * 100.0) / 100.0) << "</text>\n";

        const double v = f.y_max * i / 5.0;
        const double y = f.y(v);
        out << "  <line x1=\"" << format_double(f.left - 6) << "\" y1=\""
            << format_double(y) << "\" x2=\"" << format_double(f.left)
            << "\" y2=\"" << format_double(y)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "  <text x=\"" << format_double(f.left - 10) << "\" y=\""
            << format_double(y + 4)
            << "\" font-family=\"sans-serif\" font-size=\"13\" "
               "text-anchor=\"end\">"
            << format_double(std::round(v * 1000.0) / 1000.0) << "</text>\n";
    }

    detail::svg_polyline(out, f, rows, &SweepRow::v_max, "v_max", "#1f77b4");
    detail::svg_polyline(out, f, rows, &SweepRow::u, "u", "#d62728");

    // axis labels and legend
    out << "  <text x=\"" << format_double((f.left + f.right) / 2)
        << "\" y=\"578\" font-family=\"sans-serif\" font-size=\"15\" "
           "text-anchor=\"middle\">a</text>\n";
    out << "  <text x=\"20\" y=\"" << format_double((f.top + f.bottom) / 2)
        << "\" font-family=\"sans-serif\" font-size=\"15\" "
           "text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << format_double((f.top + f.bottom) / 2)
        << ")\">advantage</text>\n";
    out << "  <line x1=\"96\" y1=\"44\" x2=\"126\" y2=\"44\" "
           "stroke=\"#1f77b4\" stroke-width=\"2\"/>\n"
           "  <text x=\"132\" y=\"48\" font-family=\"sans-serif\" "
           "font-size=\"13\">v_max</text>\n"
           "  <line x1=\"96\" y1=\"64\" x2=\"126\" y2=\"64\" "
           "stroke=\"#d62728\" stroke-width=\"2\"/>\n"
           "  <text x=\"132\" y=\"68\" font-family=\"sans-serif\" "
           "font-size=\"13\">u</text>\n";

    out << "</svg>\n";
    if (!out) throw std::runtime_error("SVG write failed");
}

inline void emit_svg(const std::vector<SweepRow>& rows,
                     const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    emit_svg(rows, out);
    out.flush();
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace wrot
