#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "wrot/sweep.hpp"
#include "wrot/verify.hpp"

using namespace wrot;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string::size_type pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

// y coordinates of a polyline with the given id inside an SVG body
std::vector<double> polyline_ys(const std::string& svg, const std::string& id) {
    const std::string needle = "id=\"" + id + "\"";
    auto pos = svg.find(needle);
    REQUIRE(pos != std::string::npos);
    pos = svg.find("points=\"", pos);
    REQUIRE(pos != std::string::npos);
    pos += 8;
    const auto end = svg.find('"', pos);
    std::vector<double> ys;
    std::istringstream in(svg.substr(pos, end - pos));
    std::string pair;
    while (in >> pair) {
        const auto comma = pair.find(',');
        ys.push_back(std::strtod(pair.c_str() + comma + 1, nullptr));
    }
    return ys;
}

}  // namespace

TEST_CASE("sweep_row closed forms") {
    const SweepRow row = sweep_row(0.5);
    CHECK(row.p == 0.5);
    CHECK_THAT(row.v_max, WithinAbs(1.0 / 6.0, 1e-15));
    CHECK(row.v_min == -0.5);
    CHECK_THAT(row.q, WithinAbs(0.9330127018922193, 1e-15));
    CHECK_THAT(row.u, WithinAbs(0.1830127018922193, 1e-15));

    // endpoint limits: both advantages vanish
    const SweepRow zero = sweep_row(0.0);
    CHECK(zero.v_max == 0.0);
    CHECK(zero.u == 0.0);
    CHECK(zero.q == 1.0);
    const SweepRow one = sweep_row(1.0);
    CHECK(one.v_max == 0.0);
    CHECK(one.u == 0.0);
    CHECK(one.q == 0.5);
}

TEST_CASE("sweep validates its configuration") {
    CHECK_THROWS_AS(sweep({0.0, 1.0, 1}), OutOfRange);
    CHECK_THROWS_AS(sweep({0.5, 0.2, 10}), OutOfRange);
    CHECK_THROWS_AS(sweep({-0.1, 1.0, 10}), OutOfRange);
    CHECK_THROWS_AS(sweep({0.0, 1.1, 10}), OutOfRange);
}

TEST_CASE("three-point sweep hits both endpoints and the midpoint") {
    const auto rows = sweep({0.0, 1.0, 3});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].a == 0.0);
    CHECK(rows[1].a == 0.5);
    CHECK(rows[2].a == 1.0);
    CHECK_THAT(rows[1].v_max, WithinAbs(1.0 / 6.0, 1e-15));
    CHECK_THAT(rows[1].u, WithinAbs(0.1830127018922193, 1e-15));
}

TEST_CASE("default 101-point sweep") {
    const auto rows = sweep({});
    REQUIRE(rows.size() == 101);

    SECTION("rows satisfy the closed forms recomputed independently") {
        for (const SweepRow& row : rows) {
            CHECK_THAT(row.p, WithinAbs(1.0 - row.a, 1e-12));
            CHECK_THAT(row.v_max,
                       WithinAbs(row.a * (1.0 - row.a) / (1.0 + row.a),
                                 1e-12));
            CHECK_THAT(row.v_min, WithinAbs(-row.a, 1e-12));
            const double root = std::sqrt(std::max(0.0, 1.0 - row.a * row.a));
            CHECK_THAT(row.q, WithinAbs(0.5 * (1.0 + root), 1e-12));
            CHECK_THAT(row.u,
                       WithinAbs(row.q - row.p - (1.0 - row.p) / 2.0, 1e-12));
        }
    }
    SECTION("the sender curve peaks at the 0.41 grid point") {
        std::size_t arg = 0;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].v_max > rows[arg].v_max) arg = i;
        CHECK(arg == 41);
        CHECK_THAT(rows[arg].v_max,
                   WithinAbs(3.0 - 2.0 * std::numbers::sqrt2, 1e-3));
    }
    SECTION("the receiver curve peaks at the 0.71 grid point") {
        std::size_t arg = 0;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].u > rows[arg].u) arg = i;
        CHECK(arg == 71);
        CHECK_THAT(rows[arg].u,
                   WithinAbs((std::numbers::sqrt2 - 1.0) / 2.0, 1e-3));
    }
    SECTION("module invariants over the grid") {
        const auto report = verify::sweep_invariant_report(rows);
        CHECK(report.max_closed_form_dev <= 1e-12);
        CHECK(report.v_less_than_a);
        CHECK(report.nonnegative);
        CHECK(report.endpoint_residual <= 1e-12);
        CHECK(report.v_monotone_below_peak);
        CHECK(report.u_monotone_below_peak);
    }
}

TEST_CASE("fine scan of the curve landmarks") {
    const auto r = verify::landmark_scan(1e-4);
    CHECK_THAT(r.a_at_v_peak, WithinAbs(std::numbers::sqrt2 - 1.0, 1e-4));
    CHECK_THAT(r.v_peak, WithinAbs(3.0 - 2.0 * std::numbers::sqrt2, 1e-7));
    CHECK_THAT(r.a_at_u_peak, WithinAbs(1.0 / std::numbers::sqrt2, 1e-4));
    CHECK_THAT(r.u_peak, WithinAbs((std::numbers::sqrt2 - 1.0) / 2.0, 1e-7));
}

TEST_CASE("emit_csv") {
    SECTION("golden single-row output") {
        std::ostringstream out;
        emit_csv({sweep_row(0.5)}, out);
        CHECK(out.str() ==
              "a,p,v_max,v_min,q,u\n"
              "0.5,0.5,0.16666666666666666,-0.5,0.9330127018922193,"
              "0.1830127018922193\n");
    }
    SECTION("line structure") {
        std::ostringstream out;
        emit_csv(sweep({}), out);
        const std::string text = out.str();
        CHECK(text.back() == '\n');
        const auto lines = split_lines(text);
        REQUIRE(lines.size() == 102);
        CHECK(lines[0] == "a,p,v_max,v_min,q,u");
    }
    SECTION("identical rows give identical bytes") {
        const auto rows = sweep({0.1, 0.9, 17});
        std::ostringstream a, b;
        emit_csv(rows, a);
        emit_csv(rows, b);
        CHECK(a.str() == b.str());
    }
    SECTION("values round-trip exactly") {
        const auto rows = sweep({});
        std::ostringstream out;
        emit_csv(rows, out);
        const auto lines = split_lines(out.str());
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const char* cursor = lines[i].c_str();
            double values[6];
            for (double& v : values) {
                char* next = nullptr;
                v = std::strtod(cursor, &next);
                cursor = *next == ',' ? next + 1 : next;
            }
            const SweepRow& row = rows[i - 1];
            CHECK(values[0] == row.a);
            CHECK(values[1] == row.p);
            CHECK(values[2] == row.v_max);
            CHECK(values[3] == row.v_min);
            CHECK(values[4] == row.q);
            CHECK(values[5] == row.u);
        }
    }
    SECTION("an empty sweep is an error") {
        std::ostringstream out;
        CHECK_THROWS_AS(emit_csv(std::vector<SweepRow>{}, out), EmptySweep);
    }
}

TEST_CASE("emit_svg") {
    SECTION("structure of the full plot") {
        std::ostringstream out;
        emit_svg(sweep({}), out);
        const std::string svg = out.str();
        CHECK(svg.find("viewBox=\"0 0 800 600\"") != std::string::npos);
        CHECK(svg.find("id=\"v_max\"") != std::string::npos);
        CHECK(svg.find("id=\"u\"") != std::string::npos);
        CHECK(svg.find(">advantage</text>") != std::string::npos);
        CHECK(svg.find(">a</text>") != std::string::npos);
        CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
        CHECK(svg.find("href") == std::string::npos);  // self-contained
    }
    SECTION("curves rise then fall") {
        std::ostringstream out;
        emit_svg(sweep({}), out);
        // screen y is inverted: the minimum marks the curve's peak
        for (const auto& [id, peak] :
             {std::pair<std::string, std::size_t>{"v_max", 41},
              std::pair<std::string, std::size_t>{"u", 71}}) {
            const auto ys = polyline_ys(out.str(), id);
            REQUIRE(ys.size() == 101);
            std::size_t arg = 0;
            for (std::size_t i = 0; i < ys.size(); ++i)
                if (ys[i] < ys[arg]) arg = i;
            CHECK(arg == peak);
            for (std::size_t i = 1; i <= arg; ++i) CHECK(ys[i] < ys[i - 1]);
            for (std::size_t i = arg + 1; i < ys.size(); ++i)
                CHECK(ys[i] > ys[i - 1]);
        }
    }
    SECTION("two rows still make a valid plot") {
        std::ostringstream out;
        emit_svg(sweep({0.2, 0.6, 2}), out);
        CHECK(out.str().find("id=\"v_max\"") != std::string::npos);
        CHECK(out.str().find("id=\"u\"") != std::string::npos);
    }
    SECTION("identical input twice gives identical bytes") {
        const auto rows = sweep({0.0, 1.0, 31});
        std::ostringstream a, b;
        emit_svg(rows, a);
        emit_svg(rows, b);
        CHECK(a.str() == b.str());
    }
    SECTION("fewer than two rows is an error") {
        std::ostringstream out;
        CHECK_THROWS_AS(emit_svg({sweep_row(0.5)}, out), EmptySweep);
    }
}

TEST_CASE("simulation validates sweep rows against closed forms") {
    for (const double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const SweepValidation v =
            validate_sweep_by_simulation(sweep_row(a), 1000000, 7, 2);
        for (const SimCheck& c : v.checks) {
            INFO(c.name << " expected " << c.expected << " observed "
                        << c.observed << " (" << c.sigmas << " sigmas)");
            CHECK(c.pass);
        }
        CHECK(v.all_pass);
    }
}
