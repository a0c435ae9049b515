#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "wrot/qubit.hpp"
#include "wrot/rng.hpp"

using namespace wrot;
using Catch::Matchers::WithinAbs;

namespace {

StateVector random_state(SplitMix64& rng) {
    cdouble a0{gaussian(rng), gaussian(rng)};
    cdouble a1{gaussian(rng), gaussian(rng)};
    const double n = std::sqrt(std::norm(a0) + std::norm(a1));
    return make_state(a0 / n, a1 / n);
}

HermitianOp random_hermitian(SplitMix64& rng) {
    return HermitianOp{4.0 * uniform_double(rng) - 2.0,
                       4.0 * uniform_double(rng) - 2.0,
                       {2.0 * uniform_double(rng) - 1.0,
                        2.0 * uniform_double(rng) - 1.0}};
}

// Independent expectation oracle: explicit dense 2x2 complex matrix-vector
// arithmetic, no shared code with expectation().
double dense_expectation(const HermitianOp& op, const StateVector& psi) {
    const cdouble m[2][2] = {{{op.m00, 0.0}, op.m01},
                             {std::conj(op.m01), {op.m11, 0.0}}};
    const cdouble v[2] = {psi.amp0, psi.amp1};
    cdouble acc{0.0, 0.0};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) acc += std::conj(v[i]) * m[i][j] * v[j];
    return acc.real();
}

}  // namespace

TEST_CASE("make_state accepts unit vectors and rejects the rest") {
    const StateVector zero = make_state({1.0, 0.0}, {0.0, 0.0});
    CHECK(zero.amp0 == cdouble{1.0, 0.0});
    CHECK(zero.amp1 == cdouble{0.0, 0.0});

    CHECK_NOTHROW(make_state({0.6, 0.0}, {0.8, 0.0}));
    CHECK_NOTHROW(make_state({0.0, 0.6}, {-0.8, 0.0}));

    CHECK_THROWS_AS(make_state({1.0, 0.0}, {1.0, 0.0}), NotNormalized);
    try {
        make_state({1.0, 0.0}, {1.0, 0.0});
    } catch (const NotNormalized& e) {
        CHECK_THAT(e.norm, WithinAbs(std::sqrt(2.0), 1e-15));
    }
    // no silent renormalization of slightly-off inputs either
    CHECK_THROWS_AS(make_state({1.0 + 1e-7, 0.0}, {0.0, 0.0}), NotNormalized);
}

TEST_CASE("expectation matches frozen measurement values") {
    // remainder element of the a = 0.5 measurement, from its closed form
    const HermitianOp e3{0.5, 0.5 / 3.0, {0.5 * std::sqrt(0.75) / 1.5, 0.0}};
    const StateVector psi0 = make_state({1.0, 0.0}, {0.0, 0.0});
    CHECK_THAT(expectation(e3, psi0), WithinAbs(0.5, 1e-14));

    const HermitianOp e1{0.0, 1.0 / 1.5, {0.0, 0.0}};
    CHECK_THAT(expectation(e1, psi0), WithinAbs(0.0, 1e-15));

    SplitMix64 rng = derive_stream(7, 0);
    for (int i = 0; i < 50; ++i) {
        const StateVector psi = random_state(rng);
        CHECK_THAT(expectation(HermitianOp::identity(), psi),
                   WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("expectation is real for complex operators and states") {
    SplitMix64 rng = derive_stream(11, 0);
    for (int i = 0; i < 200; ++i) {
        const HermitianOp op = random_hermitian(rng);
        const StateVector psi = random_state(rng);
        CHECK_THAT(expectation(op, psi),
                   WithinAbs(dense_expectation(op, psi), 1e-13));
    }
}

TEST_CASE("eigs2 closed forms") {
    SECTION("diagonal") {
        const auto eig = eigs2(HermitianOp{1.0, -1.0, {0.0, 0.0}});
        CHECK(eig[0].value == -1.0);
        CHECK(eig[1].value == 1.0);
        CHECK_THAT(std::abs(eig[0].vector.amp1), WithinAbs(1.0, 1e-15));
        CHECK_THAT(std::abs(eig[1].vector.amp0), WithinAbs(1.0, 1e-15));
    }
    SECTION("degenerate identity") {
        const auto eig = eigs2(HermitianOp::identity());
        CHECK(eig[0].value == 1.0);
        CHECK(eig[1].value == 1.0);
        CHECK_THAT(std::abs(inner(eig[0].vector, eig[1].vector)),
                   WithinAbs(0.0, 1e-15));
    }
    SECTION("singular measurement remainder") {
        const HermitianOp e3{0.5, 0.5 / 3.0,
                             {0.5 * std::sqrt(0.75) / 1.5, 0.0}};
        const auto eig = eigs2(e3);
        CHECK_THAT(eig[0].value, WithinAbs(0.0, 1e-12));
        CHECK_THAT(eig[1].value, WithinAbs(2.0 / 3.0, 1e-12));
    }
}

TEST_CASE("eigs2 reconstructs random Hermitian operators") {
    SplitMix64 rng = derive_stream(13, 0);
    for (int i = 0; i < 500; ++i) {
        const HermitianOp op = random_hermitian(rng);
        const auto eig = eigs2(op);

        CHECK(eig[0].value <= eig[1].value);
        CHECK_THAT(std::abs(inner(eig[0].vector, eig[1].vector)),
                   WithinAbs(0.0, 1e-12));
        for (const auto& [value, vec] : eig) {
            CHECK_THAT(std::abs(inner(vec, vec)), WithinAbs(1.0, 1e-12));
            const cdouble r0 =
                op.m00 * vec.amp0 + op.m01 * vec.amp1 - value * vec.amp0;
            const cdouble r1 = std::conj(op.m01) * vec.amp0 +
                               op.m11 * vec.amp1 - value * vec.amp1;
            CHECK_THAT(std::abs(r0), WithinAbs(0.0, 1e-10));
            CHECK_THAT(std::abs(r1), WithinAbs(0.0, 1e-10));
        }

        const HermitianOp rebuilt =
            eig[0].value * HermitianOp::outer(eig[0].vector) +
            eig[1].value * HermitianOp::outer(eig[1].vector);
        CHECK_THAT(max_entry_delta(rebuilt, op), WithinAbs(0.0, 1e-10));
    }
}

TEST_CASE("PSD operators below identity yield probabilities") {
    SplitMix64 rng = derive_stream(17, 0);
    for (int i = 0; i < 300; ++i) {
        const auto eig = eigs2(random_hermitian(rng));
        const HermitianOp bounded =
            uniform_double(rng) * HermitianOp::outer(eig[0].vector) +
            uniform_double(rng) * HermitianOp::outer(eig[1].vector);
        const double e = expectation(bounded, random_state(rng));
        CHECK(e >= -1e-10);
        CHECK(e <= 1.0 + 1e-10);
    }
}

TEST_CASE("reduce_to_bob") {
    const StateVector psi0 = make_state({1.0, 0.0}, {0.0, 0.0});
    const StateVector psi1 = make_state({0.5, 0.0}, {std::sqrt(0.75), 0.0});

    SECTION("product states stay pure") {
        SplitMix64 rng = derive_stream(19, 0);
        for (int i = 0; i < 100; ++i) {
            const StateVector held = random_state(rng);
            const StateVector sent = random_state(rng);
            const DensityMatrix rho =
                reduce_to_bob(product_state(held, sent));
            CHECK_THAT(rho.trace(), WithinAbs(1.0, 1e-12));
            CHECK_THAT(rho.purity(), WithinAbs(1.0, 1e-10));
            CHECK_THAT(max_entry_delta(rho.as_operator(),
                                       HermitianOp::outer(sent)),
                       WithinAbs(0.0, 1e-12));
        }
    }
    SECTION("Bell state reduces to the maximally mixed state") {
        const double r = 1.0 / std::sqrt(2.0);
        const JointState bell =
            make_joint({cdouble{r, 0.0}, {}, {}, cdouble{r, 0.0}});
        const DensityMatrix rho = reduce_to_bob(bell);
        CHECK_THAT(rho.m00, WithinAbs(0.5, 1e-15));
        CHECK_THAT(rho.m11, WithinAbs(0.5, 1e-15));
        CHECK_THAT(std::abs(rho.m01), WithinAbs(0.0, 1e-15));
    }
    SECTION("superposition of tagged signals reduces to their mixture") {
        // (|0>psi0 + |1>psi1)/norm; the register tags are orthogonal, so
        // the cross terms vanish and the norm comes out at sqrt(2)
        std::array<cdouble, 4> amps{psi0.amp0, psi0.amp1, psi1.amp0,
                                    psi1.amp1};
        double n2 = 0.0;
        for (const auto& z : amps) n2 += std::norm(z);
        CHECK_THAT(n2, WithinAbs(2.0, 1e-12));
        for (auto& z : amps) z /= std::sqrt(n2);
        const JointState joint = make_joint(amps);

        // independent route: dense 4x4 outer product, then block trace
        cdouble dense[2][2] = {};
        for (int m = 0; m < 2; ++m)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    dense[j][k] += joint.amps[2 * m + j] *
                                   std::conj(joint.amps[2 * m + k]);

        const DensityMatrix rho = reduce_to_bob(joint);
        CHECK_THAT(rho.m00, WithinAbs(dense[0][0].real(), 1e-14));
        CHECK_THAT(rho.m11, WithinAbs(dense[1][1].real(), 1e-14));
        CHECK_THAT(std::abs(rho.m01 - dense[0][1]), WithinAbs(0.0, 1e-14));

        const HermitianOp mixture =
            0.5 * HermitianOp::outer(psi0) + 0.5 * HermitianOp::outer(psi1);
        CHECK_THAT(max_entry_delta(rho.as_operator(), mixture),
                   WithinAbs(0.0, 1e-12));
    }
    SECTION("make_joint rejects unnormalized amplitudes") {
        CHECK_THROWS_AS(
            make_joint({cdouble{1.0, 0.0}, cdouble{1.0, 0.0}, {}, {}}),
            NotNormalized);
    }
    SECTION("reductions are trace-one and positive") {
        SplitMix64 rng = derive_stream(41, 0);
        for (int i = 0; i < 200; ++i) {
            std::array<cdouble, 4> amps;
            double n2 = 0.0;
            for (auto& z : amps) {
                z = {gaussian(rng), gaussian(rng)};
                n2 += std::norm(z);
            }
            for (auto& z : amps) z /= std::sqrt(n2);
            const DensityMatrix rho = reduce_to_bob(make_joint(amps));
            CHECK_THAT(rho.trace(), WithinAbs(1.0, 1e-12));
            CHECK(min_eigenvalue(rho.as_operator()) >= -1e-10);
            CHECK(rho.purity() <= 1.0 + 1e-10);
        }
    }
}

TEST_CASE("sample_outcome") {
    SECTION("degenerate weights are deterministic") {
        SplitMix64 rng = derive_stream(23, 0);
        const double first[3] = {1.0, 0.0, 0.0};
        const double last[3] = {0.0, 0.0, 1.0};
        for (int i = 0; i < 100; ++i) {
            CHECK(sample_outcome(std::span<const double>(first, 3), rng) == 0);
            CHECK(sample_outcome(std::span<const double>(last, 3), rng) == 2);
        }
    }
    SECTION("identical streams give identical draws") {
        const double w[3] = {0.25, 0.25, 0.5};
        SplitMix64 r1 = derive_stream(42, 9);
        SplitMix64 r2 = derive_stream(42, 9);
        for (int i = 0; i < 1000; ++i)
            CHECK(sample_outcome(std::span<const double>(w, 3), r1) ==
                  sample_outcome(std::span<const double>(w, 3), r2));
    }
    SECTION("empirical frequencies sit within four standard errors") {
        const double w[3] = {0.25, 0.25, 0.5};
        SplitMix64 rng = derive_stream(29, 0);
        const int n = 1000000;
        int counts[3] = {0, 0, 0};
        for (int i = 0; i < n; ++i)
            ++counts[sample_outcome(std::span<const double>(w, 3), rng)];
        for (int k = 0; k < 3; ++k) {
            const double sigma = std::sqrt(w[k] * (1.0 - w[k]) / n);
            CHECK_THAT(static_cast<double>(counts[k]) / n,
                       WithinAbs(w[k], 4.0 * sigma));
        }
    }
    SECTION("malformed distributions are rejected") {
        SplitMix64 rng = derive_stream(31, 0);
        const double short_sum[3] = {0.3, 0.3, 0.3};
        CHECK_THROWS_AS(
            sample_outcome(std::span<const double>(short_sum, 3), rng),
            BadDistribution);
        const double negative[2] = {1.0 + 1e-6, -1e-6};
        CHECK_THROWS_AS(
            sample_outcome(std::span<const double>(negative, 2), rng),
            BadDistribution);
    }
    SECTION("PSD-boundary dust is clamped, not rejected") {
        SplitMix64 rng = derive_stream(37, 0);
        const double dusty[3] = {0.5, -5e-13, 0.5};
        for (int i = 0; i < 100; ++i)
            CHECK(sample_outcome(std::span<const double>(dusty, 3), rng) != 1);
    }
}

TEST_CASE("angle_between is phase insensitive") {
    const StateVector psi0 = make_state({1.0, 0.0}, {0.0, 0.0});
    const double c = std::cos(0.3), s = std::sin(0.3);
    CHECK_THAT(angle_between(psi0, make_state({c, 0.0}, {s, 0.0})),
               WithinAbs(0.3, 1e-12));
    // global phase does not change the ray
    CHECK_THAT(angle_between(psi0, make_state({0.0, c}, {0.0, s})),
               WithinAbs(0.3, 1e-12));
}
