#pragma once

// Exact single-qubit linear algebra (plus the two-qubit pieces needed for
// the entanglement checks): pure states, Hermitian 2x2 operators, a
// closed-form eigendecomposition, and the partial trace. Everything is a
// small immutable value; nothing here renormalizes silently.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace wrot {

using cdouble = std::complex<double>;

struct NotNormalized : std::invalid_argument {
    explicit NotNormalized(double norm)
        : std::invalid_argument("state has norm " + std::to_string(norm) +
                                ", expected 1"),
          norm(norm) {}
    double norm;
};

/// Pure qubit state amp0|0> + amp1|1>, unit norm.
struct StateVector {
    cdouble amp0{1.0, 0.0};
    cdouble amp1{0.0, 0.0};
};

/// Validating constructor. Rejects non-unit inputs instead of rescaling:
/// a normalization bug upstream must not be absorbed into a bias here.
inline StateVector make_state(cdouble amp0, cdouble amp1) {
    const double norm = std::sqrt(std::norm(amp0) + std::norm(amp1));
    if (std::abs(norm - 1.0) > 1e-9) throw NotNormalized(norm);
    return StateVector{amp0, amp1};
}

/// <bra|ket>
inline cdouble inner(const StateVector& bra, const StateVector& ket) {
    return std::conj(bra.amp0) * ket.amp0 + std::conj(bra.amp1) * ket.amp1;
}

/// Angle in [0, pi/2] between the rays of two states (phase-insensitive).
inline double angle_between(const StateVector& u, const StateVector& w) {
    const double c = std::min(1.0, std::abs(inner(u, w)));
    return std::acos(c);
}

/// Hermitian 2x2 operator; only the upper triangle is stored, so
/// hermiticity holds by construction (m10 = conj(m01)).
struct HermitianOp {
    double m00 = 0.0;
    double m11 = 0.0;
    cdouble m01{0.0, 0.0};

    static HermitianOp identity() { return {1.0, 1.0, {0.0, 0.0}}; }

    /// |v><v|
    static HermitianOp outer(const StateVector& v) {
        return {std::norm(v.amp0), std::norm(v.amp1),
                v.amp0 * std::conj(v.amp1)};
    }

    HermitianOp& operator+=(const HermitianOp& o) {
        m00 += o.m00;
        m11 += o.m11;
        m01 += o.m01;
        return *this;
    }
    HermitianOp& operator-=(const HermitianOp& o) {
        m00 -= o.m00;
        m11 -= o.m11;
        m01 -= o.m01;
        return *this;
    }
    HermitianOp& operator*=(double s) {
        m00 *= s;
        m11 *= s;
        m01 *= s;
        return *this;
    }

    double trace() const { return m00 + m11; }
    double det() const { return m00 * m11 - std::norm(m01); }
};

inline HermitianOp operator+(HermitianOp a, const HermitianOp& b) { return a += b; }
inline HermitianOp operator-(HermitianOp a, const HermitianOp& b) { return a -= b; }
inline HermitianOp operator*(double s, HermitianOp a) { return a *= s; }

/// Largest entrywise difference, |m10| folded into |m01|.
inline double max_entry_delta(const HermitianOp& a, const HermitianOp& b) {
    return std::max({std::abs(a.m00 - b.m00), std::abs(a.m11 - b.m11),
                     std::abs(a.m01 - b.m01)});
}

/// Quadratic form <x|op|x> on a raw (not necessarily normalized) pair.
inline double quad_form(const HermitianOp& op, cdouble x0, cdouble x1) {
    const cdouble r0 = op.m00 * x0 + op.m01 * x1;
    const cdouble r1 = std::conj(op.m01) * x0 + op.m11 * x1;
    return (std::conj(x0) * r0 + std::conj(x1) * r1).real();
}

/// <psi|op|psi> for a normalized state. Computed through the full complex
/// contraction; the imaginary residue must cancel for a Hermitian operator
/// and is checked before it is discarded.
inline double expectation(const HermitianOp& op, const StateVector& psi) {
    const cdouble r0 = op.m00 * psi.amp0 + op.m01 * psi.amp1;
    const cdouble r1 = std::conj(op.m01) * psi.amp0 + op.m11 * psi.amp1;
    const cdouble e = std::conj(psi.amp0) * r0 + std::conj(psi.amp1) * r1;
    if (std::abs(e.imag()) >= 1e-14)
        throw std::logic_error("expectation: imaginary residue " +
                               std::to_string(e.imag()));
    return e.real();
}

struct EigenPair {
    double value = 0.0;
    StateVector vector;
};

namespace detail {
// Orthogonal complement in C^2; for a Hermitian operator this is exactly
// the other eigenvector.
inline StateVector orth_complement(const StateVector& v) {
    return StateVector{-std::conj(v.amp1), std::conj(v.amp0)};
}
}  // namespace detail

/// Closed-form eigendecomposition, eigenvalues ascending. One eigenvector
/// is taken from the better-conditioned nullspace representation, the
/// other as its orthogonal complement, so the pair is orthonormal to
/// machine precision even near degeneracy.
inline std::array<EigenPair, 2> eigs2(const HermitianOp& op) {
    const double mean = 0.5 * (op.m00 + op.m11);
    const double diff = 0.5 * (op.m00 - op.m11);
    const double radius = std::sqrt(diff * diff + std::norm(op.m01));
    const double lo = mean - radius;
    const double hi = mean + radius;

    if (radius == 0.0) {
        return {EigenPair{lo, StateVector{{1.0, 0.0}, {0.0, 0.0}}},
                EigenPair{hi, StateVector{{0.0, 0.0}, {1.0, 0.0}}}};
    }

    // (m01, lambda - m00) solves (op - lambda I) v = 0; pick the lambda for
    // which the second component is the large one.
    if (diff >= 0.0) {
        const cdouble x = op.m01;
        const double y = -(radius + diff);
        const double n = std::sqrt(std::norm(x) + y * y);
        const StateVector low{x / n, cdouble{y / n, 0.0}};
        return {EigenPair{lo, low}, EigenPair{hi, detail::orth_complement(low)}};
    }
    const cdouble x = op.m01;
    const double y = radius - diff;
    const double n = std::sqrt(std::norm(x) + y * y);
    const StateVector high{x / n, cdouble{y / n, 0.0}};
    return {EigenPair{lo, detail::orth_complement(high)}, EigenPair{hi, high}};
}

inline double min_eigenvalue(const HermitianOp& op) {
    const double diff = 0.5 * (op.m00 - op.m11);
    return 0.5 * (op.m00 + op.m11) - std::sqrt(diff * diff + std::norm(op.m01));
}

inline double max_eigenvalue(const HermitianOp& op) {
    const double diff = 0.5 * (op.m00 - op.m11);
    return 0.5 * (op.m00 + op.m11) + std::sqrt(diff * diff + std::norm(op.m01));
}

/// Two-qubit pure state over |00>,|01>,|10>,|11>; the first factor is the
/// sender's register, the second the transmitted qubit.
struct JointState {
    std::array<cdouble, 4> amps{cdouble{1.0, 0.0}, {}, {}, {}};
};

inline JointState make_joint(const std::array<cdouble, 4>& amps) {
    double n2 = 0.0;
    for (const auto& z : amps) n2 += std::norm(z);
    const double norm = std::sqrt(n2);
    if (std::abs(norm - 1.0) > 1e-9) throw NotNormalized(norm);
    return JointState{amps};
}

/// |a> (x) |b>
inline JointState product_state(const StateVector& a, const StateVector& b) {
    return JointState{{a.amp0 * b.amp0, a.amp0 * b.amp1,
                       a.amp1 * b.amp0, a.amp1 * b.amp1}};
}

/// Trace-one positive operator; same storage convention as HermitianOp.
struct DensityMatrix {
    double m00 = 1.0;
    double m11 = 0.0;
    cdouble m01{0.0, 0.0};

    double trace() const { return m00 + m11; }
    /// Tr rho^2; equals 1 exactly on pure states.
    double purity() const { return m00 * m00 + m11 * m11 + 2.0 * std::norm(m01); }
    HermitianOp as_operator() const { return {m00, m11, m01}; }
};

/// Partial trace over the sender's register.
inline DensityMatrix reduce_to_bob(const JointState& joint) {
    const auto& v = joint.amps;
    DensityMatrix rho;
    rho.m00 = std::norm(v[0]) + std::norm(v[2]);
    rho.m11 = std::norm(v[1]) + std::norm(v[3]);
    rho.m01 = v[0] * std::conj(v[1]) + v[2] * std::conj(v[3]);
    return rho;
}

/// Tr(rho op)
inline double expectation(const HermitianOp& op, const DensityMatrix& rho) {
    return rho.m00 * op.m00 + rho.m11 * op.m11 +
           2.0 * (rho.m01 * std::conj(op.m01)).real();
}

}  // namespace wrot
