#pragma once

// Exact complex 2x2 linear algebra for single-qubit states and operators.
// All matrices are stored in the logical basis {|0>, |1>}. The diagonal
// basis |+> = (|0>+|1>)/sqrt(2), |-> = (|0>-|1>)/sqrt(2) is the frame in
// which protected-state families are parameterized; conversions happen at
// construction time, never implicitly.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qprotect {

using cx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Wrap an angle into [-pi, pi).
inline double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * kPi);
    if (w >= kPi) w -= 2.0 * kPi;     // remainder returns (-pi, pi]; fold pi
    if (w < -kPi) w += 2.0 * kPi;
    return w;
}

struct PureState {
    cx a0{};  // amplitude on |0>
    cx a1{};  // amplitude on |1>
};

struct Operator {
    cx m00{}, m01{};
    cx m10{}, m11{};
};

struct DensityMatrix {
    cx m00{}, m01{};
    cx m10{}, m11{};
};

struct BlochVector {
    double x = 0.0, y = 0.0, z = 0.0;
};

// ---------------------------------------------------------------------------
// states

inline PureState ket0() { return {cx(1.0, 0.0), cx(0.0, 0.0)}; }
inline PureState ket1() { return {cx(0.0, 0.0), cx(1.0, 0.0)}; }

// cos(t/2)|+> + e^{i phi} sin(t/2)|->, expressed in the logical basis.
// t = 0 gives |+> exactly; the family sweeps the great circle through
// |+>, |-> at azimuth phi.
inline PureState ket_plane(double t, double phi) {
    const double c = std::cos(0.5 * t);
    const double s = std::sin(0.5 * t);
    const cx ph = std::polar(1.0, phi);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return {(c + ph * s) * inv_sqrt2, (c - ph * s) * inv_sqrt2};
}

inline PureState ket_plus() { return ket_plane(0.0, 0.0); }
inline PureState ket_minus() { return ket_plane(kPi, 0.0); }

inline double norm2(const PureState& s) {
    return std::norm(s.a0) + std::norm(s.a1);
}

inline cx inner(const PureState& bra, const PureState& ket) {
    return std::conj(bra.a0) * ket.a0 + std::conj(bra.a1) * ket.a1;
}

inline PureState scaled(const PureState& s, cx k) {
    return {k * s.a0, k * s.a1};
}

inline PureState add(const PureState& a, const PureState& b) {
    return {a.a0 + b.a0, a.a1 + b.a1};
}

inline PureState normalized(const PureState& s) {
    const double n = std::sqrt(norm2(s));
    if (n == 0.0) throw std::invalid_argument("normalized: zero state");
    return scaled(s, cx(1.0 / n, 0.0));
}

// ---------------------------------------------------------------------------
// operators

inline Operator identity() {
    return {cx(1, 0), cx(0, 0), cx(0, 0), cx(1, 0)};
}

inline Operator zero_operator() { return {}; }

inline PureState apply(const Operator& op, const PureState& s) {
    return {op.m00 * s.a0 + op.m01 * s.a1, op.m10 * s.a0 + op.m11 * s.a1};
}

inline Operator dagger(const Operator& op) {
    return {std::conj(op.m00), std::conj(op.m10),
            std::conj(op.m01), std::conj(op.m11)};
}

// Matrix product a*b (apply b first).
inline Operator compose(const Operator& a, const Operator& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

inline Operator operator*(const Operator& a, const Operator& b) {
    return compose(a, b);
}

inline Operator add(const Operator& a, const Operator& b) {
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

inline Operator sub(const Operator& a, const Operator& b) {
    return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}

inline Operator scaled(const Operator& a, cx k) {
    return {k * a.m00, k * a.m01, k * a.m10, k * a.m11};
}

// |a><b|
inline Operator outer_op(const PureState& a, const PureState& b) {
    return {a.a0 * std::conj(b.a0), a.a0 * std::conj(b.a1),
            a.a1 * std::conj(b.a0), a.a1 * std::conj(b.a1)};
}

inline cx det(const Operator& op) {
    return op.m00 * op.m11 - op.m01 * op.m10;
}

inline cx trace(const Operator& op) { return op.m00 + op.m11; }

inline double frobenius_distance(const Operator& a, const Operator& b) {
    const Operator d = sub(a, b);
    return std::sqrt(std::norm(d.m00) + std::norm(d.m01) +
                     std::norm(d.m10) + std::norm(d.m11));
}

inline double deviation_from_identity(const Operator& op) {
    return frobenius_distance(op, identity());
}

inline bool is_unitary(const Operator& op, double tol = 1e-12) {
    return deviation_from_identity(compose(dagger(op), op)) <= tol;
}

// ---------------------------------------------------------------------------
// density matrices

inline DensityMatrix outer(const PureState& s) {
    return {s.a0 * std::conj(s.a0), s.a0 * std::conj(s.a1),
            s.a1 * std::conj(s.a0), s.a1 * std::conj(s.a1)};
}

inline cx trace(const DensityMatrix& rho) { return rho.m00 + rho.m11; }

inline DensityMatrix add(const DensityMatrix& a, const DensityMatrix& b) {
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

inline DensityMatrix scaled(const DensityMatrix& rho, double k) {
    return {k * rho.m00, k * rho.m01, k * rho.m10, k * rho.m11};
}

inline double hermiticity_defect(const DensityMatrix& rho) {
    return std::abs(rho.m01 - std::conj(rho.m10)) +
           std::abs(rho.m00.imag()) + std::abs(rho.m11.imag());
}

// Smaller eigenvalue of a Hermitian 2x2; negative values flag indefiniteness.
inline double min_eigenvalue(const DensityMatrix& rho) {
    const double tr = (rho.m00 + rho.m11).real();
    const double d = (rho.m00 * rho.m11 - rho.m01 * rho.m10).real();
    const double disc = std::max(0.25 * tr * tr - d, 0.0);
    return 0.5 * tr - std::sqrt(disc);
}

// <psi| rho |psi> for a normalized psi and a trace-1 rho, clamped to [0, 1].
// Rejects badly normalized inputs: a failure here means some upstream step
// forgot to renormalize.
inline double fidelity_pure(const PureState& psi, const DensityMatrix& rho) {
    if (std::abs(norm2(psi) - 1.0) > 1e-10)
        throw std::invalid_argument("fidelity_pure: state not normalized");
    if (std::abs(trace(rho).real() - 1.0) > 1e-10 ||
        std::abs(trace(rho).imag()) > 1e-10)
        throw std::invalid_argument("fidelity_pure: density matrix trace != 1");
    if (hermiticity_defect(rho) > 1e-9)
        throw std::invalid_argument("fidelity_pure: density matrix not Hermitian");
    const cx v = std::conj(psi.a0) * (rho.m00 * psi.a0 + rho.m01 * psi.a1) +
                 std::conj(psi.a1) * (rho.m10 * psi.a0 + rho.m11 * psi.a1);
    double f = v.real();
    if (f < 0.0) f = 0.0;
    if (f > 1.0) f = 1.0;
    return f;
}

// Pauli frame with |+>, |-> as poles: sigma1 = |+><-| + |-><+|,
// sigma2 = -i|+><-| + i|-><+|, sigma3 = |+><+| - |-><-|.  In logical-basis
// matrices these are diag(1,-1), [[0,i],[-i,0]] and the bit flip.
inline Operator sigma1_pm() {
    return {cx(1, 0), cx(0, 0), cx(0, 0), cx(-1, 0)};
}
inline Operator sigma2_pm() {
    return {cx(0, 0), cx(0, 1), cx(0, -1), cx(0, 0)};
}
inline Operator sigma3_pm() {
    return {cx(0, 0), cx(1, 0), cx(1, 0), cx(0, 0)};
}

inline BlochVector bloch(const DensityMatrix& rho) {
    if (std::abs(trace(rho).real() - 1.0) > 1e-10)
        throw std::invalid_argument("bloch: density matrix trace != 1");
    return {(rho.m00 - rho.m11).real(),
            2.0 * rho.m01.imag(),
            2.0 * rho.m01.real()};
}

inline DensityMatrix density_from_bloch(const BlochVector& v) {
    // (I + x sigma1 + y sigma2 + z sigma3) / 2 in the poles-at-|+-> frame
    return {cx(0.5 * (1.0 + v.x), 0.0), cx(0.5 * v.z, 0.5 * v.y),
            cx(0.5 * v.z, -0.5 * v.y), cx(0.5 * (1.0 - v.x), 0.0)};
}

inline bool all_finite(const PureState& s) {
    return std::isfinite(s.a0.real()) && std::isfinite(s.a0.imag()) &&
           std::isfinite(s.a1.real()) && std::isfinite(s.a1.imag());
}

inline bool all_finite(const Operator& op) {
    auto ok = [](cx v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    };
    return ok(op.m00) && ok(op.m01) && ok(op.m10) && ok(op.m11);
}

}  // namespace qprotect
