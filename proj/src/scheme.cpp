#include "qprotect/scheme.hpp"

#include <cmath>

namespace qprotect {

namespace {

void check_range(double v, double lo, double hi, const char* name) {
    if (!(v >= lo && v <= hi))
        throw std::invalid_argument(std::string(name) + " out of range [" +
                                    std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]: got " +
                                    std::to_string(v));
}

}  // namespace

void Ensemble::validate() const {
    check_range(theta, 0.0, kPi, "theta");
    check_range(phi, -kPi, kPi, "phi");
    check_range(s_plus, 0.0, 1.0, "s_plus");
}

void NoiseStrength::validate() const { check_range(r, 0.0, 1.0, "r"); }

void ControlParams::validate(bool paper_range) const {
    check_range(alpha, -kPi, kPi, "alpha");
    check_range(p, 0.0, paper_range ? 0.5 : 1.0, "p");
    check_range(p1, 0.0, 1.0, "p1");
    check_range(p2, 0.0, 1.0, "p2");
    check_range(gamma_plus, -kPi, kPi, "gamma_plus");
    check_range(gamma_minus, -kPi, kPi, "gamma_minus");
}

PureState ensemble_state(const Ensemble& e, int which) {
    return ket_plane(which >= 0 ? e.theta : -e.theta, e.phi);
}

std::pair<PureState, PureState> build_basis(double alpha, double phi) {
    const double t = 0.5 * (alpha + 0.5 * kPi);
    const double c = std::cos(t);
    const double s = std::sin(t);
    const cx ph = std::polar(1.0, phi);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // c|+> + e^{i phi} s|->  and  s|+> - e^{i phi} c|->
    PureState v_plus{(c + ph * s) * inv_sqrt2, (c - ph * s) * inv_sqrt2};
    PureState v_minus{(s - ph * c) * inv_sqrt2, (s + ph * c) * inv_sqrt2};
    return {v_plus, v_minus};
}

std::pair<Operator, Operator> build_preweak(double p, const PureState& v_plus,
                                            const PureState& v_minus) {
    const Operator proj_plus = outer_op(v_plus, v_plus);
    const Operator proj_minus = outer_op(v_minus, v_minus);
    const double sp = std::sqrt(p);
    const double sq = std::sqrt(1.0 - p);
    return {add(scaled(proj_plus, sp), scaled(proj_minus, sq)),
            add(scaled(proj_plus, sq), scaled(proj_minus, sp))};
}

std::pair<Operator, Operator> build_feedforward(const PureState& v_plus,
                                                const PureState& v_minus) {
    return {add(outer_op(ket0(), v_plus), outer_op(ket1(), v_minus)),
            add(outer_op(ket1(), v_plus), outer_op(ket0(), v_minus))};
}

std::pair<Operator, Operator> build_ad_kraus(double r) {
    Operator e1 = identity();
    e1.m11 = cx(std::sqrt(1.0 - r), 0.0);
    Operator e2 = zero_operator();
    e2.m01 = cx(std::sqrt(r), 0.0);
    return {e1, e2};
}

PostweakSet build_postweak(double p1, double p2, const PureState& v_plus,
                           const PureState& v_minus) {
    const Operator proj_plus = outer_op(v_plus, v_plus);
    const Operator proj_minus = outer_op(v_minus, v_minus);
    PostweakSet out;
    out.N_plus = add(scaled(proj_plus, std::sqrt(1.0 - p1)), proj_minus);
    out.Nbar_plus = scaled(proj_plus, std::sqrt(p1));
    out.N_minus = add(proj_plus, scaled(proj_minus, std::sqrt(1.0 - p2)));
    out.Nbar_minus = scaled(proj_minus, std::sqrt(p2));
    return out;
}

Operator feedback_generator(double phi) {
    const double cphi = std::cos(phi);
    const double sphi = std::sin(phi);
    // Q = -i (cos(phi) sigma2 - sin(phi) sigma1) in the poles-at-|+-> frame;
    // at phi = 0 this is [[0, 1], [-1, 0]] in the logical basis.
    return {cx(0.0, sphi), cx(cphi, 0.0), cx(-cphi, 0.0), cx(0.0, -sphi)};
}

Operator build_feedback(double gamma, double phi) {
    const double c = std::cos(0.5 * gamma);
    const double s = std::sin(0.5 * gamma);
    return add(scaled(identity(), cx(c, 0.0)),
               scaled(feedback_generator(phi), cx(s, 0.0)));
}

OperatorSet build_operator_set(const ControlParams& c, double phi, double r) {
    const auto [v_plus, v_minus] = build_basis(c.alpha, phi);
    OperatorSet ops;
    std::tie(ops.M_plus, ops.M_minus) = build_preweak(c.p, v_plus, v_minus);
    std::tie(ops.U_plus, ops.U_minus) = build_feedforward(v_plus, v_minus);
    std::tie(ops.E1, ops.E2) = build_ad_kraus(r);
    const PostweakSet pw = build_postweak(c.p1, c.p2, v_plus, v_minus);
    ops.N_plus = pw.N_plus;
    ops.Nbar_plus = pw.Nbar_plus;
    ops.N_minus = pw.N_minus;
    ops.Nbar_minus = pw.Nbar_minus;
    ops.R_plus = build_feedback(c.gamma_plus, phi);
    ops.R_minus = build_feedback(c.gamma_minus, phi);
    return ops;
}

std::array<PathRecord, 4> run_paths(const PureState& psi,
                                    const OperatorSet& ops) {
    if (std::abs(norm2(psi) - 1.0) > 1e-10)
        throw std::invalid_argument("run_paths: input state not normalized");

    std::array<PathRecord, 4> records{};
    int slot = 0;
    for (int outcome : {+1, -1}) {
        const Operator& m = outcome > 0 ? ops.M_plus : ops.M_minus;
        const Operator& u = outcome > 0 ? ops.U_plus : ops.U_minus;
        const Operator& n = outcome > 0 ? ops.N_plus : ops.N_minus;
        const Operator& rot = outcome > 0 ? ops.R_plus : ops.R_minus;
        // Compose the whole kept branch once, then apply.
        const Operator head = compose(u, m);
        const Operator tail = compose(rot, compose(n, dagger(u)));
        for (int j : {1, 2}) {
            const Operator& kraus = (j == 1) ? ops.E1 : ops.E2;
            const Operator k = compose(tail, compose(kraus, head));
            PathRecord rec;
            rec.preweak_outcome = outcome;
            rec.kraus_index = j;
            rec.final_state = apply(k, psi);
            rec.weight = norm2(rec.final_state);
            records[slot++] = rec;
        }
    }
    return records;
}

ProtectionResult protect(const Ensemble& e, const ControlParams& c,
                         NoiseStrength noise) {
    e.validate();
    c.validate();
    noise.validate();

    const OperatorSet ops = build_operator_set(c, e.phi, noise.r);
    ProtectionResult out;

    for (int which : {+1, -1}) {
        const PureState psi = ensemble_state(e, which);
        const auto paths = run_paths(psi, ops);

        double g = 0.0;
        DensityMatrix accum{};
        for (const PathRecord& rec : paths) {
            g += rec.weight;
            accum = add(accum, outer(rec.final_state));
        }
        if (g < 1e-15)
            throw degenerate_run_error(
                "protect: all measurement branches abandoned (g < 1e-15)");
        const DensityMatrix rho = scaled(accum, 1.0 / g);
        const double f = fidelity_pure(psi, rho);

        if (which > 0) {
            out.g_plus = g;
            out.f_plus = f;
            out.rho_out_plus = rho;
            out.paths_plus = paths;
        } else {
            out.g_minus = g;
            out.f_minus = f;
            out.rho_out_minus = rho;
            out.paths_minus = paths;
        }
    }

    out.F = e.s_plus * out.f_plus + e.s_minus() * out.f_minus;
    out.G = e.s_plus * out.g_plus + e.s_minus() * out.g_minus;
    return out;
}

EvolutionTrace trace_evolution(int which, int outcome, const Ensemble& e,
                               const ControlParams& c, NoiseStrength noise) {
    e.validate();
    c.validate();
    noise.validate();

    const OperatorSet ops = build_operator_set(c, e.phi, noise.r);
    const Operator& m = outcome > 0 ? ops.M_plus : ops.M_minus;
    const Operator& u = outcome > 0 ? ops.U_plus : ops.U_minus;
    const Operator& n = outcome > 0 ? ops.N_plus : ops.N_minus;
    const Operator& rot = outcome > 0 ? ops.R_plus : ops.R_minus;

    EvolutionTrace tr;
    const PureState psi = ensemble_state(e, which);
    tr.after_preweak = apply(m, psi);
    tr.after_feedforward = apply(u, tr.after_preweak);
    tr.after_noise[0] = apply(ops.E1, tr.after_feedforward);
    tr.after_noise[1] = apply(ops.E2, tr.after_feedforward);
    for (int j = 0; j < 2; ++j) {
        tr.after_postweak[j] = apply(n, apply(dagger(u), tr.after_noise[j]));
        tr.final[j] = apply(rot, tr.after_postweak[j]);
    }
    return tr;
}

}  // namespace qprotect
