#pragma once

// The composite control pipeline: a tunable weak measurement before the
// noise, a conditional feedforward unitary into the damping-immune frame,
// the amplitude-damping channel, the reversed feedforward, a second
// (post) weak measurement whose failure branch is abandoned, and a final
// conditional feedback rotation.  Success probability and output fidelity
// are computed exactly from the four kept operator paths.

#include <array>
#include <stdexcept>
#include <string>
#include <utility>

#include "qprotect/core.hpp"

namespace qprotect {

// Thrown when every measurement branch is abandoned and no normalized
// output state exists (e.g. projective preweak combined with p1 = p2 = 1
// at r = 0).
class degenerate_run_error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Two candidate pure states cos(theta/2)|+> +/- e^{i phi} sin(theta/2)|->
// drawn with prior probabilities s_plus and 1 - s_plus.
struct Ensemble {
    double theta = 0.0;   // in [0, pi]
    double phi = 0.0;     // in [-pi, pi)
    double s_plus = 0.5;  // in [0, 1]

    double s_minus() const { return 1.0 - s_plus; }
    void validate() const;
};

struct NoiseStrength {
    double r = 0.0;  // in [0, 1]

    void validate() const;
};

// All tunable knobs of the scheme.
struct ControlParams {
    double alpha = 0.0;        // measurement-basis angle, [-pi, pi)
    double p = 0.5;            // preweak strength, [0, 1]
    double p1 = 0.0;           // postweak abandon strength, + outcome, [0, 1]
    double p2 = 0.0;           // postweak abandon strength, - outcome, [0, 1]
    double gamma_plus = 0.0;   // feedback rotation, + outcome, [-pi, pi)
    double gamma_minus = 0.0;  // feedback rotation, - outcome, [-pi, pi)

    // paper_range additionally restricts p to [0, 1/2], the narrower range
    // the original description works with.
    void validate(bool paper_range = false) const;
};

struct OperatorSet {
    Operator M_plus, M_minus;        // preweak measurement pair
    Operator U_plus, U_minus;        // feedforward unitaries
    Operator E1, E2;                 // amplitude-damping Kraus pair
    Operator N_plus, Nbar_plus;      // postweak pair, + outcome
    Operator N_minus, Nbar_minus;    // postweak pair, - outcome
    Operator R_plus, R_minus;        // feedback rotations
};

// One kept branch of the pipeline: preweak outcome i, Kraus index j,
// the resulting unnormalized state and its squared norm.
struct PathRecord {
    int preweak_outcome = +1;  // +1 or -1
    int kraus_index = 1;       // 1 or 2
    PureState final_state{};
    double weight = 0.0;
};

struct ProtectionResult {
    double f_plus = 0.0, f_minus = 0.0;  // per-state output fidelities
    double g_plus = 0.0, g_minus = 0.0;  // per-state success probabilities
    double F = 0.0;                      // prior-weighted fidelity
    double G = 0.0;                      // prior-weighted success probability
    DensityMatrix rho_out_plus{}, rho_out_minus{};
    std::array<PathRecord, 4> paths_plus{}, paths_minus{};
};

// Stage-by-stage record of a single preweak outcome's branch, used to
// cross-check the composed path products.
struct EvolutionTrace {
    PureState after_preweak{};
    PureState after_feedforward{};
    std::array<PureState, 2> after_noise{};     // per Kraus index
    std::array<PureState, 2> after_postweak{};  // after reversal + postweak
    std::array<PureState, 2> final{};           // after feedback rotation
};

// The + (+1) or - (-1) member of the ensemble, as a unit state.
PureState ensemble_state(const Ensemble& e, int which);

// Orthonormal measurement basis: |V+> and |V-> sit in the same plane as
// the protected family, offset by the basis angle alpha.
std::pair<PureState, PureState> build_basis(double alpha, double phi);

// M+ = sqrt(p)|V+><V+| + sqrt(1-p)|V-><V-|, M- with p <-> 1-p.
// M+^dag M+ + M-^dag M- = I for any p in [0, 1].
std::pair<Operator, Operator> build_preweak(double p, const PureState& v_plus,
                                            const PureState& v_minus);

// U+ = |0><V+| + |1><V-|, U- = |1><V+| + |0><V-|: map the measured basis
// onto the logical axis so the dominant component rides the immune state.
std::pair<Operator, Operator> build_feedforward(const PureState& v_plus,
                                                const PureState& v_minus);

// Amplitude damping with strength r: E1 = diag(1, sqrt(1-r)),
// E2 = sqrt(r)|0><1|.
std::pair<Operator, Operator> build_ad_kraus(double r);

// Kept/abandoned postweak pairs.  The abandoned - element carries
// sqrt(p2), which is what completeness of the pair forces.
struct PostweakSet {
    Operator N_plus, Nbar_plus, N_minus, Nbar_minus;
};
PostweakSet build_postweak(double p1, double p2, const PureState& v_plus,
                           const PureState& v_minus);

// Rotation by gamma about the axis normal to the protected plane.  Acting
// on a family state at plane angle t it produces the state at t + gamma;
// conjugating by diag(1, e^{i phi}) in the |+->
// basis carries the phi = 0 rotation to the general one, which is what
// makes the whole pipeline phase-covariant.
Operator build_feedback(double gamma, double phi);

// Generator Q with build_feedback(gamma) = cos(gamma/2) I + sin(gamma/2) Q.
Operator feedback_generator(double phi);

OperatorSet build_operator_set(const ControlParams& c, double phi, double r);

// The four kept branches (outcome x Kraus index) for one input state.
// Zero-weight branches are kept so the record count is always four.
std::array<PathRecord, 4> run_paths(const PureState& psi,
                                    const OperatorSet& ops);

// Full pipeline for both ensemble members.  Throws degenerate_run_error
// if either input loses all its probability.
ProtectionResult protect(const Ensemble& e, const ControlParams& c,
                         NoiseStrength noise);

// Stage-wise evolution for one input (`which` = +1/-1) and one preweak
// outcome (`outcome` = +1/-1).  Applies the operators one stage at a time;
// the final branches must agree with the composed run_paths records.
EvolutionTrace trace_evolution(int which, int outcome, const Ensemble& e,
                               const ControlParams& c, NoiseStrength noise);

}  // namespace qprotect
