#pragma once

#include <optional>

#include "cwork/block_unitary.hpp"
#include "cwork/ladder.hpp"

namespace cwork {

// ------------------------------------------------- energy conserving V -----

// Explicit index windows for the system and auxiliary registers.
struct CwpWindows {
    int s_lo = 0, s_hi = 0;
    int a_lo = 0, a_hi = 0;
};

// Unitary on system x auxiliary, block diagonal in total ladder index.
// Basis element (s, a) sits at flat index (s - s_lo) * dim_a + (a - a_lo).
struct EnergyConservingUnitary {
    CwpWindows windows;
    BlockUnitary u;

    int dim_s() const { return windows.s_hi - windows.s_lo + 1; }
    int dim_a() const { return windows.a_hi - windows.a_lo + 1; }
    int flat(int s, int a) const {
        return (s - windows.s_lo) * dim_a() + (a - windows.a_lo);
    }

    double unitarity_residual() const { return u.unitarity_residual(); }
    double commutation_residual() const { return u.commutation_residual(); }
};

// Builds the process unitary for p = q * r: on each total-index block with
// p_n > 0 the column over (n, 0) is sent to
//   (1/sqrt(p_n)) sum_{j+k=n} e^{i(phq_j + phr_k)} sqrt(q_j r_k) |j, k>,
// completed to a block unitary by deterministic Gram-Schmidt; all other
// blocks are identity. phases_* align with the factor windows (empty means
// zero). Throws ConvolutionMismatch when q * r differs from p by more than
// 1e-10 (sup norm), WindowOverflow when explicit windows cannot hold the
// supports plus the auxiliary start level 0.
EnergyConservingUnitary build_cwp_unitary(const EnergyDistribution& p,
                                          const EnergyDistribution& q,
                                          const EnergyDistribution& r,
                                          const std::vector<double>& phases_q = {},
                                          const std::vector<double>& phases_r = {},
                                          const std::optional<CwpWindows>& windows = std::nullopt);

// ----------------------------------------------------------- application ---

struct CwpRecord {
    LadderState input;
    LadderState output;
    LadderState work;
    double product_fidelity = 0.0; // leading Schmidt weight of V(input x |0>)
    double unitarity_residual = 0.0;
    double commutation_residual = 0.0;
};

// Applies V to input x |0>_A and factors the result. The output must be a
// product state: throws NotAProcess when the leading Schmidt weight is
// below 1 - 1e-8. Throws WindowOverflow when the input does not fit the
// system window. The global phase is fixed by making the largest output
// amplitude real positive.
CwpRecord apply_cwp(const EnergyConservingUnitary& v, const LadderState& input);

// Work distribution r solving p_in = p_out * r with r >= 0, solved by
// nonnegative least squares on the admissible window; throws NoValidProcess
// when the window is empty or the residual exceeds 1e-10.
EnergyDistribution infer_work_distribution(const EnergyDistribution& input,
                                           const EnergyDistribution& output);

// Point-mass work state: max weight > 1 - 1e-9 and variance <= 1e-12.
bool is_reversible(const CwpRecord& record);

// ---------------------------------------------------------- beam splitter --

// Two-mode number-conserving rotation exp[theta (a b^dag - a^dag b)] applied
// to |alpha> x |0>, truncated at `truncation` levels per mode. The record's
// output and work factors approach |alpha cos theta> and |-alpha sin theta>.
// Throws TruncationTooSmall when the coherent tail does not fit.
CwpRecord beam_splitter_process(Complex alpha, double theta, int truncation);

// ------------------------------------------------------ disorder runner ----

struct DisorderMonotoneReport {
    bool majorization_output = false; // input dist majorized by output dist
    bool majorization_work = false;
    std::vector<double> disorder_input;
    std::vector<double> disorder_output;
    std::vector<double> disorder_work;
    bool disorder_never_increases = false;
    bool all_hold = false;
};

// Verifies p < q, p < r (majorization) and f(p) >= max(f(q), f(r)) for each
// supplied disorder functional.
DisorderMonotoneReport disorder_monotone_check(const CwpRecord& record,
                                               const std::vector<DisorderFunctional>& fs);

} // namespace cwork
