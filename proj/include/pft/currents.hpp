#pragma once

#include <map>
#include <utility>
#include <vector>

#include "pft/fock.hpp"

namespace pft {

// Times t_{comp,k} (k >= 1) with truncated-series coefficients.  The
// bar flag records whether the assignment drives J(t) (modes J_{+k})
// or the barred family (modes J_{-k}).
struct TimeAssignment {
	bool bar = false;
	std::map<std::pair<int, int>, TruncSeries> entries;

	void add(int comp, int k, const TruncSeries &c);
	bool empty() const { return entries.empty(); }
};

// One Miwa substitution: t_{comp,k} += sign * eps^k / k.  The extended
// flag asks the caller to also shift the matching discrete charge.
struct MiwaShiftSpec {
	int sign = +1;
	int comp = 1;
	VarId var;
	bool extended = false;
};

TimeAssignment miwa_times(const MiwaShiftSpec &spec, int order, bool bar = false);
void accumulate_miwa(TimeAssignment &t, const MiwaShiftSpec &spec, int order);

// xi(t_comp, z) = sum_k t_k z^k for a finite list of times
TruncSeries xi_eval(const std::map<int, TruncSeries> &t_comp, const TruncSeries &z);

// Sum of current modes sum c_{comp,k} J_k^{(comp)} with k any integer;
// k = 0 is the normal-ordered charge mode.
using CurrentCoeffs = std::map<std::pair<int, int>, TruncSeries>;

// single mode J_k^{(comp)} restricted to the window; exact
StateVector apply_J(int comp, int k, const StateVector &v);

StateVector apply_current_sum(const CurrentCoeffs &coeffs, const StateVector &v);

// exp of a current sum; every coefficient must have positive series
// valuation so the expansion terminates within the truncation order
StateVector apply_exp_current(const CurrentCoeffs &coeffs, const StateVector &v);

// evolution coefficient maps entering tau evaluation: both the ket
// factor exp(-Jbar(tbar)) and the transposed bra factor exp(J(t))^T
// act through the raising modes J_{-k}
CurrentCoeffs ket_evolution(const TimeAssignment &tbar);  // (comp,-k) -> -tbar_{comp,k}
CurrentCoeffs bra_evolution(const TimeAssignment &t);     // (comp,-k) -> +t_{comp,k}

// max-norm of ([J_k, J_l] - k delta delta) over interior probes
TruncSeries commutator_residual(int gamma, int delta, int k, int l,
                                const std::vector<StateVector> &probes, int margin);

// true when the probe's deviation from the sea stays `need` modes away
// from both window boundaries
bool probe_is_interior(const StateVector &v, int need);

enum class BosonRule { BraPsi, BraPsiStar, KetPsi, KetPsiStar };

// both sides of a bosonization rule as maps z-power -> state, for
// |power| <= bound
std::map<int, StateVector> bosonization_side(BosonRule rule, bool rhs, const Window &win,
                                             const ChargeVector &n, int comp, int bound);

// max coefficient discrepancy between the two sides over the interior
// z-powers; probes empty means full componentwise comparison
TruncSeries bosonization_residual(BosonRule rule, const Window &win, const ChargeVector &n,
                                  int comp, int bound,
                                  const std::vector<StateVector> &probes = {});

}  // namespace pft
