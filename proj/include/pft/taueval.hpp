#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "pft/clifford.hpp"
#include "pft/currents.hpp"

namespace pft {

// Full argument of tau: discrete charges plus signed Miwa shifts on
// the two time families, with optional formal base times.
struct TauArgument {
	ChargeVector n, nbar;
	std::vector<MiwaShiftSpec> t_shifts, tbar_shifts;
	TimeAssignment base_t, base_tbar;

	// fold extended shifts into the stored charges
	TauArgument normalized() const;
	std::string key() const;  // canonical form for memoization
};

struct EvalContext {
	CliffordElement g;
	int N = 1;
	int D = 4;
	std::optional<Window> window_override;
	bool parity_shortcut = true;

	std::map<std::string, TruncSeries> memo;
	std::mutex memo_mu;

	EvalContext() = default;
	EvalContext(CliffordElement g_, int N_, int D_) : g(std::move(g_)), N(N_), D(D_) {}
	EvalContext(const EvalContext &) = delete;
	EvalContext &operator=(const EvalContext &) = delete;
};

// tau vanishes unless the two total charges have equal parity
bool parity_vanishes(const ChargeVector &n, const ChargeVector &nbar);

// conservative window guaranteed sufficient for exact evaluation:
// momentum reach = max|charge| + g support radius + D * K_shift
Window window_bound(const TauArgument &arg, const EvalContext &ctx);

// tau(n, nbar, t, tbar) = <n| e^{J(t)} g e^{-Jbar(tbar)} |-nbar>,
// exact through order D
TruncSeries tau(const TauArgument &arg, EvalContext &ctx);

// matrix tau: tau_{ab}(s, r, ...) = tau(s+r+e_a-e_b, r-s, ...)
TruncSeries tau_matrix(int a, int b, const ChargeVector &s, const ChargeVector &r,
                       const std::vector<MiwaShiftSpec> &t_shifts,
                       const std::vector<MiwaShiftSpec> &tbar_shifts, EvalContext &ctx);

// recompute with the window enlarged by one slot on each side and
// compare coefficientwise
bool stabilization_check(const TauArgument &arg, EvalContext &ctx);

}  // namespace pft
