#include "pft/taueval.hpp"

#include <algorithm>
#include <sstream>

namespace pft {

namespace {

void sort_shifts(std::vector<MiwaShiftSpec> &s) {
	std::sort(s.begin(), s.end(), [](const MiwaShiftSpec &a, const MiwaShiftSpec &b) {
		return std::tie(a.comp, a.var.id, a.sign) < std::tie(b.comp, b.var.id, b.sign);
	});
}

void key_charges(std::ostringstream &os, const ChargeVector &n) {
	for (int x : n) os << x << ",";
}

void key_shifts(std::ostringstream &os, const std::vector<MiwaShiftSpec> &s) {
	for (auto &x : s) os << (x.sign > 0 ? "+" : "-") << x.comp << ":" << x.var.id << ";";
}

void key_times(std::ostringstream &os, const TimeAssignment &t) {
	for (auto &[k, c] : t.entries) os << k.first << ":" << k.second << "=" << c.str() << ";";
}

}  // namespace

TauArgument TauArgument::normalized() const {
	TauArgument a = *this;
	for (auto &s : a.t_shifts)
		if (s.extended) {
			a.n[s.comp - 1] += s.sign;
			s.extended = false;
		}
	for (auto &s : a.tbar_shifts)
		if (s.extended) {
			a.nbar[s.comp - 1] += s.sign;
			s.extended = false;
		}
	sort_shifts(a.t_shifts);
	sort_shifts(a.tbar_shifts);
	return a;
}

std::string TauArgument::key() const {
	std::ostringstream os;
	os << "n=";
	key_charges(os, n);
	os << "|nb=";
	key_charges(os, nbar);
	os << "|t=";
	key_shifts(os, t_shifts);
	os << "|tb=";
	key_shifts(os, tbar_shifts);
	os << "|bt=";
	key_times(os, base_t);
	os << "|btb=";
	key_times(os, base_tbar);
	return os.str();
}

bool parity_vanishes(const ChargeVector &n, const ChargeVector &nbar) {
	return ((charge_sum(n) - charge_sum(nbar)) & 1) != 0;
}

namespace {

// max momentum moved per unit of series degree for one time entry
int shift_ratio(int k, const TruncSeries &coeff) {
	int val = std::max(1, coeff.valuation());
	return (k + val - 1) / val;
}

}  // namespace

Window window_bound(const TauArgument &arg0, const EvalContext &ctx) {
	TauArgument arg = arg0.normalized();
	int maxcharge = 0;
	for (int x : arg.n) maxcharge = std::max(maxcharge, std::abs(x));
	for (int x : arg.nbar) maxcharge = std::max(maxcharge, std::abs(x));
	int kshift = 0;
	if (!arg.t_shifts.empty() || !arg.tbar_shifts.empty()) kshift = 1;
	for (auto &[key, c] : arg.base_t.entries)
		kshift = std::max(kshift, shift_ratio(key.second, c));
	for (auto &[key, c] : arg.base_tbar.entries)
		kshift = std::max(kshift, shift_ratio(key.second, c));
	int reach = maxcharge + ctx.g.support_radius() + ctx.D * kshift;
	Window w;
	w.ncomp = ctx.N;
	w.jmin = -reach - 1;
	w.jmax = reach + 1;
	return w;
}

namespace {

TruncSeries tau_on_window(const TauArgument &arg, EvalContext &ctx, const Window &win) {
	int D = ctx.D;
	// times: base assignment plus the Miwa substitutions
	TimeAssignment t = arg.base_t;
	for (auto &s : arg.t_shifts) accumulate_miwa(t, s, D);
	TimeAssignment tbar = arg.base_tbar;
	tbar.bar = true;
	for (auto &s : arg.tbar_shifts) accumulate_miwa(tbar, s, D);

	ChargeVector mnbar(arg.nbar.size());
	for (size_t i = 0; i < arg.nbar.size(); ++i) mnbar[i] = -arg.nbar[i];

	StateVector ket = vacuum_ket(win, mnbar, D);
	if (!tbar.empty()) ket = apply_exp_current(ket_evolution(tbar), ket);
	ket = g_apply(ctx.g, ket);

	StateVector bra = vacuum_bra(win, arg.n, D);
	if (!t.empty()) bra = apply_exp_current(bra_evolution(t), bra);

	return pair(bra, ket);
}

}  // namespace

TruncSeries tau(const TauArgument &arg0, EvalContext &ctx) {
	TauArgument arg = arg0.normalized();
	if (static_cast<int>(arg.n.size()) != ctx.N || static_cast<int>(arg.nbar.size()) != ctx.N)
		throw std::invalid_argument("tau: charge vector size mismatch");
	if (ctx.parity_shortcut && parity_vanishes(arg.n, arg.nbar))
		return TruncSeries(ctx.D);
	Window win = ctx.window_override ? *ctx.window_override : window_bound(arg, ctx);
	std::ostringstream key;
	key << arg.key() << "|D=" << ctx.D << "|w=" << win.jmin << "," << win.jmax;
	{
		std::lock_guard<std::mutex> lk(ctx.memo_mu);
		auto it = ctx.memo.find(key.str());
		if (it != ctx.memo.end()) return it->second;
	}
	TruncSeries r = tau_on_window(arg, ctx, win);
	std::lock_guard<std::mutex> lk(ctx.memo_mu);
	ctx.memo.emplace(key.str(), r);
	return r;
}

TruncSeries tau_matrix(int a, int b, const ChargeVector &s, const ChargeVector &r,
                       const std::vector<MiwaShiftSpec> &t_shifts,
                       const std::vector<MiwaShiftSpec> &tbar_shifts, EvalContext &ctx) {
	TauArgument arg;
	arg.n.resize(ctx.N);
	arg.nbar.resize(ctx.N);
	for (int i = 0; i < ctx.N; ++i) {
		arg.n[i] = s[i] + r[i] + (i == a - 1) - (i == b - 1);
		arg.nbar[i] = r[i] - s[i];
	}
	arg.t_shifts = t_shifts;
	arg.tbar_shifts = tbar_shifts;
	return tau(arg, ctx);
}

bool stabilization_check(const TauArgument &arg0, EvalContext &ctx) {
	TauArgument arg = arg0.normalized();
	Window w0 = ctx.window_override ? *ctx.window_override : window_bound(arg, ctx);
	Window w1 = w0;
	w1.jmin -= 1;
	w1.jmax += 1;
	TruncSeries a = tau_on_window(arg, ctx, w0);
	TruncSeries b = tau_on_window(arg, ctx, w1);
	return a == b;
}

}  // namespace pft
