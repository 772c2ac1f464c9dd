#include "pft/currents.hpp"

#include <stdexcept>

namespace pft {

void TimeAssignment::add(int comp, int k, const TruncSeries &c) {
	if (k < 1) throw std::invalid_argument("time order k must be >= 1");
	if (c.is_zero()) return;
	auto key = std::make_pair(comp, k);
	auto it = entries.find(key);
	if (it == entries.end()) {
		entries.emplace(key, c);
	} else {
		it->second += c;
		if (it->second.is_zero()) entries.erase(it);
	}
}

TimeAssignment miwa_times(const MiwaShiftSpec &spec, int order, bool bar) {
	TimeAssignment t;
	t.bar = bar;
	accumulate_miwa(t, spec, order);
	return t;
}

void accumulate_miwa(TimeAssignment &t, const MiwaShiftSpec &spec, int order) {
	TruncSeries eps = TruncSeries::variable(spec.var, order);
	TruncSeries p = TruncSeries::constant(1, order);
	for (int k = 1; k <= order; ++k) {
		p = p * eps;
		if (p.is_zero()) break;
		TruncSeries c = p;
		c *= Rat(spec.sign, k);
		t.add(spec.comp, k, c);
	}
}

TruncSeries xi_eval(const std::map<int, TruncSeries> &t_comp, const TruncSeries &z) {
	TruncSeries r(z.order());
	for (auto &[k, c] : t_comp) {
		if (k < 1) throw std::invalid_argument("xi_eval: order k must be >= 1");
		r += c * ts_pow(z, static_cast<unsigned>(k));
	}
	return r;
}

namespace {

// apply one elementary operator directly on a basis, tracking the sign
bool fermi_flip(FermiKind kind, int idx, FockBasis &b, bool &neg) {
	bool occ = b.test(idx);
	if (kind == FermiKind::Psi ? occ : !occ) return false;
	if (b.count_below(idx) & 1) neg = !neg;
	if (kind == FermiKind::Psi)
		b.set(idx);
	else
		b.reset(idx);
	return true;
}

}  // namespace

StateVector apply_J(int comp, int k, const StateVector &v) {
	const Window &win = v.win;
	StateVector r = zero_state(win, v.order);
	for (auto &[b0, c] : v.terms) {
		if (k == 0) {
			// :psi_j psi*_j: with the sea expectation subtracted;
			// diagonal with eigenvalue (occupied j>=0) - (empty j<0)
			int eig = 0;
			for (int j = win.jmin; j < win.jmax; ++j) {
				bool occ = b0.test(win.index(comp, j));
				if (j >= 0 && occ) ++eig;
				if (j < 0 && !occ) --eig;
			}
			if (eig != 0) r.add_term(b0, c * Rat(eig));
			continue;
		}
		for (int j = win.jmin; j < win.jmax; ++j) {
			if (j + k < win.jmin || j + k >= win.jmax) continue;
			FockBasis b = b0;
			bool neg = false;
			if (!fermi_flip(FermiKind::PsiStar, win.index(comp, j + k), b, neg)) continue;
			if (!fermi_flip(FermiKind::Psi, win.index(comp, j), b, neg)) continue;
			r.add_term(b, neg ? -c : c);
		}
	}
	return r;
}

StateVector apply_current_sum(const CurrentCoeffs &coeffs, const StateVector &v) {
	StateVector r = zero_state(v.win, v.order);
	for (auto &[key, c] : coeffs) {
		auto [comp, k] = key;
		r.axpy(c, apply_J(comp, k, v));
	}
	return r;
}

StateVector apply_exp_current(const CurrentCoeffs &coeffs, const StateVector &v) {
	for (auto &[key, c] : coeffs)
		if (c.valuation() < 1)
			throw std::domain_error(
			    "apply_exp_current: coefficient with nonzero constant term");
	StateVector sum = v;
	StateVector term = v;
	for (int m = 1;; ++m) {
		term = apply_current_sum(coeffs, term);
		for (auto &[b, c] : term.terms) c *= Rat(1, m);
		if (term.is_zero()) break;
		if (m > v.order + 1)
			throw std::logic_error("apply_exp_current: expansion failed to terminate");
		sum += term;
	}
	return sum;
}

CurrentCoeffs ket_evolution(const TimeAssignment &tbar) {
	CurrentCoeffs c;
	for (auto &[key, s] : tbar.entries) c.emplace(std::make_pair(key.first, -key.second), -s);
	return c;
}

CurrentCoeffs bra_evolution(const TimeAssignment &t) {
	CurrentCoeffs c;
	for (auto &[key, s] : t.entries) c.emplace(std::make_pair(key.first, -key.second), s);
	return c;
}

bool probe_is_interior(const StateVector &v, int need) {
	FockBasis sea = sea_basis(v.win);
	for (auto &[b, c] : v.terms)
		for (int comp = 1; comp <= v.win.ncomp; ++comp)
			for (int j = v.win.jmin; j < v.win.jmax; ++j) {
				int idx = v.win.index(comp, j);
				if (b.test(idx) == sea.test(idx)) continue;
				if (j < v.win.jmin + need || j >= v.win.jmax - need) return false;
			}
	return true;
}

TruncSeries commutator_residual(int gamma, int delta, int k, int l,
                                const std::vector<StateVector> &probes, int margin) {
	if (probes.empty()) throw std::invalid_argument("commutator_residual: no probes");
	int need = std::abs(k) + std::abs(l) + margin;
	Rat worst(0);
	for (auto &v : probes) {
		if (!probe_is_interior(v, need))
			throw std::invalid_argument("commutator_residual: probe too close to boundary");
		StateVector r = apply_J(gamma, k, apply_J(delta, l, v));
		r -= apply_J(delta, l, apply_J(gamma, k, v));
		if (gamma == delta && k == -l) {
			StateVector id = v;
			for (auto &[b, c] : id.terms) c *= Rat(k);
			r -= id;
		}
		Rat a = max_abs_coeff(r);
		if (a > worst) worst = a;
	}
	return TruncSeries::constant(worst, probes.front().order);
}

std::map<int, StateVector> bosonization_side(BosonRule rule, bool rhs, const Window &win,
                                             const ChargeVector &n, int comp, int bound) {
	win.validate();
	int order = 0;
	std::map<int, StateVector> side;
	bool bra_rule = rule == BosonRule::BraPsi || rule == BosonRule::BraPsiStar;
	if (!rhs) {
		// field components: psi(z) = sum_j psi_j z^j, psi*(z) = sum_j psi*_j z^-j,
		// acting on |n> or transposed onto the bra vector
		StateVector base =
		    bra_rule ? vacuum_bra(win, n, order) : vacuum_ket(win, n, order);
		for (int p = -bound; p <= bound; ++p) {
			int j;
			FermiKind kind;
			switch (rule) {
				case BosonRule::BraPsi:      j = p;  kind = FermiKind::PsiStar; break;
				case BosonRule::BraPsiStar:  j = -p; kind = FermiKind::Psi; break;
				case BosonRule::KetPsi:      j = p;  kind = FermiKind::Psi; break;
				case BosonRule::KetPsiStar:  j = -p; kind = FermiKind::PsiStar; break;
				default: throw std::logic_error("bad rule");
			}
			if (j < win.jmin || j >= win.jmax)
				throw std::out_of_range("bosonization_side: degree bound exceeds window");
			side.emplace(p, apply_fermion(kind, comp, j, base));
		}
		return side;
	}

	// the opposite side: eps_comp(n) z^offset exp(sign * sum_k u^k/k J_{-k})
	// applied to the charge-shifted vacuum, with u the expansion variable
	// (u = 1/z for bra rules, u = z for ket rules)
	int sign, offset, charge_step;
	switch (rule) {
		case BosonRule::BraPsi:      sign = -1; offset = n[comp - 1] - 1; charge_step = -1; break;
		case BosonRule::BraPsiStar:  sign = +1; offset = -n[comp - 1];    charge_step = +1; break;
		case BosonRule::KetPsi:      sign = +1; offset = n[comp - 1];     charge_step = +1; break;
		case BosonRule::KetPsiStar:  sign = -1; offset = -n[comp - 1] + 1; charge_step = -1; break;
		default: throw std::logic_error("bad rule");
	}
	bool bra = bra_rule;
	// z^p = z^offset * u^m with m = (offset - p) for bra rules (u = 1/z)
	// and m = (p - offset) for ket rules (u = z)
	int maxm = 0;
	for (int p = -bound; p <= bound; ++p) maxm = std::max(maxm, bra ? offset - p : p - offset);
	VarId u = intern_var("_boson_u");
	ChargeVector nn = n;
	nn[comp - 1] += charge_step;
	StateVector base = bra ? vacuum_bra(win, nn, maxm) : vacuum_ket(win, nn, maxm);
	CurrentCoeffs coeffs;
	TruncSeries us = TruncSeries::variable(u, maxm);
	TruncSeries up = TruncSeries::constant(1, maxm);
	for (int k = 1; k <= maxm; ++k) {
		up = up * us;
		if (up.is_zero()) break;
		TruncSeries c = up;
		c *= Rat(sign, k);
		coeffs.emplace(std::make_pair(comp, -k), c);
	}
	StateVector evolved = apply_exp_current(coeffs, base);
	int eps = eps_component(comp, n);
	for (int p = -bound; p <= bound; ++p) {
		int m = bra ? offset - p : p - offset;
		StateVector s = zero_state(win, 0);
		if (m >= 0) {
			Monomial mono = Monomial::var(u, static_cast<uint32_t>(m));
			for (auto &[b, c] : evolved.terms) {
				Rat q = c.coeff(mono) * eps;
				if (q != 0) s.add_term(b, TruncSeries::constant(q, 0));
			}
		}
		side.emplace(p, s);
	}
	return side;
}

TruncSeries bosonization_residual(BosonRule rule, const Window &win, const ChargeVector &n,
                                  int comp, int bound, const std::vector<StateVector> &probes) {
	auto lhs = bosonization_side(rule, false, win, n, comp, bound);
	auto rhs = bosonization_side(rule, true, win, n, comp, bound);
	Rat worst(0);
	for (int p = -bound; p <= bound; ++p) {
		StateVector d = lhs.at(p);
		d -= rhs.at(p);
		if (probes.empty()) {
			Rat a = max_abs_coeff(d);
			if (a > worst) worst = a;
		} else {
			for (auto &u : probes) {
				Rat a = max_abs_coeff(pair(u, d));
				if (a > worst) worst = a;
			}
		}
	}
	return TruncSeries::constant(worst, 0);
}

}  // namespace pft
