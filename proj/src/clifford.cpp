#include "pft/clifford.hpp"

#include <random>
#include <stdexcept>

namespace pft {

int CliffordElement::support_radius() const {
	int r = 0;
	for (auto &f : factors) {
		r = std::max(r, std::abs(f.j1));
		r = std::max(r, std::abs(f.j2));
	}
	return r;
}

void CliffordElement::validate(const Window &win, int margin) const {
	for (auto &f : factors) {
		if (f.kind == QuadKind::AA && f.comp1 == f.comp2 && f.j1 == f.j2)
			throw std::invalid_argument("clifford: diagonal psi psi* factor not allowed");
		if (f.kind != QuadKind::AA && f.comp1 == f.comp2 && f.j1 == f.j2)
			throw std::invalid_argument("clifford: identical-mode factor vanishes");
		for (auto [c, j] : {std::pair{f.comp1, f.j1}, std::pair{f.comp2, f.j2}}) {
			if (!win.contains(c, j)) throw std::out_of_range("clifford: factor outside window");
			if (j < win.jmin + margin || j >= win.jmax - margin)
				throw std::out_of_range("clifford: factor violates support margin");
		}
	}
}

StateVector apply_quad_factor(const QuadFactor &f, const StateVector &v) {
	FermiKind k1, k2;
	switch (f.kind) {
		case QuadKind::AA: k1 = FermiKind::Psi; k2 = FermiKind::PsiStar; break;
		case QuadKind::BB: k1 = FermiKind::Psi; k2 = FermiKind::Psi; break;
		case QuadKind::CC: k1 = FermiKind::PsiStar; k2 = FermiKind::PsiStar; break;
		default: throw std::logic_error("bad kind");
	}
	// Q = op1 op2, rightmost first
	StateVector qv = apply_fermion(k1, f.comp1, f.j1, apply_fermion(k2, f.comp2, f.j2, v));
	StateVector r = v;
	r.axpy(TruncSeries::constant(f.lambda, v.order), qv);
	return r;
}

StateVector g_apply(const CliffordElement &g, const StateVector &v) {
	StateVector r = v;
	for (auto it = g.factors.rbegin(); it != g.factors.rend(); ++it)
		r = apply_quad_factor(*it, r);
	return r;
}

CliffordElement g_random(uint64_t seed, const Window &win, int n_factors, int margin) {
	std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
	int lo = win.jmin + margin, hi = win.jmax - margin;  // [lo, hi)
	if (lo >= hi) throw std::invalid_argument("g_random: margin leaves no interior");
	std::uniform_int_distribution<int> mode(lo, hi - 1);
	std::uniform_int_distribution<int> comp(1, win.ncomp);
	std::uniform_int_distribution<int> num(1, 3);
	std::uniform_int_distribution<int> den(1, 3);
	std::uniform_int_distribution<int> flip(0, 1);
	CliffordElement g;
	for (int i = 0; i < n_factors; ++i) {
		QuadFactor f;
		f.kind = static_cast<QuadKind>(i % 3);
		for (int attempt = 0;; ++attempt) {
			f.comp1 = comp(rng);
			f.j1 = mode(rng);
			f.comp2 = comp(rng);
			f.j2 = mode(rng);
			if (!(f.comp1 == f.comp2 && f.j1 == f.j2)) break;
			if (attempt > 256) throw std::logic_error("g_random: cannot draw distinct modes");
		}
		f.lambda = Rat(num(rng), den(rng));
		if (flip(rng)) f.lambda = -f.lambda;
		g.factors.push_back(f);
	}
	return g;
}

LinearMap clifford_map(const CliffordElement &g) {
	return [g](const StateVector &v) { return g_apply(g, v); };
}

namespace {

using Tensor = std::map<std::pair<FockBasis, FockBasis>, TruncSeries>;

void tensor_axpy(Tensor &t, int sign, const StateVector &a, const StateVector &b) {
	for (auto &[ba, ca] : a.terms)
		for (auto &[bb, cb] : b.terms) {
			TruncSeries c = ca * cb;
			if (sign < 0) c = -c;
			auto key = std::make_pair(ba, bb);
			auto [it, fresh] = t.emplace(key, c);
			if (!fresh) {
				it->second += c;
				if (it->second.is_zero()) t.erase(it);
			}
		}
}

TruncSeries tensor_residual(const LinearMap &X, const Window &win, const StateVector &u,
                            const StateVector &v) {
	Tensor t;
	StateVector xu = X(u), xv = X(v);
	for (int comp = 1; comp <= win.ncomp; ++comp)
		for (int j = win.jmin; j < win.jmax; ++j) {
			StateVector pu = apply_fermion(FermiKind::Psi, comp, j, xu);
			StateVector sv = apply_fermion(FermiKind::PsiStar, comp, j, xv);
			tensor_axpy(t, +1, pu, sv);
			StateVector su = apply_fermion(FermiKind::PsiStar, comp, j, xu);
			StateVector pv = apply_fermion(FermiKind::Psi, comp, j, xv);
			tensor_axpy(t, +1, su, pv);
			tensor_axpy(t, -1, X(apply_fermion(FermiKind::Psi, comp, j, u)),
			            X(apply_fermion(FermiKind::PsiStar, comp, j, v)));
			tensor_axpy(t, -1, X(apply_fermion(FermiKind::PsiStar, comp, j, u)),
			            X(apply_fermion(FermiKind::Psi, comp, j, v)));
		}
	Rat worst(0);
	for (auto &[key, c] : t) {
		Rat a = max_abs_coeff(c);
		if (a > worst) worst = a;
	}
	return TruncSeries::constant(worst, u.order);
}

}  // namespace

TruncSeries bilinear_identity_residual(
    const LinearMap &X, const Window &win,
    const std::vector<std::pair<StateVector, StateVector>> &pairs) {
	Rat worst(0);
	for (auto &[u, v] : pairs) {
		Rat a = tensor_residual(X, win, u, v).constant_term();
		if (a > worst) worst = a;
	}
	return TruncSeries::constant(worst, pairs.empty() ? 0 : pairs.front().first.order);
}

TruncSeries bilinear_identity_residual_full(const LinearMap &X, const Window &win) {
	if (win.modes() > 8)
		throw std::invalid_argument("bilinear_identity_residual_full: window too large");
	int nbasis = 1 << win.modes();
	Rat worst(0);
	for (int a = 0; a < nbasis; ++a)
		for (int b = 0; b < nbasis; ++b) {
			FockBasis ba, bb;
			ba.w[0] = static_cast<uint64_t>(a);
			bb.w[0] = static_cast<uint64_t>(b);
			StateVector u = basis_state(win, ba, 0);
			StateVector v = basis_state(win, bb, 0);
			Rat r = tensor_residual(X, win, u, v).constant_term();
			if (r > worst) worst = r;
		}
	return TruncSeries::constant(worst, 0);
}

std::string quad_kind_name(QuadKind k) {
	switch (k) {
		case QuadKind::AA: return "AA";
		case QuadKind::BB: return "BB";
		case QuadKind::CC: return "CC";
	}
	return "??";
}

std::optional<QuadKind> quad_kind_from_name(const std::string &s) {
	if (s == "AA") return QuadKind::AA;
	if (s == "BB") return QuadKind::BB;
	if (s == "CC") return QuadKind::CC;
	return std::nullopt;
}

}  // namespace pft
