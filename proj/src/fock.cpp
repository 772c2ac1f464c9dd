#include "pft/fock.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace pft {

void Window::validate() const {
	if (ncomp < 1) throw std::invalid_argument("window: need at least one component");
	if (!(jmin < 0 && 0 <= jmax)) throw std::invalid_argument("window: need jmin < 0 <= jmax");
	if (modes() > 64 * FockBasis::kWords)
		throw std::invalid_argument("window: too many modes for the occupation bitset");
}

int FockBasis::count_below(int i) const {
	int full = i >> 6, rest = i & 63;
	int c = 0;
	for (int k = 0; k < full; ++k) c += std::popcount(w[k]);
	if (rest) c += std::popcount(w[full] & ((uint64_t(1) << rest) - 1));
	return c;
}

int FockBasis::count() const {
	int c = 0;
	for (auto x : w) c += std::popcount(x);
	return c;
}

FockBasis sea_basis(const Window &win) {
	FockBasis b;
	for (int comp = 1; comp <= win.ncomp; ++comp)
		for (int j = win.jmin; j < 0; ++j) b.set(win.index(comp, j));
	return b;
}

int charge_sum(const ChargeVector &n) {
	int s = 0;
	for (int x : n) s += x;
	return s;
}

void StateVector::add_term(const FockBasis &b, const TruncSeries &c) {
	if (c.is_zero()) return;
	auto [it, fresh] = terms.emplace(b, c);
	if (!fresh) {
		it->second += c;
		if (it->second.is_zero()) terms.erase(it);
	}
}

StateVector &StateVector::axpy(const TruncSeries &c, const StateVector &x) {
	if (c.is_zero()) return *this;
	for (auto &[b, v] : x.terms) add_term(b, c * v);
	return *this;
}

StateVector &StateVector::operator+=(const StateVector &x) {
	for (auto &[b, v] : x.terms) add_term(b, v);
	return *this;
}

StateVector &StateVector::operator-=(const StateVector &x) {
	for (auto &[b, v] : x.terms) add_term(b, -v);
	return *this;
}

StateVector zero_state(const Window &win, int order) {
	StateVector v;
	v.win = win;
	v.order = order;
	return v;
}

StateVector basis_state(const Window &win, const FockBasis &b, int order) {
	StateVector v = zero_state(win, order);
	v.terms.emplace(b, TruncSeries::constant(1, order));
	return v;
}

StateVector apply_fermion(FermiKind kind, int comp, int j, const StateVector &v) {
	if (!v.win.contains(comp, j))
		throw std::out_of_range("apply_fermion: mode outside window");
	int idx = v.win.index(comp, j);
	StateVector r = zero_state(v.win, v.order);
	for (auto &[b, c] : v.terms) {
		bool occ = b.test(idx);
		if (kind == FermiKind::Psi ? occ : !occ) continue;
		FockBasis nb = b;
		if (kind == FermiKind::Psi)
			nb.set(idx);
		else
			nb.reset(idx);
		bool neg = b.count_below(idx) & 1;
		r.add_term(nb, neg ? -c : c);
	}
	return r;
}

namespace {

// ordered elementary-operator word for Psi*_n^{(comp)}, rightmost first
std::vector<std::pair<FermiKind, int>> psi_star_product(int n) {
	std::vector<std::pair<FermiKind, int>> ops;
	if (n > 0)
		for (int j = 0; j < n; ++j) ops.emplace_back(FermiKind::Psi, j);
	else
		for (int j = -1; j >= n; --j) ops.emplace_back(FermiKind::PsiStar, j);
	return ops;
}

}  // namespace

StateVector vacuum_ket(const Window &win, const ChargeVector &n, int order) {
	win.validate();
	if (static_cast<int>(n.size()) != win.ncomp)
		throw std::invalid_argument("vacuum_ket: charge vector size mismatch");
	for (int c = 0; c < win.ncomp; ++c) {
		if (n[c] > 0 && n[c] > win.jmax)
			throw std::out_of_range("vacuum_ket: charge too large for window");
		if (n[c] < 0 && n[c] < win.jmin)
			throw std::out_of_range("vacuum_ket: charge too large for window");
	}
	StateVector v = basis_state(win, sea_basis(win), order);
	for (int comp = 1; comp <= win.ncomp; ++comp)
		for (auto &[kind, j] : psi_star_product(n[comp - 1]))
			v = apply_fermion(kind, comp, j, v);
	return v;
}

StateVector vacuum_bra(const Window &win, const ChargeVector &n, int order) {
	// <n| = <0| Psi_{n_1}...Psi_{n_N}; transposing swaps psi <-> psi*
	// and reverses each product, which lands on the same word as the
	// ket construction.
	win.validate();
	if (static_cast<int>(n.size()) != win.ncomp)
		throw std::invalid_argument("vacuum_bra: charge vector size mismatch");
	StateVector v = basis_state(win, sea_basis(win), order);
	for (int comp = 1; comp <= win.ncomp; ++comp) {
		// Psi_n = psi*_0...psi*_{n-1} (n>0), psi_{-1}...psi_n (n<0)
		std::vector<std::pair<FermiKind, int>> word;
		if (n[comp - 1] > 0)
			for (int j = 0; j < n[comp - 1]; ++j) word.emplace_back(FermiKind::PsiStar, j);
		else
			for (int j = -1; j >= n[comp - 1]; --j) word.emplace_back(FermiKind::Psi, j);
		// transpose: reverse and flip kinds
		for (auto it = word.rbegin(); it != word.rend(); ++it) {
			FermiKind t =
			    it->first == FermiKind::Psi ? FermiKind::PsiStar : FermiKind::Psi;
			v = apply_fermion(t, comp, it->second, v);
		}
	}
	return v;
}

TruncSeries pair(const StateVector &bra, const StateVector &ket) {
	if (!(bra.win == ket.win)) throw std::invalid_argument("pair: window mismatch");
	TruncSeries r(std::min(bra.order, ket.order));
	auto a = bra.terms.begin();
	auto b = ket.terms.begin();
	while (a != bra.terms.end() && b != ket.terms.end()) {
		if (a->first < b->first)
			++a;
		else if (b->first < a->first)
			++b;
		else {
			r += a->second * b->second;
			++a, ++b;
		}
	}
	return r;
}

int eps_component(int comp, const ChargeVector &n) {
	int s = 0;
	for (size_t i = comp; i < n.size(); ++i) s += n[i];
	return (s & 1) ? -1 : 1;
}

int eps_pair(int alpha, int gamma, const ChargeVector &s) {
	if (alpha == gamma) return 1;
	int lo = std::min(alpha, gamma), hi = std::max(alpha, gamma);
	int sum = 0;
	for (int i = lo + 1; i <= hi; ++i) sum += s[i - 1];
	int sign = (sum & 1) ? -1 : 1;
	return alpha < gamma ? sign : -sign;
}

std::string dump_state(const StateVector &v) {
	FockBasis sea = sea_basis(v.win);
	std::ostringstream os;
	for (auto &[b, c] : v.terms) {
		os << "(";
		bool first = true;
		for (int comp = 1; comp <= v.win.ncomp; ++comp)
			for (int j = v.win.jmin; j < v.win.jmax; ++j) {
				int idx = v.win.index(comp, j);
				if (b.test(idx) == sea.test(idx)) continue;
				if (!first) os << " ";
				first = false;
				os << (b.test(idx) ? "+" : "-") << comp << ":" << j;
			}
		os << ") : " << c.str() << "\n";
	}
	return os.str();
}

Rat max_abs_coeff(const StateVector &v) {
	Rat best(0);
	for (auto &[b, c] : v.terms) {
		Rat a = max_abs_coeff(c);
		if (a > best) best = a;
	}
	return best;
}

}  // namespace pft
