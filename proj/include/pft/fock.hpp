#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pft/series.hpp"

namespace pft {

// Finite momentum window [j_min, j_max) for N fermion components.
struct Window {
	int ncomp = 1;
	int jmin = -1;
	int jmax = 1;

	int span() const { return jmax - jmin; }
	int modes() const { return ncomp * span(); }
	bool contains(int comp, int j) const {
		return comp >= 1 && comp <= ncomp && j >= jmin && j < jmax;
	}
	// Jordan-Wigner string order: component ascending, momentum ascending
	int index(int comp, int j) const { return (comp - 1) * span() + (j - jmin); }
	void validate() const;
	friend bool operator==(const Window &a, const Window &b) {
		return a.ncomp == b.ncomp && a.jmin == b.jmin && a.jmax == b.jmax;
	}
};

// Occupation bitset over the window modes (capacity 256).
struct FockBasis {
	static constexpr int kWords = 4;
	std::array<uint64_t, kWords> w{};

	bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
	void set(int i) { w[i >> 6] |= uint64_t(1) << (i & 63); }
	void reset(int i) { w[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
	int count_below(int i) const;
	int count() const;

	friend bool operator==(const FockBasis &a, const FockBasis &b) { return a.w == b.w; }
	friend bool operator<(const FockBasis &a, const FockBasis &b) { return a.w < b.w; }
};

// zero-charge vacuum: momenta j<0 occupied in every component
FockBasis sea_basis(const Window &win);

enum class FermiKind { Psi, PsiStar };

using ChargeVector = std::vector<int>;

int charge_sum(const ChargeVector &n);

// Sparse vector over the occupation basis with truncated-series
// coefficients. Immutable by convention: operations return new values.
struct StateVector {
	Window win;
	int order = 0;
	std::map<FockBasis, TruncSeries> terms;

	bool is_zero() const { return terms.empty(); }
	void add_term(const FockBasis &b, const TruncSeries &c);
	StateVector &axpy(const TruncSeries &c, const StateVector &x);  // *this += c*x
	StateVector &operator+=(const StateVector &x);
	StateVector &operator-=(const StateVector &x);
	friend bool operator==(const StateVector &a, const StateVector &b) {
		return a.terms == b.terms;
	}
};

StateVector zero_state(const Window &win, int order);
StateVector basis_state(const Window &win, const FockBasis &b, int order);

// psi creates (zero on an occupied mode), psi* annihilates (zero on an
// empty mode); the sign is the parity of occupied modes preceding the
// target in string order.
StateVector apply_fermion(FermiKind kind, int comp, int j, const StateVector &v);

// charged vacua |n> and <n| built by literal application of the
// ordered products of creation operators; the bra is returned as an
// ordinary vector via transposition in the occupation basis
StateVector vacuum_ket(const Window &win, const ChargeVector &n, int order);
StateVector vacuum_bra(const Window &win, const ChargeVector &n, int order);

TruncSeries pair(const StateVector &bra, const StateVector &ket);

// sign factors attached to the charged vacua
int eps_component(int comp, const ChargeVector &n);           // (-1)^(n_{c+1}+...+n_N)
int eps_pair(int alpha, int gamma, const ChargeVector &s);    // the ordered two-index sign

// debug dump: "(occupation-diff-from-sea) : coefficient" per line, sorted
std::string dump_state(const StateVector &v);

Rat max_abs_coeff(const StateVector &v);

}  // namespace pft
