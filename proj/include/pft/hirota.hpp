#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pft/taueval.hpp"

namespace pft {

// Counts of positive/negative Miwa insertions on the unbarred (left)
// and barred (right) time families.
struct SchemeSig {
	int Lp = 0, Lm = 0, Rp = 0, Rm = 0;
	int M() const { return Lp + Lm + Rp + Rm; }
	bool parity_ok() const { return ((std::abs(Lp - Lm) - std::abs(Rp - Rm)) % 2) == 0; }
	friend auto operator<=>(const SchemeSig &, const SchemeSig &) = default;
	std::string str() const;
};

// All signatures with the given point count; the intertwining filter
// drops pure one-sided (DKP) signatures, and mod_symmetry reduces by
// the two involutions (Lp<->Lm with Rp<->Rm, and left<->right).
std::vector<SchemeSig> classify_schemes(int M, bool intertwining, bool mod_symmetry);

// Concrete scheme: component index and point variable per slot.
struct SchemeSlots {
	std::vector<std::pair<int, VarId>> lp, lm, rp, rm;
	SchemeSig sig() const {
		return {static_cast<int>(lp.size()), static_cast<int>(lm.size()),
		        static_cast<int>(rp.size()), static_cast<int>(rm.size())};
	}
};

// Product of irreducible factors eps_v and (eps_v1 - eps_v2) over an
// exact rational constant; numerator and denominator multisets.
struct CoeffFactor {
	bool is_diff = false;
	VarId v1{}, v2{};
	friend auto operator<=>(const CoeffFactor &, const CoeffFactor &) = default;
};

struct Coeff {
	Rat c = Rat(1);
	std::vector<CoeffFactor> num, den;

	void normalize();
	bool is_zero() const { return c == 0; }
	Coeff &operator*=(const Coeff &o);
	friend Coeff operator*(Coeff a, const Coeff &b) { return a *= b; }
	TruncSeries to_series(int order) const;  // requires den empty
	bool same_factors(const Coeff &o) const { return num == o.num && den == o.den; }
	friend bool operator==(const Coeff &a, const Coeff &b) {
		return a.c == b.c && a.num == b.num && a.den == b.den;
	}
	std::string str() const;
};

Coeff coeff_one();
Coeff coeff_rat(const Rat &r);
Coeff eps_coeff(int a, int b);                         // +1 if a<=b else -1
Coeff coeff_var(VarId v);                              // eps_v
Coeff coeff_var_inv(VarId v);                          // 1/eps_v  (a point "a" itself)
Coeff coeff_invdiff(VarId x, VarId y);                 // eps_x - eps_y   (x^-1 - y^-1)
Coeff coeff_pointdiff(VarId x, VarId y);               // (x - y) as (eps_y-eps_x)/(eps_x eps_y)

// E_{ab}(z_i, z_j) = eps_{ab} (eps_i - eps_j)^{delta_{ab}} and inverse
Coeff e_factor(int a, int b, VarId vi, VarId vj);
Coeff e_factor_inv(int a, int b, VarId vi, VarId vj);

// Relative tau argument inside a relation: charge shifts plus signed
// Miwa shift multiplicities keyed by (component, point variable).
struct ArgSpec {
	std::vector<int> dn, dnbar;
	std::map<std::pair<int, uint32_t>, int> t, tbar;

	static ArgSpec zero(int N);
	ArgSpec &n(int comp, int d = +1);
	ArgSpec &nb(int comp, int d = +1);
	ArgSpec &ts(int comp, VarId v, int sign = +1);
	ArgSpec &tbs(int comp, VarId v, int sign = +1);
	ArgSpec &add(const ArgSpec &delta);

	friend bool operator==(const ArgSpec &, const ArgSpec &) = default;
	bool operator<(const ArgSpec &o) const;
	std::string key() const;
	std::string shorthand(const std::string &nn, const std::string &tn) const;
};

// delta-exponent slot of a canonical term, kept for mutation tests
struct DeltaSlot {
	int compX = 0, compY = 0;
	VarId vX{}, vY{};
};

struct RelTerm {
	int side = +1;  // +1 LHS, -1 RHS
	Coeff coeff;
	ArgSpec a1, a2;
	std::vector<DeltaSlot> delta_slots;
};

struct Relation {
	std::string label;
	int N = 1;
	std::vector<RelTerm> terms;
	bool flagged_trivial = false;

	// parity of |n|-|nbar| a base must have so the terms are
	// not forced to vanish
	int required_parity() const;
	void normalize_terms();  // order the two factors of each term
};

// multiply every term by the least common multiple of the denominator
// factor multisets; afterwards all coefficients are polynomial
Relation clear_denominators(const Relation &rel);

// sum of coeff * tau(a1) * tau(a2) with LHS counted + and RHS -, exact
TruncSeries residual(const Relation &rel, const ChargeVector &n, const ChargeVector &nbar,
                     EvalContext &ctx, const TimeAssignment &base_t = {},
                     const TimeAssignment &base_tbar = {});

// true when the terms cancel pairwise at the symbolic level
bool symbolically_trivial(const Relation &rel);

// the general Hirota-Miwa relation for a concrete scheme
Relation build_genHM(const SchemeSlots &slots, int N);

enum class FourPointKind { K3010, K3001, K2020, K2011 };
std::string four_point_name(FourPointKind k);

// canonical 4-point relations; comps = (alpha, beta, nu, mu) linked to
// vars = (a, b, c, d).  For the (2,0|2,0) kind the printed source form
// carries a corrupted final term; `printed_2020` selects it anyway.
Relation build_canonical_4pt(FourPointKind kind, const std::array<int, 4> &comps,
                             const std::array<VarId, 4> &vars, int N,
                             bool printed_2020 = false);

// the 32-entry two-point catalog
const std::vector<std::string> &two_point_labels();
bool two_point_has_emendation(const std::string &label);
std::string two_point_family(const std::string &label);
Relation build_two_point(const std::string &label, int alpha, int beta, VarId a, VarId b,
                         int N, bool emended);

// global change of variables: multiply every coefficient and shift
// every tau argument
Relation transform(const Relation &rel, const Coeff &mult, const ArgSpec &delta);

// swap the primed/unprimed data (exchange the two factors of every
// term and re-anchor at the primed base) and the barred/unbarred data
Relation sym_swap_primed(const Relation &rel);
Relation sym_swap_barred(const Relation &rel);

// B = ratio * A termwise after grouping by argument pairs; the ratio
// may carry leftover symbolic factors (reported via str())
std::optional<Coeff> compare_relations(const Relation &A, const Relation &B);

// documented equivalence: the (2,1|1,0) relation is the (3,0|0,1) one
// multiplied by E_{alpha nu}(c,a) E_{beta nu}(c,b) under a shift
bool equivalence_2110_3001(const std::array<int, 4> &comps, const std::array<VarId, 4> &vars,
                           int N);

// remaining collapses of the 8 intertwining signatures onto the 4
// canonical ones; `which` in {"2101->3010", "2002->2020", "1111->2020"}
bool equivalence_collapse(const std::string &which, const std::array<int, 4> &comps,
                          const std::array<VarId, 4> &vars, int N);

enum class MutationKind { FlipSign, ToggleDelta, FlipCharge };

struct Mutation {
	MutationKind kind = MutationKind::FlipSign;
	int term = 0;
	int slot = 0;      // delta slot index
	int arg = 1;       // 1 or 2
	int comp = 1;      // charge component
	bool bar = false;  // mutate dnbar instead of dn
	std::string str() const;
};

std::vector<Mutation> enumerate_mutations(const Relation &rel);
Relation apply_mutation(const Relation &rel, const Mutation &m);

std::string relation_shorthand(const Relation &rel);

}  // namespace pft
