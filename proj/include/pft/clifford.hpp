#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pft/fock.hpp"

namespace pft {

// Q is a quadratic fermion monomial with Q^2 = 0, so 1 + lambda*Q is
// exp(lambda*Q) and stays in the Clifford group.
enum class QuadKind { AA, BB, CC };  // psi psi*, psi psi, psi* psi*

struct QuadFactor {
	QuadKind kind = QuadKind::AA;
	int comp1 = 1, j1 = 0;
	int comp2 = 1, j2 = 0;
	Rat lambda = 0;
};

struct CliffordElement {
	// g = product of (1 + lambda_i Q_i), applied right to left
	std::vector<QuadFactor> factors;

	// largest |momentum| touched by any factor (0 for the identity)
	int support_radius() const;
	void validate(const Window &win, int margin = 0) const;
};

// apply one (1 + lambda*Q) factor
StateVector apply_quad_factor(const QuadFactor &f, const StateVector &v);

StateVector g_apply(const CliffordElement &g, const StateVector &v);

// deterministic pseudo-random element: mixed kinds (all three present
// once n_factors >= 3), small rational weights, modes inside the
// margin-shrunk window
CliffordElement g_random(uint64_t seed, const Window &win, int n_factors, int margin);

using LinearMap = std::function<StateVector(const StateVector &)>;

// Residual of the operator bilinear identity
//   sum_{comp,j} (psi_j X u) (x) (psi*_j X v) + (psi*_j X u) (x) (psi_j X v)
// = sum_{comp,j} (X psi_j u) (x) (X psi*_j v) + (X psi*_j u) (x) (X psi_j v)
// with j running over the window modes; exactly zero when X is a
// Clifford element over window modes.
TruncSeries bilinear_identity_residual(const LinearMap &X, const Window &win,
                                       const std::vector<std::pair<StateVector, StateVector>> &pairs);

// same over the full tensor basis (requires few window modes)
TruncSeries bilinear_identity_residual_full(const LinearMap &X, const Window &win);

LinearMap clifford_map(const CliffordElement &g);

// serialization used by the CLI config (JSON record list)
std::string quad_kind_name(QuadKind k);
std::optional<QuadKind> quad_kind_from_name(const std::string &s);

}  // namespace pft
