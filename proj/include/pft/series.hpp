#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pft {

using Rat = mpq_class;

// Formal variable, interned by name in a process-wide table.
struct VarId {
	uint32_t id = 0;
	friend bool operator==(VarId a, VarId b) { return a.id == b.id; }
	friend bool operator!=(VarId a, VarId b) { return a.id != b.id; }
	friend bool operator<(VarId a, VarId b) { return a.id < b.id; }
};

VarId intern_var(const std::string &name);
const std::string &var_name(VarId v);

// Product of variable powers, kept sorted by variable id.
class Monomial {
  public:
	Monomial() = default;
	static Monomial one() { return Monomial(); }
	static Monomial var(VarId v, uint32_t exp = 1);

	uint32_t degree() const { return deg_; }
	bool is_one() const { return pw_.empty(); }
	uint32_t exponent(VarId v) const;
	const std::vector<std::pair<uint32_t, uint32_t>> &powers() const { return pw_; }

	Monomial operator*(const Monomial &o) const;
	bool operator==(const Monomial &o) const { return deg_ == o.deg_ && pw_ == o.pw_; }

	// graded-lex: total degree first, then lexicographic on the
	// (variable, exponent) sequence
	bool operator<(const Monomial &o) const {
		if (deg_ != o.deg_) return deg_ < o.deg_;
		return pw_ < o.pw_;
	}

	std::string str() const;

  private:
	std::vector<std::pair<uint32_t, uint32_t>> pw_;
	uint32_t deg_ = 0;
};

// Multivariate polynomial over exact rationals, truncated at a fixed
// total degree. Zero coefficients are never stored, so equality is a
// direct term-map comparison. Arithmetic combines orders by minimum.
class TruncSeries {
  public:
	explicit TruncSeries(int order) : order_(order) {
		if (order < 0) throw std::invalid_argument("series order must be >= 0");
	}
	static TruncSeries constant(const Rat &c, int order);
	static TruncSeries variable(VarId v, int order);

	int order() const { return order_; }
	bool is_zero() const { return terms_.empty(); }
	const std::map<Monomial, Rat> &terms() const { return terms_; }
	Rat constant_term() const;
	Rat coeff(const Monomial &m) const;

	// minimum total degree of a stored term; order()+1 when zero
	int valuation() const;

	void add_term(const Monomial &m, const Rat &c);

	TruncSeries truncated(int new_order) const;

	TruncSeries operator-() const;
	TruncSeries &operator+=(const TruncSeries &o);
	TruncSeries &operator-=(const TruncSeries &o);
	friend TruncSeries operator+(TruncSeries a, const TruncSeries &b) { return a += b; }
	friend TruncSeries operator-(TruncSeries a, const TruncSeries &b) { return a -= b; }
	friend TruncSeries operator*(const TruncSeries &a, const TruncSeries &b);
	TruncSeries &operator*=(const Rat &c);
	friend TruncSeries operator*(TruncSeries a, const Rat &c) { return a *= c; }

	friend bool operator==(const TruncSeries &a, const TruncSeries &b) {
		return a.terms_ == b.terms_;
	}
	friend bool operator!=(const TruncSeries &a, const TruncSeries &b) { return !(a == b); }

	// canonical "coeff * var^k * ..." form, graded-lex term order
	std::string str() const;

  private:
	int order_;
	std::map<Monomial, Rat> terms_;
};

TruncSeries ts_mul(const TruncSeries &a, const TruncSeries &b);

// exp of a series with zero constant term (finite sum up to the order)
TruncSeries ts_exp(const TruncSeries &x);

// multiplicative inverse of a series with nonzero constant term
TruncSeries ts_inv(const TruncSeries &x);

TruncSeries ts_pow(const TruncSeries &x, unsigned e);

// largest |coefficient|; zero for the zero series
Rat max_abs_coeff(const TruncSeries &x);

}  // namespace pft
