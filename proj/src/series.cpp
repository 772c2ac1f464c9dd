#include "pft/series.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace pft {

namespace {
struct VarTable {
	std::mutex mu;
	std::vector<std::string> names;
	std::unordered_map<std::string, uint32_t> ids;
};
VarTable &table() {
	static VarTable t;
	return t;
}
}  // namespace

VarId intern_var(const std::string &name) {
	auto &t = table();
	std::lock_guard<std::mutex> lk(t.mu);
	auto it = t.ids.find(name);
	if (it != t.ids.end()) return VarId{it->second};
	uint32_t id = static_cast<uint32_t>(t.names.size());
	t.names.push_back(name);
	t.ids.emplace(name, id);
	return VarId{id};
}

const std::string &var_name(VarId v) {
	auto &t = table();
	std::lock_guard<std::mutex> lk(t.mu);
	return t.names.at(v.id);
}

Monomial Monomial::var(VarId v, uint32_t exp) {
	Monomial m;
	if (exp > 0) {
		m.pw_.emplace_back(v.id, exp);
		m.deg_ = exp;
	}
	return m;
}

uint32_t Monomial::exponent(VarId v) const {
	for (auto &[id, e] : pw_)
		if (id == v.id) return e;
	return 0;
}

Monomial Monomial::operator*(const Monomial &o) const {
	Monomial r;
	r.pw_.reserve(pw_.size() + o.pw_.size());
	auto a = pw_.begin(), b = o.pw_.begin();
	while (a != pw_.end() || b != o.pw_.end()) {
		if (b == o.pw_.end() || (a != pw_.end() && a->first < b->first))
			r.pw_.push_back(*a++);
		else if (a == pw_.end() || b->first < a->first)
			r.pw_.push_back(*b++);
		else {
			r.pw_.emplace_back(a->first, a->second + b->second);
			++a, ++b;
		}
	}
	r.deg_ = deg_ + o.deg_;
	return r;
}

std::string Monomial::str() const {
	if (pw_.empty()) return "1";
	std::ostringstream os;
	bool first = true;
	for (auto &[id, e] : pw_) {
		if (!first) os << " * ";
		first = false;
		os << var_name(VarId{id});
		if (e > 1) os << "^" << e;
	}
	return os.str();
}

TruncSeries TruncSeries::constant(const Rat &c, int order) {
	TruncSeries s(order);
	if (c != 0) s.terms_.emplace(Monomial::one(), c);
	return s;
}

TruncSeries TruncSeries::variable(VarId v, int order) {
	TruncSeries s(order);
	if (order >= 1) s.terms_.emplace(Monomial::var(v), Rat(1));
	return s;
}

Rat TruncSeries::constant_term() const {
	auto it = terms_.find(Monomial::one());
	return it == terms_.end() ? Rat(0) : it->second;
}

Rat TruncSeries::coeff(const Monomial &m) const {
	auto it = terms_.find(m);
	return it == terms_.end() ? Rat(0) : it->second;
}

int TruncSeries::valuation() const {
	if (terms_.empty()) return order_ + 1;
	// graded order: first term has minimal degree
	return static_cast<int>(terms_.begin()->first.degree());
}

void TruncSeries::add_term(const Monomial &m, const Rat &c) {
	if (c == 0 || static_cast<int>(m.degree()) > order_) return;
	auto [it, fresh] = terms_.emplace(m, c);
	if (!fresh) {
		it->second += c;
		if (it->second == 0) terms_.erase(it);
	}
}

TruncSeries TruncSeries::truncated(int new_order) const {
	TruncSeries r(new_order);
	for (auto &[m, c] : terms_) {
		if (static_cast<int>(m.degree()) > new_order) break;
		r.terms_.emplace(m, c);
	}
	return r;
}

TruncSeries TruncSeries::operator-() const {
	TruncSeries r(order_);
	for (auto &[m, c] : terms_) r.terms_.emplace(m, -c);
	return r;
}

TruncSeries &TruncSeries::operator+=(const TruncSeries &o) {
	if (o.order_ < order_) *this = truncated(o.order_);
	for (auto &[m, c] : o.terms_) add_term(m, c);
	return *this;
}

TruncSeries &TruncSeries::operator-=(const TruncSeries &o) {
	if (o.order_ < order_) *this = truncated(o.order_);
	for (auto &[m, c] : o.terms_) add_term(m, -c);
	return *this;
}

TruncSeries operator*(const TruncSeries &a, const TruncSeries &b) {
	int order = std::min(a.order_, b.order_);
	TruncSeries r(order);
	for (auto &[ma, ca] : a.terms_) {
		if (static_cast<int>(ma.degree()) > order) break;
		for (auto &[mb, cb] : b.terms_) {
			if (static_cast<int>(ma.degree() + mb.degree()) > order) break;
			r.add_term(ma * mb, ca * cb);
		}
	}
	return r;
}

TruncSeries &TruncSeries::operator*=(const Rat &c) {
	if (c == 0) {
		terms_.clear();
		return *this;
	}
	for (auto &[m, v] : terms_) v *= c;
	return *this;
}

std::string TruncSeries::str() const {
	if (terms_.empty()) return "0";
	std::ostringstream os;
	bool first = true;
	for (auto &[m, c] : terms_) {
		Rat a = c;
		if (first) {
			if (a < 0) {
				os << "-";
				a = -a;
			}
		} else {
			os << (a < 0 ? " - " : " + ");
			if (a < 0) a = -a;
		}
		first = false;
		if (m.is_one())
			os << a.get_str();
		else if (a == 1)
			os << m.str();
		else
			os << a.get_str() << " * " << m.str();
	}
	return os.str();
}

TruncSeries ts_mul(const TruncSeries &a, const TruncSeries &b) { return a * b; }

TruncSeries ts_exp(const TruncSeries &x) {
	if (x.constant_term() != 0)
		throw std::domain_error("ts_exp: argument must have zero constant term");
	int order = x.order();
	TruncSeries sum = TruncSeries::constant(1, order);
	TruncSeries term = TruncSeries::constant(1, order);
	for (int m = 1; m <= order; ++m) {
		term = term * x;
		term *= Rat(1, m);
		if (term.is_zero()) break;
		sum += term;
	}
	return sum;
}

TruncSeries ts_inv(const TruncSeries &x) {
	Rat c = x.constant_term();
	if (c == 0) throw std::domain_error("ts_inv: constant term must be nonzero");
	int order = x.order();
	// 1/x = (1/c) * sum_m (-(x-c)/c)^m, the tail has positive valuation
	TruncSeries tail = x - TruncSeries::constant(c, order);
	tail *= Rat(-1) / c;
	TruncSeries sum = TruncSeries::constant(1, order);
	TruncSeries term = TruncSeries::constant(1, order);
	for (int m = 1; m <= order; ++m) {
		term = term * tail;
		if (term.is_zero()) break;
		sum += term;
	}
	sum *= Rat(1) / c;
	return sum;
}

TruncSeries ts_pow(const TruncSeries &x, unsigned e) {
	TruncSeries r = TruncSeries::constant(1, x.order());
	for (unsigned i = 0; i < e; ++i) r = r * x;
	return r;
}

Rat max_abs_coeff(const TruncSeries &x) {
	Rat best(0);
	for (auto &[m, c] : x.terms()) {
		Rat a = abs(c);
		if (a > best) best = a;
	}
	return best;
}

}  // namespace pft
