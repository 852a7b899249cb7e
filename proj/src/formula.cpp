#include "qbffpt/formula.hpp"

#include "clause_set.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace qbffpt {

Literal Literal::from_dimacs(int lit) {
	if (lit == 0)
		throw std::invalid_argument("literal 0 is not a variable");
	Var v = static_cast<Var>(lit < 0 ? -static_cast<long long>(lit) : lit);
	return make(v, lit > 0);
}

int Literal::to_dimacs() const {
	int v = static_cast<int>(var());
	return positive() ? v : -v;
}

void Clause::store(std::span<const Literal> lits) {
	size_ = static_cast<std::uint32_t>(lits.size());
	if (lits.size() <= kInline) {
		std::copy(lits.begin(), lits.end(), small_.begin());
		large_.clear();
	} else {
		large_.assign(lits.begin(), lits.end());
	}
}

Clause::Clause(std::vector<Literal> lits) {
	std::sort(lits.begin(), lits.end());
	for (std::size_t i = 0; i < lits.size(); ++i) {
		if (lits[i].var() == 0)
			throw std::invalid_argument("clause mentions variable 0");
		if (i > 0 && lits[i - 1].var() == lits[i].var()) {
			if (lits[i - 1] == lits[i])
				throw std::invalid_argument("clause repeats literal " + std::to_string(lits[i].to_dimacs()));
			throw std::invalid_argument("clause contains complementary literals on variable "
			                            + std::to_string(lits[i].var()));
		}
	}
	store(lits);
}

Clause::Clause(std::initializer_list<int> dimacs) : Clause(from_dimacs(std::span<const int>(dimacs.begin(), dimacs.size()))) {}

Clause Clause::from_dimacs(std::span<const int> lits) {
	std::vector<Literal> out;
	out.reserve(lits.size());
	for (int l : lits)
		out.push_back(Literal::from_dimacs(l));
	return Clause(std::move(out));
}

Clause Clause::trusted(std::span<const Literal> sorted_lits) {
	Clause c;
	c.store(sorted_lits);
	return c;
}

bool Clause::operator==(const Clause &o) const {
	auto a = literals(), b = o.literals();
	return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

std::strong_ordering Clause::operator<=>(const Clause &o) const {
	auto a = literals(), b = o.literals();
	return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

bool Clause::contains(Literal l) const {
	auto lits = literals();
	return std::binary_search(lits.begin(), lits.end(), l);
}

bool Clause::mentions(Var v) const {
	return contains(Literal::make(v, true)) || contains(Literal::make(v, false));
}

std::string Clause::to_string() const {
	std::string s = "(";
	auto lits = literals();
	for (std::size_t i = 0; i < lits.size(); ++i) {
		if (i)
			s += " | ";
		if (!lits[i].positive())
			s += '-';
		s += 'x' + std::to_string(lits[i].var());
	}
	return s + ")";
}

std::size_t ClauseHash::operator()(const Clause &c) const noexcept {
	std::size_t h = 0xcbf29ce484222325ull;
	for (Literal l : c.literals()) {
		h ^= l.code();
		h *= 0x100000001b3ull;
	}
	return h ^ c.size();
}

bool clash(const Clause &a, const Clause &b) {
	auto la = a.literals();
	auto lb = b.literals();
	std::size_t i = 0, j = 0;
	while (i < la.size() && j < lb.size()) {
		Var va = la[i].var(), vb = lb[j].var();
		if (va < vb)
			++i;
		else if (vb < va)
			++j;
		else {
			if (la[i] != lb[j])
				return true;
			++i;
			++j;
		}
	}
	return false;
}

void Assignment::set(Var v, bool value) {
	if (v >= values_.size())
		values_.resize(static_cast<std::size_t>(v) + 1, -1);
	values_[v] = value ? 1 : 0;
}

std::optional<bool> Assignment::get(Var v) const {
	if (v >= values_.size() || values_[v] < 0)
		return std::nullopt;
	return values_[v] == 1;
}

CnfMatrix::CnfMatrix(std::vector<Clause> clauses) {
	std::vector<char> keep(clauses.size(), 0);
	{
		detail::ClauseSet seen(clauses.size());
		for (std::size_t i = 0; i < clauses.size(); ++i)
			keep[i] = seen.insert(&clauses[i]);
	}
	clauses_.reserve(clauses.size());
	for (std::size_t i = 0; i < clauses.size(); ++i) {
		if (!keep[i])
			continue;
		width_ = std::max(width_, clauses[i].size());
		has_empty_ = has_empty_ || clauses[i].empty();
		clauses_.push_back(std::move(clauses[i]));
	}
}

Var CnfMatrix::max_var() const {
	Var m = 0;
	for (const auto &c : clauses_)
		m = std::max(m, c.max_var());
	return m;
}

std::size_t CnfMatrix::literal_count() const {
	std::size_t n = 0;
	for (const auto &c : clauses_)
		n += c.size();
	return n;
}

CnfMatrix assign(const CnfMatrix &m, Var v, bool value) {
	const Literal sat = Literal::make(v, value);
	const Literal falsified = sat.negated();
	std::vector<Clause> out;
	out.reserve(m.size());
	std::vector<Literal> rest;
	for (const auto &c : m.clauses()) {
		if (c.contains(sat))
			continue;
		if (!c.contains(falsified)) {
			out.push_back(c);
			continue;
		}
		rest.clear();
		for (Literal l : c.literals())
			if (l != falsified)
				rest.push_back(l);
		out.push_back(Clause::trusted(rest));
	}
	return CnfMatrix(std::move(out));
}

bool evaluate(const CnfMatrix &m, const Assignment &a) {
	bool all = true;
	for (const auto &c : m.clauses()) {
		bool sat = false;
		for (Literal l : c.literals()) {
			auto val = a.get(l.var());
			if (!val)
				throw std::invalid_argument("evaluate: variable " + std::to_string(l.var()) + " is unassigned");
			sat = sat || (*val == l.positive());
		}
		all = all && sat;
	}
	return all;
}

QuantPrefix::QuantPrefix(std::vector<QuantEntry> entries) : entries_(std::move(entries)) {
	std::vector<char> seen(max_var() + std::size_t{1}, 0);
	for (const auto &e : entries_) {
		if (e.var == 0)
			throw std::invalid_argument("prefix quantifies variable 0");
		if (seen[e.var]++)
			throw std::invalid_argument("variable " + std::to_string(e.var) + " quantified twice");
	}
}

std::size_t QuantPrefix::existential_count() const {
	return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(),
	                                              [](const QuantEntry &e) { return e.quant == Quantifier::exists; }));
}

std::optional<std::size_t> QuantPrefix::last_existential() const {
	for (std::size_t i = entries_.size(); i-- > 0;)
		if (entries_[i].quant == Quantifier::exists)
			return i;
	return std::nullopt;
}

std::optional<Quantifier> QuantPrefix::quantifier_of(Var v) const {
	for (const auto &e : entries_)
		if (e.var == v)
			return e.quant;
	return std::nullopt;
}

Var QuantPrefix::max_var() const {
	Var m = 0;
	for (const auto &e : entries_)
		m = std::max(m, e.var);
	return m;
}

QbfInstance::QbfInstance(QuantPrefix prefix, CnfMatrix matrix)
    : prefix_(std::move(prefix)), matrix_(std::move(matrix)), k_(prefix_.existential_count()) {
	Var top = prefix_.max_var();
	std::vector<char> bound(static_cast<std::size_t>(top) + 1, 0);
	for (const auto &e : prefix_.entries())
		bound[e.var] = 1;
	for (const auto &c : matrix_.clauses())
		for (Literal l : c.literals())
			if (l.var() > top || !bound[l.var()])
				throw std::invalid_argument("matrix variable " + std::to_string(l.var()) + " is not quantified");
}

Var QbfInstance::max_var() const {
	return std::max(prefix_.max_var(), matrix_.max_var());
}

} // namespace qbffpt
