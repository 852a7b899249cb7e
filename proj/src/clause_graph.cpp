#include "qbffpt/clause_graph.hpp"

#include "clause_set.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace qbffpt {

ClauseGraph::ClauseGraph(std::vector<Var> universe, std::vector<std::vector<Clause>> parts, std::size_t d)
    : universe_(std::move(universe)), parts_(std::move(parts)), d_(d) {
	for (std::size_t i = 0; i < parts_.size(); ++i) {
		detail::ClauseSet seen(parts_[i].size());
		for (const auto &c : parts_[i]) {
			if (c.size() != d_)
				throw std::invalid_argument("part " + std::to_string(i) + ": label " + c.to_string() + " has "
				                            + std::to_string(c.size()) + " literals, expected " + std::to_string(d_));
			if (!seen.insert(&c))
				throw std::invalid_argument("part " + std::to_string(i) + ": label " + c.to_string()
				                            + " occurs twice");
		}
	}
}

std::size_t ClauseGraph::vertex_count() const {
	std::size_t n = 0;
	for (const auto &p : parts_)
		n += p.size();
	return n;
}

std::size_t ClauseGraph::max_part_size() const {
	std::size_t n = 0;
	for (const auto &p : parts_)
		n = std::max(n, p.size());
	return n;
}

ClauseGraph ClauseGraph::without_vertex(std::size_t part, std::size_t vertex) const {
	ClauseGraph g = *this;
	auto &p = g.parts_.at(part);
	if (vertex >= p.size())
		throw std::out_of_range("without_vertex: vertex index out of range");
	p.erase(p.begin() + static_cast<std::ptrdiff_t>(vertex));
	return g;
}

ClauseGraph ClauseGraph::with_part(std::size_t part, std::vector<Clause> labels) const {
	auto parts = parts_;
	parts.at(part) = std::move(labels);
	return ClauseGraph(universe_, std::move(parts), d_);
}

Clause pad_clause(const Clause &c, std::size_t d, std::span<const Var> pads) {
	if (c.size() > d)
		throw std::invalid_argument("pad_clause: clause wider than d");
	const std::size_t missing = d - c.size();
	if (missing > pads.size())
		throw std::invalid_argument("pad_clause: not enough pad variables");
	if (missing == 0)
		return c;
	std::vector<Literal> lits(c.literals().begin(), c.literals().end());
	for (std::size_t i = 0; i < missing; ++i)
		lits.push_back(Literal::make(pads[i], true));
	return Clause(std::move(lits));
}

BuiltGraph build_cgis(const TautInstance &t) {
	const std::size_t d = std::max<std::size_t>(1, t.width);
	bool has_empty = std::any_of(t.formulas.begin(), t.formulas.end(),
	                             [](const CnfMatrix &m) { return m.has_empty_clause(); });
	const std::size_t pad_count = has_empty ? d : d - 1;

	BuiltGraph out;
	Var next = t.vars.max_var();
	for (std::size_t i = 0; i < pad_count; ++i)
		out.pads.push_back(++next);

	std::vector<Var> universe = t.universe;
	universe.insert(universe.end(), out.pads.begin(), out.pads.end());

	std::vector<std::vector<Clause>> parts;
	parts.reserve(t.formulas.size());
	out.source_clause.reserve(t.formulas.size());
	for (const auto &phi : t.formulas) {
		std::vector<Clause> labels;
		std::vector<std::size_t> src;
		// Reserved up front so the set's pointers stay valid.
		labels.reserve(phi.size());
		detail::ClauseSet seen(phi.size());
		auto clauses = phi.clauses();
		for (std::size_t c = 0; c < clauses.size(); ++c) {
			labels.push_back(pad_clause(clauses[c], d, out.pads));
			if (!seen.insert(&labels.back())) {
				labels.pop_back();
				continue;
			}
			src.push_back(c);
		}
		parts.push_back(std::move(labels));
		out.source_clause.push_back(std::move(src));
	}
	out.graph = ClauseGraph(std::move(universe), std::move(parts), d);
	return out;
}

bool is_independent(const ClauseGraph &g, const Selection &s) {
	if (s.picks.size() != g.part_count())
		throw std::out_of_range("selection has " + std::to_string(s.picks.size()) + " picks for "
		                        + std::to_string(g.part_count()) + " parts");
	for (std::size_t i = 0; i < s.picks.size(); ++i)
		if (s.picks[i] >= g.part(i).size())
			throw std::out_of_range("selection pick out of range in part " + std::to_string(i));
	for (std::size_t i = 0; i < s.picks.size(); ++i)
		for (std::size_t j = i + 1; j < s.picks.size(); ++j)
			if (g.adjacent(i, s.picks[i], j, s.picks[j]))
				return false;
	return true;
}

Assignment extract_countermodel(const ClauseGraph &g, const Selection &s) {
	if (!is_independent(g, s))
		throw std::invalid_argument("extract_countermodel: selection is not independent");
	Var top = 0;
	for (Var v : g.universe())
		top = std::max(top, v);
	Assignment a(top);
	for (Var v : g.universe())
		a.set(v, false);
	for (std::size_t i = 0; i < s.picks.size(); ++i)
		for (Literal l : g.label(i, s.picks[i]).literals())
			a.set(l.var(), !l.positive());
	return a;
}

} // namespace qbffpt
