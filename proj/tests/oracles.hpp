#pragma once

// Brute-force reference implementations for tests. They use only the plain
// data accessors of the library types and share no logic with the pipeline.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "qbffpt/clause_graph.hpp"
#include "qbffpt/formula.hpp"
#include "qbffpt/kernel.hpp"

namespace oracle {

using qbffpt::Clause;
using qbffpt::Var;

// values[v] in {0,1}; a literal is true when its sign matches.
inline bool lit_true(qbffpt::Literal l, const std::vector<int> &values) {
	return values.at(l.var()) == (l.positive() ? 1 : 0);
}

inline bool clause_true(const Clause &c, const std::vector<int> &values) {
	for (auto l : c.literals())
		if (lit_true(l, values))
			return true;
	return false;
}

inline bool cnf_true(std::span<const Clause> cnf, const std::vector<int> &values) {
	for (const auto &c : cnf)
		if (!clause_true(c, values))
			return false;
	return true;
}

// Full game-tree evaluation: every variable of the prefix is branched on and
// the matrix is only evaluated on total assignments.
inline bool qbf_value(const qbffpt::QbfInstance &inst) {
	auto prefix = inst.prefix().entries();
	std::vector<int> values(inst.max_var() + 1, 0);
	auto rec = [&](auto &&self, std::size_t i) -> bool {
		if (i == prefix.size())
			return cnf_true(inst.matrix().clauses(), values);
		bool exists = prefix[i].quant == qbffpt::Quantifier::exists;
		for (int b = 0; b < 2; ++b) {
			values[prefix[i].var] = b;
			bool r = self(self, i + 1);
			if (exists && r)
				return true;
			if (!exists && !r)
				return false;
		}
		return !exists;
	};
	return rec(rec, 0);
}

// Is the disjunction of the formulas true under every assignment of the universe?
inline bool is_tautology(const std::vector<Var> &universe, const std::vector<std::vector<Clause>> &formulas) {
	Var top = 0;
	for (Var v : universe)
		top = std::max(top, v);
	for (const auto &f : formulas)
		for (const auto &c : f)
			for (auto l : c.literals())
				top = std::max(top, l.var());
	std::vector<int> values(top + 1, 0);
	const std::uint64_t total = std::uint64_t{1} << universe.size();
	for (std::uint64_t a = 0; a < total; ++a) {
		for (std::size_t i = 0; i < universe.size(); ++i)
			values[universe[i]] = static_cast<int>((a >> i) & 1u);
		bool any = false;
		for (const auto &f : formulas)
			if (cnf_true(f, values)) {
				any = true;
				break;
			}
		if (!any)
			return false;
	}
	return true;
}

inline bool clauses_clash(const Clause &a, const Clause &b) {
	for (auto x : a.literals())
		for (auto y : b.literals())
			if (x.var() == y.var() && x.positive() != y.positive())
				return true;
	return false;
}

// Any colourful independent set? Plain nested enumeration with pairwise checks.
inline bool cgis_exists(const std::vector<std::vector<Clause>> &parts) {
	std::vector<const Clause *> chosen;
	auto rec = [&](auto &&self, std::size_t i) -> bool {
		if (i == parts.size())
			return true;
		for (const auto &c : parts[i]) {
			bool ok = true;
			for (const Clause *p : chosen)
				if (clauses_clash(*p, c)) {
					ok = false;
					break;
				}
			if (!ok)
				continue;
			chosen.push_back(&c);
			if (self(self, i + 1))
				return true;
			chosen.pop_back();
		}
		return false;
	};
	return rec(rec, 0);
}

inline std::vector<std::vector<Clause>> parts_of(const qbffpt::ClauseGraph &g) {
	std::vector<std::vector<Clause>> out;
	for (std::size_t i = 0; i < g.part_count(); ++i)
		out.emplace_back(g.part(i).begin(), g.part(i).end());
	return out;
}

// Checks a claimed sunflower from first principles: distinct in-range members,
// each containing the core, and every pairwise intersection equal to the core.
inline bool valid_sunflower(std::span<const Clause> family, const qbffpt::Sunflower &s, std::size_t min_size) {
	if (s.members.size() < min_size)
		return false;
	std::set<std::size_t> seen(s.members.begin(), s.members.end());
	if (seen.size() != s.members.size())
		return false;
	std::set<qbffpt::Literal> core(s.core.begin(), s.core.end());
	std::vector<std::set<qbffpt::Literal>> sets;
	for (auto m : s.members) {
		if (m >= family.size())
			return false;
		sets.emplace_back(family[m].literals().begin(), family[m].literals().end());
	}
	for (std::size_t i = 0; i < sets.size(); ++i)
		for (std::size_t j = i + 1; j < sets.size(); ++j) {
			std::set<qbffpt::Literal> inter;
			for (auto l : sets[i])
				if (sets[j].count(l))
					inter.insert(l);
			if (inter != core)
				return false;
		}
	for (const auto &s2 : sets)
		for (auto l : core)
			if (!s2.count(l))
				return false;
	return true;
}

// Multipartite graph given as parts of vertex ids plus an edge list.
inline bool multipartite_is_exists(const std::vector<std::vector<std::uint32_t>> &parts,
                                   const std::vector<std::pair<std::uint32_t, std::uint32_t>> &edges) {
	std::set<std::pair<std::uint32_t, std::uint32_t>> adj;
	for (auto [u, v] : edges) {
		adj.emplace(u, v);
		adj.emplace(v, u);
	}
	std::vector<std::uint32_t> pick(parts.size());
	auto rec = [&](auto &&self, std::size_t i) -> bool {
		if (i == parts.size())
			return true;
		for (auto v : parts[i]) {
			bool ok = true;
			for (std::size_t j = 0; j < i; ++j)
				if (adj.count({pick[j], v}))
					ok = false;
			if (!ok)
				continue;
			pick[i] = v;
			if (self(self, i + 1))
				return true;
		}
		return false;
	};
	return rec(rec, 0);
}

} // namespace oracle
