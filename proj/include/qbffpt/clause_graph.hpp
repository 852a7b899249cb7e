#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qbffpt/expansion.hpp"
#include "qbffpt/formula.hpp"

namespace qbffpt {

/// K-partite d-clause graph. Vertices are positions in their part; each label
/// has exactly d literals and labels are distinct within a part. Two vertices in
/// different parts are adjacent iff their labels clash, so edges are never stored.
class ClauseGraph {
public:
	ClauseGraph() = default;
	/// Validates label widths and per-part injectivity.
	ClauseGraph(std::vector<Var> universe, std::vector<std::vector<Clause>> parts, std::size_t d);

	std::span<const Var> universe() const { return universe_; }
	std::size_t d() const { return d_; }
	std::size_t part_count() const { return parts_.size(); }
	std::span<const Clause> part(std::size_t i) const { return parts_.at(i); }
	const Clause &label(std::size_t part, std::size_t vertex) const { return parts_.at(part).at(vertex); }
	std::size_t vertex_count() const;
	std::size_t max_part_size() const;

	bool adjacent(std::size_t pi, std::size_t vi, std::size_t pj, std::size_t vj) const {
		return pi != pj && clash(label(pi, vi), label(pj, vj));
	}

	/// Copy with vertex v of part i removed; later vertices shift down by one.
	ClauseGraph without_vertex(std::size_t part, std::size_t vertex) const;
	/// Copy with part i replaced by the given labels (re-validated).
	ClauseGraph with_part(std::size_t part, std::vector<Clause> labels) const;

	bool operator==(const ClauseGraph &) const = default;

private:
	std::vector<Var> universe_;
	std::vector<std::vector<Clause>> parts_;
	std::size_t d_ = 0;
};

/// One vertex index per part, in part order.
struct Selection {
	std::vector<std::size_t> picks;
	bool operator==(const Selection &) const = default;
};

/// Extends c to exactly d literals with positive occurrences of the first
/// d-|c| pad variables. Throws std::invalid_argument if |c| > d or pads run out.
Clause pad_clause(const Clause &c, std::size_t d, std::span<const Var> pads);

struct BuiltGraph {
	ClauseGraph graph;
	std::vector<Var> pads;
	/// Per part, per vertex: index of the source clause in its formula.
	std::vector<std::vector<std::size_t>> source_clause;
};

/// One part per formula, one vertex per distinct padded clause. The d-1 pad
/// variables are shared by all parts (d pads if some formula carries the empty
/// clause, which happens only when pruning is off).
BuiltGraph build_cgis(const TautInstance &t);

/// Throws std::out_of_range when the selection does not fit the graph.
bool is_independent(const ClauseGraph &g, const Selection &s);

/// Assignment over the universe falsifying every chosen label; unconstrained
/// variables are false. Throws std::invalid_argument if s is not independent.
Assignment extract_countermodel(const ClauseGraph &g, const Selection &s);

} // namespace qbffpt
