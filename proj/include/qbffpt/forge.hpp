#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qbffpt/formula.hpp"

namespace qbffpt {

/// Undirected simple graph on vertices 0..n-1.
struct SimpleGraph {
	std::size_t n = 0;
	std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Graph whose vertex set is split into parts; no edge joins two vertices of
/// the same part.
class MultipartiteGraph {
public:
	MultipartiteGraph() = default;
	/// Throws std::invalid_argument on repeated vertex ids, unknown endpoints,
	/// loops or edges inside a part. Edges are stored normalized and sorted.
	MultipartiteGraph(std::vector<std::vector<std::uint32_t>> parts,
	                  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

	std::span<const std::vector<std::uint32_t>> parts() const { return parts_; }
	std::span<const std::pair<std::uint32_t, std::uint32_t>> edges() const { return edges_; }
	std::size_t part_count() const { return parts_.size(); }
	std::size_t vertex_count() const;
	bool has_edge(std::uint32_t u, std::uint32_t v) const;

	bool operator==(const MultipartiteGraph &) const = default;

private:
	std::vector<std::vector<std::uint32_t>> parts_;
	std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
};

/// k copies of V(g); (i,j) gets id i*n+j. Copies in different parts are joined
/// when the underlying vertices are adjacent, and in strict mode also when they
/// are the same vertex. Throws std::invalid_argument if k < 1.
MultipartiteGraph is_to_multipartite(const SimpleGraph &g, std::size_t k, bool strict = true);

/// Brute-force search for an independent set with one vertex per part.
bool has_multipartite_is(const MultipartiteGraph &g);

/// ceil(log2 parts), with 0 for a single part.
std::size_t ceil_log2(std::size_t parts);

/// forall Y exists X CNF that is false iff g has an independent set with one
/// vertex per part. Parts are padded with isolated singletons to 2^kappa;
/// universal y_v are numbered 1.. in part order, existentials follow. Part i
/// is tied to the kappa-bit binary encoding of i, literal x_l for bit 0 and
/// its negation for bit 1.
QbfInstance multipartite_is_to_qbf(const MultipartiteGraph &g);

enum class PrefixShape { alternating, ae, ea, random };

PrefixShape parse_prefix_shape(const std::string &s);

struct RandomQbfSpec {
	std::size_t n_universal = 0;
	std::size_t k_existential = 0;
	std::size_t d = 1;
	std::size_t m = 0;
	PrefixShape shape = PrefixShape::random;
	std::uint64_t seed = 0;
	/// Clause sizes are drawn uniformly from [min_width, d].
	std::size_t min_width = 1;
};

/// Deterministic given the spec. Throws std::invalid_argument when m exceeds
/// the number of distinct clauses available.
QbfInstance random_qdcnf(const RandomQbfSpec &spec);

/// Random multipartite graph: each vertex lands in a uniformly drawn part (parts
/// may stay empty) and each cross-part pair is joined with probability
/// edge_percent/100.
MultipartiteGraph random_multipartite(std::size_t vertices, std::size_t parts, unsigned edge_percent,
                                      std::uint64_t seed);

} // namespace qbffpt
