#include "qbffpt/forge.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace qbffpt {

MultipartiteGraph::MultipartiteGraph(std::vector<std::vector<std::uint32_t>> parts,
                                     std::vector<std::pair<std::uint32_t, std::uint32_t>> edges)
    : parts_(std::move(parts)) {
	std::map<std::uint32_t, std::size_t> part_of;
	for (std::size_t i = 0; i < parts_.size(); ++i)
		for (auto v : parts_[i])
			if (!part_of.emplace(v, i).second)
				throw std::invalid_argument("multipartite graph: vertex " + std::to_string(v) + " listed twice");
	for (auto [u, v] : edges) {
		auto pu = part_of.find(u), pv = part_of.find(v);
		if (pu == part_of.end() || pv == part_of.end())
			throw std::invalid_argument("multipartite graph: edge " + std::to_string(u) + "-" + std::to_string(v)
			                            + " has an unknown endpoint");
		if (pu->second == pv->second)
			throw std::invalid_argument("multipartite graph: edge " + std::to_string(u) + "-" + std::to_string(v)
			                            + " lies inside a part");
		edges_.emplace_back(std::min(u, v), std::max(u, v));
	}
	std::sort(edges_.begin(), edges_.end());
	edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

std::size_t MultipartiteGraph::vertex_count() const {
	std::size_t n = 0;
	for (const auto &p : parts_)
		n += p.size();
	return n;
}

bool MultipartiteGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
	return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(std::min(u, v), std::max(u, v)));
}

MultipartiteGraph is_to_multipartite(const SimpleGraph &g, std::size_t k, bool strict) {
	if (k < 1)
		throw std::invalid_argument("is_to_multipartite: k must be at least 1");
	std::set<std::pair<std::size_t, std::size_t>> adj;
	for (auto [a, b] : g.edges) {
		if (a >= g.n || b >= g.n || a == b)
			throw std::invalid_argument("is_to_multipartite: bad edge");
		adj.emplace(a, b);
		adj.emplace(b, a);
	}
	auto id = [&](std::size_t i, std::size_t j) { return static_cast<std::uint32_t>(i * g.n + j); };
	std::vector<std::vector<std::uint32_t>> parts(k);
	for (std::size_t i = 0; i < k; ++i)
		for (std::size_t j = 0; j < g.n; ++j)
			parts[i].push_back(id(i, j));
	std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
	for (std::size_t i = 0; i < k; ++i)
		for (std::size_t i2 = i + 1; i2 < k; ++i2)
			for (std::size_t j = 0; j < g.n; ++j)
				for (std::size_t j2 = 0; j2 < g.n; ++j2)
					if (adj.count({j, j2}) || (strict && j == j2))
						edges.emplace_back(id(i, j), id(i2, j2));
	return MultipartiteGraph(std::move(parts), std::move(edges));
}

bool has_multipartite_is(const MultipartiteGraph &g) {
	const auto parts = g.parts();
	std::vector<std::uint32_t> chosen;
	auto rec = [&](auto &&self, std::size_t i) -> bool {
		if (i == parts.size())
			return true;
		for (auto v : parts[i]) {
			bool ok = std::none_of(chosen.begin(), chosen.end(), [&](std::uint32_t u) { return g.has_edge(u, v); });
			if (!ok)
				continue;
			chosen.push_back(v);
			if (self(self, i + 1))
				return true;
			chosen.pop_back();
		}
		return false;
	};
	return rec(rec, 0);
}

std::size_t ceil_log2(std::size_t parts) {
	std::size_t kappa = 0;
	while ((std::size_t{1} << kappa) < parts)
		++kappa;
	return kappa;
}

QbfInstance multipartite_is_to_qbf(const MultipartiteGraph &g) {
	const std::size_t K = g.part_count();
	if (K < 1)
		throw std::invalid_argument("multipartite_is_to_qbf: need at least one part");
	const std::size_t kappa = ceil_log2(K);
	const std::size_t padded = std::size_t{1} << kappa;

	// y variables: real vertices in part order, then one isolated vertex per padding part.
	std::map<std::uint32_t, Var> y;
	std::vector<std::vector<Var>> part_vars(padded);
	Var next = 0;
	for (std::size_t i = 0; i < K; ++i)
		for (auto v : g.parts()[i]) {
			y[v] = ++next;
			part_vars[i].push_back(next);
		}
	for (std::size_t i = K; i < padded; ++i)
		part_vars[i].push_back(++next);
	const Var first_x = next + 1;

	std::map<Var, std::vector<Var>> neighbours;
	for (auto [u, v] : g.edges()) {
		neighbours[y[u]].push_back(y[v]);
		neighbours[y[v]].push_back(y[u]);
	}

	std::vector<Clause> clauses;
	for (std::size_t i = 0; i < padded; ++i)
		for (Var yv : part_vars[i]) {
			std::vector<Literal> lits{Literal::make(yv, true)};
			for (Var yu : neighbours[yv])
				lits.push_back(Literal::make(yu, false));
			for (std::size_t l = 0; l < kappa; ++l)
				lits.push_back(Literal::make(first_x + static_cast<Var>(l), (i >> l & 1u) == 0));
			clauses.emplace_back(std::move(lits));
		}

	std::vector<QuantEntry> prefix;
	for (Var v = 1; v < first_x; ++v)
		prefix.push_back({Quantifier::forall, v});
	for (std::size_t l = 0; l < kappa; ++l)
		prefix.push_back({Quantifier::exists, first_x + static_cast<Var>(l)});
	return QbfInstance(QuantPrefix(std::move(prefix)), CnfMatrix(std::move(clauses)));
}

PrefixShape parse_prefix_shape(const std::string &s) {
	if (s == "alternating")
		return PrefixShape::alternating;
	if (s == "ae")
		return PrefixShape::ae;
	if (s == "ea")
		return PrefixShape::ea;
	if (s == "random")
		return PrefixShape::random;
	throw std::invalid_argument("unknown prefix shape '" + s + "' (expected alternating, ae, ea or random)");
}

namespace {

/// Uniform-enough bounded draw that does not depend on the standard library's
/// distribution implementation.
std::size_t draw(std::mt19937_64 &rng, std::size_t bound) {
	return bound == 0 ? 0 : static_cast<std::size_t>(rng() % bound);
}

std::uint64_t distinct_clause_count(std::size_t vars, std::size_t lo, std::size_t hi) {
	constexpr auto cap = std::numeric_limits<std::uint64_t>::max() / 4;
	std::uint64_t total = 0;
	for (std::size_t s = lo; s <= hi && s <= vars; ++s) {
		// C(vars, s) * 2^s
		long double c = 1;
		for (std::size_t i = 0; i < s; ++i)
			c = c * static_cast<long double>(vars - i) / static_cast<long double>(i + 1);
		c *= static_cast<long double>(std::uint64_t{1} << std::min<std::size_t>(s, 62));
		if (c >= static_cast<long double>(cap))
			return cap;
		total += static_cast<std::uint64_t>(c + 0.5L);
		if (total >= cap)
			return cap;
	}
	return total;
}

} // namespace

QbfInstance random_qdcnf(const RandomQbfSpec &spec) {
	if (spec.d < 1 || spec.min_width < 1 || spec.min_width > spec.d)
		throw std::invalid_argument("random_qdcnf: need 1 <= min_width <= d");
	const std::size_t N = spec.n_universal + spec.k_existential;
	std::mt19937_64 rng(spec.seed);

	std::vector<Quantifier> quant;
	switch (spec.shape) {
	case PrefixShape::ae:
		quant.assign(spec.n_universal, Quantifier::forall);
		quant.insert(quant.end(), spec.k_existential, Quantifier::exists);
		break;
	case PrefixShape::ea:
		quant.assign(spec.k_existential, Quantifier::exists);
		quant.insert(quant.end(), spec.n_universal, Quantifier::forall);
		break;
	case PrefixShape::alternating: {
		std::size_t a = spec.n_universal, e = spec.k_existential;
		while (a + e > 0) {
			if (a > 0) {
				quant.push_back(Quantifier::forall);
				--a;
			}
			if (e > 0) {
				quant.push_back(Quantifier::exists);
				--e;
			}
		}
		break;
	}
	case PrefixShape::random:
		quant.assign(spec.n_universal, Quantifier::forall);
		quant.insert(quant.end(), spec.k_existential, Quantifier::exists);
		for (std::size_t i = quant.size(); i > 1; --i)
			std::swap(quant[i - 1], quant[draw(rng, i)]);
		break;
	}
	std::vector<QuantEntry> prefix;
	for (std::size_t i = 0; i < N; ++i)
		prefix.push_back({quant[i], static_cast<Var>(i + 1)});

	const std::uint64_t available = distinct_clause_count(N, spec.min_width, spec.d);
	if (spec.m > available)
		throw std::invalid_argument("random_qdcnf: " + std::to_string(spec.m) + " distinct clauses requested, only "
		                            + std::to_string(available) + " exist");

	std::vector<Clause> clauses;
	clauses.reserve(spec.m);
	if (available <= 4 * static_cast<std::uint64_t>(spec.m) + 64) {
		// Dense request: enumerate everything, then take a seeded sample.
		std::vector<Clause> all;
		std::vector<Literal> cur;
		auto rec = [&](auto &&self, Var from) -> void {
			if (cur.size() >= spec.min_width)
				all.push_back(Clause::trusted(cur));
			if (cur.size() == spec.d)
				return;
			for (Var v = from; v <= N; ++v)
				for (bool pos : {true, false}) {
					cur.push_back(Literal::make(v, pos));
					self(self, v + 1);
					cur.pop_back();
				}
		};
		rec(rec, 1);
		for (std::size_t i = 0; i < spec.m; ++i) {
			std::swap(all[i], all[i + draw(rng, all.size() - i)]);
			clauses.push_back(all[i]);
		}
	} else {
		std::unordered_set<Clause, ClauseHash> seen;
		while (clauses.size() < spec.m) {
			std::size_t width = spec.min_width + draw(rng, spec.d - spec.min_width + 1);
			width = std::min(width, N);
			std::vector<Literal> lits;
			while (lits.size() < width) {
				Var v = static_cast<Var>(1 + draw(rng, N));
				if (std::any_of(lits.begin(), lits.end(), [&](Literal l) { return l.var() == v; }))
					continue;
				lits.push_back(Literal::make(v, (rng() & 1u) == 0));
			}
			Clause c(std::move(lits));
			if (seen.insert(c).second)
				clauses.push_back(std::move(c));
		}
	}
	return QbfInstance(QuantPrefix(std::move(prefix)), CnfMatrix(std::move(clauses)));
}

MultipartiteGraph random_multipartite(std::size_t vertices, std::size_t parts, unsigned edge_percent,
                                      std::uint64_t seed) {
	if (parts < 1)
		throw std::invalid_argument("random_multipartite: need at least one part");
	std::mt19937_64 rng(seed);
	std::vector<std::vector<std::uint32_t>> ps(parts);
	std::vector<std::size_t> part_of(vertices);
	for (std::size_t v = 0; v < vertices; ++v) {
		part_of[v] = draw(rng, parts);
		ps[part_of[v]].push_back(static_cast<std::uint32_t>(v));
	}
	std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
	for (std::size_t u = 0; u < vertices; ++u)
		for (std::size_t v = u + 1; v < vertices; ++v)
			if (part_of[u] != part_of[v] && draw(rng, 100) < edge_percent)
				edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
	return MultipartiteGraph(std::move(ps), std::move(edges));
}

} // namespace qbffpt
