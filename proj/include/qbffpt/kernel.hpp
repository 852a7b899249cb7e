#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qbffpt/clause_graph.hpp"

namespace qbffpt {

/// Members are indices into the searched family, ascending. Every pair of
/// member sets intersects in exactly the core.
struct Sunflower {
	std::vector<Literal> core;
	std::vector<std::size_t> members;
};

/// Erdős–Rado style search: greedily collect pairwise-disjoint sets; if fewer
/// than a are found, recurse into the sets containing the most frequent
/// literal (smallest literal on ties) with that literal moved into the core.
/// Guaranteed to succeed when |family| > d!(a-1)^d.
class SunflowerFinder {
public:
	/// Pulls candidates from `next` (returns nullopt when exhausted), looking at
	/// no more than `limit` of them. `label(i)` resolves a candidate index.
	std::optional<Sunflower> find(const std::function<std::optional<std::size_t>()> &next,
	                              const std::function<const Clause &(std::size_t)> &label, std::size_t limit,
	                              std::size_t a, std::size_t d);

private:
	struct Item {
		std::size_t index;
		const Clause *set;
	};

	std::optional<Sunflower> recurse(std::vector<Item> items, std::vector<Literal> &core, std::size_t a);
	bool all_unused(const Clause &c);
	void mark(const Clause &c);
	void touch(std::uint32_t code);
	void next_epoch();

	std::vector<std::uint32_t> stamp_;
	std::vector<std::uint32_t> count_;
	std::vector<std::uint8_t> in_core_;
	std::uint32_t epoch_ = 0;
};

/// Throws std::invalid_argument if the sets differ in size or a < 2.
std::optional<Sunflower> find_sunflower(std::span<const Clause> family, std::size_t a);

/// Checks the sunflower invariants against the family it was drawn from.
bool is_sunflower(std::span<const Clause> family, const Sunflower &s);

enum class KernelMode { paper, safe };

KernelMode parse_kernel_mode(const std::string &s);
std::string to_string(KernelMode m);

/// Sunflower size that licenses a deletion: (K-1)d+2 for paper, 2(K-1)d+2 for safe.
std::uint64_t sunflower_threshold(std::size_t parts, std::size_t d, KernelMode mode);
/// d!(s-1)^d, saturating at UINT64_MAX.
std::uint64_t erdos_rado_bound(std::size_t d, std::uint64_t s);

struct PartReduction {
	std::vector<Clause> labels;
	std::size_t deletions = 0;
};

/// Deletes the smallest-index member of a sunflower of size >= s until none is
/// found. Each search starts again from the first surviving vertex and looks
/// at no more than d!(s-1)^d + 1 of them, enough for the existence guarantee.
PartReduction reduce_labels(std::span<const Clause> labels, std::size_t d, std::uint64_t s);

/// Throws std::out_of_range for an invalid part index.
ClauseGraph reduce_part(const ClauseGraph &g, std::size_t part, std::uint64_t s);

struct KernelReport {
	KernelMode mode = KernelMode::safe;
	std::uint64_t threshold = 0;
	std::uint64_t bound = 0;
	std::vector<std::size_t> before;
	std::vector<std::size_t> after;
	std::size_t sunflowers = 0;
	std::size_t deleted = 0;
	/// Every part is below d!(s-1)^d.
	bool within_bound = true;
};

struct Kernel {
	ClauseGraph graph;
	KernelReport report;
};

/// Reduces every part; jobs > 1 processes parts concurrently with identical output.
Kernel kernelize(const ClauseGraph &g, KernelMode mode, unsigned jobs = 1);

} // namespace qbffpt
