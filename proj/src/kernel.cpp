#include "qbffpt/kernel.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>
#include <thread>

namespace qbffpt {

void SunflowerFinder::next_epoch() {
	if (++epoch_ == 0) {
		std::fill(stamp_.begin(), stamp_.end(), 0);
		epoch_ = 1;
	}
}

void SunflowerFinder::touch(std::uint32_t code) {
	if (code >= stamp_.size()) {
		std::size_t n = std::max<std::size_t>(code + 1, stamp_.size() * 2);
		stamp_.resize(n, 0);
		count_.resize(n, 0);
		in_core_.resize(n, 0);
	}
}

bool SunflowerFinder::all_unused(const Clause &c) {
	for (Literal l : c.literals()) {
		touch(l.code());
		if (!in_core_[l.code()] && stamp_[l.code()] == epoch_)
			return false;
	}
	return true;
}

void SunflowerFinder::mark(const Clause &c) {
	for (Literal l : c.literals())
		if (!in_core_[l.code()])
			stamp_[l.code()] = epoch_;
}

std::optional<Sunflower> SunflowerFinder::recurse(std::vector<Item> items, std::vector<Literal> &core, std::size_t a) {
	if (items.size() < a)
		return std::nullopt;

	next_epoch();
	std::vector<std::size_t> chosen;
	for (const auto &it : items) {
		if (all_unused(*it.set)) {
			mark(*it.set);
			chosen.push_back(it.index);
			if (chosen.size() == a)
				return Sunflower{core, std::move(chosen)};
		}
	}

	// Most frequent non-core literal, smallest code on ties.
	std::vector<std::uint32_t> touched;
	for (const auto &it : items)
		for (Literal l : it.set->literals()) {
			if (in_core_[l.code()])
				continue;
			if (count_[l.code()]++ == 0)
				touched.push_back(l.code());
		}
	if (touched.empty())
		return std::nullopt;
	std::uint32_t best = touched.front();
	for (std::uint32_t c : touched)
		if (count_[c] > count_[best] || (count_[c] == count_[best] && c < best))
			best = c;
	const std::uint32_t best_count = count_[best];
	for (std::uint32_t c : touched)
		count_[c] = 0;
	if (best_count < a)
		return std::nullopt;

	const Literal pivot = Literal::from_code(best);
	std::vector<Item> link;
	link.reserve(best_count);
	for (const auto &it : items)
		if (it.set->contains(pivot))
			link.push_back(it);
	items.clear();
	items.shrink_to_fit();

	in_core_[best] = 1;
	core.push_back(pivot);
	auto found = recurse(std::move(link), core, a);
	core.pop_back();
	in_core_[best] = 0;
	return found;
}

std::optional<Sunflower> SunflowerFinder::find(const std::function<std::optional<std::size_t>()> &next,
                                               const std::function<const Clause &(std::size_t)> &label,
                                               std::size_t limit, std::size_t a, std::size_t d) {
	if (a < 2)
		throw std::invalid_argument("find_sunflower: target size must be at least 2");

	// Greedy pass over the stream first; in sparse families it finishes after
	// about a candidates and the window is never materialized.
	next_epoch();
	std::vector<Item> items;
	std::vector<std::size_t> chosen;
	for (std::size_t pulled = 0; pulled < limit; ++pulled) {
		auto idx = next();
		if (!idx)
			break;
		const Clause &set = label(*idx);
		if (set.size() != d)
			throw std::invalid_argument("find_sunflower: sets must all have size " + std::to_string(d));
		if (!set.empty())
			touch(set.literals().back().code() | 1u);
		items.push_back({*idx, &set});
		if (all_unused(set)) {
			mark(set);
			chosen.push_back(*idx);
			if (chosen.size() == a)
				break;
		}
	}

	std::optional<Sunflower> found;
	if (chosen.size() == a) {
		found = Sunflower{{}, std::move(chosen)};
	} else {
		std::vector<Literal> core;
		found = recurse(std::move(items), core, a);
	}
	if (!found)
		return std::nullopt;

	std::sort(found->core.begin(), found->core.end());
	std::sort(found->members.begin(), found->members.end());

	// Members contain the core and their petals are pairwise disjoint.
	next_epoch();
	for (std::size_t m : found->members) {
		const Clause &set = label(m);
		for (Literal c : found->core)
			if (!set.contains(c))
				throw std::logic_error("find_sunflower: member misses core literal");
		for (Literal l : set.literals()) {
			if (std::binary_search(found->core.begin(), found->core.end(), l))
				continue;
			touch(l.code());
			if (stamp_[l.code()] == epoch_)
				throw std::logic_error("find_sunflower: petals overlap");
			stamp_[l.code()] = epoch_;
		}
	}
	return found;
}

std::optional<Sunflower> find_sunflower(std::span<const Clause> family, std::size_t a) {
	if (family.empty())
		return std::nullopt;
	const std::size_t d = family.front().size();
	for (const auto &f : family)
		if (f.size() != d)
			throw std::invalid_argument("find_sunflower: sets must all have size " + std::to_string(d));
	std::size_t cursor = 0;
	SunflowerFinder finder;
	return finder.find(
	    [&]() -> std::optional<std::size_t> {
		    if (cursor == family.size())
			    return std::nullopt;
		    return cursor++;
	    },
	    [&](std::size_t i) -> const Clause & { return family[i]; }, family.size(), a, d);
}

bool is_sunflower(std::span<const Clause> family, const Sunflower &s) {
	if (s.members.size() < 2)
		return false;
	for (std::size_t m : s.members)
		if (m >= family.size())
			return false;
	std::vector<Literal> core(s.core.begin(), s.core.end());
	std::sort(core.begin(), core.end());
	for (std::size_t i = 0; i < s.members.size(); ++i)
		for (std::size_t j = i + 1; j < s.members.size(); ++j) {
			if (s.members[i] == s.members[j])
				return false;
			auto a = family[s.members[i]].literals();
			auto b = family[s.members[j]].literals();
			std::vector<Literal> common;
			std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
			if (common != core)
				return false;
		}
	return true;
}

KernelMode parse_kernel_mode(const std::string &s) {
	if (s == "paper")
		return KernelMode::paper;
	if (s == "safe")
		return KernelMode::safe;
	throw std::invalid_argument("unknown kernel mode '" + s + "' (expected paper or safe)");
}

std::string to_string(KernelMode m) {
	return m == KernelMode::paper ? "paper" : "safe";
}

std::uint64_t sunflower_threshold(std::size_t parts, std::size_t d, KernelMode mode) {
	const std::uint64_t base = parts == 0 ? 0 : static_cast<std::uint64_t>(parts - 1) * d;
	return (mode == KernelMode::paper ? base : 2 * base) + 2;
}

std::uint64_t erdos_rado_bound(std::size_t d, std::uint64_t s) {
	constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
	auto mul = [](std::uint64_t x, std::uint64_t y) -> std::uint64_t {
		if (x != 0 && y > cap / x)
			return cap;
		return x * y;
	};
	std::uint64_t r = 1;
	for (std::size_t i = 2; i <= d; ++i)
		r = mul(r, i);
	for (std::size_t i = 0; i < d; ++i)
		r = mul(r, s - 1);
	return r;
}

PartReduction reduce_labels(std::span<const Clause> labels, std::size_t d, std::uint64_t s) {
	constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
	const std::size_t n = labels.size();
	PartReduction out;
	if (n < s) {
		out.labels.assign(labels.begin(), labels.end());
		return out;
	}

	std::vector<std::size_t> next(n), prev(n);
	for (std::size_t i = 0; i < n; ++i) {
		next[i] = i + 1 < n ? i + 1 : none;
		prev[i] = i == 0 ? none : i - 1;
	}
	std::size_t head = 0;
	std::size_t alive = n;

	const std::uint64_t bound = erdos_rado_bound(d, s);
	const std::size_t window = bound >= std::numeric_limits<std::size_t>::max() ? none : static_cast<std::size_t>(bound + 1);

	SunflowerFinder finder;
	auto label = [&](std::size_t i) -> const Clause & { return labels[i]; };
	while (alive >= s) {
		std::size_t cursor = head;
		auto pull = [&]() -> std::optional<std::size_t> {
			if (cursor == none)
				return std::nullopt;
			std::size_t c = cursor;
			cursor = next[c];
			return c;
		};
		auto found = finder.find(pull, label, window, static_cast<std::size_t>(s), d);
		if (!found) {
			if (alive > bound)
				throw std::logic_error("reduce_labels: no sunflower found above the Erdős–Rado bound");
			break;
		}
		std::size_t victim = found->members.front();
		if (prev[victim] != none)
			next[prev[victim]] = next[victim];
		else
			head = next[victim];
		if (next[victim] != none)
			prev[next[victim]] = prev[victim];
		--alive;
		++out.deletions;
	}

	out.labels.reserve(alive);
	for (std::size_t c = head; c != none; c = next[c])
		out.labels.push_back(labels[c]);
	return out;
}

ClauseGraph reduce_part(const ClauseGraph &g, std::size_t part, std::uint64_t s) {
	if (part >= g.part_count())
		throw std::out_of_range("reduce_part: part index " + std::to_string(part) + " out of range");
	if (s < 2)
		throw std::invalid_argument("reduce_part: threshold must be at least 2");
	auto r = reduce_labels(g.part(part), g.d(), s);
	if (r.deletions == 0)
		return g;
	return g.with_part(part, std::move(r.labels));
}

Kernel kernelize(const ClauseGraph &g, KernelMode mode, unsigned jobs) {
	const std::size_t K = g.part_count();
	KernelReport rep;
	rep.mode = mode;
	rep.threshold = sunflower_threshold(K, g.d(), mode);
	rep.bound = erdos_rado_bound(g.d(), rep.threshold);

	std::vector<PartReduction> results(K);
	auto work = [&](std::size_t i) { results[i] = reduce_labels(g.part(i), g.d(), rep.threshold); };
	if (jobs <= 1 || K <= 1) {
		for (std::size_t i = 0; i < K; ++i)
			work(i);
	} else {
		std::atomic<std::size_t> cursor{0};
		std::vector<std::thread> pool;
		for (unsigned t = 0; t < std::min<std::size_t>(jobs, K); ++t)
			pool.emplace_back([&] {
				for (std::size_t i; (i = cursor.fetch_add(1)) < K;)
					work(i);
			});
		for (auto &th : pool)
			th.join();
	}

	std::vector<std::vector<Clause>> parts(K);
	for (std::size_t i = 0; i < K; ++i) {
		rep.before.push_back(g.part(i).size());
		rep.after.push_back(results[i].labels.size());
		rep.sunflowers += results[i].deletions;
		rep.deleted += results[i].deletions;
		rep.within_bound = rep.within_bound && results[i].labels.size() < rep.bound;
		parts[i] = std::move(results[i].labels);
	}
	std::vector<Var> universe(g.universe().begin(), g.universe().end());
	return {ClauseGraph(std::move(universe), std::move(parts), g.d()), std::move(rep)};
}

} // namespace qbffpt
