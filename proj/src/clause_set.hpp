#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "qbffpt/formula.hpp"

namespace qbffpt::detail {

/// Flat open-addressing set of clause pointers for bulk dedup. The pointed-to
/// clauses must outlive the set and stay in place.
class ClauseSet {
public:
	explicit ClauseSet(std::size_t expected) {
		std::size_t cap = std::bit_ceil(2 * expected + 2);
		slots_.assign(cap, Slot{});
		mask_ = cap - 1;
	}

	/// False if an equal clause is already present.
	bool insert(const Clause *c) {
		std::uint64_t h = mix(ClauseHash{}(*c));
		for (std::size_t i = h & mask_;; i = (i + 1) & mask_) {
			Slot &s = slots_[i];
			if (s.clause == nullptr) {
				s = {c, h};
				if (++size_ * 2 > slots_.size())
					grow();
				return true;
			}
			if (s.hash == h && *s.clause == *c)
				return false;
		}
	}

private:
	struct Slot {
		const Clause *clause = nullptr;
		std::uint64_t hash = 0;
	};

	static std::uint64_t mix(std::uint64_t h) {
		h ^= h >> 33;
		h *= 0xff51afd7ed558ccdull;
		h ^= h >> 33;
		h *= 0xc4ceb9fe1a85ec53ull;
		return h ^ (h >> 33);
	}

	void grow() {
		std::vector<Slot> old(slots_.size() * 2);
		old.swap(slots_);
		mask_ = slots_.size() - 1;
		for (const Slot &s : old) {
			if (!s.clause)
				continue;
			std::size_t i = s.hash & mask_;
			while (slots_[i].clause)
				i = (i + 1) & mask_;
			slots_[i] = s;
		}
	}

	std::vector<Slot> slots_;
	std::size_t mask_ = 0;
	std::size_t size_ = 0;
};

} // namespace qbffpt::detail
