#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qbffpt {

using Var = std::uint32_t;

/// A literal packed as 2*var + negated. Sorting by code gives the canonical
/// (variable, positive-before-negative) order.
class Literal {
public:
	constexpr Literal() = default;

	static constexpr Literal make(Var v, bool positive) {
		return Literal((v << 1) | (positive ? 0u : 1u));
	}
	static Literal from_dimacs(int lit);
	static constexpr Literal from_code(std::uint32_t code) { return Literal(code); }

	constexpr Var var() const { return code_ >> 1; }
	constexpr bool positive() const { return (code_ & 1u) == 0; }
	constexpr Literal negated() const { return Literal(code_ ^ 1u); }
	constexpr std::uint32_t code() const { return code_; }
	int to_dimacs() const;

	constexpr auto operator<=>(const Literal &) const = default;

private:
	constexpr explicit Literal(std::uint32_t code) : code_(code) {}
	std::uint32_t code_ = 0;
};

/// Disjunction of literals, kept sorted. Construction rejects repeated
/// literals, complementary pairs and variable 0.
class Clause {
public:
	Clause() = default;
	explicit Clause(std::vector<Literal> lits);
	Clause(std::initializer_list<int> dimacs);

	static Clause from_dimacs(std::span<const int> lits);
	/// Skips validation; caller guarantees sorted, duplicate-free, clash-free input.
	static Clause trusted(std::span<const Literal> sorted_lits);

	std::span<const Literal> literals() const {
		return size_ <= kInline ? std::span<const Literal>(small_.data(), size_) : std::span<const Literal>(large_);
	}
	std::size_t size() const { return size_; }
	bool empty() const { return size_ == 0; }
	bool contains(Literal l) const;
	bool mentions(Var v) const;
	Var max_var() const { return size_ == 0 ? 0 : literals().back().var(); }

	std::string to_string() const;

	bool operator==(const Clause &o) const;
	std::strong_ordering operator<=>(const Clause &o) const;

private:
	// Short clauses live inline; the pipeline creates millions of them.
	static constexpr std::size_t kInline = 4;
	void store(std::span<const Literal> lits);

	std::uint32_t size_ = 0;
	std::array<Literal, kInline> small_{};
	std::vector<Literal> large_;
};

struct ClauseHash {
	std::size_t operator()(const Clause &c) const noexcept;
};

/// True iff some variable occurs positively in one clause and negatively in the other.
bool clash(const Clause &a, const Clause &b);

/// Total or partial assignment indexed by variable id.
class Assignment {
public:
	Assignment() = default;
	explicit Assignment(Var max_var) : values_(static_cast<std::size_t>(max_var) + 1, -1) {}

	void set(Var v, bool value);
	std::optional<bool> get(Var v) const;
	bool is_assigned(Var v) const { return get(v).has_value(); }
	/// Unassigned variables read as false.
	bool value_or_false(Var v) const { return get(v).value_or(false); }
	Var max_var() const { return values_.empty() ? 0 : static_cast<Var>(values_.size() - 1); }

	bool operator==(const Assignment &) const = default;

private:
	std::vector<std::int8_t> values_;
};

/// Conjunction of distinct clauses in insertion order. An empty matrix is
/// constant true; a matrix holding the empty clause is constant false.
class CnfMatrix {
public:
	CnfMatrix() = default;
	/// Drops repeated clauses, keeping first occurrences.
	explicit CnfMatrix(std::vector<Clause> clauses);

	std::span<const Clause> clauses() const { return clauses_; }
	std::size_t size() const { return clauses_.size(); }
	/// Max clause size.
	std::size_t width() const { return width_; }
	bool is_true() const { return clauses_.empty(); }
	bool has_empty_clause() const { return has_empty_; }
	Var max_var() const;
	/// Total literal occurrences.
	std::size_t literal_count() const;

	bool operator==(const CnfMatrix &o) const { return clauses_ == o.clauses_; }

private:
	std::vector<Clause> clauses_;
	std::size_t width_ = 0;
	bool has_empty_ = false;
};

/// Simplification m[v=b]: clauses satisfied by the assignment vanish and the
/// falsified literal is removed from the rest.
CnfMatrix assign(const CnfMatrix &m, Var v, bool value);

/// Throws std::invalid_argument if a variable of m is unassigned.
bool evaluate(const CnfMatrix &m, const Assignment &a);

enum class Quantifier : std::uint8_t { forall, exists };

struct QuantEntry {
	Quantifier quant;
	Var var;
	bool operator==(const QuantEntry &) const = default;
};

class QuantPrefix {
public:
	QuantPrefix() = default;
	/// Throws std::invalid_argument on a repeated or zero variable.
	explicit QuantPrefix(std::vector<QuantEntry> entries);

	std::span<const QuantEntry> entries() const { return entries_; }
	std::size_t size() const { return entries_.size(); }
	bool empty() const { return entries_.empty(); }
	std::size_t existential_count() const;
	std::optional<std::size_t> last_existential() const;
	std::optional<Quantifier> quantifier_of(Var v) const;
	Var max_var() const;

	bool operator==(const QuantPrefix &) const = default;

private:
	std::vector<QuantEntry> entries_;
};

/// Prenex CNF formula. Every matrix variable must be quantified.
class QbfInstance {
public:
	QbfInstance() = default;
	QbfInstance(QuantPrefix prefix, CnfMatrix matrix);

	const QuantPrefix &prefix() const { return prefix_; }
	const CnfMatrix &matrix() const { return matrix_; }
	std::size_t k() const { return k_; }
	std::size_t d() const { return matrix_.width(); }
	std::size_t num_vars() const { return prefix_.size(); }
	Var max_var() const;

	bool operator==(const QbfInstance &) const = default;

private:
	QuantPrefix prefix_;
	CnfMatrix matrix_;
	std::size_t k_ = 0;
};

} // namespace qbffpt
