#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qbffpt/clause_graph.hpp"
#include "qbffpt/expansion.hpp"
#include "qbffpt/formula.hpp"
#include "qbffpt/kernel.hpp"

namespace qbffpt {

/// Straightforward recursive evaluation of the prefix over matrix simplification.
bool oracle_eval(const QbfInstance &inst);

struct SearchLimits {
	/// Backtracking nodes before giving up; 0 means unlimited.
	std::uint64_t max_nodes = 0;
};

/// Backtracking over parts sorted by ascending size (stable), trying vertices
/// in index order with forward checking. The result is the first independent
/// selection in that order, reported in original part order. An empty part
/// means no selection; zero parts yields the empty selection.
std::optional<Selection> cgis_brute_force(const ClauseGraph &g, const SearchLimits &limits = {},
                                          std::uint64_t *nodes = nullptr);

/// Universal strategy witnessing falsity: for every assignment e to the
/// existentials, a universal assignment u(e) with matrix(e, u(e)) false. The
/// value of a universal depends only on the existentials quantified before it.
class Countermodel {
public:
	Countermodel() = default;
	/// Pulls the expanded universe assignment back to original variables.
	Countermodel(const QbfInstance &inst, const VarTable &vars, std::span<const Var> universe, const Assignment &a);

	std::span<const Var> existentials() const { return existentials_; }
	std::span<const Var> universals() const { return universals_; }
	/// Bit t of `existential_bits` is the value of the t-th existential.
	bool universal_value(Var u, std::uint64_t existential_bits) const;
	/// Full assignment over the original variables for one existential branch.
	Assignment branch(std::uint64_t existential_bits) const;
	/// True when no universal follows an existential, so one assignment serves every branch.
	bool is_flat() const;

	/// Deterministic text form: one `u <var> <branch-bits> <value>` line per
	/// distinct choice.
	std::string to_string() const;

private:
	struct UniversalInfo {
		Var var;
		std::uint64_t mask;
		std::unordered_map<std::uint64_t, bool> values;
	};
	const UniversalInfo *info(Var u) const;

	std::vector<Var> existentials_;
	std::vector<Var> universals_;
	std::vector<UniversalInfo> info_;
	Var max_var_ = 0;
};

/// Checks every existential branch: the matrix must be false under it. Costs
/// 2^k evaluations.
bool verify_countermodel(const QbfInstance &inst, const Countermodel &cm);

enum class Method { fpt, xp, oracle, auto_select };

Method parse_method(const std::string &s);
std::string to_string(Method m);

struct SolveOptions {
	Method method = Method::auto_select;
	KernelMode kernel_mode = KernelMode::safe;
	bool prune = true;
	unsigned jobs = 1;
	/// Max number of expanded formulas (CGIS parts); 0 means unlimited.
	std::size_t budget_parts = 0;
	/// Max total clauses across expanded formulas; 0 means unlimited.
	std::size_t budget_clauses = 0;
	SearchLimits search;
	bool verify_witness = true;
	/// Variable count up to which auto picks the oracle.
	std::size_t auto_oracle_max_vars = 20;
};

struct Verdict {
	bool answer = false;
	Method method = Method::oracle;
	std::optional<Countermodel> witness;
	std::optional<KernelReport> kernel;
	/// Deterministic key/value statistics in insertion order.
	std::vector<std::pair<std::string, std::string>> stats;
	/// Wall-clock phases in milliseconds, kept apart so stats stay reproducible.
	std::vector<std::pair<std::string, double>> timings;
};

/// Throws BudgetExceeded when a budget is hit; never guesses an answer.
Verdict solve(const QbfInstance &inst, const SolveOptions &opts = {});

} // namespace qbffpt
