#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbffpt/formula.hpp"

namespace qbffpt {

/// Where an expanded variable came from: the original variable and the
/// existential choices under which it was copied. Bit t of the masks refers to
/// the t-th existential of the original prefix.
struct VarOrigin {
	Var origin = 0;
	std::uint64_t choice_mask = 0;
	std::uint64_t choice_bits = 0;
};

/// Fresh-variable allocator plus provenance side table.
class VarTable {
public:
	VarTable() = default;
	/// Registers variables 1..max_var as their own origins; existentials lists
	/// the original existential variables in prefix order.
	VarTable(Var max_var, std::vector<Var> existentials);

	Var fresh(VarOrigin origin);
	const VarOrigin &origin(Var v) const { return origins_.at(v); }
	Var max_var() const { return static_cast<Var>(origins_.size() - 1); }
	/// Index of v among the original existentials; throws if v is not one.
	std::size_t existential_index(Var v) const;
	std::span<const Var> existentials() const { return existentials_; }

private:
	std::vector<VarOrigin> origins_{VarOrigin{}};
	std::vector<Var> existentials_;
};

/// Prefix plus formula set D, read as Q. (phi_1 v ... v phi_m).
struct ExpansionState {
	QuantPrefix prefix;
	std::vector<CnfMatrix> formulas;
	/// Per formula: existential choices made so far, same bit layout as VarOrigin.
	std::vector<VarOrigin> provenance;
	VarTable vars;
};

ExpansionState initial_state(const QbfInstance &inst);

/// Removes the last existential x_i: trailing universals are duplicated into
/// 0- and 1-copies and every phi in D yields phi[x_i=0] and phi[x_i=1] over the
/// respective copies. Throws std::invalid_argument when no existential is left.
ExpansionState eliminate_last_existential(const ExpansionState &state);

/// Disjunction of d-CNF formulas over an all-universal variable set.
struct TautInstance {
	std::vector<Var> universe;
	std::vector<CnfMatrix> formulas;
	/// Existential assignment of each formula, one char per original existential
	/// in prefix order.
	std::vector<std::string> provenance;
	std::size_t width = 0;
	VarTable vars;
	/// A formula became constant true, so the disjunction is a tautology.
	bool short_circuit_true = false;
	std::size_t pruned_false = 0;
};

struct ExpandOptions {
	/// Drop constant-false disjuncts and stop at the first constant-true one.
	bool prune = true;
	/// Guard against the 2^k blowup; 0 disables.
	std::size_t max_formulas = 0;
};

class BudgetExceeded : public std::runtime_error {
public:
	BudgetExceeded(std::string which, const std::string &msg) : std::runtime_error(msg), which_(std::move(which)) {}
	const std::string &which() const { return which_; }

private:
	std::string which_;
};

TautInstance expand_all(const QbfInstance &inst, const ExpandOptions &opts = {});

} // namespace qbffpt
