#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbffpt/formula.hpp"

namespace qbffpt {

struct QcspVariable {
	std::string name;
	Quantifier quant = Quantifier::exists;
	/// Declared values; order matters for the bit encoding.
	std::vector<std::string> domain;
};

/// Tabulated constraint. Tuples hold value indices into the domains of the
/// scoped variables.
struct QcspConstraint {
	std::vector<std::size_t> scope;
	std::vector<std::vector<std::size_t>> tuples;
};

/// Quantified CSP: variables are quantified in declaration order.
class QcspInstance {
public:
	QcspInstance() = default;
	/// Throws std::invalid_argument on empty or repeating domains, bad scopes,
	/// or tuples outside the scoped domains.
	QcspInstance(std::vector<QcspVariable> vars, std::vector<QcspConstraint> constraints);

	std::span<const QcspVariable> variables() const { return vars_; }
	std::span<const QcspConstraint> constraints() const { return constraints_; }
	std::size_t existential_count() const;
	std::size_t max_arity() const;
	std::size_t max_domain() const;

	bool operator==(const QcspInstance &o) const;

private:
	std::vector<QcspVariable> vars_;
	std::vector<QcspConstraint> constraints_;
};

/// Surjective decoding of width-bit codes onto a domain of `size` values.
/// Codes below `size` decode to the value with that index; every surplus code
/// decodes to the first value. Bit j of a code is the j-th Boolean variable.
class BitCodec {
public:
	explicit BitCodec(std::size_t size);

	std::size_t size() const { return size_; }
	std::size_t width() const { return width_; }
	std::size_t decode(std::uint64_t code) const { return code < size_ ? static_cast<std::size_t>(code) : 0; }
	std::uint64_t encode(std::size_t value) const { return value; }
	std::size_t overflow_target() const { return 0; }

private:
	std::size_t size_;
	std::size_t width_;
};

/// Blocking clauses for every bit assignment of the scope whose decoding is not
/// in the table. `bits[v]` are the Boolean variables of CSP variable v. An
/// empty table yields the single empty clause.
std::vector<Clause> encode_relation(const QcspConstraint &c, const std::vector<BitCodec> &codecs,
                                    const std::vector<std::vector<Var>> &bits);

struct CompiledQcsp {
	QbfInstance qbf;
	std::vector<BitCodec> codecs;
	/// Boolean variables of each CSP variable, low bit first.
	std::vector<std::vector<Var>> bits;
};

/// Bit-encodes each variable with its own codec and quantifier and conjoins
/// the blocking clauses of every constraint and every domain.
CompiledQcsp qcsp_to_qbf(const QcspInstance &inst);

/// Recursive evaluation over domain values. Throws std::length_error when the
/// product of domain sizes exceeds `max_product`.
bool qcsp_oracle(const QcspInstance &inst, std::uint64_t max_product = 1'000'000);

} // namespace qbffpt
