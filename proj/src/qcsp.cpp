#include "qbffpt/qcsp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace qbffpt {

QcspInstance::QcspInstance(std::vector<QcspVariable> vars, std::vector<QcspConstraint> constraints)
    : vars_(std::move(vars)), constraints_(std::move(constraints)) {
	std::set<std::string> names;
	for (const auto &v : vars_) {
		if (!names.insert(v.name).second)
			throw std::invalid_argument("qcsp: variable '" + v.name + "' declared twice");
		if (v.domain.empty())
			throw std::invalid_argument("qcsp: variable '" + v.name + "' has an empty domain");
		std::set<std::string> vals(v.domain.begin(), v.domain.end());
		if (vals.size() != v.domain.size())
			throw std::invalid_argument("qcsp: domain of '" + v.name + "' repeats a value");
	}
	for (std::size_t ci = 0; ci < constraints_.size(); ++ci) {
		const auto &c = constraints_[ci];
		for (std::size_t v : c.scope)
			if (v >= vars_.size())
				throw std::invalid_argument("qcsp: constraint " + std::to_string(ci) + " scopes an unknown variable");
		for (const auto &t : c.tuples) {
			if (t.size() != c.scope.size())
				throw std::invalid_argument("qcsp: constraint " + std::to_string(ci) + " has a tuple of wrong arity");
			for (std::size_t p = 0; p < t.size(); ++p)
				if (t[p] >= vars_[c.scope[p]].domain.size())
					throw std::invalid_argument("qcsp: constraint " + std::to_string(ci)
					                            + " has a value outside the domain of '" + vars_[c.scope[p]].name + "'");
		}
	}
}

std::size_t QcspInstance::existential_count() const {
	return static_cast<std::size_t>(std::count_if(vars_.begin(), vars_.end(), [](const QcspVariable &v) {
		return v.quant == Quantifier::exists;
	}));
}

std::size_t QcspInstance::max_arity() const {
	std::size_t r = 0;
	for (const auto &c : constraints_)
		r = std::max(r, c.scope.size());
	return r;
}

std::size_t QcspInstance::max_domain() const {
	std::size_t r = 0;
	for (const auto &v : vars_)
		r = std::max(r, v.domain.size());
	return r;
}

bool QcspInstance::operator==(const QcspInstance &o) const {
	if (vars_.size() != o.vars_.size() || constraints_.size() != o.constraints_.size())
		return false;
	for (std::size_t i = 0; i < vars_.size(); ++i)
		if (vars_[i].name != o.vars_[i].name || vars_[i].quant != o.vars_[i].quant
		    || vars_[i].domain != o.vars_[i].domain)
			return false;
	for (std::size_t i = 0; i < constraints_.size(); ++i)
		if (constraints_[i].scope != o.constraints_[i].scope || constraints_[i].tuples != o.constraints_[i].tuples)
			return false;
	return true;
}

BitCodec::BitCodec(std::size_t size) : size_(size), width_(0) {
	if (size == 0)
		throw std::invalid_argument("BitCodec: empty domain");
	while ((std::size_t{1} << width_) < size)
		++width_;
}

std::vector<Clause> encode_relation(const QcspConstraint &c, const std::vector<BitCodec> &codecs,
                                    const std::vector<std::vector<Var>> &bits) {
	if (c.tuples.empty())
		return {Clause()};

	// Distinct Boolean variables of the scope; a variable repeated in the scope
	// reuses its bits.
	std::vector<std::size_t> distinct;
	for (std::size_t v : c.scope)
		if (std::find(distinct.begin(), distinct.end(), v) == distinct.end())
			distinct.push_back(v);
	std::vector<Var> flat;
	std::unordered_map<std::size_t, std::size_t> offset;
	for (std::size_t v : distinct) {
		offset[v] = flat.size();
		flat.insert(flat.end(), bits[v].begin(), bits[v].end());
	}
	if (flat.size() >= 30)
		throw std::length_error("encode_relation: scope too wide to tabulate");

	std::set<std::vector<std::size_t>> table(c.tuples.begin(), c.tuples.end());
	std::vector<Clause> out;
	std::vector<std::size_t> decoded(c.scope.size());
	for (std::uint64_t a = 0; a < (std::uint64_t{1} << flat.size()); ++a) {
		for (std::size_t p = 0; p < c.scope.size(); ++p) {
			std::size_t v = c.scope[p];
			std::uint64_t code = (a >> offset[v]) & ((std::uint64_t{1} << codecs[v].width()) - 1);
			decoded[p] = codecs[v].decode(code);
		}
		if (table.count(decoded))
			continue;
		std::vector<Literal> lits;
		for (std::size_t b = 0; b < flat.size(); ++b)
			lits.push_back(Literal::make(flat[b], (a >> b & 1u) == 0));
		out.push_back(Clause(std::move(lits)));
	}
	return out;
}

CompiledQcsp qcsp_to_qbf(const QcspInstance &inst) {
	CompiledQcsp out;
	std::vector<QuantEntry> prefix;
	Var next = 0;
	for (const auto &v : inst.variables()) {
		out.codecs.emplace_back(v.domain.size());
		std::vector<Var> vb;
		for (std::size_t b = 0; b < out.codecs.back().width(); ++b) {
			vb.push_back(++next);
			prefix.push_back({v.quant, next});
		}
		out.bits.push_back(std::move(vb));
	}

	std::vector<Clause> clauses;
	for (const auto &c : inst.constraints()) {
		auto enc = encode_relation(c, out.codecs, out.bits);
		clauses.insert(clauses.end(), enc.begin(), enc.end());
	}
	// Domains as unary relations; with one codec per variable every code
	// decodes into its own domain, so these contribute no clauses.
	for (std::size_t v = 0; v < inst.variables().size(); ++v) {
		QcspConstraint dom{{v}, {}};
		for (std::size_t val = 0; val < inst.variables()[v].domain.size(); ++val)
			dom.tuples.push_back({val});
		auto enc = encode_relation(dom, out.codecs, out.bits);
		clauses.insert(clauses.end(), enc.begin(), enc.end());
	}
	out.qbf = QbfInstance(QuantPrefix(std::move(prefix)), CnfMatrix(std::move(clauses)));
	return out;
}

namespace {

class QcspEvaluator {
public:
	explicit QcspEvaluator(const QcspInstance &inst) : inst_(inst), value_(inst.variables().size(), 0) {
		// Check each constraint as soon as its last scoped variable is set.
		ready_.resize(inst.variables().size());
		for (std::size_t c = 0; c < inst.constraints().size(); ++c) {
			const auto &scope = inst.constraints()[c].scope;
			std::size_t last = 0;
			bool any = !scope.empty();
			for (std::size_t v : scope)
				last = std::max(last, v);
			if (any)
				ready_[last].push_back(c);
			else
				nullary_.push_back(c);
			tables_.emplace_back(inst.constraints()[c].tuples.begin(), inst.constraints()[c].tuples.end());
		}
	}

	bool run() {
		for (std::size_t c : nullary_)
			if (!holds(c))
				return false;
		return rec(0);
	}

private:
	bool holds(std::size_t c) const {
		const auto &scope = inst_.constraints()[c].scope;
		std::vector<std::size_t> t(scope.size());
		for (std::size_t p = 0; p < scope.size(); ++p)
			t[p] = value_[scope[p]];
		return tables_[c].count(t) > 0;
	}

	bool rec(std::size_t i) {
		if (i == value_.size())
			return true;
		const auto &var = inst_.variables()[i];
		const bool exists = var.quant == Quantifier::exists;
		for (std::size_t val = 0; val < var.domain.size(); ++val) {
			value_[i] = val;
			bool ok = std::all_of(ready_[i].begin(), ready_[i].end(), [&](std::size_t c) { return holds(c); })
			          && rec(i + 1);
			if (exists && ok)
				return true;
			if (!exists && !ok)
				return false;
		}
		return !exists;
	}

	const QcspInstance &inst_;
	std::vector<std::size_t> value_;
	std::vector<std::vector<std::size_t>> ready_;
	std::vector<std::size_t> nullary_;
	std::vector<std::set<std::vector<std::size_t>>> tables_;
};

} // namespace

bool qcsp_oracle(const QcspInstance &inst, std::uint64_t max_product) {
	std::uint64_t product = 1;
	for (const auto &v : inst.variables()) {
		product *= v.domain.size();
		if (product > max_product)
			throw std::length_error("qcsp_oracle: search space exceeds " + std::to_string(max_product));
	}
	return QcspEvaluator(inst).run();
}

} // namespace qbffpt
