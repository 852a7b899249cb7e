#include "qbffpt/expansion.hpp"

#include <algorithm>
#include <numeric>

namespace qbffpt {

namespace {

void ensure(bool cond, const char *what) {
	if (!cond)
		throw std::logic_error(std::string("expansion invariant violated: ") + what);
}

CnfMatrix rename(const CnfMatrix &m, const std::vector<Var> &map) {
	std::vector<Clause> out;
	out.reserve(m.size());
	std::vector<Literal> lits;
	for (const auto &c : m.clauses()) {
		lits.clear();
		bool moved = false;
		for (Literal l : c.literals()) {
			Var v = l.var();
			if (v < map.size() && map[v] != 0) {
				lits.push_back(Literal::make(map[v], l.positive()));
				moved = true;
			} else {
				lits.push_back(l);
			}
		}
		if (moved)
			std::sort(lits.begin(), lits.end());
		out.push_back(Clause::trusted(lits));
	}
	return CnfMatrix(std::move(out));
}

std::string provenance_string(const VarOrigin &p, std::size_t k) {
	std::string s(k, '-');
	for (std::size_t t = 0; t < k; ++t)
		if (p.choice_mask >> t & 1u)
			s[t] = (p.choice_bits >> t & 1u) ? '1' : '0';
	return s;
}

} // namespace

VarTable::VarTable(Var max_var, std::vector<Var> existentials) : existentials_(std::move(existentials)) {
	if (existentials_.size() > 62)
		throw std::invalid_argument("expansion supports at most 62 existential variables");
	origins_.resize(static_cast<std::size_t>(max_var) + 1);
	for (Var v = 1; v <= max_var; ++v)
		origins_[v].origin = v;
}

Var VarTable::fresh(VarOrigin origin) {
	origins_.push_back(origin);
	return static_cast<Var>(origins_.size() - 1);
}

std::size_t VarTable::existential_index(Var v) const {
	auto it = std::find(existentials_.begin(), existentials_.end(), origin(v).origin);
	if (it == existentials_.end())
		throw std::invalid_argument("variable " + std::to_string(v) + " is not an original existential");
	return static_cast<std::size_t>(it - existentials_.begin());
}

ExpansionState initial_state(const QbfInstance &inst) {
	std::vector<Var> ex;
	for (const auto &e : inst.prefix().entries())
		if (e.quant == Quantifier::exists)
			ex.push_back(e.var);
	ExpansionState st;
	st.prefix = inst.prefix();
	st.formulas = {inst.matrix()};
	st.provenance = {VarOrigin{}};
	st.vars = VarTable(inst.max_var(), std::move(ex));
	return st;
}

ExpansionState eliminate_last_existential(const ExpansionState &state) {
	auto last = state.prefix.last_existential();
	if (!last)
		throw std::invalid_argument("eliminate_last_existential: prefix has no existential variable");
	const auto entries = state.prefix.entries();
	const std::size_t i = *last;
	const Var xi = entries[i].var;
	const std::size_t t = state.vars.existential_index(xi);

	ExpansionState next;
	next.vars = state.vars;
	std::vector<QuantEntry> prefix(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(i));
	std::vector<Var> copy_map[2];
	for (int b = 0; b < 2; ++b) {
		copy_map[b].assign(static_cast<std::size_t>(state.vars.max_var()) + 1, 0);
		for (std::size_t j = i + 1; j < entries.size(); ++j) {
			VarOrigin o = state.vars.origin(entries[j].var);
			o.choice_mask |= std::uint64_t{1} << t;
			o.choice_bits |= std::uint64_t(b) << t;
			Var copy = next.vars.fresh(o);
			copy_map[b][entries[j].var] = copy;
			prefix.push_back({Quantifier::forall, copy});
		}
	}
	next.prefix = QuantPrefix(std::move(prefix));

	next.formulas.reserve(2 * state.formulas.size());
	next.provenance.reserve(2 * state.formulas.size());
	for (std::size_t f = 0; f < state.formulas.size(); ++f) {
		for (int b = 0; b < 2; ++b) {
			CnfMatrix reduced = rename(assign(state.formulas[f], xi, b == 1), copy_map[b]);
			ensure(reduced.size() <= state.formulas[f].size(), "formula size grew");
			VarOrigin p = state.provenance[f];
			p.choice_mask |= std::uint64_t{1} << t;
			p.choice_bits |= std::uint64_t(b) << t;
			next.formulas.push_back(std::move(reduced));
			next.provenance.push_back(p);
		}
	}

	ensure(next.prefix.size() <= 2 * state.prefix.size(), "variable count more than doubled");
	ensure(next.formulas.size() <= 2 * state.formulas.size(), "formula count more than doubled");
	ensure(next.prefix.existential_count() + 1 == state.prefix.existential_count(),
	       "existential count did not drop by one");
	return next;
}

TautInstance expand_all(const QbfInstance &inst, const ExpandOptions &opts) {
	ExpansionState st = initial_state(inst);
	const std::size_t k = inst.k();

	TautInstance out;
	out.width = inst.d();

	auto prune = [&]() -> bool {
		std::vector<CnfMatrix> kept;
		std::vector<VarOrigin> kept_prov;
		for (std::size_t f = 0; f < st.formulas.size(); ++f) {
			if (st.formulas[f].is_true()) {
				st.formulas = {std::move(st.formulas[f])};
				st.provenance = {st.provenance[f]};
				return true;
			}
			if (st.formulas[f].has_empty_clause()) {
				++out.pruned_false;
				continue;
			}
			kept.push_back(std::move(st.formulas[f]));
			kept_prov.push_back(st.provenance[f]);
		}
		st.formulas = std::move(kept);
		st.provenance = std::move(kept_prov);
		return false;
	};

	bool short_circuit = opts.prune && prune();
	for (std::size_t step = 0; step < k && !short_circuit; ++step) {
		if (opts.max_formulas != 0 && 2 * st.formulas.size() > opts.max_formulas)
			throw BudgetExceeded("parts", "expansion would produce " + std::to_string(2 * st.formulas.size())
			                                  + " formulas, budget is " + std::to_string(opts.max_formulas));
		st = eliminate_last_existential(st);
		if (opts.prune)
			short_circuit = prune();
	}

	out.short_circuit_true = short_circuit;
	for (const auto &e : st.prefix.entries())
		if (e.quant == Quantifier::forall)
			out.universe.push_back(e.var);

	std::vector<std::size_t> order(st.formulas.size());
	std::iota(order.begin(), order.end(), 0);
	std::vector<std::string> prov(st.formulas.size());
	for (std::size_t f = 0; f < prov.size(); ++f)
		prov[f] = provenance_string(st.provenance[f], k);
	std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return prov[a] < prov[b]; });
	for (std::size_t f : order) {
		ensure(st.formulas[f].width() <= out.width, "formula wider than source matrix");
		out.formulas.push_back(std::move(st.formulas[f]));
		out.provenance.push_back(std::move(prov[f]));
	}
	out.vars = std::move(st.vars);
	return out;
}

} // namespace qbffpt
