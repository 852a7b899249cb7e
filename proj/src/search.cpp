#include "qbffpt/search.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qbffpt {

namespace {

bool oracle_rec(std::span<const QuantEntry> prefix, const CnfMatrix &m) {
	if (m.has_empty_clause())
		return false;
	if (m.is_true())
		return true;
	if (prefix.empty())
		throw std::logic_error("oracle_eval: matrix mentions an unquantified variable");
	const QuantEntry &q = prefix.front();
	auto rest = prefix.subspan(1);
	bool first = oracle_rec(rest, assign(m, q.var, false));
	if (q.quant == Quantifier::exists ? first : !first)
		return first;
	return oracle_rec(rest, assign(m, q.var, true));
}

class Backtracker {
public:
	Backtracker(const ClauseGraph &g, const SearchLimits &limits) : g_(g), limits_(limits) {
		order_.resize(g.part_count());
		std::iota(order_.begin(), order_.end(), 0);
		std::stable_sort(order_.begin(), order_.end(),
		                 [&](std::size_t a, std::size_t b) { return g.part(a).size() < g.part(b).size(); });
		chosen_.resize(order_.size());
	}

	std::optional<Selection> run() {
		std::vector<std::vector<std::size_t>> domains(order_.size());
		for (std::size_t t = 0; t < order_.size(); ++t) {
			domains[t].resize(g_.part(order_[t]).size());
			std::iota(domains[t].begin(), domains[t].end(), 0);
			if (domains[t].empty())
				return std::nullopt;
		}
		if (!dfs(0, domains))
			return std::nullopt;
		Selection s;
		s.picks.resize(order_.size());
		for (std::size_t t = 0; t < order_.size(); ++t)
			s.picks[order_[t]] = chosen_[t];
		return s;
	}

	std::uint64_t nodes() const { return nodes_; }

private:
	bool dfs(std::size_t t, const std::vector<std::vector<std::size_t>> &domains) {
		if (t == order_.size())
			return true;
		const std::size_t pt = order_[t];
		for (std::size_t v : domains[t]) {
			if (limits_.max_nodes != 0 && nodes_ >= limits_.max_nodes)
				throw BudgetExceeded("nodes", "backtracking exceeded " + std::to_string(limits_.max_nodes) + " nodes");
			++nodes_;
			const Clause &lv = g_.label(pt, v);
			std::vector<std::vector<std::size_t>> next(domains.size());
			bool wiped = false;
			for (std::size_t u = t + 1; u < order_.size() && !wiped; ++u) {
				const std::size_t pu = order_[u];
				for (std::size_t w : domains[u])
					if (!clash(lv, g_.label(pu, w)))
						next[u].push_back(w);
				wiped = next[u].empty();
			}
			if (wiped)
				continue;
			chosen_[t] = v;
			if (dfs(t + 1, next))
				return true;
		}
		return false;
	}

	const ClauseGraph &g_;
	SearchLimits limits_;
	std::vector<std::size_t> order_;
	std::vector<std::size_t> chosen_;
	std::uint64_t nodes_ = 0;
};

std::string join(const std::vector<std::size_t> &v) {
	std::string s;
	for (std::size_t i = 0; i < v.size(); ++i) {
		if (i)
			s += ',';
		s += std::to_string(v[i]);
	}
	return s;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
	return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

bool oracle_eval(const QbfInstance &inst) {
	return oracle_rec(inst.prefix().entries(), inst.matrix());
}

std::optional<Selection> cgis_brute_force(const ClauseGraph &g, const SearchLimits &limits, std::uint64_t *nodes) {
	Backtracker bt(g, limits);
	auto s = bt.run();
	if (nodes)
		*nodes = bt.nodes();
	return s;
}

Countermodel::Countermodel(const QbfInstance &inst, const VarTable &vars, std::span<const Var> universe,
                           const Assignment &a)
    : max_var_(inst.max_var()) {
	std::uint64_t seen = 0;
	for (const auto &e : inst.prefix().entries()) {
		if (e.quant == Quantifier::exists) {
			seen |= std::uint64_t{1} << existentials_.size();
			existentials_.push_back(e.var);
		} else {
			universals_.push_back(e.var);
			info_.push_back({e.var, seen, {}});
		}
	}
	std::vector<std::size_t> slot(static_cast<std::size_t>(max_var_) + 1, info_.size());
	for (std::size_t i = 0; i < info_.size(); ++i)
		slot[info_[i].var] = i;

	for (Var w : universe) {
		if (w > vars.max_var())
			continue; // padding variable
		const VarOrigin &o = vars.origin(w);
		if (o.origin == 0 || o.origin > max_var_ || slot[o.origin] == info_.size())
			continue;
		UniversalInfo &u = info_[slot[o.origin]];
		if (o.choice_mask != u.mask)
			throw std::logic_error("countermodel: copy of x" + std::to_string(o.origin)
			                       + " does not depend on exactly the preceding existentials");
		u.values[o.choice_bits] = a.value_or_false(w);
	}
}

const Countermodel::UniversalInfo *Countermodel::info(Var u) const {
	for (const auto &i : info_)
		if (i.var == u)
			return &i;
	return nullptr;
}

bool Countermodel::universal_value(Var u, std::uint64_t existential_bits) const {
	const UniversalInfo *i = info(u);
	if (!i)
		throw std::invalid_argument("countermodel: x" + std::to_string(u) + " is not universal");
	auto it = i->values.find(existential_bits & i->mask);
	return it != i->values.end() && it->second;
}

Assignment Countermodel::branch(std::uint64_t existential_bits) const {
	Assignment a(max_var_);
	for (std::size_t t = 0; t < existentials_.size(); ++t)
		a.set(existentials_[t], (existential_bits >> t & 1u) != 0);
	for (const auto &i : info_) {
		auto it = i.values.find(existential_bits & i.mask);
		a.set(i.var, it != i.values.end() && it->second);
	}
	return a;
}

bool Countermodel::is_flat() const {
	return std::all_of(info_.begin(), info_.end(), [](const UniversalInfo &i) { return i.mask == 0; });
}

std::string Countermodel::to_string() const {
	std::ostringstream os;
	for (const auto &i : info_) {
		std::vector<std::pair<std::uint64_t, bool>> entries(i.values.begin(), i.values.end());
		std::sort(entries.begin(), entries.end());
		if (entries.empty())
			entries.push_back({0, false});
		for (const auto &[bits, value] : entries) {
			os << "u " << i.var << ' ';
			for (std::size_t t = 0; t < existentials_.size(); ++t)
				os << ((i.mask >> t & 1u) ? ((bits >> t & 1u) ? '1' : '0') : '-');
			if (existentials_.empty())
				os << '-';
			os << ' ' << (value ? 1 : 0) << '\n';
		}
	}
	return os.str();
}

bool verify_countermodel(const QbfInstance &inst, const Countermodel &cm) {
	const std::size_t k = cm.existentials().size();
	if (k >= 63)
		throw std::invalid_argument("verify_countermodel: too many existentials");
	for (std::uint64_t e = 0; e < (std::uint64_t{1} << k); ++e)
		if (evaluate(inst.matrix(), cm.branch(e)))
			return false;
	return true;
}

Method parse_method(const std::string &s) {
	if (s == "fpt")
		return Method::fpt;
	if (s == "xp")
		return Method::xp;
	if (s == "oracle")
		return Method::oracle;
	if (s == "auto")
		return Method::auto_select;
	throw std::invalid_argument("unknown method '" + s + "' (expected fpt, xp, oracle or auto)");
}

std::string to_string(Method m) {
	switch (m) {
	case Method::fpt:
		return "fpt";
	case Method::xp:
		return "xp";
	case Method::oracle:
		return "oracle";
	case Method::auto_select:
		return "auto";
	}
	return "?";
}

Verdict solve(const QbfInstance &inst, const SolveOptions &opts) {
	Verdict v;
	v.method = opts.method;
	if (v.method == Method::auto_select)
		v.method = inst.num_vars() <= opts.auto_oracle_max_vars ? Method::oracle : Method::fpt;

	auto stat = [&](std::string key, auto value) {
		std::ostringstream os;
		os << value;
		v.stats.emplace_back(std::move(key), os.str());
	};
	stat("method", to_string(v.method));
	stat("vars", inst.num_vars());
	stat("k", inst.k());
	stat("d", inst.d());
	stat("clauses", inst.matrix().size());

	if (v.method == Method::oracle) {
		auto t0 = std::chrono::steady_clock::now();
		v.answer = oracle_eval(inst);
		v.timings.emplace_back("oracle", ms_since(t0));
		stat("answer", v.answer ? "TRUE" : "FALSE");
		return v;
	}

	auto t0 = std::chrono::steady_clock::now();
	TautInstance taut = expand_all(inst, ExpandOptions{opts.prune, opts.budget_parts});
	v.timings.emplace_back("expand", ms_since(t0));
	std::size_t total = 0;
	for (const auto &f : taut.formulas)
		total += f.size();
	if (opts.budget_clauses != 0 && total > opts.budget_clauses)
		throw BudgetExceeded("clauses", "expansion produced " + std::to_string(total) + " clauses, budget is "
		                                    + std::to_string(opts.budget_clauses));
	stat("parts", taut.formulas.size());
	stat("pruned_false", taut.pruned_false);
	stat("short_circuit", taut.short_circuit_true ? 1 : 0);
	stat("expanded_clauses", total);

	t0 = std::chrono::steady_clock::now();
	BuiltGraph built = build_cgis(taut);
	v.timings.emplace_back("reduce", ms_since(t0));
	stat("cgis_vertices", built.graph.vertex_count());
	stat("cgis_max_part", built.graph.max_part_size());

	ClauseGraph graph = std::move(built.graph);
	if (v.method == Method::fpt) {
		t0 = std::chrono::steady_clock::now();
		Kernel k = kernelize(graph, opts.kernel_mode, opts.jobs);
		v.timings.emplace_back("kernel", ms_since(t0));
		stat("kernel_mode", to_string(opts.kernel_mode));
		if (opts.kernel_mode == KernelMode::paper)
			stat("kernel_tag", "per-paper");
		stat("kernel_threshold", k.report.threshold);
		stat("kernel_bound", k.report.bound);
		stat("kernel_before", join(k.report.before));
		stat("kernel_after", join(k.report.after));
		stat("kernel_deleted", k.report.deleted);
		stat("kernel_within_bound", k.report.within_bound ? 1 : 0);
		graph = std::move(k.graph);
		v.kernel = std::move(k.report);
	}

	t0 = std::chrono::steady_clock::now();
	std::uint64_t nodes = 0;
	auto sel = cgis_brute_force(graph, opts.search, &nodes);
	v.timings.emplace_back("search", ms_since(t0));
	stat("search_nodes", nodes);
	v.answer = !sel.has_value();

	if (sel) {
		Assignment alpha = extract_countermodel(graph, *sel);
		Countermodel cm(inst, taut.vars, graph.universe(), alpha);
		if (opts.verify_witness && inst.k() <= 20
		    && (std::uint64_t{1} << inst.k()) * (inst.matrix().literal_count() + 1) <= 50'000'000) {
			if (!verify_countermodel(inst, cm))
				throw std::logic_error("solve: countermodel does not falsify the matrix");
			stat("witness_verified", 1);
		}
		v.witness = std::move(cm);
	}
	stat("answer", v.answer ? "TRUE" : "FALSE");
	return v;
}

} // namespace qbffpt
