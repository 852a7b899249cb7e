// Acceptance suite: prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "../figure.hpp"
#include "../oracles.hpp"
#include "../random_cgis.hpp"
#include "qbffpt/clause_graph.hpp"
#include "qbffpt/forge.hpp"
#include "qbffpt/kernel.hpp"
#include "qbffpt/qcsp.hpp"
#include "qbffpt/search.hpp"

using namespace qbffpt;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
	return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool report(int id, bool ok, const std::string &detail) {
	std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
	std::fflush(stdout);
	return ok;
}

// The strategy must falsify the matrix on every existential branch, and a
// universal may only look at existentials quantified before it.
bool witness_ok(const QbfInstance &inst, const Countermodel &cm) {
	std::vector<Var> ex;
	for (const auto &e : inst.prefix().entries())
		if (e.quant == Quantifier::exists)
			ex.push_back(e.var);
	const std::size_t k = ex.size();
	std::vector<int> values(inst.max_var() + 1, 0);
	for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
		Assignment a = cm.branch(bits);
		std::size_t seen_ex = 0;
		for (const auto &e : inst.prefix().entries()) {
			if (e.quant == Quantifier::exists) {
				values[e.var] = static_cast<int>(bits >> seen_ex & 1u);
				++seen_ex;
				continue;
			}
			values[e.var] = a.value_or_false(e.var) ? 1 : 0;
			for (std::size_t later = seen_ex; later < k; ++later)
				if (cm.universal_value(e.var, bits ^ (std::uint64_t{1} << later)) != cm.universal_value(e.var, bits))
					return false;
		}
		if (oracle::cnf_true(inst.matrix().clauses(), values))
			return false;
	}
	return true;
}

struct Agreement {
	std::size_t instances = 0;
	std::size_t disagreements = 0;
	std::size_t bad_witnesses = 0;
	std::size_t false_answers = 0;
};

void check_instance(const QbfInstance &inst, Agreement &acc) {
	++acc.instances;
	const bool truth = oracle::qbf_value(inst);
	if (!truth)
		++acc.false_answers;
	for (auto m : {Method::fpt, Method::xp, Method::oracle}) {
		SolveOptions o;
		o.method = m;
		Verdict v = solve(inst, o);
		if (v.answer != truth) {
			if (acc.disagreements++ < 5)
				std::printf("  disagreement: method %s, k=%zu, %zu clauses\n", to_string(m).c_str(), inst.k(),
				            inst.matrix().size());
			continue;
		}
		if (!v.answer && m != Method::oracle && (!v.witness || !witness_ok(inst, *v.witness)))
			++acc.bad_witnesses;
	}
}

std::uint64_t clause_space(std::size_t n, std::size_t d, std::size_t min_width = 1) {
	std::uint64_t total = 0;
	for (std::size_t w = min_width; w <= std::min(n, d); ++w) {
		std::uint64_t c = 1;
		for (std::size_t i = 0; i < w; ++i)
			c = c * (n - i) / (i + 1);
		total += c << w;
	}
	return total;
}

bool criterion1() {
	auto t0 = Clock::now();
	Agreement sweep;
	for (std::size_t n = 0; n <= 4; ++n) {
		std::vector<Clause> pool;
		for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
			if (__builtin_popcount(mask) > 2)
				continue;
			std::vector<Var> vs;
			for (Var v = 1; v <= n; ++v)
				if (mask >> (v - 1) & 1u)
					vs.push_back(v);
			for (std::uint32_t signs = 0; signs < (1u << vs.size()); ++signs) {
				std::vector<Literal> lits;
				for (std::size_t i = 0; i < vs.size(); ++i)
					lits.push_back(Literal::make(vs[i], (signs >> i & 1u) == 0));
				pool.emplace_back(lits);
			}
		}
		std::vector<std::vector<Clause>> matrices{{}};
		for (std::size_t a = 0; a < pool.size(); ++a) {
			matrices.push_back({pool[a]});
			for (std::size_t b = a + 1; b < pool.size(); ++b) {
				matrices.push_back({pool[a], pool[b]});
				for (std::size_t c = b + 1; c < pool.size(); ++c)
					matrices.push_back({pool[a], pool[b], pool[c]});
			}
		}
		for (std::uint32_t q = 0; q < (1u << n); ++q) {
			std::vector<QuantEntry> prefix;
			for (Var v = 1; v <= n; ++v)
				prefix.push_back({(q >> (v - 1) & 1u) ? Quantifier::exists : Quantifier::forall, v});
			QuantPrefix p(prefix);
			for (const auto &m : matrices)
				check_instance(QbfInstance(p, CnfMatrix(m)), sweep);
		}
	}

	Agreement random;
	std::mt19937_64 rng(2024);
	for (int it = 0; it < 10000; ++it) {
		RandomQbfSpec spec;
		const std::size_t n = 1 + rng() % 8;
		spec.k_existential = rng() % (std::min<std::size_t>(3, n) + 1);
		spec.n_universal = n - spec.k_existential;
		spec.d = 1 + rng() % 3;
		spec.m = std::min<std::uint64_t>(1 + rng() % 8, clause_space(n, spec.d));
		spec.shape = PrefixShape::random;
		spec.seed = rng();
		check_instance(random_qdcnf(spec), random);
	}

	const bool ok = sweep.disagreements == 0 && random.disagreements == 0 && sweep.bad_witnesses == 0
	                && random.bad_witnesses == 0;
	char buf[512];
	std::snprintf(buf, sizeof buf,
	              "sweep %zu instances (%zu false), random %zu instances (%zu false); disagreements %zu+%zu, "
	              "invalid witnesses %zu+%zu; %.1fs",
	              sweep.instances, sweep.false_answers, random.instances, random.false_answers, sweep.disagreements,
	              random.disagreements, sweep.bad_witnesses, random.bad_witnesses, seconds_since(t0));
	return report(1, ok, buf);
}

bool criterion2() {
	const auto t = figure_instance();
	const auto built = build_cgis(t);
	const auto &g = built.graph;
	bool ok = g.part_count() == 4 && g.part(0).size() == 4 && g.part(1).size() == 3 && g.part(2).size() == 3
	          && g.part(3).size() == 4;
	std::string adj;
	const char names[] = "uvwz";
	if (ok)
		for (std::size_t p = 0; p < 4; ++p)
			for (std::size_t v = 0; v < g.part(p).size(); ++v)
				if (g.adjacent(0, 0, p, v))
					adj += std::string(adj.empty() ? "" : ",") + names[p] + std::to_string(v + 1);
	ok = ok && adj == "v1,v3,w1,w2,z1,z2";
	const Selection s{{2, 2, 0, 2}};
	ok = ok && is_independent(g, s);
	std::string alpha;
	if (ok) {
		Assignment a = extract_countermodel(g, s);
		std::vector<int> values(a.max_var() + 1, 0);
		for (Var v = 1; v <= 6; ++v) {
			values[v] = a.value_or_false(v) ? 1 : 0;
			alpha += std::to_string(values[v]);
		}
		ok = ok && alpha == "110001";
		for (const auto &f : t.formulas)
			ok = ok && !oracle::cnf_true(f.clauses(), values);
	}
	return report(2, ok, "N(u1)={" + adj + "}, {u3,v3,w1,z3} independent, alpha(x1..x6)=" + alpha);
}

bool criterion3() {
	auto t0 = Clock::now();
	std::mt19937_64 rng(3);
	std::size_t flips = 0, graphs = 0, yes = 0, deleted = 0;
	std::size_t over_bound[4] = {0, 0, 0, 0};
	std::size_t at_bound_only = 0;
	for (int it = 0; it < 1000; ++it) {
		// Odd rounds draw labels uniformly; even rounds take the clause graph
		// of an expanded random QBF, which is a no-instance about half the time.
		ClauseGraph g;
		if (it % 2) {
			const std::size_t K = 1 + rng() % 4, d = 1 + rng() % 3, n = d + rng() % (13 - d);
			g = random_cgis(rng, K, d, n, 40);
		} else {
			for (;;) {
				RandomQbfSpec spec;
				spec.k_existential = 1 + rng() % 2;
				spec.n_universal = 1 + rng() % 3;
				spec.shape = PrefixShape::ae;
				spec.d = 1 + rng() % 3;
				spec.m = std::min<std::uint64_t>(1 + rng() % (it % 4 == 0 ? 40 : 5),
				                                 clause_space(spec.n_universal + spec.k_existential, spec.d, spec.d));
				spec.min_width = spec.d;
				spec.seed = rng();
				auto t = expand_all(random_qdcnf(spec), {false, 0});
				auto built = build_cgis(t);
				if (built.graph.universe().size() <= 12 && built.graph.max_part_size() <= 40) {
					g = built.graph;
					break;
				}
			}
		}
		const std::size_t K = g.part_count(), d = g.d();
		++graphs;
		const bool before = oracle::cgis_exists(oracle::parts_of(g));
		yes += before;
		for (auto mode : {KernelMode::paper, KernelMode::safe}) {
			auto k = kernelize(g, mode, 1);
			deleted += k.report.deleted;
			if (oracle::cgis_exists(oracle::parts_of(k.graph)) != before)
				++flips;
			const std::uint64_t bound = erdos_rado_bound(d, sunflower_threshold(K, d, mode));
			for (std::size_t p = 0; p < k.graph.part_count(); ++p) {
				const std::uint64_t size = k.graph.part(p).size();
				if (size >= bound) {
					++over_bound[d];
					if (size == bound)
						++at_bound_only;
				}
			}
		}
	}
	const std::size_t violations = over_bound[1] + over_bound[2] + over_bound[3];
	char buf[512];
	std::snprintf(buf, sizeof buf,
	              "%zu graphs x 2 modes (%zu yes), %zu vertices deleted; answer flips %zu; parts not below "
	              "d!(s-1)^d: %zu (d=1: %zu, d=2: %zu, d=3: %zu; %zu of them exactly at the bound); %.1fs",
	              graphs, yes, deleted, flips, violations, over_bound[1], over_bound[2], over_bound[3], at_bound_only,
	              seconds_since(t0));
	return report(3, flips == 0 && violations == 0, buf);
}

bool criterion4() {
	const std::size_t sizes[] = {100, 1000, 10000, 100000};
	std::vector<double> times;
	std::string detail;
	for (std::size_t n : sizes) {
		RandomQbfSpec spec{n, 2, 3, 2 * n, PrefixShape::random, 4000 + n, 3};
		auto inst = random_qdcnf(spec);
		SolveOptions o;
		o.method = Method::fpt;
		const int reps = n >= 100000 ? 3 : n >= 10000 ? 5 : 15;
		std::vector<double> runs;
		bool answer = false;
		for (int r = 0; r < reps; ++r) {
			auto t0 = Clock::now();
			auto v = solve(inst, o);
			runs.push_back(seconds_since(t0));
			answer = v.answer;
		}
		std::sort(runs.begin(), runs.end());
		times.push_back(runs[runs.size() / 2]);
		char buf[128];
		std::snprintf(buf, sizeof buf, "n=%zu m=%zu %s %.3fms; ", n, inst.matrix().size(), answer ? "T" : "F",
		              times.back() * 1e3);
		detail += buf;
	}
	const double ratio = times.back() / times.front();
	char buf[64];
	std::snprintf(buf, sizeof buf, "ratio %.1f (limit 2000)", ratio);
	return report(4, ratio <= 2000.0, detail + buf);
}

bool criterion5() {
	auto t0 = Clock::now();
	std::mt19937_64 rng(5);
	std::size_t failures = 0, yes = 0, residual_checked = 0;
	for (int it = 0; it < 500; ++it) {
		const std::size_t vertices = 1 + rng() % 8, K = 1 + rng() % 4;
		auto g = random_multipartite(vertices, K, static_cast<unsigned>(rng() % 101), rng());
		std::vector<std::vector<std::uint32_t>> parts(g.parts().begin(), g.parts().end());
		std::vector<std::pair<std::uint32_t, std::uint32_t>> edges(g.edges().begin(), g.edges().end());
		const bool is = oracle::multipartite_is_exists(parts, edges);
		yes += is;
		auto q = multipartite_is_to_qbf(g);
		std::size_t kappa = 0;
		while ((std::size_t{1} << kappa) < K)
			++kappa;
		bool ok = oracle_eval(q) == !is && oracle::qbf_value(q) == !is && q.k() == kappa;

		if (ok && is) {
			// Universal part: y false exactly on one independent pick per part
			// and on every padding vertex; the residual must have 2^kappa
			// clauses with pairwise distinct existential patterns.
			std::set<std::pair<std::uint32_t, std::uint32_t>> adj;
			for (auto [u, v] : edges) {
				adj.emplace(u, v);
				adj.emplace(v, u);
			}
			std::vector<std::uint32_t> pick(K);
			std::function<bool(std::size_t)> rec = [&](std::size_t i) {
				if (i == K)
					return true;
				for (auto v : parts[i]) {
					bool free = true;
					for (std::size_t j = 0; j < i; ++j)
						free = free && !adj.count({pick[j], v});
					if (!free)
						continue;
					pick[i] = v;
					if (rec(i + 1))
						return true;
				}
				return false;
			};
			rec(0);
			std::set<std::uint32_t> chosen(pick.begin(), pick.end());
			CnfMatrix m = q.matrix();
			Var y = 0;
			for (std::size_t i = 0; i < K; ++i)
				for (auto v : parts[i])
					m = assign(m, ++y, chosen.count(v) == 0);
			for (std::size_t i = K; i < (std::size_t{1} << kappa); ++i)
				m = assign(m, ++y, false);
			std::set<Clause> patterns(m.clauses().begin(), m.clauses().end());
			bool residual_ok = m.size() == (std::size_t{1} << kappa) && patterns.size() == m.size();
			for (const auto &c : m.clauses())
				residual_ok = residual_ok && c.size() == kappa && (c.empty() || c.literals().front().var() > y);
			ok = ok && residual_ok;
			++residual_checked;
		}
		failures += !ok;
	}
	char buf[256];
	std::snprintf(buf, sizeof buf, "500 graphs (%zu with a one-per-part IS, residual checked on %zu); failures %zu; %.1fs",
	              yes, residual_checked, failures, seconds_since(t0));
	return report(5, failures == 0, buf);
}

bool criterion6() {
	auto t0 = Clock::now();
	std::mt19937_64 rng(6);
	std::size_t disagreements = 0, trues = 0;
	for (int it = 0; it < 1000; ++it) {
		std::vector<QcspVariable> vars;
		const std::size_t nv = 1 + rng() % 5;
		for (std::size_t i = 0; i < nv; ++i) {
			QcspVariable v;
			v.name = "v" + std::to_string(i);
			v.quant = rng() % 2 ? Quantifier::exists : Quantifier::forall;
			const std::size_t ds = 1 + rng() % 3;
			for (std::size_t j = 0; j < ds; ++j)
				v.domain.push_back(std::to_string(j));
			vars.push_back(v);
		}
		std::vector<QcspConstraint> cons;
		const std::size_t nc = rng() % 5;
		for (std::size_t c = 0; c < nc; ++c) {
			QcspConstraint con;
			const std::size_t arity = rng() % 8 == 0 ? 0 : 1 + rng() % 2;
			for (std::size_t a = 0; a < arity; ++a)
				con.scope.push_back(rng() % nv);
			const unsigned keep = static_cast<unsigned>(rng() % 100);
			std::vector<std::size_t> t(arity, 0);
			std::function<void(std::size_t)> all = [&](std::size_t p) {
				if (p == arity) {
					if (rng() % 100 < keep)
						con.tuples.push_back(t);
					return;
				}
				for (std::size_t val = 0; val < vars[con.scope[p]].domain.size(); ++val) {
					t[p] = val;
					all(p + 1);
				}
			};
			all(0);
			cons.push_back(con);
		}
		QcspInstance inst(vars, cons);
		const bool expect = qcsp_oracle(inst);
		trues += expect;
		auto compiled = qcsp_to_qbf(inst);
		if (oracle_eval(compiled.qbf) != expect || oracle::qbf_value(compiled.qbf) != expect)
			++disagreements;
	}
	char buf[256];
	std::snprintf(buf, sizeof buf, "1000 QCSPs (%zu true); disagreements %zu; %.1fs", trues, disagreements,
	              seconds_since(t0));
	return report(6, disagreements == 0, buf);
}

bool criterion7() {
	auto t0 = Clock::now();
	std::vector<Clause> pairs;
	for (Var i = 1; i <= 6; ++i)
		for (Var j = i + 1; j <= 6; ++j)
			pairs.push_back(Clause({Literal::make(i, true), Literal::make(j, true)}));
	std::size_t families = 0, misses = 0;
	for (std::size_t a : {2u, 3u}) {
		const std::size_t bound = 2 * (a - 1) * (a - 1);
		for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
			if (static_cast<std::size_t>(__builtin_popcount(mask)) <= bound)
				continue;
			std::vector<Clause> fam;
			for (std::size_t i = 0; i < pairs.size(); ++i)
				if (mask >> i & 1u)
					fam.push_back(pairs[i]);
			++families;
			auto s = find_sunflower(fam, a);
			if (!s || !oracle::valid_sunflower(fam, *s, a))
				++misses;
		}
	}
	char buf[256];
	std::snprintf(buf, sizeof buf, "%zu families of 2-sets over 6 elements (a=2,3); misses %zu; %.1fs", families,
	              misses, seconds_since(t0));
	return report(7, misses == 0, buf);
}

} // namespace

int main(int argc, char **argv) {
	std::vector<std::function<bool()>> all{criterion1, criterion2, criterion3, criterion4,
	                                       criterion5, criterion6, criterion7};
	int only = argc > 1 ? std::atoi(argv[1]) : 0;
	bool ok = true;
	for (std::size_t i = 0; i < all.size(); ++i) {
		if (only != 0 && static_cast<std::size_t>(only) != i + 1)
			continue;
		try {
			ok = all[i]() && ok;
		} catch (const std::exception &e) {
			ok = report(static_cast<int>(i + 1), false, std::string("exception: ") + e.what()) && ok;
		}
	}
	return ok ? 0 : 1;
}
