#include "doctest.h"

#include "../figure.hpp"
#include "../oracles.hpp"
#include "qbffpt/forge.hpp"
#include "qbffpt/search.hpp"

using namespace qbffpt;

namespace {

QbfInstance make(std::vector<QuantEntry> p, std::vector<Clause> cs) {
	return QbfInstance(QuantPrefix(std::move(p)), CnfMatrix(std::move(cs)));
}

const auto A = Quantifier::forall;
const auto E = Quantifier::exists;

} // namespace

TEST_SUITE("search") {

TEST_CASE("oracle unit cases") {
	CHECK(oracle_eval(make({{E, 1}}, {Clause{1}})));
	CHECK_FALSE(oracle_eval(make({{A, 1}}, {Clause{1}})));
	CHECK(oracle_eval(QbfInstance()));
	CHECK(oracle_eval(make({{A, 1}, {E, 2}}, {Clause{1, 2}, Clause{-1, -2}})));
	CHECK_FALSE(oracle_eval(make({{E, 1}, {A, 2}}, {Clause{1, 2}, Clause{-1, -2}})));
}

TEST_CASE("brute force on small graphs") {
	auto built = build_cgis(figure_instance());
	auto sel = cgis_brute_force(built.graph);
	REQUIRE(sel);
	CHECK(is_independent(built.graph, *sel));
	CHECK(is_independent(built.graph, {{2, 2, 0, 2}}));

	ClauseGraph clash2({1, 2}, {{Clause{1, 2}}, {Clause{-1, 2}}}, 2);
	CHECK_FALSE(cgis_brute_force(clash2));
	ClauseGraph one({1, 2}, {{Clause{1}, Clause{2}}}, 1);
	CHECK(cgis_brute_force(one) == Selection{{0}});
	CHECK(cgis_brute_force(ClauseGraph({}, {}, 1)) == Selection{});
	CHECK_FALSE(cgis_brute_force(ClauseGraph({1}, {{Clause{1}}, {}}, 1)));
}

TEST_CASE("node budget") {
	ClauseGraph g({1, 2, 3}, {{Clause{1}, Clause{2}, Clause{3}}, {Clause{-1}, Clause{-2}, Clause{-3}}, {Clause{1}}}, 1);
	CHECK_THROWS_AS(cgis_brute_force(g, {1}), BudgetExceeded);
	std::uint64_t nodes = 0;
	CHECK(cgis_brute_force(g, {}, &nodes));
	CHECK(nodes > 0);
}

TEST_CASE("solve examples") {
	auto t = make({{A, 1}, {E, 2}}, {Clause{1, 2}, Clause{-1, -2}});
	for (auto m : {Method::fpt, Method::xp, Method::oracle}) {
		SolveOptions o;
		o.method = m;
		CHECK(solve(t, o).answer);
	}
	auto f = make({{E, 1}, {A, 2}}, {Clause{1, 2}, Clause{-1, -2}});
	SolveOptions o;
	o.method = Method::fpt;
	auto v = solve(f, o);
	CHECK_FALSE(v.answer);
	REQUIRE(v.witness);
	CHECK(v.witness->universal_value(2, 0) == false);
	CHECK(v.witness->universal_value(2, 1) == true);
	CHECK_FALSE(v.witness->is_flat());
	CHECK(verify_countermodel(f, *v.witness));
	CHECK(v.witness->to_string() == "u 2 0 0\nu 2 1 1\n");
	CHECK(v.kernel);
}

TEST_CASE("flat witness when all universals come first") {
	auto f = make({{A, 1}, {A, 2}, {E, 3}}, {Clause{1, 3}, Clause{2, -3}});
	SolveOptions o;
	o.method = Method::xp;
	auto v = solve(f, o);
	CHECK_FALSE(v.answer);
	REQUIRE(v.witness);
	CHECK(v.witness->is_flat());
	auto a = v.witness->branch(0);
	CHECK(a.get(1) == false);
	CHECK(a.get(2) == false);
}

TEST_CASE("auto picks the oracle for small inputs") {
	auto t = make({{A, 1}, {E, 2}}, {Clause{1, 2}});
	CHECK(solve(t).method == Method::oracle);
	SolveOptions o;
	o.auto_oracle_max_vars = 0;
	CHECK(solve(t, o).method == Method::fpt);
	CHECK(parse_method("xp") == Method::xp);
	CHECK(parse_method("auto") == Method::auto_select);
	CHECK_THROWS_AS(parse_method("magic"), std::invalid_argument);
}

TEST_CASE("budgets never produce a verdict") {
	auto inst = random_qdcnf({3, 3, 2, 6, PrefixShape::alternating, 2});
	SolveOptions o;
	o.method = Method::fpt;
	o.budget_parts = 2;
	o.prune = false;
	CHECK_THROWS_AS(solve(inst, o), BudgetExceeded);
	o.budget_parts = 0;
	o.budget_clauses = 1;
	CHECK_THROWS_AS(solve(inst, o), BudgetExceeded);
}

TEST_CASE("stats are deterministic and ordered") {
	auto inst = random_qdcnf({6, 2, 3, 12, PrefixShape::random, 9});
	SolveOptions o;
	o.method = Method::fpt;
	auto a = solve(inst, o), b = solve(inst, o);
	CHECK(a.stats == b.stats);
	REQUIRE(!a.stats.empty());
	CHECK(a.stats.front().first == "method");
	CHECK(a.stats.back().first == "answer");
}

TEST_CASE("three methods agree with the game-tree oracle") {
	for (std::uint64_t seed = 0; seed < 500; ++seed) {
		RandomQbfSpec spec{seed % 5, 1 + seed % 3, 1 + seed % 3, 1 + seed % 8, PrefixShape::random, seed};
		const std::size_t vars = spec.n_universal + spec.k_existential;
		spec.m = std::min(spec.m, 2 * vars);
		auto inst = random_qdcnf(spec);
		bool expect = oracle::qbf_value(inst);
		for (auto m : {Method::fpt, Method::xp, Method::oracle}) {
			SolveOptions o;
			o.method = m;
			auto v = solve(inst, o);
			CHECK(v.answer == expect);
			if (!v.answer && m != Method::oracle) {
				REQUIRE(v.witness);
				CHECK(verify_countermodel(inst, *v.witness));
			}
		}
	}
}

}
