#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "qbffpt/clause_graph.hpp"
#include "qbffpt/expansion.hpp"
#include "qbffpt/forge.hpp"
#include "qbffpt/io.hpp"
#include "qbffpt/kernel.hpp"
#include "qbffpt/qcsp.hpp"
#include "qbffpt/search.hpp"

using namespace qbffpt;

namespace {

constexpr int kExitTrue = 10;
constexpr int kExitFalse = 20;
constexpr int kExitError = 1;

// 0 quiet, 1 phases, 2 everything.
int log_level() {
	const char *env = std::getenv("QBFFPT_LOG");
	if (!env || !*env)
		return 0;
	std::string s(env);
	if (s == "trace" || s == "debug")
		return 2;
	if (s == "info")
		return 1;
	return std::atoi(env);
}

void trace(int level, const std::string &msg) {
	if (log_level() >= level)
		std::cerr << "[qbffpt] " << msg << '\n';
}

std::string read_input(const std::string &path) {
	if (path.empty() || path == "-") {
		trace(2, "reading stdin");
		return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
	}
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw std::runtime_error("cannot open " + path);
	trace(2, "reading " + path);
	return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Config {
	std::string input = "-";
	std::string method = "auto";
	std::string kernel_mode = "safe";
	std::string format = "human";
	unsigned jobs = 1;
	std::uint64_t seed = 0;
	std::size_t budget_parts = 65536;
	std::size_t budget_clauses = 100'000'000;
	std::uint64_t budget_nodes = 0;
	bool no_prune = false;
	bool timings = false;
};

// Stats go to stdout: "c key=value" for human output, bare key=value for kv.
void print_stat(const Config &cfg, const std::string &key, const std::string &value) {
	if (cfg.format == "kv")
		std::cout << key << '=' << value << '\n';
	else
		std::cout << "c " << key << '=' << value << '\n';
}

QbfInstance load_qbf(const Config &cfg) {
	auto parsed = parse_qdimacs(read_input(cfg.input));
	for (const auto &w : parsed.warnings)
		std::cerr << "warning: " << cfg.input << ':' << w.to_string() << '\n';
	return std::move(parsed.value);
}

int run_solve(const Config &cfg) {
	QbfInstance inst = load_qbf(cfg);
	SolveOptions opts;
	opts.method = parse_method(cfg.method);
	opts.kernel_mode = parse_kernel_mode(cfg.kernel_mode);
	opts.prune = !cfg.no_prune;
	opts.jobs = cfg.jobs;
	opts.budget_parts = cfg.budget_parts;
	opts.budget_clauses = cfg.budget_clauses;
	opts.search.max_nodes = cfg.budget_nodes;
	trace(1, "solve: " + std::to_string(inst.num_vars()) + " vars, k=" + std::to_string(inst.k()));

	Verdict v = solve(inst, opts);
	for (const auto &[key, value] : v.stats)
		print_stat(cfg, key, value);
	if (v.witness) {
		std::istringstream lines(v.witness->to_string());
		for (std::string line; std::getline(lines, line);)
			std::cout << (cfg.format == "kv" ? "witness=" : "v ") << line << '\n';
	}
	if (cfg.timings)
		for (const auto &[phase, ms] : v.timings)
			std::cerr << "c time_" << phase << "_ms=" << ms << '\n';
	if (cfg.format == "kv")
		std::cout << "result=" << (v.answer ? "TRUE" : "FALSE") << '\n';
	else
		std::cout << "s " << (v.answer ? "TRUE" : "FALSE") << '\n';
	return v.answer ? kExitTrue : kExitFalse;
}

TautInstance expand_input(const Config &cfg) {
	QbfInstance inst = load_qbf(cfg);
	TautInstance t = expand_all(inst, ExpandOptions{!cfg.no_prune, cfg.budget_parts});
	std::size_t total = 0;
	for (const auto &f : t.formulas)
		total += f.size();
	if (cfg.budget_clauses != 0 && total > cfg.budget_clauses)
		throw BudgetExceeded("clauses", "expansion produced " + std::to_string(total) + " clauses");
	trace(1, "expand: " + std::to_string(t.formulas.size()) + " formulas, " + std::to_string(total) + " clauses");
	return t;
}

int run_expand(const Config &cfg) {
	std::cout << dump_taut(expand_input(cfg));
	return 0;
}

int run_reduce(const Config &cfg) {
	TautInstance t = expand_input(cfg);
	if (t.short_circuit_true) {
		std::cerr << "error: a disjunct is constant true; the instance is a tautology and has no clause graph "
		             "(rerun with --no-prune)\n";
		return kExitError;
	}
	std::cout << dump_cgis(build_cgis(t).graph);
	return 0;
}

// Accepts a CGIS dump, or QDIMACS which is expanded and reduced first.
int run_kernel(const Config &cfg) {
	std::string text = read_input(cfg.input);
	std::size_t first = text.find_first_not_of(" \t\r\n");
	ClauseGraph g;
	if (first != std::string::npos && text.compare(first, 6, "format") == 0) {
		g = parse_cgis(text);
	} else {
		auto parsed = parse_qdimacs(text);
		for (const auto &w : parsed.warnings)
			std::cerr << "warning: " << cfg.input << ':' << w.to_string() << '\n';
		TautInstance t = expand_all(parsed.value, ExpandOptions{!cfg.no_prune, cfg.budget_parts});
		if (t.short_circuit_true) {
			std::cerr << "error: a disjunct is constant true; rerun with --no-prune\n";
			return kExitError;
		}
		g = build_cgis(t).graph;
	}
	Kernel k = kernelize(g, parse_kernel_mode(cfg.kernel_mode), cfg.jobs);
	auto join = [](const std::vector<std::size_t> &xs) {
		std::string s;
		for (std::size_t i = 0; i < xs.size(); ++i)
			s += (i ? "," : "") + std::to_string(xs[i]);
		return s;
	};
	std::cout << dump_cgis(k.graph);
	print_stat(cfg, "kernel_mode", to_string(k.report.mode));
	print_stat(cfg, "threshold", std::to_string(k.report.threshold));
	print_stat(cfg, "bound", std::to_string(k.report.bound));
	print_stat(cfg, "before", join(k.report.before));
	print_stat(cfg, "after", join(k.report.after));
	print_stat(cfg, "sunflowers", std::to_string(k.report.sunflowers));
	print_stat(cfg, "deleted", std::to_string(k.report.deleted));
	print_stat(cfg, "within_bound", k.report.within_bound ? "1" : "0");
	return 0;
}

struct GenerateArgs {
	std::string hardness_from;
	std::size_t universal = 4;
	std::size_t existential = 2;
	std::size_t width = 3;
	std::size_t min_width = 1;
	std::size_t clauses = 10;
	std::string shape = "random";
};

int run_generate(const Config &cfg, const GenerateArgs &ga) {
	if (!ga.hardness_from.empty()) {
		MultipartiteGraph g = parse_multipartite(read_input(cfg.input));
		trace(1, "generate: " + std::to_string(g.part_count()) + " parts, " + std::to_string(g.vertex_count())
		             + " vertices");
		std::cout << serialize_qdimacs(multipartite_is_to_qbf(g));
		return 0;
	}
	RandomQbfSpec spec;
	spec.n_universal = ga.universal;
	spec.k_existential = ga.existential;
	spec.d = ga.width;
	spec.min_width = ga.min_width;
	spec.m = ga.clauses;
	spec.shape = parse_prefix_shape(ga.shape);
	spec.seed = cfg.seed;
	std::cout << serialize_qdimacs(random_qdcnf(spec));
	return 0;
}

int run_compile_qcsp(const Config &cfg) {
	QcspInstance q = parse_qcsp(read_input(cfg.input));
	CompiledQcsp c = qcsp_to_qbf(q);
	for (std::size_t v = 0; v < q.variables().size(); ++v) {
		std::string s = "c var " + q.variables()[v].name + " bits";
		for (Var b : c.bits[v])
			s += ' ' + std::to_string(b);
		std::cout << s << '\n';
	}
	std::cout << serialize_qdimacs(c.qbf);
	return 0;
}

} // namespace

int main(int argc, char **argv) {
	CLI::App app{"Parameterized QBF solving by expansion and sunflower kernels"};
	app.require_subcommand(1);
	Config cfg;
	GenerateArgs ga;

	auto common = [&](CLI::App *sub, bool with_input) {
		if (with_input)
			sub->add_option("input", cfg.input, "Input file, - for stdin");
		sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"human", "kv"}));
		sub->add_option("--jobs", cfg.jobs, "Parallel kernel workers")->check(CLI::Range(1u, 1024u));
		sub->add_option("--seed", cfg.seed, "Random seed");
		sub->add_option("--budget-parts", cfg.budget_parts, "Max expanded formulas")->check(CLI::PositiveNumber);
		sub->add_option("--budget-clauses", cfg.budget_clauses, "Max expanded clauses")->check(CLI::PositiveNumber);
		sub->add_flag("--timings", cfg.timings, "Phase timings on stderr");
	};

	auto *solve_cmd = app.add_subcommand("solve", "Decide a QDIMACS instance (exit 10 TRUE, 20 FALSE)");
	common(solve_cmd, true);
	solve_cmd->add_option("--method", cfg.method, "fpt, xp, oracle or auto")
	    ->check(CLI::IsMember({"fpt", "xp", "oracle", "auto"}));
	solve_cmd->add_option("--kernel-mode", cfg.kernel_mode, "paper or safe")->check(CLI::IsMember({"paper", "safe"}));
	solve_cmd->add_option("--budget-nodes", cfg.budget_nodes, "Max backtracking nodes")->check(CLI::PositiveNumber);
	solve_cmd->add_flag("--no-prune", cfg.no_prune, "Keep constant disjuncts during expansion");

	auto *expand_cmd = app.add_subcommand("expand", "Expand to a disjunction of CNFs");
	common(expand_cmd, true);
	expand_cmd->add_flag("--no-prune", cfg.no_prune, "Keep constant disjuncts");

	auto *reduce_cmd = app.add_subcommand("reduce", "Expand and build the clause graph");
	common(reduce_cmd, true);
	reduce_cmd->add_flag("--no-prune", cfg.no_prune, "Keep constant disjuncts");

	auto *kernel_cmd = app.add_subcommand("kernel", "Sunflower kernel of a clause graph or QDIMACS instance");
	common(kernel_cmd, true);
	kernel_cmd->add_option("--kernel-mode", cfg.kernel_mode, "paper or safe")->check(CLI::IsMember({"paper", "safe"}));
	kernel_cmd->add_flag("--no-prune", cfg.no_prune, "Keep constant disjuncts");

	auto *gen_cmd = app.add_subcommand("generate", "Emit QDIMACS: random, or from a multipartite graph");
	common(gen_cmd, false);
	gen_cmd->add_option("--hardness-from", ga.hardness_from, "Multipartite graph file");
	gen_cmd->add_option("--universal", ga.universal, "Universal variables");
	gen_cmd->add_option("--existential", ga.existential, "Existential variables");
	gen_cmd->add_option("--width", ga.width, "Max clause width")->check(CLI::PositiveNumber);
	gen_cmd->add_option("--min-width", ga.min_width, "Min clause width")->check(CLI::PositiveNumber);
	gen_cmd->add_option("--clauses", ga.clauses, "Clause count");
	gen_cmd->add_option("--shape", ga.shape, "Prefix shape")
	    ->check(CLI::IsMember({"alternating", "ae", "ea", "random"}));

	auto *qcsp_cmd = app.add_subcommand("compile-qcsp", "Bit-encode a QCSP instance as QDIMACS");
	common(qcsp_cmd, true);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		int rc = app.exit(e);
		return rc == 0 ? 0 : kExitError;
	}

	try {
		if (*solve_cmd)
			return run_solve(cfg);
		if (*expand_cmd)
			return run_expand(cfg);
		if (*reduce_cmd)
			return run_reduce(cfg);
		if (*kernel_cmd)
			return run_kernel(cfg);
		if (*gen_cmd) {
			if (!ga.hardness_from.empty())
				cfg.input = ga.hardness_from;
			return run_generate(cfg, ga);
		}
		if (*qcsp_cmd)
			return run_compile_qcsp(cfg);
	} catch (const BudgetExceeded &e) {
		std::cout << "UNDECIDED budget=" << e.which() << '\n';
		std::cerr << e.what() << '\n';
		return kExitError;
	} catch (const ParseError &e) {
		std::cerr << "error: " << cfg.input << ':' << e.what() << '\n';
		return kExitError;
	} catch (const std::exception &e) {
		std::cerr << "error: " << e.what() << '\n';
		return kExitError;
	}
	return kExitError;
}
