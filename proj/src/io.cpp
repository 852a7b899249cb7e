#include "qbffpt/io.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace qbffpt {

std::string ParseDiagnostic::to_string() const {
	return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

ParseError::ParseError(ParseDiagnostic diag) : std::runtime_error(diag.to_string()), diag_(std::move(diag)) {}

namespace {

struct Token {
	std::string_view text;
	std::size_t column;
};

struct Line {
	std::size_t number;
	std::vector<Token> tokens;
};

[[noreturn]] void fail(std::size_t line, std::size_t column, std::string msg) {
	throw ParseError({line, column, std::move(msg)});
}

std::vector<Line> split_lines(std::string_view text) {
	std::vector<Line> out;
	std::size_t number = 0;
	std::size_t pos = 0;
	while (pos <= text.size()) {
		std::size_t end = text.find('\n', pos);
		if (end == std::string_view::npos)
			end = text.size();
		std::string_view raw = text.substr(pos, end - pos);
		++number;
		Line l{number, {}};
		std::size_t i = 0;
		while (i < raw.size()) {
			while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i])))
				++i;
			std::size_t start = i;
			while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])))
				++i;
			if (i > start)
				l.tokens.push_back({raw.substr(start, i - start), start + 1});
		}
		if (!l.tokens.empty())
			out.push_back(std::move(l));
		if (end == text.size())
			break;
		pos = end + 1;
	}
	return out;
}

long long to_int(const Line &l, const Token &t) {
	long long v = 0;
	auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
	if (ec == std::errc::result_out_of_range)
		fail(l.number, t.column, "integer out of range: '" + std::string(t.text) + "'");
	if (ec != std::errc() || p != t.text.data() + t.text.size())
		fail(l.number, t.column, "expected an integer, got '" + std::string(t.text) + "'");
	return v;
}

std::size_t to_count(const Line &l, const Token &t) {
	long long v = to_int(l, t);
	if (v < 0 || v > std::numeric_limits<int>::max())
		fail(l.number, t.column, "expected a non-negative count, got '" + std::string(t.text) + "'");
	return static_cast<std::size_t>(v);
}

bool is_comment(const Line &l) {
	return l.tokens.front().text == "c" || l.tokens.front().text[0] == '#'
	       || (l.tokens.front().text[0] == 'c' && l.tokens.front().column == 1 && l.tokens.front().text != "cnf");
}

/// Parses a 0-terminated literal list occupying the whole line.
Clause clause_line(const Line &l, std::size_t from) {
	std::vector<int> lits;
	bool terminated = false;
	for (std::size_t i = from; i < l.tokens.size(); ++i) {
		if (terminated)
			fail(l.number, l.tokens[i].column, "unexpected token after terminating 0");
		long long v = to_int(l, l.tokens[i]);
		if (v == 0) {
			terminated = true;
			continue;
		}
		if (v > std::numeric_limits<int>::max() / 2 || v < -(std::numeric_limits<int>::max() / 2))
			fail(l.number, l.tokens[i].column, "literal out of range");
		lits.push_back(static_cast<int>(v));
	}
	if (!terminated)
		fail(l.number, l.tokens.back().column, "clause is not terminated by 0");
	try {
		return Clause::from_dimacs(lits);
	} catch (const std::invalid_argument &e) {
		fail(l.number, l.tokens[from < l.tokens.size() ? from : 0].column, e.what());
	}
}

std::string clause_text(const Clause &c) {
	std::string s;
	for (Literal l : c.literals())
		s += std::to_string(l.to_dimacs()) + ' ';
	return s + "0";
}

std::vector<Var> var_list(const Line &l, std::size_t from) {
	std::vector<Var> out;
	bool terminated = false;
	for (std::size_t i = from; i < l.tokens.size(); ++i) {
		if (terminated)
			fail(l.number, l.tokens[i].column, "unexpected token after terminating 0");
		long long v = to_int(l, l.tokens[i]);
		if (v == 0) {
			terminated = true;
			continue;
		}
		if (v < 0 || v > std::numeric_limits<int>::max() / 2)
			fail(l.number, l.tokens[i].column, "variable out of range");
		out.push_back(static_cast<Var>(v));
	}
	if (!terminated)
		fail(l.number, l.tokens.back().column, "list is not terminated by 0");
	return out;
}

void expect_format(const std::vector<Line> &lines, std::size_t &i, std::string_view name) {
	while (i < lines.size() && is_comment(lines[i]))
		++i;
	if (i == lines.size())
		fail(1, 1, "missing 'format " + std::string(name) + " 1' line");
	const Line &l = lines[i];
	if (l.tokens.size() != 3 || l.tokens[0].text != "format" || l.tokens[1].text != name)
		fail(l.number, 1, "expected 'format " + std::string(name) + " 1'");
	if (l.tokens[2].text != "1")
		fail(l.number, l.tokens[2].column, "unsupported " + std::string(name) + " format version "
		                                       + std::string(l.tokens[2].text));
	++i;
}

} // namespace

Parsed<QbfInstance> parse_qdimacs(std::string_view text) {
	Parsed<QbfInstance> out;
	auto lines = split_lines(text);

	bool header = false;
	std::size_t nvars = 0, nclauses = 0;
	std::vector<QuantEntry> prefix;
	std::vector<char> quantified;
	std::vector<Clause> clauses;
	std::unordered_set<Clause, ClauseHash> seen;
	std::vector<int> pending;
	std::size_t pending_line = 0, pending_col = 0;
	std::size_t read_clauses = 0;

	auto finish_clause = [&]() {
		Clause c;
		try {
			c = Clause::from_dimacs(pending);
		} catch (const std::invalid_argument &e) {
			fail(pending_line, pending_col, e.what());
		}
		++read_clauses;
		for (Literal l : c.literals())
			if (!quantified[l.var()])
				fail(pending_line, pending_col, "variable " + std::to_string(l.var()) + " is not quantified");
		if (!seen.insert(c).second)
			out.warnings.push_back({pending_line, pending_col, "duplicate clause " + clause_text(c) + " dropped"});
		else
			clauses.push_back(std::move(c));
		pending.clear();
		pending_line = 0;
	};

	for (const Line &l : lines) {
		const Token &first = l.tokens.front();
		if (first.text == "c" || (first.text[0] == 'c' && first.text.size() > 1 && first.text != "cnf"))
			continue;
		if (first.text == "p") {
			if (header)
				fail(l.number, first.column, "duplicate problem line");
			if (l.tokens.size() != 4 || l.tokens[1].text != "cnf")
				fail(l.number, first.column, "malformed header, expected 'p cnf <vars> <clauses>'");
			nvars = to_count(l, l.tokens[2]);
			nclauses = to_count(l, l.tokens[3]);
			quantified.assign(nvars + 1, 0);
			header = true;
			continue;
		}
		if (!header)
			fail(l.number, first.column, "missing 'p cnf' header before '" + std::string(first.text) + "'");
		if (first.text == "a" || first.text == "e") {
			if (read_clauses > 0 || !pending.empty())
				fail(l.number, first.column, "quantifier line after clauses");
			Quantifier q = first.text == "a" ? Quantifier::forall : Quantifier::exists;
			bool terminated = false;
			for (std::size_t i = 1; i < l.tokens.size(); ++i) {
				if (terminated)
					fail(l.number, l.tokens[i].column, "unexpected token after terminating 0");
				long long v = to_int(l, l.tokens[i]);
				if (v == 0) {
					terminated = true;
					continue;
				}
				if (v < 0 || static_cast<std::size_t>(v) > nvars)
					fail(l.number, l.tokens[i].column, "variable " + std::to_string(v) + " out of range 1.."
					                                        + std::to_string(nvars));
				if (quantified[static_cast<std::size_t>(v)])
					fail(l.number, l.tokens[i].column, "variable " + std::to_string(v) + " quantified twice");
				quantified[static_cast<std::size_t>(v)] = 1;
				prefix.push_back({q, static_cast<Var>(v)});
			}
			if (!terminated)
				fail(l.number, l.tokens.back().column, "quantifier line is not terminated by 0");
			continue;
		}
		for (const Token &t : l.tokens) {
			long long v = to_int(l, t);
			if (v == 0) {
				if (pending_line == 0) {
					pending_line = l.number;
					pending_col = t.column;
				}
				finish_clause();
				continue;
			}
			long long mag = v < 0 ? -v : v;
			if (static_cast<std::size_t>(mag) > nvars)
				fail(l.number, t.column, "literal " + std::to_string(v) + " out of range 1.." + std::to_string(nvars));
			if (pending_line == 0) {
				pending_line = l.number;
				pending_col = t.column;
			}
			pending.push_back(static_cast<int>(v));
		}
	}
	if (!header)
		fail(lines.empty() ? 1 : lines.back().number, 1, "missing 'p cnf' header");
	if (!pending.empty())
		fail(pending_line, pending_col, "last clause is not terminated by 0");
	if (read_clauses != nclauses)
		out.warnings.push_back({lines.empty() ? 1 : lines.front().number, 1,
		                        "header announces " + std::to_string(nclauses) + " clauses, found "
		                            + std::to_string(read_clauses)});

	out.value = QbfInstance(QuantPrefix(std::move(prefix)), CnfMatrix(std::move(clauses)));
	return out;
}

std::string serialize_qdimacs(const QbfInstance &inst) {
	std::ostringstream os;
	os << "p cnf " << inst.max_var() << ' ' << inst.matrix().size() << '\n';
	auto entries = inst.prefix().entries();
	for (std::size_t i = 0; i < entries.size();) {
		os << (entries[i].quant == Quantifier::forall ? 'a' : 'e');
		std::size_t j = i;
		for (; j < entries.size() && entries[j].quant == entries[i].quant; ++j)
			os << ' ' << entries[j].var;
		os << " 0\n";
		i = j;
	}
	for (const auto &c : inst.matrix().clauses())
		os << clause_text(c) << '\n';
	return os.str();
}

std::string dump_cgis(const ClauseGraph &g) {
	std::ostringstream os;
	os << "format cgis 1\n";
	os << "d " << g.d() << '\n';
	os << "universe";
	for (Var v : g.universe())
		os << ' ' << v;
	os << " 0\n";
	for (std::size_t i = 0; i < g.part_count(); ++i) {
		os << "part " << i << '\n';
		for (const auto &c : g.part(i))
			os << clause_text(c) << '\n';
	}
	return os.str();
}

ClauseGraph parse_cgis(std::string_view text) {
	auto lines = split_lines(text);
	std::size_t i = 0;
	expect_format(lines, i, "cgis");
	std::optional<std::size_t> d;
	std::optional<std::vector<Var>> universe;
	std::vector<std::vector<Clause>> parts;
	std::vector<std::unordered_set<Clause, ClauseHash>> seen;
	for (; i < lines.size(); ++i) {
		const Line &l = lines[i];
		if (is_comment(l))
			continue;
		const auto &head = l.tokens.front().text;
		if (head == "d") {
			if (d || l.tokens.size() != 2)
				fail(l.number, 1, "expected a single 'd <width>' line");
			d = to_count(l, l.tokens[1]);
		} else if (head == "universe") {
			if (universe)
				fail(l.number, 1, "duplicate universe line");
			universe = var_list(l, 1);
		} else if (head == "part") {
			if (l.tokens.size() != 2 || to_count(l, l.tokens[1]) != parts.size())
				fail(l.number, 1, "expected 'part " + std::to_string(parts.size()) + "'");
			parts.emplace_back();
			seen.emplace_back();
		} else {
			if (parts.empty())
				fail(l.number, 1, "vertex label before the first 'part' header");
			if (!d)
				fail(l.number, 1, "vertex label before the 'd' line");
			Clause c = clause_line(l, 0);
			if (c.size() != *d)
				fail(l.number, 1, "label has " + std::to_string(c.size()) + " literals, expected " + std::to_string(*d));
			if (!seen.back().insert(c).second)
				fail(l.number, 1, "duplicate label in part " + std::to_string(parts.size() - 1));
			parts.back().push_back(std::move(c));
		}
	}
	if (!d)
		fail(lines.empty() ? 1 : lines.back().number, 1, "missing 'd' line");
	if (!universe)
		fail(lines.empty() ? 1 : lines.back().number, 1, "missing universe line");
	return ClauseGraph(std::move(*universe), std::move(parts), *d);
}

std::string dump_taut(const TautInstance &t) {
	std::ostringstream os;
	os << "format taut 1\n";
	os << "width " << t.width << '\n';
	os << "universe";
	for (Var v : t.universe)
		os << ' ' << v;
	os << " 0\n";
	for (std::size_t f = 0; f < t.formulas.size(); ++f) {
		os << "formula " << (t.provenance[f].empty() ? "-" : t.provenance[f]) << '\n';
		for (const auto &c : t.formulas[f].clauses())
			os << clause_text(c) << '\n';
	}
	return os.str();
}

TautInstance parse_taut(std::string_view text) {
	auto lines = split_lines(text);
	std::size_t i = 0;
	expect_format(lines, i, "taut");
	TautInstance t;
	bool have_universe = false, have_width = false;
	std::vector<std::vector<Clause>> formulas;
	for (; i < lines.size(); ++i) {
		const Line &l = lines[i];
		if (is_comment(l))
			continue;
		const auto &head = l.tokens.front().text;
		if (head == "width") {
			if (have_width || l.tokens.size() != 2)
				fail(l.number, 1, "expected a single 'width <d>' line");
			t.width = to_count(l, l.tokens[1]);
			have_width = true;
		} else if (head == "universe") {
			if (have_universe)
				fail(l.number, 1, "duplicate universe line");
			t.universe = var_list(l, 1);
			have_universe = true;
		} else if (head == "formula") {
			if (l.tokens.size() != 2)
				fail(l.number, 1, "expected 'formula <provenance>'");
			std::string prov(l.tokens[1].text);
			t.provenance.push_back(prov == "-" ? std::string() : prov);
			formulas.emplace_back();
		} else {
			if (formulas.empty())
				fail(l.number, 1, "clause before the first 'formula' header");
			Clause c = clause_line(l, 0);
			if (have_width && c.size() > t.width)
				fail(l.number, 1, "clause wider than the declared width");
			formulas.back().push_back(std::move(c));
		}
	}
	if (!have_width || !have_universe)
		fail(lines.empty() ? 1 : lines.back().number, 1, "missing width or universe line");
	for (auto &f : formulas)
		t.formulas.emplace_back(std::move(f));
	return t;
}

std::string dump_qcsp(const QcspInstance &q) {
	std::ostringstream os;
	os << "format qcsp 1\n";
	os << "qcsp " << q.variables().size() << '\n';
	for (const auto &v : q.variables()) {
		os << "var " << v.name << ' ' << (v.quant == Quantifier::forall ? 'a' : 'e');
		for (const auto &val : v.domain)
			os << ' ' << val;
		os << '\n';
	}
	for (const auto &c : q.constraints()) {
		os << "rel " << c.scope.size();
		for (std::size_t v : c.scope)
			os << ' ' << q.variables()[v].name;
		os << '\n';
		for (const auto &t : c.tuples) {
			for (std::size_t p = 0; p < t.size(); ++p)
				os << (p ? " " : "") << q.variables()[c.scope[p]].domain[t[p]];
			os << '\n';
		}
		os << "end\n";
	}
	return os.str();
}

QcspInstance parse_qcsp(std::string_view text) {
	auto lines = split_lines(text);
	std::size_t i = 0;
	while (i < lines.size() && is_comment(lines[i]))
		++i;
	if (i < lines.size() && lines[i].tokens.front().text == "format")
		expect_format(lines, i, "qcsp");
	while (i < lines.size() && is_comment(lines[i]))
		++i;
	if (i == lines.size() || lines[i].tokens.front().text != "qcsp" || lines[i].tokens.size() != 2)
		fail(i < lines.size() ? lines[i].number : 1, 1, "expected 'qcsp <nvars>' header");
	const std::size_t declared = to_count(lines[i], lines[i].tokens[1]);
	++i;

	std::vector<QcspVariable> vars;
	std::map<std::string, std::size_t, std::less<>> index;
	std::vector<QcspConstraint> constraints;
	bool in_rel = false;
	for (; i < lines.size(); ++i) {
		const Line &l = lines[i];
		if (is_comment(l) && !in_rel)
			continue;
		const auto &head = l.tokens.front().text;
		if (in_rel) {
			auto &c = constraints.back();
			if (head == "end" && l.tokens.size() == 1) {
				in_rel = false;
				continue;
			}
			if (c.scope.empty() && l.tokens.size() == 1 && head == "()") {
				c.tuples.push_back({});
				continue;
			}
			if (l.tokens.size() != c.scope.size())
				fail(l.number, 1, "tuple has " + std::to_string(l.tokens.size()) + " values, relation arity is "
				                      + std::to_string(c.scope.size()));
			std::vector<std::size_t> tuple;
			for (std::size_t p = 0; p < l.tokens.size(); ++p) {
				const auto &dom = vars[c.scope[p]].domain;
				auto it = std::find(dom.begin(), dom.end(), l.tokens[p].text);
				if (it == dom.end())
					fail(l.number, l.tokens[p].column, "value '" + std::string(l.tokens[p].text)
					                                       + "' is not in the domain of '" + vars[c.scope[p]].name + "'");
				tuple.push_back(static_cast<std::size_t>(it - dom.begin()));
			}
			c.tuples.push_back(std::move(tuple));
			continue;
		}
		if (head == "var") {
			if (l.tokens.size() < 4)
				fail(l.number, 1, "expected 'var <name> <a|e> <values...>'");
			QcspVariable v;
			v.name = std::string(l.tokens[1].text);
			if (l.tokens[2].text == "a")
				v.quant = Quantifier::forall;
			else if (l.tokens[2].text == "e")
				v.quant = Quantifier::exists;
			else
				fail(l.number, l.tokens[2].column, "quantifier must be 'a' or 'e'");
			for (std::size_t t = 3; t < l.tokens.size(); ++t) {
				std::string val(l.tokens[t].text);
				if (std::find(v.domain.begin(), v.domain.end(), val) != v.domain.end())
					fail(l.number, l.tokens[t].column, "domain value '" + val + "' repeated");
				v.domain.push_back(std::move(val));
			}
			if (!index.emplace(v.name, vars.size()).second)
				fail(l.number, l.tokens[1].column, "variable '" + v.name + "' declared twice");
			vars.push_back(std::move(v));
		} else if (head == "rel") {
			if (l.tokens.size() < 2)
				fail(l.number, 1, "expected 'rel <arity> <scope...>'");
			std::size_t arity = to_count(l, l.tokens[1]);
			if (l.tokens.size() != arity + 2)
				fail(l.number, 1, "scope length does not match arity " + std::to_string(arity));
			QcspConstraint c;
			for (std::size_t t = 2; t < l.tokens.size(); ++t) {
				auto it = index.find(l.tokens[t].text);
				if (it == index.end())
					fail(l.number, l.tokens[t].column, "unknown variable '" + std::string(l.tokens[t].text) + "'");
				c.scope.push_back(it->second);
			}
			constraints.push_back(std::move(c));
			in_rel = true;
		} else {
			fail(l.number, 1, "unexpected line starting with '" + std::string(head) + "'");
		}
	}
	if (in_rel)
		fail(lines.back().number, 1, "relation block is missing 'end'");
	if (vars.size() != declared)
		fail(1, 1, "header declares " + std::to_string(declared) + " variables, found " + std::to_string(vars.size()));
	return QcspInstance(std::move(vars), std::move(constraints));
}

std::string dump_multipartite(const MultipartiteGraph &g) {
	std::ostringstream os;
	for (std::size_t i = 0; i < g.part_count(); ++i) {
		os << "part " << i + 1 << ':';
		for (auto v : g.parts()[i])
			os << ' ' << v;
		os << '\n';
	}
	for (auto [u, v] : g.edges())
		os << "edge " << u << ' ' << v << '\n';
	return os.str();
}

MultipartiteGraph parse_multipartite(std::string_view text) {
	auto lines = split_lines(text);
	std::vector<std::vector<std::uint32_t>> parts;
	std::set<std::string, std::less<>> labels;
	std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
	auto vertex = [](const Line &l, const Token &t) {
		long long v = to_int(l, t);
		if (v < 0 || v > std::numeric_limits<std::uint32_t>::max())
			fail(l.number, t.column, "vertex id out of range");
		return static_cast<std::uint32_t>(v);
	};
	for (const Line &l : lines) {
		if (is_comment(l))
			continue;
		const auto &head = l.tokens.front().text;
		if (head == "part") {
			if (l.tokens.size() < 2)
				fail(l.number, 1, "expected 'part <i>: <vertices...>'");
			std::string label(l.tokens[1].text);
			std::size_t first = 2;
			if (!label.empty() && label.back() == ':')
				label.pop_back();
			else if (l.tokens.size() > 2 && l.tokens[2].text == ":")
				first = 3;
			else
				fail(l.number, l.tokens[1].column, "part label must be followed by ':'");
			if (!labels.insert(label).second)
				fail(l.number, l.tokens[1].column, "part '" + label + "' declared twice");
			std::vector<std::uint32_t> vs;
			for (std::size_t t = first; t < l.tokens.size(); ++t)
				vs.push_back(vertex(l, l.tokens[t]));
			parts.push_back(std::move(vs));
		} else if (head == "edge") {
			if (l.tokens.size() != 3)
				fail(l.number, 1, "expected 'edge <u> <v>'");
			edges.emplace_back(vertex(l, l.tokens[1]), vertex(l, l.tokens[2]));
		} else {
			fail(l.number, 1, "unexpected line starting with '" + std::string(head) + "'");
		}
	}
	try {
		return MultipartiteGraph(std::move(parts), std::move(edges));
	} catch (const std::invalid_argument &e) {
		fail(lines.empty() ? 1 : lines.back().number, 1, e.what());
	}
}

} // namespace qbffpt
