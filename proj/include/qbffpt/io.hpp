#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qbffpt/clause_graph.hpp"
#include "qbffpt/expansion.hpp"
#include "qbffpt/forge.hpp"
#include "qbffpt/formula.hpp"
#include "qbffpt/qcsp.hpp"

namespace qbffpt {

struct ParseDiagnostic {
	std::size_t line = 1;
	std::size_t column = 1;
	std::string message;

	std::string to_string() const;
};

/// Fatal parse failure; what() carries "line:column: message".
class ParseError : public std::runtime_error {
public:
	explicit ParseError(ParseDiagnostic diag);
	const ParseDiagnostic &diagnostic() const { return diag_; }

private:
	ParseDiagnostic diag_;
};

template <class T>
struct Parsed {
	T value;
	std::vector<ParseDiagnostic> warnings;
};

/// QDIMACS: `c` comments, one `p cnf <vars> <clauses>` header, `a`/`e`
/// quantifier lines ending in 0, then 0-terminated clauses (which may span
/// lines). Free variables and clauses with repeated or complementary literals
/// are errors; repeated clauses are dropped and a count mismatch is reported,
/// both as warnings.
Parsed<QbfInstance> parse_qdimacs(std::string_view text);

/// Header uses the largest variable id; quantifier runs are merged into
/// maximal blocks.
std::string serialize_qdimacs(const QbfInstance &inst);

/// `format cgis 1`, `d <d>`, `universe <vars> 0`, then `part <i>` headers each
/// followed by one 0-terminated label per vertex.
std::string dump_cgis(const ClauseGraph &g);
ClauseGraph parse_cgis(std::string_view text);

/// `format taut 1`, `width <d>`, `universe <vars> 0`, then `formula <bits>`
/// headers each followed by 0-terminated clauses.
std::string dump_taut(const TautInstance &t);
/// Restores universe, width, formulas and provenance; the variable table is not part of the format.
TautInstance parse_taut(std::string_view text);

/// `format qcsp 1` (optional on input), `qcsp <nvars>`, one
/// `var <name> <a|e> <values...>` line per variable, and per constraint a
/// `rel <arity> <scope names...>` line, one tuple per line, then `end`.
std::string dump_qcsp(const QcspInstance &q);
QcspInstance parse_qcsp(std::string_view text);

/// `part <i>: <vertex ids...>` lines and `edge <u> <v>` lines; `c` or `#` comments.
std::string dump_multipartite(const MultipartiteGraph &g);
MultipartiteGraph parse_multipartite(std::string_view text);

} // namespace qbffpt
