#pragma once

#include "qbffpt/expansion.hpp"

// The four 3-CNF formulas over x1..x6 from the clause-graph illustration.
inline qbffpt::TautInstance figure_instance() {
	using qbffpt::Clause;
	using qbffpt::CnfMatrix;
	qbffpt::TautInstance t;
	t.universe = {1, 2, 3, 4, 5, 6};
	t.width = 3;
	t.vars = qbffpt::VarTable(6, {});
	t.formulas = {
	    CnfMatrix({Clause{1, 2, 3}, Clause{-1, 2, 4}, Clause{-1, 5, -6}, Clause{-3, 2, 5}}),
	    CnfMatrix({Clause{2, -3, -6}, Clause{-4, -5, 6}, Clause{-2, 3, -6}}),
	    CnfMatrix({Clause{-2, 3, 4}, Clause{-2, -4, 5}, Clause{3, 4, -5}}),
	    CnfMatrix({Clause{1, -2, 5}, Clause{-3, 4, 6}, Clause{3, 4, -6}, Clause{-4, -5, 6}}),
	};
	t.provenance.assign(4, "");
	return t;
}
