#pragma once

#include <aspcomp/ast.hpp>

#include <string>
#include <string_view>

namespace aspcomp::asp {

// Parses an ASP-Core-2 program from text. `origin` names the source in
// diagnostics (a file path or a pseudo-name like "<string>").
//
// Accepted syntax: normal, disjunctive, choice and constraint rules, builtin
// comparisons, #count/#sum/#min/#max aggregates with optional guards on either
// side, weak constraints with [weight@level,t1,...,tn] annotations (the level
// defaults to 0), one optional query directive `atom?`, and `%` line comments.
//
// Every rule is checked for safety once the whole program is read: a variable
// occurring in a rule must also occur in a positive classical body literal of
// that rule. Unsafe variables raise UnsafeRule -- except in programs whose
// Herbrand universe is empty, where every such rule grounds to nothing anyway.
Program parse_program(std::string_view text, const std::string& origin = "<string>");

// Reads the file and parses it; IoError on read failure.
Program parse_file(const std::string& path);

// Parses a whitespace- or '.'-separated list of ground atoms, as printed on a
// solver answer line. SyntaxError on malformed input.
std::vector<Atom> parse_atom_list(std::string_view text);

} // namespace aspcomp::asp
