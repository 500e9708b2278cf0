#pragma once

#include <aspcomp/grounder.hpp>
#include <aspcomp/parser.hpp>

#include <string>
#include <vector>

namespace fixtures {

// One directed graph on four nodes, every node with exactly two outgoing
// edges, and three encodings of the directed-Hamiltonian-tour problem over
// it. The graph admits exactly two tours: 1-2-3-4-1 (cost 8) and 1-4-3-2-1
// (cost 7). An optional preference penalizes edge costs, so the encodings
// double as optimization fixtures.

inline constexpr const char* kTourFacts =
    "node(1). edge(1,2). cost(1,2,3). edge(1,4). cost(1,4,1).\n"
    "node(2). edge(2,1). cost(2,1,2). edge(2,3). cost(2,3,1).\n"
    "node(3). edge(3,2). cost(3,2,2). edge(3,4). cost(3,4,2).\n"
    "node(4). edge(4,1). cost(4,1,2). edge(4,3). cost(4,3,2).\n";

inline constexpr const char* kTourNormal =
    "cycle(X,Y) :- edge(X,Y), edge(X,Z), Y != Z, not cycle(X,Z).\n"
    "reach(Y) :- cycle(1,Y).\n"
    "reach(Y) :- cycle(X,Y), reach(X).\n"
    ":- node(Y), not reach(Y).\n";

inline constexpr const char* kTourChoice =
    "{cycle(X,Y) : edge(X,Y)} = 1 :- node(X).\n"
    "reach(Y) :- cycle(1,Y).\n"
    "reach(Y) :- cycle(X,Y), reach(X).\n"
    ":- node(Y), not reach(Y).\n";

inline constexpr const char* kTourDisjunctive =
    "cycle(1,Y) | cycle(1,Z) :- edge(1,Y), edge(1,Z), Y != Z.\n"
    "cycle(X,Y) | cycle(X,Z) :- edge(X,Y), edge(X,Z), Y != Z, reach(X), X != 1.\n"
    "reach(Y) :- cycle(X,Y).\n"
    ":- node(Y), not reach(Y).\n";

inline constexpr const char* kTourWeak = ":~ cycle(X,Y), cost(X,Y,C). [C,X,Y]\n";

// The cheap tour, as a solver would print it.
inline constexpr const char* kOptimalTour = "cycle(1,4). cycle(4,3). cycle(3,2). cycle(2,1).";
inline constexpr const char* kCostlyTour = "cycle(1,2). cycle(2,3). cycle(3,4). cycle(4,1).";

inline std::vector<aspcomp::asp::Atom> tour_facts() {
    return aspcomp::asp::parse_atom_list(kTourFacts);
}

inline aspcomp::asp::Program parse(const std::string& text) {
    return aspcomp::asp::parse_program(text, "<fixture>");
}

inline aspcomp::asp::Program ground_tour(const char* encoding, bool with_weak = false) {
    std::string text = encoding;
    if (with_weak) text += kTourWeak;
    return aspcomp::asp::ground_program(parse(text), tour_facts());
}

} // namespace fixtures
