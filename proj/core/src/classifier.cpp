#include <aspcomp/classifier.hpp>

#include <aspcomp/errors.hpp>
#include <aspcomp/grounder.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace aspcomp {

using namespace asp;

FeatureSet extract_features(const Program& program) {
    FeatureSet f;
    auto scan_body = [&](const std::vector<BodyLiteral>& body) {
        for (const auto& bl : body)
            if (std::holds_alternative<AggregateLiteral>(bl)) f.has_aggregates = true;
    };
    for (const auto& rule : program.rules) {
        if (std::holds_alternative<ChoiceHead>(rule.head)) f.has_choice = true;
        if (std::holds_alternative<DisjunctiveHead>(rule.head)) f.has_disjunction = true;
        scan_body(rule.body);
    }
    // Weak-constraint bodies carry plain literals only, so no aggregate scan.
    if (!program.weak_constraints.empty()) f.has_weak_constraints = true;
    if (program.query) f.has_query = true;
    if (f.has_disjunction) f.is_hcf = true; // provisional; resolved by HCF check
    return f;
}

namespace {

// Tarjan over an adjacency list; emitted components hold sorted node indices
// and the component list itself is sorted by smallest member, so results do
// not depend on traversal incidentals.
struct Tarjan {
    const std::vector<std::vector<int>>& adj;
    std::vector<int> index, low, stack;
    std::vector<bool> on_stack;
    std::vector<std::vector<int>> sccs;
    int counter = 0;

    explicit Tarjan(const std::vector<std::vector<int>>& a)
        : adj(a), index(a.size(), -1), low(a.size(), 0), on_stack(a.size(), false) {}

    void run() {
        for (int v = 0; v < static_cast<int>(adj.size()); ++v)
            if (index[v] < 0) visit(v);
        for (auto& c : sccs) std::sort(c.begin(), c.end());
        std::sort(sccs.begin(), sccs.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
    }

    // Iterative DFS: recursion depth would be bounded by the atom count,
    // which can reach grounding size.
    void visit(int root) {
        struct Frame { int v; size_t next; };
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [v, next] = frames.back();
            if (next < adj[v].size()) {
                int w = adj[v][next++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    std::vector<int> comp;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                    } while (w != v);
                    sccs.push_back(std::move(comp));
                }
                int finished = v;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().v] = std::min(low[frames.back().v], low[finished]);
            }
        }
    }
};

std::vector<std::string> head_atom_texts(const Head& head) {
    std::vector<std::string> out;
    if (const auto* n = std::get_if<NormalHead>(&head)) {
        out.push_back(to_string(n->atom));
    } else if (const auto* d = std::get_if<DisjunctiveHead>(&head)) {
        for (const auto& a : d->atoms) out.push_back(to_string(a));
    } else if (const auto* c = std::get_if<ChoiceHead>(&head)) {
        for (const auto& e : c->elements) out.push_back(to_string(e.atom));
    }
    return out;
}

std::string predicate_key(const Atom& atom) {
    return atom.predicate + "/" + std::to_string(atom.args.size());
}

struct GraphBuilder {
    std::map<std::string, int> ids;
    std::vector<std::string> names;
    std::set<std::pair<int, int>> edges;

    int node(const std::string& text) {
        auto [it, fresh] = ids.emplace(text, static_cast<int>(names.size()));
        if (fresh) names.push_back(text);
        return it->second;
    }

    DependencyGraph finish() {
        // Remap ids into lexicographic order so node index == sorted rank.
        std::vector<int> rank(names.size());
        std::vector<int> order(names.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return names[a] < names[b]; });
        for (size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r);

        DependencyGraph g;
        g.nodes.resize(names.size());
        for (size_t i = 0; i < names.size(); ++i) g.nodes[rank[i]] = names[i];
        for (auto [from, to] : edges) g.positive_edges.emplace_back(rank[from], rank[to]);
        std::sort(g.positive_edges.begin(), g.positive_edges.end());

        std::vector<std::vector<int>> adj(g.nodes.size());
        for (auto [from, to] : g.positive_edges) adj[from].push_back(to);
        Tarjan tarjan(adj);
        tarjan.run();
        g.sccs = std::move(tarjan.sccs);
        return g;
    }
};

HcfResult witness_for(const Rule& rule, const DependencyGraph& graph, int comp) {
    HcfWitness w;
    w.rule = to_string(rule);
    for (int v : graph.sccs[comp]) w.scc_atoms.push_back(graph.nodes[v]);
    return HcfResult{false, std::move(w)};
}

HcfResult hcf_from_graph(const Program& program, const DependencyGraph& graph,
                         bool abstract_mode) {
    std::map<std::string, int> component_of;
    std::vector<bool> cyclic(graph.sccs.size(), false);
    for (size_t c = 0; c < graph.sccs.size(); ++c) {
        for (int v : graph.sccs[c]) component_of[graph.nodes[v]] = static_cast<int>(c);
        cyclic[c] = graph.sccs[c].size() >= 2;
    }
    for (auto [from, to] : graph.positive_edges)
        if (from == to) cyclic[component_of[graph.nodes[from]]] = true;

    for (const auto& rule : program.rules) {
        const auto* d = std::get_if<DisjunctiveHead>(&rule.head);
        if (!d) continue;
        // component -> distinct node texts from this head
        std::map<int, std::set<std::string>> by_comp;
        // abstract mode: predicate -> distinct atom texts, for the
        // same-predicate case p(X) | p(Y)
        std::map<std::string, std::set<std::string>> atoms_of_pred;
        for (const auto& atom : d->atoms) {
            std::string text = abstract_mode ? predicate_key(atom) : to_string(atom);
            auto it = component_of.find(text);
            if (it == component_of.end()) continue;
            by_comp[it->second].insert(text);
            if (abstract_mode) atoms_of_pred[text].insert(to_string(atom));
        }
        for (const auto& [comp, texts] : by_comp) {
            if (texts.size() >= 2) return witness_for(rule, graph, comp);
            if (!abstract_mode) continue;
            // One predicate, several syntactically distinct atoms: ground
            // instances may share an SCC whenever the predicate lies on a
            // positive cycle, so flag conservatively.
            const std::string& pred = *texts.begin();
            if (cyclic[comp] && atoms_of_pred[pred].size() >= 2)
                return witness_for(rule, graph, comp);
        }
    }
    return HcfResult{true, std::nullopt};
}

} // namespace

DependencyGraph build_dependency_graph(const Program& ground) {
    GraphBuilder b;
    for (const auto& rule : ground.rules) {
        std::vector<int> heads, bodies;
        for (const auto& text : head_atom_texts(rule.head)) heads.push_back(b.node(text));
        for (const auto& bl : rule.body) {
            const auto* lit = std::get_if<Literal>(&bl);
            if (!lit) continue;
            if (const auto* cl = std::get_if<ClassicalLiteral>(lit); cl && !cl->negated)
                bodies.push_back(b.node(to_string(cl->atom)));
        }
        // Choice-element conditions also gate head derivation positively.
        if (const auto* c = std::get_if<ChoiceHead>(&rule.head))
            for (const auto& e : c->elements)
                for (const auto& cond : e.condition)
                    if (const auto* cl = std::get_if<ClassicalLiteral>(&cond);
                        cl && !cl->negated)
                        bodies.push_back(b.node(to_string(cl->atom)));
        for (int h : heads)
            for (int p : bodies) b.edges.emplace(p, h);
    }
    return b.finish();
}

HcfResult head_cycle_free(const Program& ground) {
    return hcf_from_graph(ground, build_dependency_graph(ground), false);
}

HcfResult head_cycle_free_abstract(const Program& program) {
    GraphBuilder b;
    for (const auto& rule : program.rules) {
        std::vector<int> heads, bodies;
        auto add_head = [&](const Atom& a) { heads.push_back(b.node(predicate_key(a))); };
        if (const auto* n = std::get_if<NormalHead>(&rule.head)) add_head(n->atom);
        if (const auto* d = std::get_if<DisjunctiveHead>(&rule.head))
            for (const auto& a : d->atoms) add_head(a);
        if (const auto* c = std::get_if<ChoiceHead>(&rule.head))
            for (const auto& e : c->elements) add_head(e.atom);
        for (const auto& bl : rule.body) {
            const auto* lit = std::get_if<Literal>(&bl);
            if (!lit) continue;
            if (const auto* cl = std::get_if<ClassicalLiteral>(lit); cl && !cl->negated)
                bodies.push_back(b.node(predicate_key(cl->atom)));
        }
        if (const auto* c = std::get_if<ChoiceHead>(&rule.head))
            for (const auto& e : c->elements)
                for (const auto& cond : e.condition)
                    if (const auto* cl = std::get_if<ClassicalLiteral>(&cond);
                        cl && !cl->negated)
                        bodies.push_back(b.node(predicate_key(cl->atom)));
        for (int h : heads)
            for (int p : bodies) b.edges.emplace(p, h);
    }
    DependencyGraph graph = b.finish();
    return hcf_from_graph(program, graph, true);
}

int assign_subtrack(const FeatureSet& f) {
    if (f.has_disjunction && !f.is_hcf) return 4;
    if (f.has_weak_constraints) return 3;
    if (f.has_aggregates || f.has_choice || f.has_query || f.has_disjunction) return 2;
    return 1;
}

Classification classify_program(const Program& encoding,
                                const std::vector<Atom>* facts,
                                bool allow_abstract) {
    Classification out;
    out.features = extract_features(encoding);
    if (out.features.has_disjunction) {
        HcfResult hcf;
        bool encoding_ground;
        {
            // Variable-free iff no variable term occurs anywhere.
            struct Probe {
                bool found = false;
                void term(const Term& t) {
                    if (t.kind == Term::Kind::variable) found = true;
                    for (const auto& a : t.args) term(a);
                }
                void atom(const Atom& a) {
                    for (const auto& t : a.args) term(t);
                }
            } probe;
            auto probe_lit = [&](const Literal& lit) {
                if (const auto* cl = std::get_if<ClassicalLiteral>(&lit))
                    probe.atom(cl->atom);
                if (const auto* bi = std::get_if<BuiltinLiteral>(&lit)) {
                    probe.term(bi->lhs);
                    probe.term(bi->rhs);
                }
            };
            auto probe_body = [&](const std::vector<BodyLiteral>& body) {
                for (const auto& bl : body) {
                    if (const auto* lit = std::get_if<Literal>(&bl)) {
                        probe_lit(*lit);
                    } else if (const auto* agg = std::get_if<AggregateLiteral>(&bl)) {
                        for (const auto& e : agg->elements) {
                            for (const auto& t : e.terms) probe.term(t);
                            for (const auto& c : e.condition)
                                if (const auto* cl = std::get_if<ClassicalLiteral>(&c))
                                    probe.atom(cl->atom);
                        }
                        if (agg->left) probe.term(agg->left->bound);
                        if (agg->right) probe.term(agg->right->bound);
                    }
                }
            };
            for (const auto& rule : encoding.rules) {
                if (const auto* n = std::get_if<NormalHead>(&rule.head)) probe.atom(n->atom);
                if (const auto* d = std::get_if<DisjunctiveHead>(&rule.head))
                    for (const auto& a : d->atoms) probe.atom(a);
                if (const auto* c = std::get_if<ChoiceHead>(&rule.head))
                    for (const auto& e : c->elements) {
                        probe.atom(e.atom);
                        for (const auto& cond : e.condition)
                            if (const auto* cl = std::get_if<ClassicalLiteral>(&cond))
                                probe.atom(cl->atom);
                    }
                probe_body(rule.body);
            }
            for (const auto& wc : encoding.weak_constraints)
                for (const auto& lit : wc.body) probe_lit(lit);
            encoding_ground = !probe.found;
        }
        if (facts) {
            hcf = head_cycle_free(ground_program(encoding, *facts));
        } else if (encoding_ground) {
            hcf = head_cycle_free(ground_program(encoding));
        } else if (allow_abstract) {
            hcf = head_cycle_free_abstract(encoding);
        } else {
            throw HcfUndecided(
                "disjunctive non-ground encoding: supply facts to ground against, "
                "or enable the abstract predicate-level check");
        }
        out.features.is_hcf = hcf.hcf;
        out.hcf_witness = hcf.witness;
    }
    out.subtrack = assign_subtrack(out.features);
    return out;
}

} // namespace aspcomp
