#include "kex/combine.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace kex {

namespace {

const char* kind_name(ComponentKind k) {
    switch (k) {
        case ComponentKind::Cycle: return "cycle";
        case ComponentKind::EvenPath: return "even";
        case ComponentKind::OddPath: return "odd";
    }
    return "?";
}

struct WorkEdge {
    int a;
    int b;
    int graph_index;  // index into ContractionMultigraph::edges, -1 for dummy
};

struct Traversal {
    int work_index;
    int from;
    int to;
};

// Eulerian circuits of the non-loop edges (dummies included), one per
// connected component, each starting at the component's smallest vertex.
// When force_dummy_first is set and the start vertex has an incident dummy,
// the circuit begins with that dummy edge. Greedy lowest-index walks plus
// splicing keep the construction deterministic; splices never land in front
// of the first edge.
struct EulerResult {
    std::vector<std::vector<Traversal>> circuits;
    std::vector<int> vertex_component;  // index 0 unused; -1 if isolated
};

EulerResult euler_circuits(int agent_count, const std::vector<WorkEdge>& work,
                           bool force_dummy_first) {
    EulerResult res;
    res.vertex_component.assign(static_cast<std::size_t>(agent_count) + 1, -1);
    std::vector<std::vector<int>> incident(static_cast<std::size_t>(agent_count) + 1);
    for (int i = 0; i < static_cast<int>(work.size()); ++i) {
        incident[static_cast<std::size_t>(work[static_cast<std::size_t>(i)].a)].push_back(i);
        incident[static_cast<std::size_t>(work[static_cast<std::size_t>(i)].b)].push_back(i);
    }
    std::vector<char> used(work.size(), 0);

    auto pick_edge = [&](int at, bool want_dummy) -> int {
        for (int i : incident[static_cast<std::size_t>(at)]) {
            if (used[static_cast<std::size_t>(i)]) continue;
            if (want_dummy && work[static_cast<std::size_t>(i)].graph_index != -1) continue;
            return i;
        }
        return -1;
    };

    auto walk = [&](int from, int first) {
        std::vector<Traversal> tour;
        int at = from;
        int e = first;
        while (e >= 0) {
            used[static_cast<std::size_t>(e)] = 1;
            const WorkEdge& we = work[static_cast<std::size_t>(e)];
            int to = (we.a == at) ? we.b : we.a;
            tour.push_back({e, at, to});
            at = to;
            e = pick_edge(at, false);
        }
        assert(at == from);  // all degrees even, so walks close
        return tour;
    };

    for (int v = 1; v <= agent_count; ++v) {
        if (pick_edge(v, false) < 0) continue;  // no unused edge here
        int first = -1;
        if (force_dummy_first) first = pick_edge(v, true);
        if (first < 0) first = pick_edge(v, false);
        std::vector<Traversal> tour = walk(v, first);
        // Splice in sub-circuits at later positions until the component is
        // exhausted; position 0 is skipped so the first edge stays first.
        for (;;) {
            bool spliced = false;
            for (std::size_t pos = 0; pos < tour.size(); ++pos) {
                int at = tour[pos].to;
                int e = pick_edge(at, false);
                if (e < 0) continue;
                std::vector<Traversal> sub = walk(at, e);
                tour.insert(tour.begin() + static_cast<std::ptrdiff_t>(pos) + 1, sub.begin(),
                            sub.end());
                spliced = true;
                break;
            }
            if (!spliced) break;
        }
        int comp = static_cast<int>(res.circuits.size());
        res.vertex_component[static_cast<std::size_t>(v)] = comp;
        for (const Traversal& t : tour) {
            res.vertex_component[static_cast<std::size_t>(t.from)] = comp;
            res.vertex_component[static_cast<std::size_t>(t.to)] = comp;
        }
        res.circuits.push_back(std::move(tour));
    }
    return res;
}

std::vector<WorkEdge> nonloop_work_edges(const ContractionMultigraph& graph) {
    std::vector<WorkEdge> work;
    for (int i = 0; i < static_cast<int>(graph.edges.size()); ++i) {
        const ContractionEdge& e = graph.edges[static_cast<std::size_t>(i)];
        if (e.loop()) continue;
        work.push_back({e.agent_u, e.agent_v, i});
    }
    return work;
}

void append_dummy_matching(int agent_count, std::vector<WorkEdge>& work) {
    std::vector<int> degree(static_cast<std::size_t>(agent_count) + 1, 0);
    for (const WorkEdge& e : work) {
        ++degree[static_cast<std::size_t>(e.a)];
        ++degree[static_cast<std::size_t>(e.b)];
    }
    std::vector<int> odd;
    for (int v = 1; v <= agent_count; ++v)
        if (degree[static_cast<std::size_t>(v)] % 2 != 0) odd.push_back(v);
    for (std::size_t i = 0; i + 1 < odd.size(); i += 2)
        work.push_back({odd[i], odd[i + 1], -1});
}

}  // namespace

ContractionMultigraph build_contraction(const Instance& inst,
                                        const std::vector<DiffComponent>& paths,
                                        ComponentKind kind) {
    if (kind == ComponentKind::Cycle)
        throw std::invalid_argument("build_contraction: cycles have no contraction edges");
    ContractionMultigraph graph;
    graph.agent_count = inst.agent_count();
    graph.kind = kind;
    for (int i = 0; i < static_cast<int>(paths.size()); ++i) {
        const DiffComponent& p = paths[static_cast<std::size_t>(i)];
        if (p.kind != kind)
            throw std::invalid_argument("build_contraction: component of unexpected kind");
        graph.edges.push_back(
            {inst.owner(p.endpoint_front()), inst.owner(p.endpoint_back()), i, false});
    }
    return graph;
}

std::string dump_contraction(const ContractionMultigraph& graph) {
    std::ostringstream out;
    for (const ContractionEdge& e : graph.edges)
        out << e.agent_u << ' ' << e.agent_v << ' ' << e.path_id << ' '
            << (e.dummy ? "dummy" : kind_name(graph.kind)) << "\n";
    return out.str();
}

std::vector<signed char> orient_even(const ContractionMultigraph& graph) {
    std::vector<signed char> orient(graph.edges.size(), 0);
    std::vector<WorkEdge> work = nonloop_work_edges(graph);
    append_dummy_matching(graph.agent_count, work);
    EulerResult euler = euler_circuits(graph.agent_count, work, false);
    for (const auto& tour : euler.circuits) {
        for (const Traversal& t : tour) {
            const WorkEdge& we = work[static_cast<std::size_t>(t.work_index)];
            if (we.graph_index < 0) continue;
            orient[static_cast<std::size_t>(we.graph_index)] =
                (t.from == graph.edges[static_cast<std::size_t>(we.graph_index)].agent_u) ? 1 : -1;
        }
    }
    return orient;
}

OddColoring color_odd(const ContractionMultigraph& graph) {
    OddColoring out;
    out.color.assign(graph.edges.size(), 0);
    out.edge_component.assign(graph.edges.size(), -1);
    std::vector<WorkEdge> work = nonloop_work_edges(graph);
    append_dummy_matching(graph.agent_count, work);
    EulerResult euler = euler_circuits(graph.agent_count, work, true);
    out.agent_component = euler.vertex_component;
    out.component_count = static_cast<int>(euler.circuits.size());

    for (int comp = 0; comp < out.component_count; ++comp) {
        const auto& tour = euler.circuits[static_cast<std::size_t>(comp)];
        for (std::size_t step = 0; step < tour.size(); ++step) {
            const WorkEdge& we = work[static_cast<std::size_t>(tour[step].work_index)];
            if (we.graph_index < 0) continue;
            out.color[static_cast<std::size_t>(we.graph_index)] = (step % 2 == 0) ? 1 : -1;
            out.edge_component[static_cast<std::size_t>(we.graph_index)] = comp;
        }
    }

    // Lemma 1's claim: per component, at most one vertex ends up two-off.
    std::vector<int> balance(static_cast<std::size_t>(graph.agent_count) + 1, 0);
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        if (out.color[i] == 0) continue;
        balance[static_cast<std::size_t>(graph.edges[i].agent_u)] += out.color[i];
        balance[static_cast<std::size_t>(graph.edges[i].agent_v)] += out.color[i];
    }
    std::vector<int> two_off(static_cast<std::size_t>(out.component_count), 0);
    for (int v = 1; v <= graph.agent_count; ++v) {
        int c = euler.vertex_component[static_cast<std::size_t>(v)];
        if (c < 0) continue;
        if (std::abs(balance[static_cast<std::size_t>(v)]) > 2)
            throw std::logic_error("color_odd: vertex balance exceeds 2");
        if (std::abs(balance[static_cast<std::size_t>(v)]) == 2)
            if (++two_off[static_cast<std::size_t>(c)] > 1)
                throw std::logic_error("color_odd: two difference-2 vertices in one component");
    }
    return out;
}

namespace {

// Sub-matchings of a traversed component: the edges at even positions and
// the edges at odd positions.
void add_parity(const DiffComponent& comp, int parity, std::vector<Edge>& out) {
    for (std::size_t i = static_cast<std::size_t>(parity); i < comp.edges.size(); i += 2)
        out.push_back(comp.edges[i].edge);
}

}  // namespace

BalancedPair balanced_pair(const Instance& inst, const Matching& m1, const Matching& m2) {
    const int m = inst.agent_count();
    std::vector<TaggedEdge> diff = symmetric_difference(inst, m1, m2);

    std::vector<Edge> shared;
    std::set_intersection(m1.edges().begin(), m1.edges().end(), m2.edges().begin(),
                          m2.edges().end(), std::back_inserter(shared));

    std::vector<Edge> out1 = shared;
    std::vector<Edge> out2 = shared;

    const std::vector<DiffComponent> comps = decompose_components(inst, diff);
    std::vector<DiffComponent> even_paths;
    std::vector<DiffComponent> odd_paths;
    std::vector<const DiffComponent*> odd_loops;

    for (const DiffComponent& comp : comps) {
        switch (comp.kind) {
            case ComponentKind::Cycle: {
                // Both alternating classes cover the same vertices; the class
                // holding the M1 edge at the smallest vertex goes to N'1.
                int parity1 = comp.edges.front().origin == EdgeOrigin::FromM1 ? 0 : 1;
                add_parity(comp, parity1, out1);
                add_parity(comp, 1 - parity1, out2);
                break;
            }
            case ComponentKind::EvenPath:
                if (inst.owner(comp.endpoint_front()) == inst.owner(comp.endpoint_back())) {
                    // Same-owner endpoints: each side misses exactly one of the
                    // agent's endpoints, so the assignment cannot affect any
                    // difference. Cover the smaller endpoint in N'1.
                    add_parity(comp, 0, out1);
                    add_parity(comp, 1, out2);
                } else {
                    even_paths.push_back(comp);
                }
                break;
            case ComponentKind::OddPath:
                if (inst.owner(comp.endpoint_front()) == inst.owner(comp.endpoint_back()))
                    odd_loops.push_back(&comp);
                else
                    odd_paths.push_back(comp);
                break;
        }
    }

    std::vector<int> diff_even(static_cast<std::size_t>(m) + 1, 0);
    std::vector<int> diff_odd(static_cast<std::size_t>(m) + 1, 0);

    ContractionMultigraph even_graph = build_contraction(inst, even_paths, ComponentKind::EvenPath);
    std::vector<signed char> orient = orient_even(even_graph);
    for (std::size_t i = 0; i < even_paths.size(); ++i) {
        int a = even_graph.edges[i].agent_u;  // owner of the traversal front
        int b = even_graph.edges[i].agent_v;
        if (orient[i] > 0) {
            // Directed a -> b: N'1 covers a's endpoint (the front) and
            // misses b's.
            add_parity(even_paths[i], 0, out1);
            add_parity(even_paths[i], 1, out2);
            diff_even[static_cast<std::size_t>(a)] += 1;
            diff_even[static_cast<std::size_t>(b)] -= 1;
        } else {
            add_parity(even_paths[i], 1, out1);
            add_parity(even_paths[i], 0, out2);
            diff_even[static_cast<std::size_t>(a)] -= 1;
            diff_even[static_cast<std::size_t>(b)] += 1;
        }
    }

    ContractionMultigraph odd_graph = build_contraction(inst, odd_paths, ComponentKind::OddPath);
    OddColoring coloring = color_odd(odd_graph);
    for (std::size_t i = 0; i < odd_paths.size(); ++i) {
        diff_odd[static_cast<std::size_t>(odd_graph.edges[i].agent_u)] += coloring.color[i];
        diff_odd[static_cast<std::size_t>(odd_graph.edges[i].agent_v)] += coloring.color[i];
    }

    // Flip fix: an agent can reach a combined difference of 3 only by being
    // the one difference-2 vertex of its coloring component; flipping that
    // whole component's colors brings it back while keeping everyone else
    // within 2.
    std::vector<char> flip(static_cast<std::size_t>(coloring.component_count), 0);
    for (int a = 1; a <= m; ++a) {
        int total = diff_even[static_cast<std::size_t>(a)] + diff_odd[static_cast<std::size_t>(a)];
        if (std::abs(total) >= 3) {
            int c = coloring.agent_component[static_cast<std::size_t>(a)];
            if (c < 0) throw std::logic_error("balanced_pair: difference 3 without odd edges");
            flip[static_cast<std::size_t>(c)] = 1;
        }
    }
    std::fill(diff_odd.begin(), diff_odd.end(), 0);
    for (std::size_t i = 0; i < odd_paths.size(); ++i) {
        int comp = coloring.edge_component[i];
        int color = coloring.color[i] * (flip[static_cast<std::size_t>(comp)] ? -1 : 1);
        // Red: the sub-matching covering both endpoints goes to N'1.
        add_parity(odd_paths[i], color > 0 ? 0 : 1, out1);
        add_parity(odd_paths[i], color > 0 ? 1 : 0, out2);
        diff_odd[static_cast<std::size_t>(odd_graph.edges[i].agent_u)] += color;
        diff_odd[static_cast<std::size_t>(odd_graph.edges[i].agent_v)] += color;
    }

    // Even-path orientation and cross-agent odd paths are now settled; place
    // odd self-loops last. Each contributes +-2 to its owner; loops pair off
    // against each other, a leftover takes the sign that shrinks the total.
    std::vector<std::vector<const DiffComponent*>> loops_of(static_cast<std::size_t>(m) + 1);
    for (const DiffComponent* loop : odd_loops)
        loops_of[static_cast<std::size_t>(inst.owner(loop->endpoint_front()))].push_back(loop);
    for (int a = 1; a <= m; ++a) {
        const auto& loops = loops_of[static_cast<std::size_t>(a)];
        std::size_t i = 0;
        for (; i + 1 < loops.size(); i += 2) {
            add_parity(*loops[i], 0, out1);
            add_parity(*loops[i], 1, out2);
            add_parity(*loops[i + 1], 1, out1);
            add_parity(*loops[i + 1], 0, out2);
        }
        if (i < loops.size()) {
            int total = diff_even[static_cast<std::size_t>(a)] + diff_odd[static_cast<std::size_t>(a)];
            if (total > 0) {
                add_parity(*loops[i], 1, out1);
                add_parity(*loops[i], 0, out2);
                diff_odd[static_cast<std::size_t>(a)] -= 2;
            } else {
                add_parity(*loops[i], 0, out1);
                add_parity(*loops[i], 1, out2);
                diff_odd[static_cast<std::size_t>(a)] += 2;
            }
        }
    }

    BalancedPair pair{Matching(std::move(out1)), Matching(std::move(out2))};

    // Lemma 1 postconditions, verified on every call.
    const std::vector<int> u1 = agent_utilities(inst, pair.n1);
    const std::vector<int> u2 = agent_utilities(inst, pair.n2);
    const std::vector<int> v1 = agent_utilities(inst, m1);
    const std::vector<int> v2 = agent_utilities(inst, m2);
    for (int a = 1; a <= m; ++a) {
        const std::size_t s = static_cast<std::size_t>(a);
        if (std::abs(u1[s] - u2[s]) > 2)
            throw std::logic_error("balanced_pair: utility difference exceeds 2");
        if (u1[s] + u2[s] != v1[s] + v2[s])
            throw std::logic_error("balanced_pair: utility sum not preserved");
    }
    std::vector<Edge> lhs = pair.n1.edges();
    lhs.insert(lhs.end(), pair.n2.edges().begin(), pair.n2.edges().end());
    std::vector<Edge> rhs = m1.edges();
    rhs.insert(rhs.end(), m2.edges().begin(), m2.edges().end());
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    if (lhs != rhs) throw std::logic_error("balanced_pair: edge multiset not preserved");
    return pair;
}

}  // namespace kex
