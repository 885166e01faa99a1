#include "kex/diff.hpp"

#include <algorithm>
#include <map>

namespace kex {

std::vector<TaggedEdge> symmetric_difference(const Instance& inst, const Matching& m1,
                                             const Matching& m2) {
    m1.validate(inst);
    m2.validate(inst);
    std::vector<TaggedEdge> out;
    for (const Edge& e : m1.edges())
        if (!m2.contains(e)) out.push_back({e, EdgeOrigin::FromM1});
    for (const Edge& e : m2.edges())
        if (!m1.contains(e)) out.push_back({e, EdgeOrigin::FromM2});
    std::sort(out.begin(), out.end(),
              [](const TaggedEdge& a, const TaggedEdge& b) { return a.edge < b.edge; });
    return out;
}

namespace {

struct Incidence {
    int other;
    int edge_index;
};

}  // namespace

std::vector<DiffComponent> decompose_components(const Instance& inst,
                                                const std::vector<TaggedEdge>& diff) {
    // Adjacency over the vertices that actually occur in diff.
    std::map<int, std::vector<Incidence>> adj;
    for (int i = 0; i < static_cast<int>(diff.size()); ++i) {
        const Edge& e = diff[static_cast<std::size_t>(i)].edge;
        if (e.u < 1 || e.v > inst.vertex_count())
            throw std::invalid_argument("decompose_components: vertex outside instance");
        adj[e.u].push_back({e.v, i});
        adj[e.v].push_back({e.u, i});
    }
    for (auto& [v, inc] : adj) {
        if (inc.size() > 2)
            throw std::invalid_argument("decompose_components: vertex " + std::to_string(v) +
                                        " has degree > 2");
        std::sort(inc.begin(), inc.end(),
                  [](const Incidence& a, const Incidence& b) { return a.other < b.other; });
    }

    std::vector<char> used(diff.size(), 0);
    std::vector<DiffComponent> comps;

    auto walk = [&](int start, int first_edge) {
        DiffComponent comp;
        comp.vertices.push_back(start);
        int at = start;
        int eidx = first_edge;
        while (eidx >= 0) {
            used[static_cast<std::size_t>(eidx)] = 1;
            const TaggedEdge& te = diff[static_cast<std::size_t>(eidx)];
            if (!comp.edges.empty() && comp.edges.back().origin == te.origin)
                throw std::invalid_argument("decompose_components: origin tags do not alternate");
            comp.edges.push_back(te);
            int next = (te.edge.u == at) ? te.edge.v : te.edge.u;
            comp.vertices.push_back(next);
            at = next;
            eidx = -1;
            for (const Incidence& inc : adj[at]) {
                if (!used[static_cast<std::size_t>(inc.edge_index)]) {
                    eidx = inc.edge_index;
                    break;
                }
            }
        }
        if (comp.vertices.front() == comp.vertices.back() && comp.edges.size() >= 2) {
            comp.vertices.pop_back();
            comp.kind = ComponentKind::Cycle;
            if (comp.edges.size() % 2 != 0 ||
                comp.edges.front().origin == comp.edges.back().origin)
                throw std::invalid_argument("decompose_components: origin tags do not alternate on cycle");
        } else {
            comp.kind = comp.edges.size() % 2 == 0 ? ComponentKind::EvenPath : ComponentKind::OddPath;
        }
        comps.push_back(std::move(comp));
    };

    // Maximal paths first: start from each degree-1 vertex in ascending order.
    for (const auto& [v, inc] : adj) {
        if (inc.size() != 1) continue;
        int eidx = inc[0].edge_index;
        if (used[static_cast<std::size_t>(eidx)]) continue;  // other end already walked
        walk(v, eidx);
        DiffComponent& p = comps.back();
        // Walking from the smaller endpoint keeps traversal canonical.
        if (p.vertices.front() > p.vertices.back()) {
            std::reverse(p.vertices.begin(), p.vertices.end());
            std::reverse(p.edges.begin(), p.edges.end());
        }
    }
    // Remaining edges form cycles; start each at its smallest vertex.
    for (const auto& [v, inc] : adj) {
        bool fresh = false;
        for (const Incidence& i : inc)
            if (!used[static_cast<std::size_t>(i.edge_index)]) fresh = true;
        if (!fresh) continue;
        walk(v, inc[0].edge_index);
    }

    std::sort(comps.begin(), comps.end(), [](const DiffComponent& a, const DiffComponent& b) {
        return *std::min_element(a.vertices.begin(), a.vertices.end()) <
               *std::min_element(b.vertices.begin(), b.vertices.end());
    });
    return comps;
}

}  // namespace kex
