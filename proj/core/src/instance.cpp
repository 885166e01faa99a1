#include "kex/instance.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <sstream>

namespace kex {

namespace {

bool parse_int(const std::string& tok, long long& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [p, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && p == last;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

}  // namespace

Instance::Instance(int n, int m, std::vector<int> owners, std::vector<Edge> edges)
    : n_(n), m_(m), owners_(std::move(owners)), edges_(std::move(edges)) {
    if (n_ < 0 || m_ < 1) throw std::invalid_argument("instance: need n >= 0 and m >= 1");
    if (owners_.size() != static_cast<std::size_t>(n_) + 1)
        throw std::invalid_argument("instance: owners must have one entry per vertex");
    for (int v = 1; v <= n_; ++v) {
        if (owners_[static_cast<std::size_t>(v)] < 1 || owners_[static_cast<std::size_t>(v)] > m_)
            throw std::invalid_argument("instance: owner out of range for vertex " + std::to_string(v));
    }
    for (const Edge& e : edges_) {
        if (e.u == e.v) throw std::invalid_argument("instance: self-loop at vertex " + std::to_string(e.u));
        if (e.u < 1 || e.v > n_) throw std::invalid_argument("instance: edge endpoint out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw std::invalid_argument("instance: duplicate edge");
    adj_.assign(static_cast<std::size_t>(n_) + 1, {});
    for (const Edge& e : edges_) {
        adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Instance::has_edge(Edge e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<int> Instance::agent_vertices(int i) const {
    std::vector<int> out;
    for (int v = 1; v <= n_; ++v)
        if (owners_[static_cast<std::size_t>(v)] == i) out.push_back(v);
    return out;
}

int Instance::agent_size(int i) const {
    int c = 0;
    for (int v = 1; v <= n_; ++v)
        if (owners_[static_cast<std::size_t>(v)] == i) ++c;
    return c;
}

std::string Instance::serialize() const {
    std::ostringstream out;
    out << "kex 1\n";
    out << "agents " << m_ << "\n";
    out << "vertices " << n_ << "\n";
    out << "owners";
    for (int v = 1; v <= n_; ++v) out << ' ' << owners_[static_cast<std::size_t>(v)];
    out << "\n";
    out << "edges " << edges_.size() << "\n";
    for (const Edge& e : edges_) out << e.u << ' ' << e.v << "\n";
    return out.str();
}

Instance Instance::parse(std::istream& in) {
    std::string line;
    int lineno = 0;
    int stage = 0;  // 0 magic, 1 agents, 2 vertices, 3 owners, 4 edge count, 5 edges
    long long m = 0, n = 0, edge_count = 0;
    std::vector<int> owners;
    std::vector<Edge> edges;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto toks = split_ws(line);
        switch (stage) {
            case 0:
                if (toks.size() != 2 || toks[0] != "kex" || toks[1] != "1")
                    throw ParseError(lineno, "malformed header: expected 'kex 1'");
                stage = 1;
                break;
            case 1:
                if (toks.size() != 2 || toks[0] != "agents" || !parse_int(toks[1], m) || m < 1)
                    throw ParseError(lineno, "malformed header: expected 'agents <m>' with m >= 1");
                stage = 2;
                break;
            case 2:
                if (toks.size() != 2 || toks[0] != "vertices" || !parse_int(toks[1], n) || n < 0)
                    throw ParseError(lineno, "malformed header: expected 'vertices <n>'");
                stage = 3;
                break;
            case 3: {
                if (toks.empty() || toks[0] != "owners" ||
                    toks.size() != static_cast<std::size_t>(n) + 1)
                    throw ParseError(lineno, "malformed header: expected 'owners' with one entry per vertex");
                owners.assign(static_cast<std::size_t>(n) + 1, 0);
                for (long long v = 1; v <= n; ++v) {
                    long long a;
                    if (!parse_int(toks[static_cast<std::size_t>(v)], a))
                        throw ParseError(lineno, "malformed owner entry");
                    if (a < 1 || a > m)
                        throw ParseError(lineno, "owner out of range for vertex " + std::to_string(v));
                    owners[static_cast<std::size_t>(v)] = static_cast<int>(a);
                }
                stage = 4;
                break;
            }
            case 4:
                if (toks.size() != 2 || toks[0] != "edges" || !parse_int(toks[1], edge_count) || edge_count < 0)
                    throw ParseError(lineno, "malformed header: expected 'edges <k>'");
                stage = 5;
                break;
            case 5: {
                if (static_cast<long long>(edges.size()) >= edge_count)
                    throw ParseError(lineno, "edge count mismatch: more edge lines than declared");
                long long u, v;
                if (toks.size() != 2 || !parse_int(toks[0], u) || !parse_int(toks[1], v))
                    throw ParseError(lineno, "malformed edge line");
                if (u == v) throw ParseError(lineno, "self-loop");
                if (u < 1 || u > n || v < 1 || v > n)
                    throw ParseError(lineno, "edge endpoint out of range");
                Edge e(static_cast<int>(u), static_cast<int>(v));
                if (std::find(edges.begin(), edges.end(), e) != edges.end())
                    throw ParseError(lineno, "duplicate edge");
                edges.push_back(e);
                break;
            }
        }
    }
    if (stage < 5) throw ParseError(lineno, "malformed header: truncated file");
    if (static_cast<long long>(edges.size()) != edge_count)
        throw ParseError(lineno, "edge count mismatch: declared " + std::to_string(edge_count) +
                                     ", found " + std::to_string(edges.size()));
    return Instance(static_cast<int>(n), static_cast<int>(m), std::move(owners), std::move(edges));
}

Instance Instance::parse(const std::string& text) {
    std::istringstream ss(text);
    return parse(ss);
}

Matching::Matching(std::vector<Edge> edges) : edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    std::vector<int> seen;
    for (const Edge& e : edges_) {
        if (e.u == e.v) throw std::invalid_argument("matching: self-loop");
        seen.push_back(e.u);
        seen.push_back(e.v);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw std::invalid_argument("matching: edges are not vertex-disjoint");
}

bool Matching::contains(Edge e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<int> Matching::mate_array(int n) const {
    std::vector<int> mate(static_cast<std::size_t>(n) + 1, 0);
    for (const Edge& e : edges_) {
        mate[static_cast<std::size_t>(e.u)] = e.v;
        mate[static_cast<std::size_t>(e.v)] = e.u;
    }
    return mate;
}

void Matching::validate(const Instance& inst) const {
    for (const Edge& e : edges_) {
        if (e.u < 1 || e.v > inst.vertex_count())
            throw std::invalid_argument("matching: vertex outside instance");
        if (!inst.has_edge(e))
            throw std::invalid_argument("matching: edge (" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + ") not in instance");
    }
}

int utility(const Instance& inst, const Matching& m, int agent) {
    if (agent < 1 || agent > inst.agent_count())
        throw std::invalid_argument("utility: agent id out of range");
    m.validate(inst);
    int count = 0;
    for (const Edge& e : m.edges()) {
        if (inst.owner(e.u) == agent) ++count;
        if (inst.owner(e.v) == agent) ++count;
    }
    return count;
}

std::vector<int> agent_utilities(const Instance& inst, const Matching& m) {
    std::vector<int> u(static_cast<std::size_t>(inst.agent_count()) + 1, 0);
    for (const Edge& e : m.edges()) {
        ++u[static_cast<std::size_t>(inst.owner(e.u))];
        ++u[static_cast<std::size_t>(inst.owner(e.v))];
    }
    return u;
}

HiddenInstance hide_vertices(const Instance& inst, int agent, const std::vector<int>& hidden) {
    if (agent < 1 || agent > inst.agent_count())
        throw std::invalid_argument("hide_vertices: agent id out of range");
    std::vector<char> hide(static_cast<std::size_t>(inst.vertex_count()) + 1, 0);
    for (int v : hidden) {
        if (v < 1 || v > inst.vertex_count() || inst.owner(v) != agent)
            throw std::invalid_argument("hide_vertices: vertex " + std::to_string(v) +
                                        " is not owned by agent " + std::to_string(agent));
        hide[static_cast<std::size_t>(v)] = 1;
    }
    HiddenInstance out;
    out.from_original.assign(static_cast<std::size_t>(inst.vertex_count()) + 1, 0);
    out.to_original.assign(1, 0);
    std::vector<int> owners(1, 0);
    for (int v = 1; v <= inst.vertex_count(); ++v) {
        if (hide[static_cast<std::size_t>(v)]) continue;
        out.to_original.push_back(v);
        out.from_original[static_cast<std::size_t>(v)] = static_cast<int>(out.to_original.size()) - 1;
        owners.push_back(inst.owner(v));
    }
    std::vector<Edge> edges;
    for (const Edge& e : inst.edges()) {
        int nu = out.from_original[static_cast<std::size_t>(e.u)];
        int nv = out.from_original[static_cast<std::size_t>(e.v)];
        if (nu != 0 && nv != 0) edges.emplace_back(nu, nv);
    }
    out.instance = Instance(static_cast<int>(out.to_original.size()) - 1, inst.agent_count(),
                            std::move(owners), std::move(edges));
    return out;
}

Matching to_original_ids(const HiddenInstance& hidden, const Matching& m) {
    std::vector<Edge> edges;
    edges.reserve(m.size());
    for (const Edge& e : m.edges())
        edges.emplace_back(hidden.to_original[static_cast<std::size_t>(e.u)],
                           hidden.to_original[static_cast<std::size_t>(e.v)]);
    return Matching(std::move(edges));
}

}  // namespace kex
