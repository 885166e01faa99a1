#ifndef KEX_INSTANCE_HPP
#define KEX_INSTANCE_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace kex {

// Undirected edge, normalized so u < v.
struct Edge {
    std::int32_t u;
    std::int32_t v;

    Edge() : u(0), v(0) {}
    Edge(std::int32_t a, std::int32_t b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// A kidney-exchange instance: a compatibility graph on vertices 1..n whose
// vertices are partitioned among agents 1..m. Immutable after construction.
class Instance {
public:
    Instance() = default;

    // owners[v] for v in 1..n (index 0 unused). Edges are normalized,
    // deduplicated and sorted. Throws std::invalid_argument on violations
    // (self-loop, endpoint/owner out of range, duplicate edge).
    Instance(int n, int m, std::vector<int> owners, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int agent_count() const { return m_; }
    int owner(int v) const { return owners_[static_cast<std::size_t>(v)]; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(Edge e) const;

    // Vertices owned by agent i, ascending.
    std::vector<int> agent_vertices(int i) const;
    int agent_size(int i) const;

    // Neighbors of v, ascending.
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }

    // Canonical KEX text (sorted edges, LF endings). Parsing a canonical
    // file and serializing it again is byte-identical.
    std::string serialize() const;

    static Instance parse(std::istream& in);
    static Instance parse(const std::string& text);

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<int> owners_;             // index 0 unused
    std::vector<Edge> edges_;             // sorted, unique
    std::vector<std::vector<int>> adj_;   // index 0 unused
};

// A set of pairwise vertex-disjoint edges. Stored sorted; disjointness is
// checked at construction, membership in a particular instance by validate().
class Matching {
public:
    Matching() = default;
    explicit Matching(std::vector<Edge> edges);

    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }
    bool contains(Edge e) const;

    // mate[v] = partner of v or 0; index 0 unused.
    std::vector<int> mate_array(int n) const;

    // Throws std::invalid_argument if some edge is not an edge of inst
    // or an endpoint exceeds inst's vertex range.
    void validate(const Instance& inst) const;

    friend auto operator<=>(const Matching&, const Matching&) = default;

private:
    std::vector<Edge> edges_;
};

// Number of agent i's vertices matched by M. Validates M against inst.
int utility(const Instance& inst, const Matching& m, int agent);

// Per-agent matched-vertex counts, index 0 unused. No validation; callers
// on hot paths are expected to hold already-validated matchings.
std::vector<int> agent_utilities(const Instance& inst, const Matching& m);

// Matched vertices in total, i.e. 2|M|.
inline int matched_vertices(const Matching& m) { return 2 * static_cast<int>(m.size()); }

// Result of hiding a vertex subset: the induced instance on the remaining
// vertices with dense re-indexed ids, plus maps between the two id spaces.
struct HiddenInstance {
    Instance instance;
    std::vector<int> to_original;    // new id -> original id (index 0 unused)
    std::vector<int> from_original;  // original id -> new id or 0 (index 0 unused)
};

// Remove H (a subset of agent i's vertices) from inst. Ownership of the
// remaining vertices is preserved; the agent set 1..m is kept even if an
// agent loses all vertices. Throws if H contains a vertex not owned by i.
HiddenInstance hide_vertices(const Instance& inst, int agent, const std::vector<int>& hidden);

// Translate a matching on a hidden instance back to original vertex ids.
Matching to_original_ids(const HiddenInstance& hidden, const Matching& m);

}  // namespace kex

#endif
