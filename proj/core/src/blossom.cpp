#include "kex/blossom.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace kex {

namespace {

// Primal-dual blossom algorithm for maximum-weight matching.
//
// Vertices are 0..n-1; blossom slots n..2n-1. Edge k has endpoints 2k and
// 2k+1. All dual variables are kept integral by doubling edge weights inside
// the slack computation; slacks of edges between S-vertices stay even, so
// the delta-3 halving below is exact.
class Solver {
public:
    Solver(int n, const std::vector<WeightedEdge>& edges) : n_(n), edges_(edges) {
        const int ne = static_cast<int>(edges_.size());
        maxweight_ = 0;
        for (const auto& e : edges_) {
            if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_ || e.u == e.v)
                throw std::invalid_argument("max_weight_matching: bad edge");
            maxweight_ = std::max(maxweight_, e.weight);
        }
        endpoint_.resize(2 * static_cast<std::size_t>(ne));
        for (int k = 0; k < ne; ++k) {
            endpoint_[2 * static_cast<std::size_t>(k)] = edges_[static_cast<std::size_t>(k)].u;
            endpoint_[2 * static_cast<std::size_t>(k) + 1] = edges_[static_cast<std::size_t>(k)].v;
        }
        neighbend_.assign(static_cast<std::size_t>(n_), {});
        for (int k = 0; k < ne; ++k) {
            neighbend_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(k)].u)].push_back(2 * k + 1);
            neighbend_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(k)].v)].push_back(2 * k);
        }
        mate_.assign(static_cast<std::size_t>(n_), -1);
        label_.assign(2 * static_cast<std::size_t>(n_), 0);
        labelend_.assign(2 * static_cast<std::size_t>(n_), -1);
        inblossom_.resize(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) inblossom_[static_cast<std::size_t>(v)] = v;
        blossomparent_.assign(2 * static_cast<std::size_t>(n_), -1);
        blossomchilds_.assign(2 * static_cast<std::size_t>(n_), {});
        blossombase_.resize(2 * static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) blossombase_[static_cast<std::size_t>(v)] = v;
        for (int b = n_; b < 2 * n_; ++b) blossombase_[static_cast<std::size_t>(b)] = -1;
        blossomendps_.assign(2 * static_cast<std::size_t>(n_), {});
        bestedge_.assign(2 * static_cast<std::size_t>(n_), -1);
        blossombestedges_.assign(2 * static_cast<std::size_t>(n_), {});
        hasbestedges_.assign(2 * static_cast<std::size_t>(n_), 0);
        for (int b = 2 * n_ - 1; b >= n_; --b) unusedblossoms_.push_back(b);
        dualvar_.assign(2 * static_cast<std::size_t>(n_), 0);
        for (int v = 0; v < n_; ++v) dualvar_[static_cast<std::size_t>(v)] = maxweight_;
        allowedge_.assign(static_cast<std::size_t>(ne), 0);
    }

    std::vector<int> run() {
        for (int t = 0; t < n_; ++t) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int b = n_; b < 2 * n_; ++b) {
                blossombestedges_[static_cast<std::size_t>(b)].clear();
                hasbestedges_[static_cast<std::size_t>(b)] = 0;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), 0);
            queue_.clear();
            for (int v = 0; v < n_; ++v)
                if (mate_[static_cast<std::size_t>(v)] == -1 &&
                    label_[static_cast<std::size_t>(inblossom_[static_cast<std::size_t>(v)])] == 0)
                    assign_label(v, 1, -1);

            bool augmented = false;
            for (;;) {
                while (!queue_.empty() && !augmented) {
                    int v = queue_.back();
                    queue_.pop_back();
                    assert(label_[static_cast<std::size_t>(inblossom_[static_cast<std::size_t>(v)])] == 1);
                    for (int p : neighbend_[static_cast<std::size_t>(v)]) {
                        int k = p / 2;
                        int w = endpoint_[static_cast<std::size_t>(p)];
                        if (inblossom_[static_cast<std::size_t>(v)] == inblossom_[static_cast<std::size_t>(w)])
                            continue;
                        long long kslack = 0;
                        if (!allowedge_[static_cast<std::size_t>(k)]) {
                            kslack = slack(k);
                            if (kslack <= 0) allowedge_[static_cast<std::size_t>(k)] = 1;
                        }
                        if (allowedge_[static_cast<std::size_t>(k)]) {
                            int bw = inblossom_[static_cast<std::size_t>(w)];
                            if (label_[static_cast<std::size_t>(bw)] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[static_cast<std::size_t>(bw)] == 1) {
                                int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[static_cast<std::size_t>(w)] == 0) {
                                assert(label_[static_cast<std::size_t>(bw)] == 2);
                                label_[static_cast<std::size_t>(w)] = 2;
                                labelend_[static_cast<std::size_t>(w)] = p ^ 1;
                            }
                        } else if (label_[static_cast<std::size_t>(inblossom_[static_cast<std::size_t>(w)])] == 1) {
                            int b = inblossom_[static_cast<std::size_t>(v)];
                            if (bestedge_[static_cast<std::size_t>(b)] == -1 ||
                                kslack < slack(bestedge_[static_cast<std::size_t>(b)]))
                                bestedge_[static_cast<std::size_t>(b)] = k;
                        } else if (label_[static_cast<std::size_t>(w)] == 0) {
                            if (bestedge_[static_cast<std::size_t>(w)] == -1 ||
                                kslack < slack(bestedge_[static_cast<std::size_t>(w)]))
                                bestedge_[static_cast<std::size_t>(w)] = k;
                        }
                    }
                }
                if (augmented) break;

                // No augmenting path under the current duals; adjust them.
                int deltatype = 1;
                long long delta = 0;
                int deltaedge = -1;
                int deltablossom = -1;
                {
                    long long mind = dualvar_[0];
                    for (int v = 1; v < n_; ++v)
                        mind = std::min(mind, dualvar_[static_cast<std::size_t>(v)]);
                    delta = mind;
                }
                for (int v = 0; v < n_; ++v) {
                    if (label_[static_cast<std::size_t>(inblossom_[static_cast<std::size_t>(v)])] == 0 &&
                        bestedge_[static_cast<std::size_t>(v)] != -1) {
                        long long d = slack(bestedge_[static_cast<std::size_t>(v)]);
                        if (d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[static_cast<std::size_t>(v)];
                        }
                    }
                }
                for (int b = 0; b < 2 * n_; ++b) {
                    if (blossomparent_[static_cast<std::size_t>(b)] == -1 &&
                        label_[static_cast<std::size_t>(b)] == 1 &&
                        bestedge_[static_cast<std::size_t>(b)] != -1) {
                        long long kslack = slack(bestedge_[static_cast<std::size_t>(b)]);
                        assert(kslack % 2 == 0);
                        long long d = kslack / 2;
                        if (d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[static_cast<std::size_t>(b)];
                        }
                    }
                }
                for (int b = n_; b < 2 * n_; ++b) {
                    if (blossombase_[static_cast<std::size_t>(b)] >= 0 &&
                        blossomparent_[static_cast<std::size_t>(b)] == -1 &&
                        label_[static_cast<std::size_t>(b)] == 2 &&
                        dualvar_[static_cast<std::size_t>(b)] < delta) {
                        delta = dualvar_[static_cast<std::size_t>(b)];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }

                for (int v = 0; v < n_; ++v) {
                    int lb = label_[static_cast<std::size_t>(inblossom_[static_cast<std::size_t>(v)])];
                    if (lb == 1)
                        dualvar_[static_cast<std::size_t>(v)] -= delta;
                    else if (lb == 2)
                        dualvar_[static_cast<std::size_t>(v)] += delta;
                }
                for (int b = n_; b < 2 * n_; ++b) {
                    if (blossombase_[static_cast<std::size_t>(b)] >= 0 &&
                        blossomparent_[static_cast<std::size_t>(b)] == -1) {
                        if (label_[static_cast<std::size_t>(b)] == 1)
                            dualvar_[static_cast<std::size_t>(b)] += delta;
                        else if (label_[static_cast<std::size_t>(b)] == 2)
                            dualvar_[static_cast<std::size_t>(b)] -= delta;
                    }
                }

                if (deltatype == 1) break;  // optimum reached
                if (deltatype == 2) {
                    allowedge_[static_cast<std::size_t>(deltaedge)] = 1;
                    int i = edges_[static_cast<std::size_t>(deltaedge)].u;
                    int j = edges_[static_cast<std::size_t>(deltaedge)].v;
                    if (label_[static_cast<std::size_t>(inblossom_[static_cast<std::size_t>(i)])] == 0)
                        std::swap(i, j);
                    assert(label_[static_cast<std::size_t>(inblossom_[static_cast<std::size_t>(i)])] == 1);
                    (void)j;
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[static_cast<std::size_t>(deltaedge)] = 1;
                    int i = edges_[static_cast<std::size_t>(deltaedge)].u;
                    assert(label_[static_cast<std::size_t>(inblossom_[static_cast<std::size_t>(i)])] == 1);
                    queue_.push_back(i);
                } else if (deltatype == 4) {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) break;

            // End of a successful stage: expand S-blossoms with zero dual.
            for (int b = n_; b < 2 * n_; ++b)
                if (blossomparent_[static_cast<std::size_t>(b)] == -1 &&
                    blossombase_[static_cast<std::size_t>(b)] >= 0 &&
                    label_[static_cast<std::size_t>(b)] == 1 &&
                    dualvar_[static_cast<std::size_t>(b)] == 0)
                    expand_blossom(b, true);
        }

        std::vector<int> mate(static_cast<std::size_t>(n_), -1);
        for (int v = 0; v < n_; ++v)
            if (mate_[static_cast<std::size_t>(v)] >= 0)
                mate[static_cast<std::size_t>(v)] = endpoint_[static_cast<std::size_t>(mate_[static_cast<std::size_t>(v)])];
        for (int v = 0; v < n_; ++v)
            assert(mate[static_cast<std::size_t>(v)] == -1 ||
                   mate[static_cast<std::size_t>(mate[static_cast<std::size_t>(v)])] == v);
        return mate;
    }

private:
    long long slack(int k) const {
        const auto& e = edges_[static_cast<std::size_t>(k)];
        return dualvar_[static_cast<std::size_t>(e.u)] + dualvar_[static_cast<std::size_t>(e.v)] -
               2 * e.weight;
    }

    void blossom_leaves(int b, std::vector<int>& out) const {
        if (b < n_) {
            out.push_back(b);
        } else {
            for (int t : blossomchilds_[static_cast<std::size_t>(b)]) blossom_leaves(t, out);
        }
    }

    void assign_label(int w, int t, int p) {
        int b = inblossom_[static_cast<std::size_t>(w)];
        assert(label_[static_cast<std::size_t>(w)] == 0 && label_[static_cast<std::size_t>(b)] == 0);
        label_[static_cast<std::size_t>(w)] = label_[static_cast<std::size_t>(b)] = t;
        labelend_[static_cast<std::size_t>(w)] = labelend_[static_cast<std::size_t>(b)] = p;
        bestedge_[static_cast<std::size_t>(w)] = bestedge_[static_cast<std::size_t>(b)] = -1;
        if (t == 1) {
            std::vector<int> leaves;
            blossom_leaves(b, leaves);
            for (int leaf : leaves) queue_.push_back(leaf);
        } else if (t == 2) {
            int base = blossombase_[static_cast<std::size_t>(b)];
            assert(mate_[static_cast<std::size_t>(base)] >= 0);
            assign_label(endpoint_[static_cast<std::size_t>(mate_[static_cast<std::size_t>(base)])], 1,
                         mate_[static_cast<std::size_t>(base)] ^ 1);
        }
    }

    // Trace back from v and w towards the roots of their alternating trees,
    // looking for a common ancestor. Returns its base vertex, or -1 when the
    // paths end in different roots (then an augmenting path exists).
    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[static_cast<std::size_t>(v)];
            if (label_[static_cast<std::size_t>(b)] & 4) {
                base = blossombase_[static_cast<std::size_t>(b)];
                break;
            }
            assert(label_[static_cast<std::size_t>(b)] == 1);
            path.push_back(b);
            label_[static_cast<std::size_t>(b)] = 5;
            assert(labelend_[static_cast<std::size_t>(b)] ==
                   mate_[static_cast<std::size_t>(blossombase_[static_cast<std::size_t>(b)])]);
            if (labelend_[static_cast<std::size_t>(b)] == -1) {
                v = -1;  // reached a root
            } else {
                v = endpoint_[static_cast<std::size_t>(labelend_[static_cast<std::size_t>(b)])];
                b = inblossom_[static_cast<std::size_t>(v)];
                assert(label_[static_cast<std::size_t>(b)] == 2);
                assert(labelend_[static_cast<std::size_t>(b)] >= 0);
                v = endpoint_[static_cast<std::size_t>(labelend_[static_cast<std::size_t>(b)])];
            }
            if (w != -1) std::swap(v, w);
        }
        for (int b : path) label_[static_cast<std::size_t>(b)] = 1;
        return base;
    }

    // Construct a new blossom with the given base, through edge k which
    // connects two S-vertices.
    void add_blossom(int base, int k) {
        int v = edges_[static_cast<std::size_t>(k)].u;
        int w = edges_[static_cast<std::size_t>(k)].v;
        int bb = inblossom_[static_cast<std::size_t>(base)];
        int bv = inblossom_[static_cast<std::size_t>(v)];
        int bw = inblossom_[static_cast<std::size_t>(w)];
        int b = unusedblossoms_.back();
        unusedblossoms_.pop_back();
        blossombase_[static_cast<std::size_t>(b)] = base;
        blossomparent_[static_cast<std::size_t>(b)] = -1;
        blossomparent_[static_cast<std::size_t>(bb)] = b;
        std::vector<int>& path = blossomchilds_[static_cast<std::size_t>(b)];
        std::vector<int>& endps = blossomendps_[static_cast<std::size_t>(b)];
        path.clear();
        endps.clear();
        while (bv != bb) {
            blossomparent_[static_cast<std::size_t>(bv)] = b;
            path.push_back(bv);
            endps.push_back(labelend_[static_cast<std::size_t>(bv)]);
            assert(labelend_[static_cast<std::size_t>(bv)] >= 0);
            v = endpoint_[static_cast<std::size_t>(labelend_[static_cast<std::size_t>(bv)])];
            bv = inblossom_[static_cast<std::size_t>(v)];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[static_cast<std::size_t>(bw)] = b;
            path.push_back(bw);
            endps.push_back(labelend_[static_cast<std::size_t>(bw)] ^ 1);
            assert(labelend_[static_cast<std::size_t>(bw)] >= 0);
            w = endpoint_[static_cast<std::size_t>(labelend_[static_cast<std::size_t>(bw)])];
            bw = inblossom_[static_cast<std::size_t>(w)];
        }
        assert(label_[static_cast<std::size_t>(bb)] == 1);
        label_[static_cast<std::size_t>(b)] = 1;
        labelend_[static_cast<std::size_t>(b)] = labelend_[static_cast<std::size_t>(bb)];
        dualvar_[static_cast<std::size_t>(b)] = 0;
        std::vector<int> leaves;
        blossom_leaves(b, leaves);
        for (int leaf : leaves) {
            if (label_[static_cast<std::size_t>(inblossom_[static_cast<std::size_t>(leaf)])] == 2)
                queue_.push_back(leaf);
            inblossom_[static_cast<std::size_t>(leaf)] = b;
        }
        // Recompute least-slack edges towards neighbouring S-blossoms.
        std::vector<int> bestedgeto(2 * static_cast<std::size_t>(n_), -1);
        for (int child : path) {
            std::vector<std::vector<int>> nblists;
            if (!hasbestedges_[static_cast<std::size_t>(child)]) {
                std::vector<int> cl;
                blossom_leaves(child, cl);
                for (int leaf : cl) {
                    std::vector<int> ks;
                    ks.reserve(neighbend_[static_cast<std::size_t>(leaf)].size());
                    for (int p : neighbend_[static_cast<std::size_t>(leaf)]) ks.push_back(p / 2);
                    nblists.push_back(std::move(ks));
                }
            } else {
                nblists.push_back(blossombestedges_[static_cast<std::size_t>(child)]);
            }
            for (const auto& nblist : nblists) {
                for (int ke : nblist) {
                    int i = edges_[static_cast<std::size_t>(ke)].u;
                    int j = edges_[static_cast<std::size_t>(ke)].v;
                    if (inblossom_[static_cast<std::size_t>(j)] == b) std::swap(i, j);
                    int bj = inblossom_[static_cast<std::size_t>(j)];
                    if (bj != b && label_[static_cast<std::size_t>(bj)] == 1 &&
                        (bestedgeto[static_cast<std::size_t>(bj)] == -1 ||
                         slack(ke) < slack(bestedgeto[static_cast<std::size_t>(bj)])))
                        bestedgeto[static_cast<std::size_t>(bj)] = ke;
                }
            }
            blossombestedges_[static_cast<std::size_t>(child)].clear();
            hasbestedges_[static_cast<std::size_t>(child)] = 0;
            bestedge_[static_cast<std::size_t>(child)] = -1;
        }
        auto& bbe = blossombestedges_[static_cast<std::size_t>(b)];
        bbe.clear();
        for (int ke : bestedgeto)
            if (ke != -1) bbe.push_back(ke);
        hasbestedges_[static_cast<std::size_t>(b)] = 1;
        bestedge_[static_cast<std::size_t>(b)] = -1;
        for (int ke : bbe)
            if (bestedge_[static_cast<std::size_t>(b)] == -1 ||
                slack(ke) < slack(bestedge_[static_cast<std::size_t>(b)]))
                bestedge_[static_cast<std::size_t>(b)] = ke;
    }

    void expand_blossom(int b, bool endstage) {
        for (int s : blossomchilds_[static_cast<std::size_t>(b)]) {
            blossomparent_[static_cast<std::size_t>(s)] = -1;
            if (s < n_) {
                inblossom_[static_cast<std::size_t>(s)] = s;
            } else if (endstage && dualvar_[static_cast<std::size_t>(s)] == 0) {
                expand_blossom(s, endstage);
            } else {
                std::vector<int> leaves;
                blossom_leaves(s, leaves);
                for (int leaf : leaves) inblossom_[static_cast<std::size_t>(leaf)] = s;
            }
        }
        if (!endstage && label_[static_cast<std::size_t>(b)] == 2) {
            // The expanding blossom was a T-blossom mid-stage; relabel the
            // even-depth children along the path from the entry child to the
            // base, and make the others unlabeled.
            assert(labelend_[static_cast<std::size_t>(b)] >= 0);
            int entrychild = inblossom_[static_cast<std::size_t>(
                endpoint_[static_cast<std::size_t>(labelend_[static_cast<std::size_t>(b)] ^ 1)])];
            auto& childs = blossomchilds_[static_cast<std::size_t>(b)];
            auto& endps = blossomendps_[static_cast<std::size_t>(b)];
            const int len = static_cast<int>(childs.size());
            int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) -
                                     childs.begin());
            int jstep, endptrick;
            if (j & 1) {
                j -= len;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            auto at = [&](int idx) -> int {
                int i = idx % len;
                if (i < 0) i += len;
                return i;
            };
            int p = labelend_[static_cast<std::size_t>(b)];
            while (j != 0) {
                label_[static_cast<std::size_t>(endpoint_[static_cast<std::size_t>(p ^ 1)])] = 0;
                label_[static_cast<std::size_t>(
                    endpoint_[static_cast<std::size_t>(endps[static_cast<std::size_t>(at(j - endptrick))] ^ endptrick ^ 1)])] = 0;
                assign_label(endpoint_[static_cast<std::size_t>(p ^ 1)], 2, p);
                allowedge_[static_cast<std::size_t>(endps[static_cast<std::size_t>(at(j - endptrick))] / 2)] = 1;
                j += jstep;
                p = endps[static_cast<std::size_t>(at(j - endptrick))] ^ endptrick;
                allowedge_[static_cast<std::size_t>(p / 2)] = 1;
                j += jstep;
            }
            int bv = childs[static_cast<std::size_t>(at(j))];
            label_[static_cast<std::size_t>(endpoint_[static_cast<std::size_t>(p ^ 1)])] = 2;
            label_[static_cast<std::size_t>(bv)] = 2;
            labelend_[static_cast<std::size_t>(endpoint_[static_cast<std::size_t>(p ^ 1)])] = p;
            labelend_[static_cast<std::size_t>(bv)] = p;
            bestedge_[static_cast<std::size_t>(bv)] = -1;
            j += jstep;
            while (childs[static_cast<std::size_t>(at(j))] != entrychild) {
                bv = childs[static_cast<std::size_t>(at(j))];
                if (label_[static_cast<std::size_t>(bv)] == 1) {
                    j += jstep;
                    continue;
                }
                std::vector<int> leaves;
                blossom_leaves(bv, leaves);
                int lv = -1;
                for (int leaf : leaves) {
                    if (label_[static_cast<std::size_t>(leaf)] != 0) {
                        lv = leaf;
                        break;
                    }
                }
                if (lv >= 0) {
                    assert(label_[static_cast<std::size_t>(lv)] == 2);
                    assert(inblossom_[static_cast<std::size_t>(lv)] == bv);
                    label_[static_cast<std::size_t>(lv)] = 0;
                    label_[static_cast<std::size_t>(endpoint_[static_cast<std::size_t>(
                        mate_[static_cast<std::size_t>(blossombase_[static_cast<std::size_t>(bv)])])])] = 0;
                    assign_label(lv, 2, labelend_[static_cast<std::size_t>(lv)]);
                }
                j += jstep;
            }
        }
        label_[static_cast<std::size_t>(b)] = -1;
        labelend_[static_cast<std::size_t>(b)] = -1;
        blossomchilds_[static_cast<std::size_t>(b)].clear();
        blossomendps_[static_cast<std::size_t>(b)].clear();
        blossombase_[static_cast<std::size_t>(b)] = -1;
        blossombestedges_[static_cast<std::size_t>(b)].clear();
        hasbestedges_[static_cast<std::size_t>(b)] = 0;
        bestedge_[static_cast<std::size_t>(b)] = -1;
        unusedblossoms_.push_back(b);
    }

    // Swap matched/unmatched edges over the alternating path through blossom
    // b between vertex v and the base vertex.
    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[static_cast<std::size_t>(t)] != b)
            t = blossomparent_[static_cast<std::size_t>(t)];
        if (t >= n_) augment_blossom(t, v);
        auto& childs = blossomchilds_[static_cast<std::size_t>(b)];
        auto& endps = blossomendps_[static_cast<std::size_t>(b)];
        const int len = static_cast<int>(childs.size());
        int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
        int j = i;
        int jstep, endptrick;
        if (i & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        auto at = [&](int idx) -> int {
            int r = idx % len;
            if (r < 0) r += len;
            return r;
        };
        while (j != 0) {
            j += jstep;
            t = childs[static_cast<std::size_t>(at(j))];
            int p = endps[static_cast<std::size_t>(at(j - endptrick))] ^ endptrick;
            if (t >= n_) augment_blossom(t, endpoint_[static_cast<std::size_t>(p)]);
            j += jstep;
            t = childs[static_cast<std::size_t>(at(j))];
            if (t >= n_) augment_blossom(t, endpoint_[static_cast<std::size_t>(p ^ 1)]);
            mate_[static_cast<std::size_t>(endpoint_[static_cast<std::size_t>(p)])] = p ^ 1;
            mate_[static_cast<std::size_t>(endpoint_[static_cast<std::size_t>(p ^ 1)])] = p;
        }
        std::rotate(childs.begin(), childs.begin() + i, childs.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[static_cast<std::size_t>(b)] = blossombase_[static_cast<std::size_t>(childs[0])];
        assert(blossombase_[static_cast<std::size_t>(b)] == v);
    }

    // Augment the matching along the path through edge k between two roots.
    void augment_matching(int k) {
        const int kv = edges_[static_cast<std::size_t>(k)].u;
        const int kw = edges_[static_cast<std::size_t>(k)].v;
        const int starts[2][2] = {{kv, 2 * k + 1}, {kw, 2 * k}};
        for (const auto& sp : starts) {
            int s = sp[0];
            int p = sp[1];
            for (;;) {
                int bs = inblossom_[static_cast<std::size_t>(s)];
                assert(label_[static_cast<std::size_t>(bs)] == 1);
                assert(labelend_[static_cast<std::size_t>(bs)] ==
                       mate_[static_cast<std::size_t>(blossombase_[static_cast<std::size_t>(bs)])]);
                if (bs >= n_) augment_blossom(bs, s);
                mate_[static_cast<std::size_t>(s)] = p;
                if (labelend_[static_cast<std::size_t>(bs)] == -1) break;  // reached a root
                int t = endpoint_[static_cast<std::size_t>(labelend_[static_cast<std::size_t>(bs)])];
                int bt = inblossom_[static_cast<std::size_t>(t)];
                assert(label_[static_cast<std::size_t>(bt)] == 2);
                assert(labelend_[static_cast<std::size_t>(bt)] >= 0);
                s = endpoint_[static_cast<std::size_t>(labelend_[static_cast<std::size_t>(bt)])];
                int j = endpoint_[static_cast<std::size_t>(labelend_[static_cast<std::size_t>(bt)] ^ 1)];
                assert(blossombase_[static_cast<std::size_t>(bt)] == t);
                if (bt >= n_) augment_blossom(bt, j);
                mate_[static_cast<std::size_t>(j)] = labelend_[static_cast<std::size_t>(bt)];
                p = labelend_[static_cast<std::size_t>(bt)] ^ 1;
            }
        }
    }

    int n_;
    std::vector<WeightedEdge> edges_;
    long long maxweight_;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> blossomparent_;
    std::vector<std::vector<int>> blossomchilds_;
    std::vector<int> blossombase_;
    std::vector<std::vector<int>> blossomendps_;
    std::vector<int> bestedge_;
    std::vector<std::vector<int>> blossombestedges_;
    std::vector<char> hasbestedges_;
    std::vector<int> unusedblossoms_;
    std::vector<long long> dualvar_;
    std::vector<char> allowedge_;
    std::vector<int> queue_;
};

}  // namespace

std::vector<int> max_weight_matching(int n, const std::vector<WeightedEdge>& edges) {
    if (n == 0) return {};
    return Solver(n, edges).run();
}

}  // namespace kex
