#include "perron/digraph.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace perron {

bool Digraph::has_edge(std::size_t from, std::size_t to) const {
    const auto& s = out_[from];
    return std::find(s.begin(), s.end(), to) != s.end();
}

Condensation condense(const Digraph& g) {
    // Iterative Tarjan. Components come out in reverse topological order.
    const std::size_t n = g.size();
    constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> index(n, unvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> found;
    std::size_t counter = 0;

    struct Frame {
        std::size_t v;
        std::size_t next;
    };
    std::vector<Frame> call;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& succ = g.successors(f.v);
            if (f.next < succ.size()) {
                std::size_t w = succ[f.next++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            std::size_t v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                found.push_back(std::move(comp));
            }
        }
    }

    Condensation c;
    c.components.assign(found.rbegin(), found.rend());
    c.component_of.assign(n, 0);
    for (std::size_t k = 0; k < c.components.size(); ++k)
        for (std::size_t v : c.components[k]) c.component_of[v] = k;
    c.parents.assign(c.components.size(), {});
    c.internal_edge.assign(c.components.size(), false);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v : g.successors(u)) {
            std::size_t cu = c.component_of[u], cv = c.component_of[v];
            if (cu == cv) {
                c.internal_edge[cu] = true;
            } else {
                auto& p = c.parents[cv];
                if (std::find(p.begin(), p.end(), cu) == p.end()) p.push_back(cu);
            }
        }
    }
    for (auto& p : c.parents) std::sort(p.begin(), p.end());
    return c;
}

}  // namespace perron
