#pragma once

#include <cstddef>
#include <vector>

#include "perron/types.hpp"

namespace perron {

/// Adjacency digraph of a square matrix: edge i -> j iff entry (i, j) != 0.
/// Entries are compared exactly.
class Digraph {
public:
    explicit Digraph(std::size_t vertices) : out_(vertices) {}

    template <typename Derived>
    static Digraph of_pattern(const Eigen::MatrixBase<Derived>& m) {
        Digraph g(static_cast<std::size_t>(m.rows()));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                if (m(i, j) != typename Derived::Scalar(0))
                    g.add_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        return g;
    }

    void add_edge(std::size_t from, std::size_t to) { out_[from].push_back(to); }
    std::size_t size() const { return out_.size(); }
    const std::vector<std::size_t>& successors(std::size_t v) const { return out_[v]; }
    bool has_edge(std::size_t from, std::size_t to) const;

private:
    std::vector<std::vector<std::size_t>> out_;
};

/// Strongly connected components in topological order of the condensation:
/// every edge between distinct components goes from an earlier component
/// to a later one. Vertices inside a component are sorted.
struct Condensation {
    std::vector<std::vector<std::size_t>> components;
    std::vector<std::size_t> component_of;                 // vertex -> component
    std::vector<std::vector<std::size_t>> parents;         // component -> predecessor components
    bool component_has_edge(std::size_t c) const { return internal_edge[c]; }
    std::vector<bool> internal_edge;                       // component contains at least one edge
};

Condensation condense(const Digraph& g);

}  // namespace perron
