#pragma once

// Topology of the river network at the finest subdivision level.
//
// Nodes are leaf triangles; two nodes are linked when they share an edge that
// carries a river. A link that joins two already-connected nodes closes a
// circular river. Leaves are gathered with the same culling as rendering, so
// the network describes exactly the rendered window.

#include "seedmix.hpp"
#include "traversal.hpp"
#include "types.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <vector>

namespace rivermap {

struct NetworkComponent {
    std::size_t links = 0;
    std::size_t cycles = 0;  ///< independent cycles (links - nodes + 1)
    double min_river = std::numeric_limits<double>::infinity();
};

struct RiverNetwork {
    std::vector<NetworkComponent> components;
    std::size_t unmatched_links = 0;  ///< river edges seen from one side only (window border)

    std::size_t cyclic() const {
        return std::size_t(std::count_if(components.begin(), components.end(),
                                         [](const auto& c) { return c.cycles > 0; }));
    }
    std::size_t cyclic_at_or_above(double threshold) const {
        return std::size_t(std::count_if(components.begin(), components.end(), [&](const auto& c) {
            return c.cycles > 0 && !(c.min_river < threshold);
        }));
    }
};

namespace detail {

struct EdgeKey {
    std::uint64_t a, b, c, d;
    bool operator==(const EdgeKey&) const = default;
};

struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& k) const noexcept {
        std::uint64_t h = k.a;
        h = fmix64(h ^ k.b);
        h = fmix64(h ^ k.c);
        return std::size_t(fmix64(h ^ k.d));
    }
};

inline EdgeKey edge_key(const Vertex& p, const Vertex& q) noexcept {
    const bool p_first = p.x < q.x || (p.x == q.x && p.y < q.y);
    const Vertex& lo = p_first ? p : q;
    const Vertex& hi = p_first ? q : p;
    return {std::bit_cast<std::uint64_t>(lo.x), std::bit_cast<std::uint64_t>(lo.y),
            std::bit_cast<std::uint64_t>(hi.x), std::bit_cast<std::uint64_t>(hi.y)};
}

struct NetworkBuilder {
    struct Pending {
        std::size_t node;
        double river;
    };
    std::unordered_map<EdgeKey, Pending, EdgeKeyHash> open;
    std::vector<std::size_t> parent;
    struct Link {
        std::size_t a, b;
        double river;
    };
    std::vector<Link> links;

    std::size_t add_node() {
        parent.push_back(parent.size());
        return parent.size() - 1;
    }

    void add_edge(std::size_t node, const Vertex& p, const Vertex& q, double river) {
        const EdgeKey key = edge_key(p, q);
        auto it = open.find(key);
        if (it == open.end()) {
            open.emplace(key, Pending{node, river});
        } else {
            links.push_back({it->second.node, node, river});
            open.erase(it);
        }
    }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }

    RiverNetwork finish() {
        RiverNetwork net;
        net.unmatched_links = open.size();
        std::vector<std::size_t> cycles_at(parent.size(), 0);
        for (const Link& l : links) {
            const std::size_t ra = find(l.a), rb = find(l.b);
            if (ra == rb) ++cycles_at[ra];
            else parent[ra] = rb;
        }
        std::vector<std::size_t> comp_of(parent.size(), std::numeric_limits<std::size_t>::max());
        auto component = [&](std::size_t node) -> NetworkComponent& {
            const std::size_t root = find(node);
            if (comp_of[root] == std::numeric_limits<std::size_t>::max()) {
                comp_of[root] = net.components.size();
                net.components.emplace_back();
            }
            return net.components[comp_of[root]];
        };
        for (const Link& l : links) {
            auto& c = component(l.a);
            ++c.links;
            c.min_river = std::min(c.min_river, l.river);
        }
        for (std::size_t n = 0; n < parent.size(); ++n)
            if (cycles_at[n]) component(n).cycles += cycles_at[n];
        return net;
    }
};

template <class Policy>
void gather(const Policy& p, const typename Policy::Node& n, int level, NetworkBuilder& b) {
    if (!p.visible(n)) return;
    if (p.is_leaf(n, level)) {
        std::size_t node = std::numeric_limits<std::size_t>::max();
        p.for_each_edge(n, [&](const Vertex& a, const Vertex& c, const Edge& e) {
            if (!e.river) return;
            if (node == std::numeric_limits<std::size_t>::max()) node = b.add_node();
            b.add_edge(node, a, c, *e.river);
        });
        return;
    }
    const auto [x, y] = p.expand(n);
    gather(p, x, level + 1, b);
    gather(p, y, level + 1, b);
}

}  // namespace detail

/// River network of the leaves a policy would render. The policy additionally
/// provides for_each_edge(node, fn(Vertex, Vertex, Edge)).
template <class Policy>
RiverNetwork river_network(const Policy& policy, const std::vector<typename Policy::Node>& roots) {
    detail::NetworkBuilder builder;
    for (const auto& r : roots) detail::gather(policy, r, 0, builder);
    return builder.finish();
}

}  // namespace rivermap
