#include "corpuslens/hdbscan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "corpuslens/errors.hpp"
#include "corpuslens/util.hpp"

namespace corpuslens::hdbscan {

namespace {

constexpr double kMaxLambda = 1e12;  // 1/distance capped so zero distances stay finite

double to_lambda(double dist) {
    if (dist <= 1.0 / kMaxLambda) return kMaxLambda;
    return 1.0 / dist;
}

Eigen::VectorXd distances_from(const Eigen::MatrixXd& points, int u) {
    return (points.rowwise() - points.row(u)).rowwise().norm();
}

// Single-linkage dendrogram node over MST edges sorted ascending.
struct SlNode {
    int left = -1;
    int right = -1;
    double dist = 0.0;
    int size = 1;
};

struct Dendrogram {
    int n = 0;
    std::vector<SlNode> nodes;  // ids n..2n-2 stored at [id - n]
    int root() const { return 2 * n - 2; }
    int size_of(int id) const { return id < n ? 1 : nodes[id - n].size; }
};

Dendrogram single_linkage(int n, std::vector<MstEdge> edges) {
    std::sort(edges.begin(), edges.end(), [](const MstEdge& x, const MstEdge& y) {
        if (x.weight != y.weight) return x.weight < y.weight;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    Dendrogram d;
    d.n = n;
    d.nodes.resize(static_cast<std::size_t>(n - 1));
    std::vector<int> uf_parent(static_cast<std::size_t>(2 * n - 1));
    std::iota(uf_parent.begin(), uf_parent.end(), 0);
    std::vector<int> current_node(uf_parent.size());
    std::iota(current_node.begin(), current_node.end(), 0);

    const std::function<int(int)> find = [&](int x) {
        while (uf_parent[x] != x) {
            uf_parent[x] = uf_parent[uf_parent[x]];
            x = uf_parent[x];
        }
        return x;
    };

    int next_id = n;
    for (const auto& e : edges) {
        const int ra = find(e.a);
        const int rb = find(e.b);
        SlNode node;
        node.left = current_node[ra];
        node.right = current_node[rb];
        node.dist = e.weight;
        node.size = d.size_of(node.left) + d.size_of(node.right);
        d.nodes[static_cast<std::size_t>(next_id - n)] = node;
        uf_parent[ra] = rb;
        current_node[rb] = next_id;
        ++next_id;
    }
    return d;
}

// Condensed tree: clusters plus per-point departure records.
struct Condensed {
    std::vector<int> parent;        // per cluster; -1 for the root (cluster 0)
    std::vector<double> birth;      // lambda at creation
    std::vector<int> size;          // point count at creation
    std::vector<std::vector<int>> children;
    std::vector<int> point_parent;  // per point: cluster it departed from
    std::vector<double> point_lambda;
};

void collect_leaves(const Dendrogram& d, int start, std::vector<int>& out) {
    std::vector<int> stack = {start};
    while (!stack.empty()) {
        const int id = stack.back();
        stack.pop_back();
        if (id < d.n) {
            out.push_back(id);
        } else {
            stack.push_back(d.nodes[static_cast<std::size_t>(id - d.n)].left);
            stack.push_back(d.nodes[static_cast<std::size_t>(id - d.n)].right);
        }
    }
}

Condensed condense(const Dendrogram& d, int min_cluster_size) {
    Condensed c;
    c.point_parent.assign(static_cast<std::size_t>(d.n), -1);
    c.point_lambda.assign(static_cast<std::size_t>(d.n), 0.0);
    c.parent.push_back(-1);
    c.birth.push_back(0.0);
    c.size.push_back(d.n);
    c.children.emplace_back();

    // (sl node, condensed cluster it belongs to), walked top-down
    std::vector<std::pair<int, int>> stack;
    stack.emplace_back(d.root(), 0);
    std::vector<int> leaves;
    while (!stack.empty()) {
        const auto [node, cluster] = stack.back();
        stack.pop_back();
        if (node < d.n) {
            // singleton chain end: the point departs at the lambda recorded by its parent split
            // (handled below when emitted); reaching here means root itself is a point
            c.point_parent[static_cast<std::size_t>(node)] = cluster;
            c.point_lambda[static_cast<std::size_t>(node)] = kMaxLambda;
            continue;
        }
        const SlNode& sn = d.nodes[static_cast<std::size_t>(node - d.n)];
        const double lambda = to_lambda(sn.dist);
        const int left_count = d.size_of(sn.left);
        const int right_count = d.size_of(sn.right);

        if (left_count >= min_cluster_size && right_count >= min_cluster_size) {
            for (const int child : {sn.left, sn.right}) {
                const int new_id = static_cast<int>(c.parent.size());
                c.parent.push_back(cluster);
                c.birth.push_back(lambda);
                c.size.push_back(d.size_of(child));
                c.children.emplace_back();
                c.children[static_cast<std::size_t>(cluster)].push_back(new_id);
                stack.emplace_back(child, new_id);
            }
        } else if (left_count < min_cluster_size && right_count < min_cluster_size) {
            leaves.clear();
            collect_leaves(d, sn.left, leaves);
            collect_leaves(d, sn.right, leaves);
            for (const int p : leaves) {
                c.point_parent[static_cast<std::size_t>(p)] = cluster;
                c.point_lambda[static_cast<std::size_t>(p)] = lambda;
            }
        } else {
            const int big = left_count >= min_cluster_size ? sn.left : sn.right;
            const int small = left_count >= min_cluster_size ? sn.right : sn.left;
            leaves.clear();
            collect_leaves(d, small, leaves);
            for (const int p : leaves) {
                c.point_parent[static_cast<std::size_t>(p)] = cluster;
                c.point_lambda[static_cast<std::size_t>(p)] = lambda;
            }
            stack.emplace_back(big, cluster);
        }
    }
    return c;
}

std::vector<double> stabilities(const Condensed& c) {
    std::vector<double> stab(c.parent.size(), 0.0);
    for (std::size_t p = 0; p < c.point_parent.size(); ++p) {
        const int cl = c.point_parent[p];
        if (cl >= 0) stab[static_cast<std::size_t>(cl)] += c.point_lambda[p] - c.birth[static_cast<std::size_t>(cl)];
    }
    for (std::size_t cl = 1; cl < c.parent.size(); ++cl) {
        const auto parent = static_cast<std::size_t>(c.parent[cl]);
        stab[parent] += (c.birth[cl] - c.birth[parent]) * static_cast<double>(c.size[cl]);
    }
    return stab;
}

std::vector<int> select_eom(const Condensed& c, std::vector<double> stab) {
    const std::size_t k = c.parent.size();
    std::vector<char> selected(k, 1);
    selected[0] = 0;  // root handled separately
    for (std::size_t cl = k; cl-- > 1;) {
        const auto& kids = c.children[cl];
        if (kids.empty()) continue;
        double subtree = 0.0;
        for (const int ch : kids) subtree += stab[static_cast<std::size_t>(ch)];
        if (subtree >= stab[cl]) {
            // ties go to the children: keep the finer clusters
            stab[cl] = subtree;
            selected[cl] = 0;
        } else {
            std::vector<int> walk(kids.begin(), kids.end());
            while (!walk.empty()) {
                const int x = walk.back();
                walk.pop_back();
                selected[static_cast<std::size_t>(x)] = 0;
                const auto& nx = c.children[static_cast<std::size_t>(x)];
                walk.insert(walk.end(), nx.begin(), nx.end());
            }
        }
    }
    std::vector<int> out;
    for (std::size_t cl = 1; cl < k; ++cl) {
        if (selected[cl] != 0) out.push_back(static_cast<int>(cl));
    }
    return out;
}

}  // namespace

std::vector<double> core_distances(const Eigen::MatrixXd& points, int min_samples,
                                   unsigned threads) {
    const auto n = static_cast<int>(points.rows());
    const int k = std::min(min_samples, n - 1);
    std::vector<double> core(static_cast<std::size_t>(n), 0.0);
    if (k < 1) return core;
    util::parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t u) {
        Eigen::VectorXd d = distances_from(points, static_cast<int>(u));
        std::vector<double> row(d.data(), d.data() + d.size());
        // row includes the self distance 0, so the k-th other neighbor sits at
        // sorted index k
        std::nth_element(row.begin(), row.begin() + k, row.end());
        core[u] = row[static_cast<std::size_t>(k)];
    });
    return core;
}

std::vector<MstEdge> mutual_reachability_mst(const Eigen::MatrixXd& points,
                                             const std::vector<double>& core) {
    const auto n = static_cast<int>(points.rows());
    std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
    std::vector<double> key(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    key[0] = 0.0;
    std::vector<MstEdge> edges;
    edges.reserve(static_cast<std::size_t>(n > 0 ? n - 1 : 0));

    for (int step = 0; step < n; ++step) {
        int u = -1;
        for (int v = 0; v < n; ++v) {
            if (in_tree[static_cast<std::size_t>(v)] == 0 &&
                (u < 0 || key[static_cast<std::size_t>(v)] < key[static_cast<std::size_t>(u)])) {
                u = v;
            }
        }
        in_tree[static_cast<std::size_t>(u)] = 1;
        if (parent[static_cast<std::size_t>(u)] >= 0) {
            const int p = parent[static_cast<std::size_t>(u)];
            edges.push_back({std::min(p, u), std::max(p, u), key[static_cast<std::size_t>(u)]});
        }
        const Eigen::VectorXd dist = distances_from(points, u);
        for (int v = 0; v < n; ++v) {
            if (in_tree[static_cast<std::size_t>(v)] != 0) continue;
            const double mr = std::max({core[static_cast<std::size_t>(u)],
                                        core[static_cast<std::size_t>(v)], dist[v]});
            if (mr < key[static_cast<std::size_t>(v)]) {
                key[static_cast<std::size_t>(v)] = mr;
                parent[static_cast<std::size_t>(v)] = u;
            }
        }
    }
    return edges;
}

Result run(const Eigen::MatrixXd& points, const Params& params, unsigned threads) {
    const auto n = static_cast<int>(points.rows());
    if (params.min_cluster_size < 2) throw DataError("hdbscan: min_cluster_size must be >= 2");
    if (n < params.min_cluster_size) {
        throw DataError("hdbscan: need at least min_cluster_size points");
    }
    const int min_samples = params.min_samples > 0 ? params.min_samples : params.min_cluster_size;
    if (min_samples < 1) throw DataError("hdbscan: min_samples must be >= 1");

    Result res;
    const auto core = core_distances(points, min_samples, threads);
    res.mst = mutual_reachability_mst(points, core);
    const Dendrogram dendro = single_linkage(n, res.mst);
    const Condensed cond = condense(dendro, params.min_cluster_size);
    const auto stab = stabilities(cond);
    auto chosen = select_eom(cond, stab);

    res.labels.assign(static_cast<std::size_t>(n), -1);
    if (chosen.empty()) {
        // no cluster besides the root: the root itself is the single cluster,
        // carrying the points of its final dissolution (all points when every
        // pairwise distance is zero)
        double max_lambda = 0.0;
        for (std::size_t p = 0; p < cond.point_lambda.size(); ++p) {
            if (cond.point_parent[p] == 0) max_lambda = std::max(max_lambda, cond.point_lambda[p]);
        }
        for (std::size_t p = 0; p < cond.point_lambda.size(); ++p) {
            if (cond.point_parent[p] == 0 && cond.point_lambda[p] == max_lambda) {
                res.labels[p] = 0;
            }
        }
        res.n_clusters = 1;
        return res;
    }

    std::sort(chosen.begin(), chosen.end());
    std::vector<int> label_of(cond.parent.size(), -1);
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        label_of[static_cast<std::size_t>(chosen[i])] = static_cast<int>(i);
    }
    for (int p = 0; p < n; ++p) {
        int cl = cond.point_parent[static_cast<std::size_t>(p)];
        while (cl >= 0 && label_of[static_cast<std::size_t>(cl)] < 0) {
            cl = cond.parent[static_cast<std::size_t>(cl)];
        }
        if (cl >= 0) res.labels[static_cast<std::size_t>(p)] = label_of[static_cast<std::size_t>(cl)];
    }
    res.n_clusters = static_cast<int>(chosen.size());
    return res;
}

}  // namespace corpuslens::hdbscan
