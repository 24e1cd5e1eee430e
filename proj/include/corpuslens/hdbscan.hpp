#ifndef CORPUSLENS_HDBSCAN_HPP
#define CORPUSLENS_HDBSCAN_HPP

#include <Eigen/Core>

#include <vector>

namespace corpuslens::hdbscan {

struct Params {
    int min_cluster_size = 15;
    int min_samples = 0;  // 0 -> min_cluster_size
};

struct MstEdge {
    int a = 0;
    int b = 0;
    double weight = 0.0;
};

struct Result {
    std::vector<int> labels;  // -1 = noise, else 0..n_clusters-1
    int n_clusters = 0;
    std::vector<MstEdge> mst;  // n-1 mutual-reachability edges
};

// Distance to the min_samples-th nearest other point (Euclidean).
std::vector<double> core_distances(const Eigen::MatrixXd& points, int min_samples,
                                   unsigned threads = 1);

// Deterministic Prim MST under d_mr(a,b) = max(core_a, core_b, d(a,b));
// vertex selection ties break toward the smaller id.
std::vector<MstEdge> mutual_reachability_mst(const Eigen::MatrixXd& points,
                                             const std::vector<double>& core);

// Full chain: core distances, MST, single-linkage hierarchy, condensation at
// min_cluster_size, excess-of-mass extraction. Points outside selected
// clusters get label -1. When stabilities tie, children are preferred
// (finer clusters). The hierarchy root is selectable only when no other
// condensed cluster exists (e.g. all points identical).
Result run(const Eigen::MatrixXd& points, const Params& params, unsigned threads = 1);

}  // namespace corpuslens::hdbscan

#endif
