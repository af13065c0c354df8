#pragma once
// Domain types shared by every module: datasets, index sets, trees, objectives.
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace odt {

// Subset of dataset row indices. Set operations are exact; iteration is ascending.
using IndexSet = boost::dynamic_bitset<uint64_t>;

IndexSet full_set(size_t n);
uint64_t hash_bits(const IndexSet& s);
std::string ids_string(const IndexSet& s);           // "{0,2,5}"
std::vector<int> ids_vector(const IndexSet& s);

// Raised on malformed input files; message names the offending line.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Raised when a solver precondition or internal consistency contract fails.
struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Raised when a census would exceed its configured node budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Raised when no tree satisfies the requested constraints.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Dataset {
    std::vector<std::vector<double>> points;  // N rows, D columns
    std::vector<int> labels;                  // contiguous class ids from 0
    std::vector<double> targets;              // raw numeric label column (regression view)
    std::vector<std::string> label_names;     // original label text by class id
    std::vector<std::string> feature_names;
    int num_classes = 0;

    int n() const { return static_cast<int>(points.size()); }
    int d() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
};

// Builds a Dataset in memory; label values are re-encoded in first-appearance order.
Dataset make_dataset(std::vector<std::vector<double>> points, std::vector<std::string> labels);
Dataset make_dataset(std::vector<std::vector<double>> points, std::vector<int> labels);
Dataset make_dataset_regression(std::vector<std::vector<double>> points, std::vector<double> targets);

// CSV: comma separated, one header row, label column defaults to the last column.
// label_col selects another column by header name when non-empty.
Dataset load_dataset(const std::string& path, const std::string& label_col = "");
Dataset parse_csv(const std::string& text, const std::string& label_col, const std::string& origin);

// Binary tree: a leaf owns an index set, a node owns a rule id and two subtrees.
struct DTree;
using DTreePtr = std::shared_ptr<const DTree>;
struct DTree {
    int rule = -1;  // < 0 marks a leaf
    IndexSet leaf;
    DTreePtr left, right;
    bool is_leaf() const { return rule < 0; }
};
DTreePtr make_leaf(IndexSet s);
DTreePtr make_node(DTreePtr l, int rule, DTreePtr r);
int tree_size(const DTree& t);   // internal node count
int tree_depth(const DTree& t);  // leaf-only tree has depth 0

// Objective scheme: leaf cost f plus combiner g with g(a,b) >= max(a,b).
struct Objective {
    std::string label;
    std::function<double(const IndexSet&, const Dataset&)> leaf_cost;
    std::function<double(double, double)> combine;
};
Objective zero_one_objective();
Objective squared_loss_objective();

// Majority class of the rows in `s`; ties break to the smallest class id.
// Empty set is class 0 (its cost under 0-1 loss is 0).
int leaf_label(const IndexSet& s, const Dataset& ds);
double leaf_mean(const IndexSet& s, const Dataset& ds);

// Fold of the objective over the tree: f at leaves, g at nodes.
double evaluate(const DTree& t, const Dataset& ds, const Objective& obj);

// Union of all leaf sets; throws ContractError if leaves overlap.
IndexSet tree_region(const DTree& t);

}  // namespace odt
