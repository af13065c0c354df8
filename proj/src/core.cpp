#include "odt/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace odt {

IndexSet full_set(size_t n) {
    IndexSet s(n);
    s.set();
    return s;
}

uint64_t hash_bits(const IndexSet& s) {
    // FNV-1a over the block representation plus the universe size.
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(s.size());
    std::vector<uint64_t> blocks(s.num_blocks());
    boost::to_block_range(s, blocks.begin());
    for (uint64_t b : blocks) mix(b);
    return h;
}

std::string ids_string(const IndexSet& s) {
    std::string out = "{";
    bool first = true;
    for (auto i = s.find_first(); i != IndexSet::npos; i = s.find_next(i)) {
        if (!first) out += ',';
        out += std::to_string(i);
        first = false;
    }
    out += '}';
    return out;
}

std::vector<int> ids_vector(const IndexSet& s) {
    std::vector<int> v;
    for (auto i = s.find_first(); i != IndexSet::npos; i = s.find_next(i))
        v.push_back(static_cast<int>(i));
    return v;
}

static void check_points(const std::vector<std::vector<double>>& points) {
    if (points.empty()) throw ParseError("no data rows");
    size_t d = points[0].size();
    if (d == 0) throw ParseError("no feature columns");
    for (const auto& row : points)
        if (row.size() != d) throw ParseError("ragged feature rows");
}

Dataset make_dataset(std::vector<std::vector<double>> points, std::vector<std::string> labels) {
    check_points(points);
    if (labels.size() != points.size()) throw ParseError("label count does not match row count");
    Dataset ds;
    ds.points = std::move(points);
    std::map<std::string, int> seen;
    bool all_numeric = true;
    for (const auto& name : labels) {
        auto it = seen.find(name);
        int id;
        if (it == seen.end()) {
            id = static_cast<int>(ds.label_names.size());
            seen.emplace(name, id);
            ds.label_names.push_back(name);
        } else {
            id = it->second;
        }
        ds.labels.push_back(id);
        double num = 0;
        auto [p, ec] = std::from_chars(name.data(), name.data() + name.size(), num);
        if (ec == std::errc() && p == name.data() + name.size())
            ds.targets.push_back(num);
        else
            all_numeric = false;
    }
    if (!all_numeric) ds.targets.clear();  // regression needs a fully numeric label column
    ds.num_classes = static_cast<int>(ds.label_names.size());
    for (int j = 0; j < ds.d(); ++j) ds.feature_names.push_back("x" + std::to_string(j));
    return ds;
}

Dataset make_dataset(std::vector<std::vector<double>> points, std::vector<int> labels) {
    std::vector<std::string> names;
    names.reserve(labels.size());
    for (int v : labels) names.push_back(std::to_string(v));
    return make_dataset(std::move(points), std::move(names));
}

Dataset make_dataset_regression(std::vector<std::vector<double>> points, std::vector<double> targets) {
    check_points(points);
    if (targets.size() != points.size()) throw ParseError("target count does not match row count");
    Dataset ds;
    ds.points = std::move(points);
    ds.targets = targets;
    std::map<double, int> seen;
    for (double v : targets) {
        auto it = seen.find(v);
        int id;
        if (it == seen.end()) {
            id = static_cast<int>(ds.label_names.size());
            seen.emplace(v, id);
            std::ostringstream os;
            os << v;
            ds.label_names.push_back(os.str());
        } else {
            id = it->second;
        }
        ds.labels.push_back(id);
    }
    ds.num_classes = static_cast<int>(ds.label_names.size());
    for (int j = 0; j < ds.d(); ++j) ds.feature_names.push_back("x" + std::to_string(j));
    return ds;
}

static std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    for (auto& f : out) {
        size_t a = f.find_first_not_of(" \t");
        size_t b = f.find_last_not_of(" \t");
        f = (a == std::string::npos) ? "" : f.substr(a, b - a + 1);
    }
    return out;
}

Dataset parse_csv(const std::string& text, const std::string& label_col, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> header;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        header = split_csv_line(line);
        break;
    }
    if (header.empty()) throw ParseError(origin + ": no data rows");
    int label_idx = static_cast<int>(header.size()) - 1;
    if (!label_col.empty()) {
        auto it = std::find(header.begin(), header.end(), label_col);
        if (it == header.end())
            throw ParseError(origin + ": label column '" + label_col + "' not in header");
        label_idx = static_cast<int>(it - header.begin());
    }
    std::vector<std::vector<double>> points;
    std::vector<std::string> labels;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw ParseError(origin + ": parse error line " + std::to_string(lineno) +
                             ": expected " + std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        std::vector<double> row;
        for (size_t j = 0; j < fields.size(); ++j) {
            if (static_cast<int>(j) == label_idx) {
                labels.push_back(fields[j]);
                continue;
            }
            double v = 0;
            const std::string& f = fields[j];
            auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc() || p != f.data() + f.size() || !std::isfinite(v))
                throw ParseError(origin + ": schema error line " + std::to_string(lineno) +
                                 ": non-numeric feature '" + f + "' in column " + header[j]);
            row.push_back(v);
        }
        points.push_back(std::move(row));
    }
    if (points.empty()) throw ParseError(origin + ": no data rows");
    Dataset ds = make_dataset(std::move(points), std::move(labels));
    ds.feature_names.clear();
    for (size_t j = 0; j < header.size(); ++j)
        if (static_cast<int>(j) != label_idx) ds.feature_names.push_back(header[j]);
    return ds;
}

Dataset load_dataset(const std::string& path, const std::string& label_col) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), label_col, path);
}

DTreePtr make_leaf(IndexSet s) {
    auto t = std::make_shared<DTree>();
    t->rule = -1;
    t->leaf = std::move(s);
    return t;
}

DTreePtr make_node(DTreePtr l, int rule, DTreePtr r) {
    if (rule < 0) throw ContractError("node rule id must be non-negative");
    auto t = std::make_shared<DTree>();
    t->rule = rule;
    t->left = std::move(l);
    t->right = std::move(r);
    return t;
}

int tree_size(const DTree& t) {
    if (t.is_leaf()) return 0;
    return 1 + tree_size(*t.left) + tree_size(*t.right);
}

int tree_depth(const DTree& t) {
    if (t.is_leaf()) return 0;
    return 1 + std::max(tree_depth(*t.left), tree_depth(*t.right));
}

int leaf_label(const IndexSet& s, const Dataset& ds) {
    if (s.none()) return 0;
    std::vector<int> count(std::max(ds.num_classes, 1), 0);
    for (auto i = s.find_first(); i != IndexSet::npos; i = s.find_next(i)) ++count[ds.labels[i]];
    int best = 0;
    for (int k = 1; k < static_cast<int>(count.size()); ++k)
        if (count[k] > count[best]) best = k;  // ties keep the smaller id
    return best;
}

double leaf_mean(const IndexSet& s, const Dataset& ds) {
    if (s.none()) return 0.0;
    double sum = 0;
    for (auto i = s.find_first(); i != IndexSet::npos; i = s.find_next(i)) sum += ds.targets[i];
    return sum / static_cast<double>(s.count());
}

Objective zero_one_objective() {
    Objective o;
    o.label = "zeroone";
    o.leaf_cost = [](const IndexSet& s, const Dataset& ds) {
        if (s.none()) return 0.0;
        int lab = leaf_label(s, ds);
        double miss = 0;
        for (auto i = s.find_first(); i != IndexSet::npos; i = s.find_next(i))
            if (ds.labels[i] != lab) miss += 1;
        return miss;
    };
    o.combine = [](double a, double b) { return a + b; };
    return o;
}

Objective squared_loss_objective() {
    Objective o;
    o.label = "l2";
    o.leaf_cost = [](const IndexSet& s, const Dataset& ds) {
        if (s.none()) return 0.0;
        double mean = leaf_mean(s, ds);
        double sse = 0;
        for (auto i = s.find_first(); i != IndexSet::npos; i = s.find_next(i)) {
            double d = ds.targets[i] - mean;
            sse += d * d;
        }
        return sse;
    };
    o.combine = [](double a, double b) { return a + b; };
    return o;
}

double evaluate(const DTree& t, const Dataset& ds, const Objective& obj) {
    if (t.is_leaf()) return obj.leaf_cost(t.leaf, ds);
    return obj.combine(evaluate(*t.left, ds, obj), evaluate(*t.right, ds, obj));
}

static void collect_region(const DTree& t, IndexSet& acc) {
    if (t.is_leaf()) {
        if ((acc & t.leaf).any()) throw ContractError("leaf index sets overlap");
        acc |= t.leaf;
        return;
    }
    collect_region(*t.left, acc);
    collect_region(*t.right, acc);
}

IndexSet tree_region(const DTree& t) {
    IndexSet acc;
    if (t.is_leaf()) return t.leaf;
    // Find any leaf to size the accumulator.
    const DTree* p = &t;
    while (!p->is_leaf()) p = p->left.get();
    acc = IndexSet(p->leaf.size());
    collect_region(t, acc);
    return acc;
}

}  // namespace odt
