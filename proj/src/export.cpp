#include "odt/export.hpp"

#include <fstream>
#include <sstream>

namespace odt::io {

using nlohmann::ordered_json;

namespace {

ordered_json rule_to_json(const rules::Rule& r) {
    ordered_json j;
    j["id"] = r.id;
    if (r.kind == rules::RuleKind::Axis) {
        j["kind"] = "axis";
        j["dim"] = r.axis_dim;
        j["threshold"] = r.threshold;
    } else {
        j["kind"] = "surface";
        j["degree"] = r.degree;
        j["normal"] = r.surf.normal;
    }
    j["defining"] = ids_vector(r.defining);
    return j;
}

ordered_json node_to_json(const DTree& t, const trees::RuleAt& rule_at, const Dataset& ds) {
    ordered_json j;
    if (t.is_leaf()) {
        j["type"] = "leaf";
        j["indices"] = ids_vector(t.leaf);
        j["count"] = static_cast<int>(t.leaf.count());
        int cls = leaf_label(t.leaf, ds);
        j["class_id"] = cls;
        j["class"] = cls < static_cast<int>(ds.label_names.size()) ? ds.label_names[static_cast<size_t>(cls)] : "";
        if (!ds.targets.empty()) j["mean"] = leaf_mean(t.leaf, ds);
        return j;
    }
    j["type"] = "node";
    j["rule"] = rule_to_json(rule_at(t.rule));
    j["pos"] = node_to_json(*t.left, rule_at, ds);
    j["neg"] = node_to_json(*t.right, rule_at, ds);
    return j;
}

std::string rule_label(const rules::Rule& r, const Dataset& ds) {
    if (r.kind == rules::RuleKind::Axis) {
        std::string feat = r.axis_dim < static_cast<int>(ds.feature_names.size())
                               ? ds.feature_names[static_cast<size_t>(r.axis_dim)]
                               : "x" + std::to_string(r.axis_dim);
        std::ostringstream out;
        out << feat << " >= " << r.threshold;
        return out.str();
    }
    return "degree-" + std::to_string(r.degree) + " surface id=" + std::to_string(r.id);
}

}  // namespace

ordered_json tree_to_json(const DTree& t, const trees::RuleAt& rule_at, const Dataset& ds) {
    return node_to_json(t, rule_at, ds);
}

std::string tree_to_dot(const DTree& t, const trees::RuleAt& rule_at, const Dataset& ds) {
    std::ostringstream out;
    out << "digraph odt {\n  node [shape=box];\n";
    int counter = 0;
    std::function<int(const DTree&)> walk = [&](const DTree& n) -> int {
        int id = counter++;
        if (n.is_leaf()) {
            int cls = leaf_label(n.leaf, ds);
            std::string name = cls < static_cast<int>(ds.label_names.size())
                                   ? ds.label_names[static_cast<size_t>(cls)]
                                   : std::to_string(cls);
            out << "  n" << id << " [label=\"" << name << "\\nn=" << n.leaf.count() << "\"];\n";
            return id;
        }
        out << "  n" << id << " [label=\"" << rule_label(rule_at(n.rule), ds) << "\"];\n";
        int l = walk(*n.left);
        int r = walk(*n.right);
        out << "  n" << id << " -> n" << l << " [label=\"+\"];\n";
        out << "  n" << id << " -> n" << r << " [label=\"-\"];\n";
        return id;
    };
    walk(t);
    out << "}\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed for " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

uint64_t file_hash(const std::string& path) {
    std::string bytes = read_text_file(path);
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace odt::io
