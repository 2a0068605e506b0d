#include "qdouble/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <regex>
#include <sstream>

#include "qdouble/error.hpp"

namespace qdouble::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<int> int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) bad("not an integer: " + item);
            out.push_back(v);
        } catch (const std::logic_error&) {
            bad("not an integer: " + item);
        }
    }
    return out;
}

std::string number(double x) {
    if (x == 0.0) x = 0.0;   // drop the sign of zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string complex_text(cd v) {
    if (std::abs(v.imag()) < 1e-12) return number(v.real());
    std::string re = std::abs(v.real()) < 1e-12 ? "" : number(v.real());
    std::string im = number(v.imag());
    if (!re.empty() && v.imag() > 0) im = "+" + im;
    return re + im + "i";
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

int element_by_label_or_index(const GroupTable& g, const std::string& s) {
    for (int x = 0; x < g.order(); ++x)
        if (g.element_label(x) == s) return x;
    const auto v = int_list(s);
    if (v.size() != 1 || v[0] < 0 || v[0] >= g.order()) bad("no element " + s + " in " + g.label());
    return v[0];
}

GroupPtr named_group(const std::string& name) {
    static const std::regex re("([ZCSA])([0-9]+)");
    std::smatch m;
    if (!std::regex_match(name, m, re)) bad("unknown builtin group '" + name + "'");
    const int n = std::stoi(m[2].str());
    const char kind = m[1].str()[0];
    if (kind == 'Z' || kind == 'C') {
        if (n < 1 || n > 512) bad("cyclic order out of range: " + name);
        return cyclic(n);
    }
    if (n < 1 || n > 6) bad("permutation degree must be 1..6: " + name);
    if (kind == 'S') return symmetric(n);
    if (n < 3) return cyclic(1);
    return alternating(n);
}

std::vector<std::string> split_factors(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == 'x' || s[i] == '*') {
            out.push_back(cur);
            cur.clear();
        } else if (s.compare(i, 2, "\xC3\x97") == 0) {   // U+00D7
            out.push_back(cur);
            cur.clear();
            ++i;
        } else {
            cur += s[i];
        }
    }
    out.push_back(cur);
    return out;
}

GroupPtr factor_group(std::string s) {
    s = trim(s);
    if (s.rfind("builtin:", 0) == 0) s = s.substr(8);
    if (s.rfind("affine:", 0) == 0) return parse_group(s);
    return named_group(s);
}

}  // namespace

json complex_json(cd v) { return json::array({v.real(), v.imag()}); }

cd complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        bad("complex value must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::optional<NearFieldSpec> parse_near_field(const std::string& uri_in) {
    const std::string uri = trim(uri_in);
    if (uri == "affine:dickson9") return near_field(9, NearFieldKind::Dickson9);
    static const std::regex re("affine:q=([0-9]+)");
    std::smatch m;
    if (std::regex_match(uri, m, re)) return near_field(std::stoi(m[1].str()), NearFieldKind::Field);
    if (uri.rfind("affine:", 0) == 0) bad("affine groups are affine:q=N or affine:dickson9, got " + uri);
    return std::nullopt;
}

GroupPtr parse_group(const std::string& uri_in) {
    const std::string uri = trim(uri_in);
    if (uri.empty()) bad("empty group specification");
    if (auto h = parse_near_field(uri)) return affine_group(*h);
    if (uri.rfind("builtin:", 0) == 0) return named_group(uri.substr(8));
    if (uri.rfind("product:", 0) == 0) {
        const auto parts = split_factors(uri.substr(8));
        if (parts.size() < 2) bad("product needs at least two factors: " + uri);
        GroupPtr g = factor_group(parts[0]);
        for (size_t i = 1; i < parts.size(); ++i) g = direct_product(g, factor_group(parts[i]));
        return g;
    }
    return group_from_json(read_json_file(uri.rfind("file:", 0) == 0 ? uri.substr(5) : uri));
}

std::vector<std::string> builtin_catalog(int max_order) {
    static const std::vector<std::string> all = {
        "builtin:Z1",        "builtin:Z2",         "builtin:Z3",         "builtin:Z4",        "builtin:Z5",
        "builtin:Z6",        "builtin:Z7",         "builtin:Z8",         "builtin:Z9",        "builtin:Z10",
        "builtin:Z12",       "builtin:S3",         "builtin:S4",         "builtin:A4",        "builtin:A5",
        "builtin:S5",        "builtin:A6",         "product:Z2xZ2",      "product:Z2xZ4",     "product:Z3xZ3",
        "product:Z2xZ2xZ2",  "product:Z2xS3",      "product:Z3xS3",      "product:S3xS3",     "product:Z2xA4",
        "affine:q=4",        "affine:q=5",         "affine:q=7",         "affine:q=8",        "affine:q=9",
        "affine:dickson9",
    };
    std::vector<std::string> out;
    for (const auto& u : all)
        if (parse_group(u)->order() <= max_order) out.push_back(u);
    return out;
}

json group_json(const GroupTable& g) {
    json j;
    j["order"] = g.order();
    json rows = json::array();
    for (int a = 0; a < g.order(); ++a) {
        json row = json::array();
        for (int b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
        rows.push_back(row);
    }
    j["mul"] = rows;
    j["label"] = g.label();
    return j;
}

GroupPtr group_from_json(const json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("mul")) bad("group file needs \"order\" and \"mul\"");
    try {
        const int n = j.at("order").get<int>();
        auto table = j.at("mul").get<std::vector<std::vector<int>>>();
        if (static_cast<int>(table.size()) != n) bad("\"mul\" has " + std::to_string(table.size()) + " rows, order is " +
                                                     std::to_string(n));
        const std::string label = j.contains("label") ? j.at("label").get<std::string>() : "";
        return from_cayley(table, label);
    } catch (const json::exception& e) {
        bad(std::string("malformed group file: ") + e.what());
    }
}

json subgroup_json(const Subgroup& k) {
    json j;
    j["members"] = k.members;
    return j;
}

Subgroup subgroup_from_json(const GroupPtr& g, const json& j) {
    if (!j.is_object() || !j.contains("members")) bad("subgroup file needs \"members\"");
    try {
        auto members = j.at("members").get<std::vector<int>>();
        for (int m : members)
            if (m < 0 || m >= g->order()) bad("subgroup member " + std::to_string(m) + " out of range");
        return make_subgroup(g, std::move(members));
    } catch (const json::exception& e) {
        bad(std::string("malformed subgroup file: ") + e.what());
    }
}

Subgroup parse_subgroup(const GroupPtr& g, const std::string& spec_in) {
    const std::string spec = trim(spec_in);
    if (spec == "whole" || spec == "G") return whole_group(g);
    if (spec == "trivial" || spec == "e") return trivial_subgroup(g);
    auto check = [&](const std::vector<int>& v) {
        for (int x : v)
            if (x < 0 || x >= g->order()) bad("element index " + std::to_string(x) + " out of range");
        return v;
    };
    if (spec.rfind("gen:", 0) == 0) return generated_subgroup(g, check(int_list(spec.substr(4))));
    if (spec.rfind("members:", 0) == 0) return make_subgroup(g, check(int_list(spec.substr(8))));
    if (spec.rfind("centralizer:", 0) == 0)
        return centralizer_subgroup(g, element_by_label_or_index(*g, spec.substr(12)));
    return subgroup_from_json(g, read_json_file(spec));
}

json cocycle_json(const Subgroup& k, const TwoCocycle& phi, int omega_order) {
    const auto ex = cocycle_exponents(phi, omega_order);
    if (ex.empty())
        throw Error(ErrorKind::InvalidInput,
                    "cocycle values are not powers of exp(2 pi i/" + std::to_string(omega_order) + ")");
    json j;
    j["subgroup"] = k.members;
    j["omega_order"] = omega_order;
    j["exponents"] = ex;
    return j;
}

CocycleFile cocycle_from_json(const GroupPtr& g, const json& j) {
    if (!j.is_object() || !j.contains("subgroup") || !j.contains("omega_order") || !j.contains("exponents"))
        bad("cocycle file needs \"subgroup\", \"omega_order\" and \"exponents\"");
    try {
        CocycleFile out;
        out.subgroup = subgroup_from_json(g, json{{"members", j.at("subgroup")}});
        out.omega_order = j.at("omega_order").get<int>();
        out.phi = cocycle_from_exponents(out.subgroup.as_group, out.omega_order,
                                         j.at("exponents").get<std::vector<std::vector<int>>>());
        return out;
    } catch (const json::exception& e) {
        bad(std::string("malformed cocycle file: ") + e.what());
    }
}

json character_table_json(const CharacterTable& t, bool snap) {
    const GroupTable& G = *t.group;
    const auto& cj = G.conjugacy();
    json j;
    j["group"] = G.label();
    j["classes"] = cj.reps;
    json labels = json::array(), sizes = json::array();
    for (int c = 0; c < cj.class_count(); ++c) {
        labels.push_back(G.element_label(cj.reps[c]));
        sizes.push_back(cj.classes[c].size());
    }
    j["class_labels"] = labels;
    j["class_sizes"] = sizes;
    json rows = json::array(), exact = json::array();
    for (int r = 0; r < t.size(); ++r) {
        json row = json::array(), erow = json::array();
        for (int c = 0; c < cj.class_count(); ++c) {
            const CyclotomicValue v = snap_value(t, r, c);
            row.push_back(complex_json(snap && v.snapped ? v.value : t.rows[r].values[c]));
            erow.push_back(v.snapped ? json(cyclotomic_string(v)) : json(nullptr));
        }
        rows.push_back(row);
        exact.push_back(erow);
    }
    j["rows"] = rows;
    if (snap) j["exact"] = exact;
    return j;
}

std::string character_table_csv(const CharacterTable& t, bool snap) {
    const GroupTable& G = *t.group;
    const auto& cj = G.conjugacy();
    std::string out = "row";
    for (int c = 0; c < cj.class_count(); ++c) out += "," + csv_cell(G.element_label(cj.reps[c]));
    out += "\n";
    for (int r = 0; r < t.size(); ++r) {
        out += std::to_string(r);
        for (int c = 0; c < cj.class_count(); ++c) {
            const CyclotomicValue v = snap_value(t, r, c);
            out += "," + csv_cell(snap && v.snapped ? cyclotomic_string(v) : complex_text(t.rows[r].values[c]));
        }
        out += "\n";
    }
    return out;
}

json dg_function_json(const DGClassFunction& f) {
    const int n = f.group->order();
    json j;
    j["group"] = f.group->label();
    j["order"] = n;
    json rows = json::array();
    for (int g = 0; g < n; ++g) {
        json row = json::array();
        for (int h = 0; h < n; ++h) row.push_back(complex_json(f(g, h)));
        rows.push_back(row);
    }
    j["values"] = rows;
    return j;
}

DGClassFunction dg_function_from_json(const GroupPtr& g, const json& j) {
    const int n = g->order();
    if (!j.is_object() || !j.contains("values")) bad("class function needs \"values\"");
    const json& v = j.at("values");
    if (!v.is_array() || static_cast<int>(v.size()) != n) bad("class function has the wrong number of rows");
    DGClassFunction f = DGClassFunction::zero(g);
    for (int a = 0; a < n; ++a) {
        if (!v[a].is_array() || static_cast<int>(v[a].size()) != n) bad("class function row has the wrong length");
        for (int b = 0; b < n; ++b) f.at(a, b) = complex_from_json(v[a][b]);
    }
    return f;
}

json anyons_json(const QuantumDouble& qd) {
    const Eigen::VectorXcd t = t_vector(qd);
    json arr = json::array();
    for (int i = 0; i < qd.size(); ++i) {
        const Anyon& a = qd.anyon(i);
        json row;
        row["index"] = i;
        row["label"] = qd.label(i);
        row["class_rep"] = a.class_rep;
        row["class_label"] = qd.group()->element_label(a.class_rep);
        row["irrep"] = a.irrep;
        row["irrep_dim"] = a.irrep_dim;
        row["dim"] = a.dim;
        row["kind"] = to_string(qd.kind(i));
        row["dual"] = qd.dual(i);
        row["twist"] = complex_json(t[i]);
        arr.push_back(row);
    }
    json j;
    j["group"] = qd.group()->label();
    j["count"] = qd.size();
    j["anyons"] = arr;
    return j;
}

std::string anyons_csv(const QuantumDouble& qd) {
    const Eigen::VectorXcd t = t_vector(qd);
    std::string out = "index,label,class,irrep,dim,kind,twist\n";
    for (int i = 0; i < qd.size(); ++i) {
        const Anyon& a = qd.anyon(i);
        out += std::to_string(i) + "," + csv_cell(qd.label(i)) + "," +
               csv_cell(qd.group()->element_label(a.class_rep)) + "," + std::to_string(a.irrep) + "," +
               std::to_string(a.dim) + "," + to_string(qd.kind(i)) + "," + csv_cell(complex_text(t[i])) + "\n";
    }
    return out;
}

std::optional<std::string> snap_exact(cd v, int denominator, int max_root, double tol) {
    if (std::abs(v.imag()) < tol && denominator > 0) {
        const double scaled = v.real() * denominator;
        const long p = std::lround(scaled);
        if (std::abs(scaled - static_cast<double>(p)) < tol * denominator) {
            if (p == 0) return "0";
            const long g = std::gcd(std::labs(p), static_cast<long>(denominator));
            const long num = p / g, den = denominator / g;
            return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
        }
    }
    if (max_root > 0 && std::abs(std::abs(v) - 1.0) < tol) {
        const double turns = std::arg(v) / (2.0 * M_PI);
        for (int n = 1; n <= max_root; ++n) {
            if (max_root % n != 0) continue;
            const long j = std::lround(turns * n);
            if (std::abs(turns * n - static_cast<double>(j)) < tol) {
                const long jj = ((j % n) + n) % n;
                if (n == 1 || jj == 0) return "1";
                if (n == 2) return "-1";
                return "E(" + std::to_string(n) + ")" + (jj == 1 ? "" : "^" + std::to_string(jj));
            }
        }
    }
    return std::nullopt;
}

namespace {

int exponent(const GroupTable& g) {
    int e = 1;
    for (int x = 0; x < g.order(); ++x) e = std::lcm(e, g.element_order(x));
    return e;
}

json labels_json(const QuantumDouble& qd) {
    json l = json::array();
    for (int i = 0; i < qd.size(); ++i) l.push_back(qd.label(i));
    return l;
}

std::string labels_csv(const QuantumDouble& qd) {
    std::string out;
    for (int i = 0; i < qd.size(); ++i) out += "," + csv_cell(qd.label(i));
    return out;
}

std::string cell(cd v, bool snap, int den, int root) {
    if (snap)
        if (auto s = snap_exact(v, den, root)) return *s;
    return complex_text(v);
}

}  // namespace

json matrix_json(const QuantumDouble& qd, const Eigen::MatrixXcd& m, bool snap) {
    const int n = qd.group()->order();
    json j;
    j["group"] = qd.group()->label();
    j["labels"] = labels_json(qd);
    json rows = json::array(), exact = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array(), erow = json::array();
        for (int c = 0; c < m.cols(); ++c) {
            row.push_back(complex_json(m(r, c)));
            auto s = snap_exact(m(r, c), n, 0);
            erow.push_back(s ? json(*s) : json(nullptr));
        }
        rows.push_back(row);
        exact.push_back(erow);
    }
    j["matrix"] = rows;
    if (snap) j["exact"] = exact;
    return j;
}

std::string matrix_csv(const QuantumDouble& qd, const Eigen::MatrixXcd& m, bool snap) {
    const int n = qd.group()->order();
    std::string out = "anyon" + labels_csv(qd) + "\n";
    for (int r = 0; r < m.rows(); ++r) {
        out += csv_cell(qd.label(r));
        for (int c = 0; c < m.cols(); ++c) out += "," + csv_cell(cell(m(r, c), snap, n, 0));
        out += "\n";
    }
    return out;
}

json t_json(const QuantumDouble& qd, const Eigen::VectorXcd& t, bool snap) {
    const int root = exponent(*qd.group());
    json j;
    j["group"] = qd.group()->label();
    j["labels"] = labels_json(qd);
    json diag = json::array(), exact = json::array();
    for (int i = 0; i < t.size(); ++i) {
        diag.push_back(complex_json(t[i]));
        auto s = snap_exact(t[i], 0, root);
        exact.push_back(s ? json(*s) : json(nullptr));
    }
    j["diagonal"] = diag;
    if (snap) j["exact"] = exact;
    return j;
}

std::string t_csv(const QuantumDouble& qd, const Eigen::VectorXcd& t, bool snap) {
    const int root = exponent(*qd.group());
    std::string out = "anyon,twist\n";
    for (int i = 0; i < t.size(); ++i) out += csv_cell(qd.label(i)) + "," + csv_cell(cell(t[i], snap, 0, root)) + "\n";
    return out;
}

json fusion_json(const QuantumDouble& qd, const FusionTensor& n) {
    json j;
    j["group"] = qd.group()->label();
    j["labels"] = labels_json(qd);
    j["max_residual"] = n.max_residual;
    json entries = json::array();
    for (int x = 0; x < n.size; ++x)
        for (int y = 0; y < n.size; ++y)
            for (int z = 0; z < n.size; ++z)
                if (n(x, y, z) != 0) entries.push_back(json::array({x, y, z, n(x, y, z)}));
    j["entries"] = entries;
    return j;
}

std::string fusion_csv(const QuantumDouble& qd, const FusionTensor& n) {
    std::string out = "x,y,z,n\n";
    for (int x = 0; x < n.size; ++x)
        for (int y = 0; y < n.size; ++y)
            for (int z = 0; z < n.size; ++z)
                if (n(x, y, z) != 0)
                    out += csv_cell(qd.label(x)) + "," + csv_cell(qd.label(y)) + "," + csv_cell(qd.label(z)) + "," +
                           std::to_string(n(x, y, z)) + "\n";
    return out;
}

json condensation_json(const QuantumDouble& qd, const CondensationReport& r) {
    json j;
    j["group"] = qd.group()->label();
    json mult = json::object();
    for (int i = 0; i < qd.size(); ++i) mult[qd.label(i)] = r.multiplicities.at(i);
    j["multiplicities"] = mult;
    json cond = json::array();
    for (int i : r.condensed) cond.push_back(qd.label(i));
    j["condensed"] = cond;
    j["verdict"] = {{"dimension_identity", r.dimension_identity}, {"vacuum_once", r.vacuum_once}, {"total_dim", r.total_dim}};
    j["character"] = dg_function_json(r.character);
    return j;
}

CondensationReport condensation_from_json(const QuantumDouble& qd, const json& j) {
    try {
        CondensationReport r;
        r.character = dg_function_from_json(qd.group(), j.at("character"));
        const json& mult = j.at("multiplicities");
        r.multiplicities.assign(qd.size(), 0);
        for (int i = 0; i < qd.size(); ++i) r.multiplicities[i] = mult.at(qd.label(i)).get<int>();
        for (const auto& lab : j.at("condensed")) {
            int found = -1;
            for (int i = 0; i < qd.size(); ++i)
                if (qd.label(i) == lab.get<std::string>()) found = i;
            if (found < 0) bad("unknown anyon label " + lab.dump());
            r.condensed.push_back(found);
        }
        const json& v = j.at("verdict");
        r.dimension_identity = v.at("dimension_identity").get<bool>();
        r.vacuum_once = v.at("vacuum_once").get<bool>();
        r.total_dim = v.at("total_dim").get<long>();
        return r;
    } catch (const json::exception& e) {
        bad(std::string("malformed condensation report: ") + e.what());
    }
}

json tunneling_json(const Fold& f, const EquivalenceVerdict& v) {
    json j;
    j["left"] = labels_json(*f.left);
    j["right"] = labels_json(*f.right);
    json rows = json::array();
    for (int x = 0; x < v.matrix.rows; ++x) {
        json row = json::array();
        for (int y = 0; y < v.matrix.cols; ++y) row.push_back(v.matrix(x, y));
        rows.push_back(row);
    }
    j["matrix"] = rows;
    j["conditions"] = {{"left_projection_onto", v.left_projection_onto},
                       {"right_projection_onto", v.right_projection_onto},
                       {"left_injective", v.left_injective},
                       {"right_injective", v.right_injective}};
    json map = json::array();
    for (size_t x = 0; x < v.map.size(); ++x)
        map.push_back(json::array({f.left->label(static_cast<int>(x)), f.right->label(v.map[x])}));
    j["map"] = map;
    j["verdict"] = {{"conditions_hold", v.conditions_hold},
                    {"is_permutation", v.is_permutation},
                    {"vacuum_once", v.matrix.vacuum_once},
                    {"dimension_identity", v.matrix.dimension_identity},
                    {"equivalence", v.equivalence()}};
    return j;
}

json transpositions_json(const QuantumDouble& qd, const std::vector<TranspositionHit>& hits) {
    json j;
    j["group"] = qd.group()->label();
    j["anyons"] = qd.size();
    json arr = json::array();
    for (const auto& h : hits) {
        json p;
        p["x"] = qd.label(h.x);
        p["y"] = qd.label(h.y);
        p["x_index"] = h.x;
        p["y_index"] = h.y;
        p["kind_x"] = to_string(h.kind_x);
        p["kind_y"] = to_string(h.kind_y);
        p["s_residual"] = h.s_residual;
        p["t_residual"] = h.t_residual;
        arr.push_back(p);
    }
    j["pairs"] = arr;
    return j;
}

json invariant_json(const InvariantVerdict& v) {
    return {{"invariant", v.invariant},
            {"s_residual", v.s_residual},
            {"t_residual", v.t_residual},
            {"nonnegative_integer", v.nonnegative_integer},
            {"vacuum_unit", v.vacuum_unit}};
}

json cf_json(const CFSymmetryReport& cf, const NearFieldInvariantReport& inv) {
    json j;
    j["group_order"] = inv.group_order;
    j["chargeon"] = cf.pair.chargeon;
    j["fluxion"] = cf.pair.fluxion;
    j["route"] = cf.field_route ? "tunneling" : "invariant";
    j["tunneling"] = {{"expected", cf.expected},
                      {"observed", cf.observed},
                      {"conditions_hold", cf.conditions_hold},
                      {"character_identity", cf.appendix_identity},
                      {"character_residual", cf.appendix_residual},
                      {"passed", cf.passed},
                      {"detail", cf.detail}};
    json steps = json::array();
    for (const auto& s : inv.steps) steps.push_back({{"name", s.name}, {"passed", s.passed}, {"detail", s.detail}});
    j["steps"] = steps;
    j["transposition"] = invariant_json(inv.transposition);
    j["with_conjugation"] = invariant_json(inv.with_conjugation);
    j["passed"] = cf.passed && inv.passed;
    return j;
}

json relation_suite_json(const RelationSuiteReport& r) {
    json j;
    j["patch"] = r.patch;
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"residual", c.residual},
                          {"evaluations", c.evaluations},
                          {"states", c.states},
                          {"passed", c.passed}});
    j["checks"] = checks;
    j["worst"] = r.worst();
    j["passed"] = r.passed();
    return j;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        bad("'" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace qdouble::io
