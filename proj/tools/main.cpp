#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#ifdef __GLIBC__
#include <malloc.h>
#endif

#include "CLI11.hpp"
#include "qdouble/characters.hpp"
#include "qdouble/cocycles.hpp"
#include "qdouble/condensation.hpp"
#include "qdouble/error.hpp"
#include "qdouble/io.hpp"
#include "qdouble/lattice.hpp"
#include "qdouble/modular.hpp"
#include "qdouble/quantum_double.hpp"

using namespace qdouble;
using io::json;

namespace {

struct Options {
    std::string group;
    std::string group2;
    std::string subgroup;
    std::string cocycle;
    std::string wall_u;
    std::string format = "json";
    double tol = 1e-8;
    std::uint64_t seed = 0;
    bool snap = false;

    // lattice
    std::string patch = "minimal";
    int states = 16;
    bool every_state = false;

    // modinv check
    std::string perm;
    std::string swap;
    bool with_conjugation = false;

    std::string cf_target;
};

// Assertion failures (a verification that ran and said no) exit with 1.
struct AssertionFailed {};

bool input_error(ErrorKind k) {
    switch (k) {
        case ErrorKind::NumericalDegeneracy:
        case ErrorKind::NonIntegerMultiplicity:
        case ErrorKind::ConditionMismatch:
        case ErrorKind::ZeroProjection:
            return false;
        default:
            return true;
    }
}

void emit(const Options& o, const json& j, const std::string& csv) {
    if (o.format == "csv") {
        if (csv.empty()) throw Error(ErrorKind::InvalidInput, "this subcommand has no CSV form");
        std::cout << csv;
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

GroupPtr need_group(const Options& o) {
    if (o.group.empty()) throw Error(ErrorKind::InvalidInput, "--group is required");
    return io::parse_group(o.group);
}

int exponent_of(const GroupTable& g) {
    int e = 1;
    for (int x = 0; x < g.order(); ++x) e = std::lcm(e, g.element_order(x));
    return e;
}

// subgroup + cocycle from --subgroup / --cocycle; defaults to K = G with phi = 1
std::pair<Subgroup, TwoCocycle> boundary_of(const GroupPtr& g, const Options& o, bool default_whole) {
    if (!o.cocycle.empty()) {
        io::CocycleFile f = io::cocycle_from_json(g, io::read_json_file(o.cocycle));
        if (!o.subgroup.empty() && io::parse_subgroup(g, o.subgroup).members != f.subgroup.members)
            throw Error(ErrorKind::SubgroupMismatch, "--subgroup differs from the subgroup in the cocycle file");
        return {f.subgroup, f.phi};
    }
    Subgroup k = o.subgroup.empty() ? (default_whole ? whole_group(g) : trivial_subgroup(g))
                                    : io::parse_subgroup(g, o.subgroup);
    TwoCocycle phi = trivial_cocycle(k.as_group);
    return {k, phi};
}

int anyon_by_name(const QuantumDouble& qd, const std::string& s) {
    for (int i = 0; i < qd.size(); ++i)
        if (qd.label(i) == s) return i;
    try {
        size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used == s.size() && v >= 0 && v < qd.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw Error(ErrorKind::InvalidInput, "no anyon '" + s + "'");
}

// separators inside parentheses belong to cycle notation
std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        depth += c == '(' ? 1 : (c == ')' ? -1 : 0);
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

void group_info(const Options& o) {
    const GroupPtr g = need_group(o);
    const auto& cj = g->conjugacy();
    json j;
    j["label"] = g->label();
    j["order"] = g->order();
    j["abelian"] = g->is_abelian();
    j["exponent"] = exponent_of(*g);
    json classes = json::array();
    std::string csv = "class,rep,label,size,centralizer_order,element_order\n";
    for (int c = 0; c < cj.class_count(); ++c) {
        const int r = cj.reps[c];
        classes.push_back({{"rep", r},
                           {"label", g->element_label(r)},
                           {"size", cj.classes[c].size()},
                           {"centralizer_order", cj.centralizers[c].size()},
                           {"element_order", g->element_order(r)}});
        csv += std::to_string(c) + "," + std::to_string(r) + ",\"" + g->element_label(r) + "\"," +
               std::to_string(cj.classes[c].size()) + "," + std::to_string(cj.centralizers[c].size()) + "," +
               std::to_string(g->element_order(r)) + "\n";
    }
    j["classes"] = classes;
    emit(o, j, csv);
}

void chartable(const Options& o) {
    const CharacterTable t = character_table(need_group(o), o.seed);
    emit(o, io::character_table_json(t, o.snap), io::character_table_csv(t, o.snap));
}

void anyons(const Options& o) {
    const QuantumDouble qd(need_group(o));
    emit(o, io::anyons_json(qd), io::anyons_csv(qd));
}

void smatrix(const Options& o) {
    const QuantumDouble qd(need_group(o));
    const Eigen::MatrixXcd s = s_matrix(qd);
    emit(o, io::matrix_json(qd, s, o.snap), io::matrix_csv(qd, s, o.snap));
}

void tmatrix(const Options& o) {
    const QuantumDouble qd(need_group(o));
    const Eigen::VectorXcd t = t_vector(qd);
    emit(o, io::t_json(qd, t, o.snap), io::t_csv(qd, t, o.snap));
}

void fusion(const Options& o) {
    const QuantumDouble qd(need_group(o));
    const FusionTensor n = fusion_verlinde(qd, s_matrix(qd));
    emit(o, io::fusion_json(qd, n), io::fusion_csv(qd, n));
}

void condense_cmd(const Options& o) {
    const GroupPtr g = need_group(o);
    const QuantumDouble qd(g);
    const auto [k, phi] = boundary_of(g, o, true);
    const CondensationReport r = condense(qd, k, phi);
    std::string csv = "anyon,multiplicity\n";
    for (int i = 0; i < qd.size(); ++i) csv += "\"" + qd.label(i) + "\"," + std::to_string(r.multiplicities[i]) + "\n";
    emit(o, io::condensation_json(qd, r), csv);
}

void tunnel_cmd(const Options& o) {
    const GroupPtr g = need_group(o);
    const GroupPtr g2 = o.group2.empty() ? g : io::parse_group(o.group2);
    const Fold f = fold(g, g2);
    WallSpec wall;
    if (o.wall_u.empty() || o.wall_u == "diagonal") {
        if (!g->same_table(*g2)) throw Error(ErrorKind::InvalidInput, "the diagonal wall needs identical groups");
        wall = diagonal_wall(g);
    } else if (o.wall_u == "cf") {
        const auto h = io::parse_near_field(o.group);
        if (!h || !g->same_table(*g2))
            throw Error(ErrorKind::InvalidInput, "--wall-u cf needs an affine: group on both sides");
        wall = wall_cocycle(*h);
    } else {
        const io::json uj = io::read_json_file(o.wall_u);
        if (!uj.contains("members")) throw Error(ErrorKind::InvalidInput, "wall file needs \"members\"");
        auto members = uj.at("members").get<std::vector<int>>();
        const GroupPtr prod = f.product->group();
        if (!o.cocycle.empty()) {
            io::CocycleFile c = io::cocycle_from_json(prod, io::read_json_file(o.cocycle));
            wall = make_wall(g, g2, prod, members, &c.phi);
        } else {
            wall = make_wall(g, g2, prod, members);
        }
    }
    const EquivalenceVerdict v = equivalence_check(f, wall);
    std::string csv = "anyon";
    for (int y = 0; y < f.right->size(); ++y) csv += ",\"" + f.right->label(y) + "\"";
    csv += "\n";
    for (int x = 0; x < f.left->size(); ++x) {
        csv += "\"" + f.left->label(x) + "\"";
        for (int y = 0; y < f.right->size(); ++y) csv += "," + std::to_string(v.matrix(x, y));
        csv += "\n";
    }
    emit(o, io::tunneling_json(f, v), csv);
}

void modinv_search(const Options& o) {
    const QuantumDouble qd(need_group(o));
    const auto hits = search_transposition_invariants(qd, modular_data(qd));
    std::string csv = "x,y,kind_x,kind_y,s_residual,t_residual\n";
    for (const auto& h : hits)
        csv += "\"" + qd.label(h.x) + "\",\"" + qd.label(h.y) + "\"," + to_string(h.kind_x) + "," + to_string(h.kind_y) +
               "," + std::to_string(h.s_residual) + "," + std::to_string(h.t_residual) + "\n";
    emit(o, io::transpositions_json(qd, hits), csv);
}

void modinv_check(const Options& o) {
    const QuantumDouble qd(need_group(o));
    const int n = qd.size();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    if (!o.perm.empty()) {
        const auto parts = split(o.perm, ',');
        if (static_cast<int>(parts.size()) != n)
            throw Error(ErrorKind::InvalidInput, "--perm needs " + std::to_string(n) + " entries");
        for (int i = 0; i < n; ++i) perm[i] = anyon_by_name(qd, parts[i]);
        std::vector<int> seen(n, 0);
        for (int p : perm)
            if (seen[p]++) throw Error(ErrorKind::InvalidInput, "--perm is not a permutation");
    } else if (!o.swap.empty()) {
        const auto parts = split(o.swap, ',');
        if (parts.size() != 2) throw Error(ErrorKind::InvalidInput, "--swap takes two anyons");
        perm = transposition(n, anyon_by_name(qd, parts[0]), anyon_by_name(qd, parts[1]));
    }
    Eigen::MatrixXd m = permutation_matrix(perm);
    if (o.with_conjugation) m = m * charge_conjugation_matrix(qd);
    const InvariantVerdict v = is_modular_invariant(m, modular_data(qd), o.tol);
    json j = io::invariant_json(v);
    j["permutation"] = perm;
    j["with_conjugation"] = o.with_conjugation;
    emit(o, j, "invariant,s_residual,t_residual\n" + std::string(v.invariant ? "true" : "false") + "," +
                   std::to_string(v.s_residual) + "," + std::to_string(v.t_residual) + "\n");
    if (!v.invariant) throw AssertionFailed{};
}

void verify_cf(const Options& o) {
    NearFieldSpec h;
    if (o.cf_target == "dickson9") {
        h = near_field(9, NearFieldKind::Dickson9);
    } else {
        int q = 0;
        try {
            size_t used = 0;
            q = std::stoi(o.cf_target, &used);
            if (used != o.cf_target.size()) q = 0;
        } catch (const std::logic_error&) {
        }
        if (q < 2) throw Error(ErrorKind::InvalidInput, "verify cf takes a prime power q or dickson9");
        h = near_field(q, NearFieldKind::Field);
    }
    const CFSymmetryReport cf = verify_cf_symmetry(h);
    const NearFieldInvariantReport inv = verify_near_field_invariant(h);
    const json j = io::cf_json(cf, inv);
    emit(o, j, "");
    if (!j["passed"].get<bool>()) throw AssertionFailed{};
}

PatchPtr lattice_patch(const GroupPtr& g, const Options& o, bool& bulk_path) {
    bulk_path = false;
    const bool wall = !o.subgroup.empty() || !o.cocycle.empty();
    std::optional<BoundarySpec> b;
    if (wall) {
        auto [k, phi] = boundary_of(g, o, true);
        b = BoundarySpec{k, phi};
    }
    if (o.patch == "minimal") {
        if (!b) throw Error(ErrorKind::InvalidInput, "the minimal patch needs --subgroup or --cocycle");
        return minimal_boundary_patch(g, *b);
    }
    if (o.patch == "path") {
        if (b) throw Error(ErrorKind::InvalidInput, "the path patch has no boundary");
        bulk_path = true;
        return path_independence_patch(g);
    }
    const auto dims = split(o.patch, 'x');
    if (dims.size() == 2) {
        try {
            return build_patch(g, std::stoi(dims[0]), std::stoi(dims[1]), b);
        } catch (const std::logic_error&) {
        }
    }
    throw Error(ErrorKind::InvalidInput, "--patch is minimal, path or WxH");
}

void lattice_verify(const Options& o) {
    const GroupPtr g = need_group(o);
    bool path = false;
    const PatchPtr p = lattice_patch(g, o, path);
    RelationSuiteOptions opt;
    opt.states = o.states;
    opt.seed = o.seed;
    opt.tol = o.tol;
    opt.every_state = o.every_state;
    json suites = json::array();
    bool ok = true;
    if (path) {
        const auto [a, b] = path_independence_ribbons();
        for (const RibbonSpec& r : {a, b}) {
            const RelationSuiteReport rep = run_relation_suite(p, r, opt);
            ok = ok && rep.passed();
            suites.push_back(io::relation_suite_json(rep));
        }
        const RelationCheck c = check_path_independence(p, a, b, opt);
        ok = ok && c.passed;
        suites.push_back({{"patch", p->label()},
                          {"checks", json::array({{{"name", c.name},
                                                   {"residual", c.residual},
                                                   {"evaluations", c.evaluations},
                                                   {"states", c.states},
                                                   {"passed", c.passed}}})},
                          {"worst", c.residual},
                          {"passed", c.passed}});
    } else {
        const RelationSuiteReport rep = run_relation_suite(p, default_ribbon(*p), opt);
        ok = rep.passed();
        suites.push_back(io::relation_suite_json(rep));
    }
    json j;
    j["group"] = g->label();
    j["states"] = o.states;
    j["seed"] = o.seed;
    j["tolerance"] = o.tol;
    j["suites"] = suites;
    j["passed"] = ok;
    std::string csv = "patch,check,residual,states,passed\n";
    for (const auto& s : suites)
        for (const auto& c : s["checks"])
            csv += "\"" + s["patch"].get<std::string>() + "\",\"" + c["name"].get<std::string>() + "\"," +
                   io::json(c["residual"]).dump() + "," + std::to_string(c["states"].get<int>()) + "," +
                   (c["passed"].get<bool>() ? "true" : "false") + "\n";
    emit(o, j, csv);
    if (!ok) throw AssertionFailed{};
}

void lattice_character_cmd(const Options& o) {
    const GroupPtr g = need_group(o);
    if (o.subgroup.empty() && o.cocycle.empty())
        throw Error(ErrorKind::InvalidInput, "lattice character needs --subgroup or --cocycle");
    bool path = false;
    const PatchPtr p = lattice_patch(g, o, path);
    emit(o, io::dg_function_json(lattice_boundary_character(p, default_ribbon(*p), o.seed)), "");
}

}  // namespace

int main(int argc, char** argv) {
#ifdef __GLIBC__
    // operator application allocates multi-megabyte vectors; keep them off mmap
    mallopt(M_MMAP_THRESHOLD, 256 << 20);
    mallopt(M_TRIM_THRESHOLD, 512 << 20);
#endif
    CLI::App app{"Quantum double anyon data, boundaries, walls and lattice checks"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* c, bool group_required = true) {
        auto* opt = c->add_option("--group", o.group, "group URI (builtin:S3, affine:q=4, product:Z2xZ2) or JSON file");
        if (group_required) opt->required();
        c->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        c->add_option("--tol", o.tol, "tolerance")->check(CLI::PositiveNumber);
        c->add_option("--seed", o.seed, "random seed");
        c->add_flag("--snap", o.snap, "render exact values where they are recognised");
        return c;
    };
    auto boundary_flags = [&](CLI::App* c) {
        c->add_option("--subgroup", o.subgroup, "whole, trivial, gen:i,j, members:i,j, centralizer:a or JSON file");
        c->add_option("--cocycle", o.cocycle, "cocycle JSON file");
    };

    auto* group = app.add_subcommand("group", "group data");
    group->require_subcommand(1);
    common(group->add_subcommand("info", "order, classes, centralizers"))->callback([&] { group_info(o); });

    common(app.add_subcommand("chartable", "character table"))->callback([&] { chartable(o); });
    common(app.add_subcommand("anyons", "anyon list"))->callback([&] { anyons(o); });
    common(app.add_subcommand("smatrix", "S-matrix"))->callback([&] { smatrix(o); });
    common(app.add_subcommand("tmatrix", "T-matrix diagonal"))->callback([&] { tmatrix(o); });
    common(app.add_subcommand("fusion", "fusion multiplicities from the Verlinde formula"))->callback([&] { fusion(o); });

    auto* cond = common(app.add_subcommand("condense", "anyons condensed by a boundary (K, phi)"));
    boundary_flags(cond);
    cond->callback([&] { condense_cmd(o); });

    auto* tun = common(app.add_subcommand("tunnel", "tunneling matrix through a wall"));
    tun->add_option("--group2", o.group2, "group on the far side (default: same as --group)");
    tun->add_option("--wall-u", o.wall_u, "diagonal, cf (affine groups) or JSON file with members of G x G'");
    tun->add_option("--cocycle", o.cocycle, "cocycle file for a wall given by members");
    tun->callback([&] { tunnel_cmd(o); });

    auto* modinv = app.add_subcommand("modinv", "modular invariants");
    modinv->require_subcommand(1);
    common(modinv->add_subcommand("search", "transpositions commuting with S and T"))->callback([&] {
        modinv_search(o);
    });
    auto* check = common(modinv->add_subcommand("check", "test a permutation matrix"));
    check->add_option("--perm", o.perm, "image of every anyon, comma separated (labels or indices)");
    check->add_option("--swap", o.swap, "two anyons to exchange");
    check->add_flag("--conj", o.with_conjugation, "compose with charge conjugation");
    check->callback([&] { modinv_check(o); });

    auto* verify = app.add_subcommand("verify", "structural verifications");
    verify->require_subcommand(1);
    auto* cf = verify->add_subcommand("cf", "chargeon-fluxion exchange for the affine group of a near-field");
    cf->add_option("target", o.cf_target, "prime power q or dickson9")->required();
    cf->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));
    cf->callback([&] { verify_cf(o); });

    auto* lattice = app.add_subcommand("lattice", "lattice model checks");
    lattice->require_subcommand(1);
    auto* lv = common(lattice->add_subcommand("verify", "operator relation suite"));
    boundary_flags(lv);
    lv->add_option("--patch", o.patch, "minimal, path or WxH");
    lv->add_option("--states", o.states, "random states per relation")->check(CLI::PositiveNumber);
    lv->add_flag("--every-state", o.every_state, "evaluate every parameter tuple on every state");
    lv->callback([&] { lattice_verify(o); });
    auto* lc = common(lattice->add_subcommand("character", "boundary character from the lattice ground state"));
    boundary_flags(lc);
    lc->add_option("--patch", o.patch, "minimal or WxH");
    lc->callback([&] { lattice_character_cmd(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const AssertionFailed&) {
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error(e.kind()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
