#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qdouble/error.hpp"
#include "qdouble/io.hpp"

using namespace qdouble;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::AxiomFailure;
}

fs::path temp_file(const std::string& name, const std::string& content) {
    auto p = fs::temp_directory_path() / ("qdouble_test_" + name);
    std::ofstream(p) << content;
    return p;
}

}  // namespace

TEST(GroupUris, Builtins) {
    EXPECT_EQ(io::parse_group("builtin:S3")->order(), 6);
    EXPECT_EQ(io::parse_group("builtin:Z5")->order(), 5);
    EXPECT_EQ(io::parse_group("builtin:C4")->order(), 4);
    EXPECT_EQ(io::parse_group("builtin:A6")->order(), 360);
    EXPECT_EQ(io::parse_group("affine:q=4")->order(), 12);
    EXPECT_EQ(io::parse_group("affine:dickson9")->order(), 72);
    EXPECT_EQ(io::parse_group("product:Z2xS3")->order(), 12);
    EXPECT_EQ(io::parse_group("product:builtin:Z2*affine:q=3")->order(), 12);
    EXPECT_EQ(io::parse_group("product:Z2xZ2xZ2")->order(), 8);
    EXPECT_TRUE(io::parse_near_field("affine:q=5").has_value());
    EXPECT_FALSE(io::parse_near_field("builtin:S3").has_value());
    for (const char* bad : {"builtin:Q8", "builtin:Z0", "affine:q=6", "product:", "nosuchfile.json"})
        EXPECT_THROW(io::parse_group(bad), Error) << bad;
}

TEST(GroupUris, CatalogRespectsOrderLimit) {
    auto small = io::builtin_catalog(6);
    for (const auto& u : small) EXPECT_LE(io::parse_group(u)->order(), 6);
    EXPECT_EQ(io::builtin_catalog(72).size(), 29u);
}

TEST(GroupFiles, RoundTrip) {
    auto g = symmetric(4);
    auto j = io::group_json(*g);
    auto back = io::group_from_json(j);
    EXPECT_TRUE(back->same_table(*g));
    auto path = temp_file("s4.json", j.dump());
    EXPECT_TRUE(io::parse_group(path.string())->same_table(*g));
    EXPECT_TRUE(io::parse_group("file:" + path.string())->same_table(*g));
    fs::remove(path);

    auto bad = temp_file("bad.json", R"({"order": 2, "mul": [[0, 1], [1, 1]]})");
    EXPECT_EQ(kind_of([&] { io::parse_group(bad.string()); }), ErrorKind::NotLatinSquare);
    fs::remove(bad);
}

TEST(Subgroups, SpecsAndRoundTrip) {
    auto g = symmetric(3);
    EXPECT_EQ(io::parse_subgroup(g, "whole").order(), 6);
    EXPECT_EQ(io::parse_subgroup(g, "trivial").order(), 1);
    EXPECT_EQ(io::parse_subgroup(g, "gen:1").order(), io::parse_subgroup(g, "centralizer:1").order());
    auto k = io::parse_subgroup(g, "centralizer:(1,2,3)");
    EXPECT_EQ(k.order(), 3);
    auto back = io::subgroup_from_json(g, io::subgroup_json(k));
    EXPECT_EQ(back.members, k.members);
    EXPECT_EQ(io::parse_subgroup(g, "members:0,1").order(), 2);
    EXPECT_THROW(io::parse_subgroup(g, "members:1"), Error);
    EXPECT_THROW(io::parse_subgroup(g, "members:0,1,2,3"), Error);
}

TEST(Cocycles, ExponentFileRoundTripIsExact) {
    auto w = wall_cocycle(near_field(3, NearFieldKind::Field));
    auto j = io::cocycle_json(w.u, w.phi, 3);
    auto f = io::cocycle_from_json(w.product, nlohmann::ordered_json::parse(j.dump()));
    EXPECT_EQ(f.omega_order, 3);
    EXPECT_EQ(f.subgroup.members, w.u.members);
    EXPECT_EQ(io::cocycle_json(f.subgroup, f.phi, 3), j);
    for (size_t i = 0; i < w.phi.table.size(); ++i) EXPECT_LT(std::abs(f.phi.table[i] - w.phi.table[i]), 1e-15);
}

TEST(Snap, RationalsAndRoots) {
    EXPECT_EQ(io::snap_exact(1.0 / 6.0, 6, 6).value(), "1/6");
    EXPECT_EQ(io::snap_exact(-2.0 / 6.0, 6, 6).value(), "-1/3");
    EXPECT_EQ(io::snap_exact(0.0, 6, 6).value(), "0");
    EXPECT_EQ(io::snap_exact(3.0, 6, 6).value(), "3");
    EXPECT_EQ(io::snap_exact(std::polar(1.0, 2 * M_PI / 3), 6, 6).value(), "E(3)");
    EXPECT_EQ(io::snap_exact(std::polar(1.0, -2 * M_PI / 3), 6, 6).value(), "E(3)^2");
    EXPECT_EQ(io::snap_exact(cd(0.3, 0.1), 6, 6), std::nullopt);
}

TEST(Serialize, SMatrixCsvHeaderAndSnapping) {
    QuantumDouble qd(symmetric(3));
    auto csv = io::matrix_csv(qd, s_matrix(qd), true);
    auto first = csv.substr(0, csv.find('\n'));
    // labels containing commas are quoted
    EXPECT_EQ(first, R"(anyon,e:0,e:1,e:2,"(2,3):0","(2,3):1","(1,2,3):0","(1,2,3):1","(1,2,3):2")");
    EXPECT_NE(csv.find("1/6"), std::string::npos);
    EXPECT_NE(csv.find("-1/3"), std::string::npos);
    auto anyons = io::anyons_csv(qd);
    EXPECT_EQ(anyons.substr(0, anyons.find('\n')), "index,label,class,irrep,dim,kind,twist");
    EXPECT_EQ(std::count(anyons.begin(), anyons.end(), '\n'), 9);
}

TEST(Serialize, CondensationRoundTripIsLossless) {
    auto g = symmetric(3);
    QuantumDouble qd(g);
    auto k = io::parse_subgroup(g, "centralizer:(1,2,3)");
    auto r = condense(qd, k, trivial_cocycle(k.as_group));
    auto j = io::condensation_json(qd, r);
    auto back = io::condensation_from_json(qd, nlohmann::ordered_json::parse(j.dump()));
    EXPECT_EQ(back.multiplicities, r.multiplicities);
    EXPECT_EQ(back.condensed, r.condensed);
    EXPECT_EQ(back.total_dim, r.total_dim);
    EXPECT_EQ(back.dimension_identity, r.dimension_identity);
    EXPECT_EQ(back.vacuum_once, r.vacuum_once);
    EXPECT_EQ(back.character.values, r.character.values);
    EXPECT_EQ(io::condensation_json(qd, back).dump(), j.dump());
}

TEST(Serialize, DGFunctionRoundTrip) {
    QuantumDouble qd(symmetric(3));
    auto chi = qd.character(6);
    auto back = io::dg_function_from_json(qd.group(), nlohmann::ordered_json::parse(io::dg_function_json(chi).dump()));
    EXPECT_EQ(back.values, chi.values);
}

TEST(Serialize, OutputIsDeterministic) {
    auto a = io::parse_group("builtin:A4");
    auto b = io::parse_group("builtin:A4");
    QuantumDouble qa(a), qb(b);
    EXPECT_EQ(io::matrix_json(qa, s_matrix(qa), false).dump(), io::matrix_json(qb, s_matrix(qb), false).dump());
    EXPECT_EQ(io::character_table_json(*cached_character_table(a), true).dump(),
              io::character_table_json(*cached_character_table(b), true).dump());
}
