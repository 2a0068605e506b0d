#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qdouble/characters.hpp"
#include "qdouble/groups.hpp"

namespace qdouble {

enum class AnyonKind { Vacuum, Chargeon, Fluxion, Mixed };
const char* to_string(AnyonKind kind);

struct Anyon {
    int class_index = 0;
    int class_rep = 0;   // element a
    int irrep = 0;       // row of the centralizer table of a
    int dim = 1;         // |class| * dim pi
    int irrep_dim = 1;
};

// Character of a D(G)-representation, value at g h* stored at g * n + h.
struct DGClassFunction {
    GroupPtr group;
    std::vector<cd> values;

    static DGClassFunction zero(const GroupPtr& g);
    cd operator()(int g, int h) const { return values[static_cast<size_t>(g) * group->order() + h]; }
    cd& at(int g, int h) { return values[static_cast<size_t>(g) * group->order() + h]; }

    DGClassFunction& operator+=(const DGClassFunction& o);
    DGClassFunction& operator-=(const DGClassFunction& o);
    DGClassFunction& operator*=(cd s);
};

DGClassFunction operator+(DGClassFunction a, const DGClassFunction& b);
DGClassFunction operator-(DGClassFunction a, const DGClassFunction& b);
DGClassFunction operator*(cd s, DGClassFunction a);
double max_abs_diff(const DGClassFunction& a, const DGClassFunction& b);

struct FusionTensor {
    int size = 0;
    std::vector<int> n;   // N_{XY}^Z at (X * size + Y) * size + Z
    double max_residual = 0.0;

    int operator()(int x, int y, int z) const { return n[(static_cast<size_t>(x) * size + y) * size + z]; }
};

struct STRelation {
    cd phase;          // best c with (ST)^3 ~ c S^2
    double residual;   // max |(ST)^3 - c S^2|
};

class QuantumDouble {
public:
    enum class Route { Auto, Generic };

    explicit QuantumDouble(GroupPtr g, Route route = Route::Auto);

    const GroupPtr& group() const { return group_; }
    int size() const { return static_cast<int>(anyons_.size()); }
    const std::vector<Anyon>& anyons() const { return anyons_; }
    const Anyon& anyon(int i) const { return anyons_[i]; }
    int index_of(int class_index, int irrep) const;

    const Subgroup& centralizer(int class_index) const { return centralizers_[class_index]; }
    const CharacterTable& centralizer_table(int class_index) const { return tables_[class_index]; }
    // tr_pi(z) for z in Z(a), parent index; zero off the centralizer
    cd centralizer_trace(int anyon, int z) const { return traces_[anyon][z]; }

    struct Entry {
        int g;
        int h;
        cd value;
    };
    const std::vector<Entry>& support(int anyon) const { return support_[anyon]; }
    DGClassFunction character(int anyon) const;
    // Same character computed with an arbitrary valid transversal b -> k_b.
    DGClassFunction character_with_transversal(int anyon, const std::vector<int>& transversal) const;

    int dual(int anyon) const { return dual_[anyon]; }
    int op(int anyon) const { return op_[anyon]; }
    AnyonKind kind(int anyon) const;
    std::string label(int anyon) const;

private:
    void build_generic();
    void build_product();
    void finish();

    GroupPtr group_;
    std::vector<Subgroup> centralizers_;
    std::vector<CharacterTable> tables_;
    std::vector<Anyon> anyons_;
    std::vector<int> first_anyon_;
    std::vector<std::vector<cd>> traces_;
    std::vector<std::vector<Entry>> support_;
    std::vector<int> dual_;
    std::vector<int> op_;
};

cd dg_inner_product(const DGClassFunction& a, const DGClassFunction& b);
std::vector<int> dg_decompose(const QuantumDouble& qd, const DGClassFunction& chi, double tol = 1e-4);
DGClassFunction dg_combine(const QuantumDouble& qd, const std::vector<int>& multiplicities);
DGClassFunction regular_dg_character(const GroupPtr& g);
DGClassFunction tensor_character(const DGClassFunction& x, const DGClassFunction& y);

Eigen::MatrixXcd s_matrix(const QuantumDouble& qd);
Eigen::VectorXcd t_vector(const QuantumDouble& qd);
FusionTensor fusion_verlinde(const QuantumDouble& qd, const Eigen::MatrixXcd& s);
STRelation measure_st_relation(const Eigen::MatrixXcd& s, const Eigen::VectorXcd& t);

}  // namespace qdouble
