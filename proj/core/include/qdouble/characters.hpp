#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qdouble/groups.hpp"

namespace qdouble {

using cd = std::complex<double>;

constexpr double kEqualTol = 1e-8;
constexpr double kSnapTol = 1e-6;

struct ClassFunction {
    GroupPtr group;
    std::vector<cd> values;   // one per conjugacy class

    cd at(int element) const { return values[group->conjugacy().class_of[element]]; }
};

// Value as a sum of order-th roots of unity: sum_j counts[j] * exp(2 pi i j / order).
struct CyclotomicValue {
    int order = 1;
    std::vector<int> counts;
    bool snapped = false;
    cd value;
};

struct CharacterTable {
    GroupPtr group;
    std::vector<ClassFunction> rows;
    std::vector<int> dims;

    int size() const { return static_cast<int>(rows.size()); }
    cd value(int row, int element) const { return rows[row].at(element); }
};

CharacterTable character_table(const GroupPtr& g, std::uint64_t seed = 0);
// Memoized character_table with the default seed.
std::shared_ptr<const CharacterTable> cached_character_table(const GroupPtr& g);

// Table of a group indexed as (i, j) -> i * n2 + j from the two factor tables.
CharacterTable tensor_table(const CharacterTable& left, const CharacterTable& right, const GroupPtr& product);

// Canonical row order: degree ascending, then class by class real part
// descending, imaginary part descending.
void sort_rows(CharacterTable& t);

cd inner_product(const ClassFunction& a, const ClassFunction& b);
ClassFunction induced_character(const GroupPtr& g, const Subgroup& k, const ClassFunction& chi);
ClassFunction restrict_character(const ClassFunction& chi, const Subgroup& k);
ClassFunction conjugate_character(const ClassFunction& chi);
ClassFunction regular_character(const GroupPtr& g);
ClassFunction trivial_character(const GroupPtr& g);
ClassFunction combine(const CharacterTable& t, const std::vector<int>& multiplicities);

// Rounded multiplicities; NonIntegerMultiplicity when off by more than tol.
std::vector<int> decompose(const CharacterTable& t, const ClassFunction& chi, double tol = 1e-4);
// Index of the row equal to chi, or -1.
int find_row(const CharacterTable& t, const ClassFunction& chi, double tol = 1e-6);

CyclotomicValue snap_value(const CharacterTable& t, int row, int cls);
std::string cyclotomic_string(const CyclotomicValue& v);

bool close(cd a, cd b, double tol = kEqualTol);
cd root_of_unity(int num, int den);

}  // namespace qdouble
