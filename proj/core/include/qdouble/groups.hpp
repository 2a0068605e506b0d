#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace qdouble {

class GroupTable;
using GroupPtr = std::shared_ptr<const GroupTable>;

struct ConjugacyData {
    std::vector<std::vector<int>> classes;        // ordered by representative
    std::vector<int> reps;                        // minimal index in each class
    std::vector<int> class_of;                    // element -> class index
    std::vector<int> transversal;                 // b -> k_b, k_b rep k_b^-1 = b
    std::vector<std::vector<int>> centralizers;   // per class, sorted members of Z(rep)

    int class_count() const { return static_cast<int>(classes.size()); }
};

// Present when the group was built as a direct product; element (a,b) has
// index a * right->order() + b.
struct ProductInfo {
    GroupPtr left;
    GroupPtr right;
};

class GroupTable {
public:
    // Trusted constructor: the table is assumed valid. Use from_cayley for input.
    GroupTable(int order, std::vector<int> mul, std::string label,
               std::vector<std::string> element_labels = {},
               std::shared_ptr<const ProductInfo> product = nullptr);

    int order() const { return order_; }
    int identity() const { return 0; }
    int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * order_ + b]; }
    int inv(int a) const { return inv_[a]; }
    // k x k^-1
    int conj(int k, int x) const { return mul(mul(k, x), inv_[k]); }
    bool commute(int a, int b) const { return mul(a, b) == mul(b, a); }
    int element_order(int a) const { return elem_order_[a]; }
    bool is_abelian() const;

    const std::string& label() const { return label_; }
    std::string element_label(int a) const;
    const std::vector<int>& table() const { return mul_; }
    const std::vector<int>& inverses() const { return inv_; }
    const ConjugacyData& conjugacy() const { return conj_; }
    const ProductInfo* product() const { return product_.get(); }

    bool same_table(const GroupTable& other) const {
        return order_ == other.order_ && mul_ == other.mul_;
    }

private:
    int order_;
    std::vector<int> mul_;
    std::vector<int> inv_;
    std::vector<int> elem_order_;
    std::string label_;
    std::vector<std::string> element_labels_;
    std::shared_ptr<const ProductInfo> product_;
    ConjugacyData conj_;
};

// Throws GroupMismatch unless both refer to the same group.
void require_same_group(const GroupTable& a, const GroupTable& b, const char* where);

GroupPtr from_cayley(const std::vector<std::vector<int>>& table, std::string label = "");

GroupPtr cyclic(int n);
GroupPtr symmetric(int n);
GroupPtr alternating(int n);
GroupPtr direct_product(const GroupPtr& left, const GroupPtr& right);

ConjugacyData conjugacy_data(const GroupTable& g);

struct Subgroup {
    GroupPtr parent;
    std::vector<int> members;   // sorted parent indices; members[0] == identity
    GroupPtr as_group;          // re-indexed, member i <-> members[i]
    std::vector<int> position;  // parent index -> member index or -1

    int order() const { return static_cast<int>(members.size()); }
    int embed(int i) const { return members[i]; }
    bool contains(int g) const { return position[g] >= 0; }
    int index_of(int g) const { return position[g]; }
};

Subgroup make_subgroup(const GroupPtr& parent, std::vector<int> members);
Subgroup generated_subgroup(const GroupPtr& parent, const std::vector<int>& generators);
Subgroup whole_group(const GroupPtr& parent);
Subgroup trivial_subgroup(const GroupPtr& parent);
Subgroup centralizer_subgroup(const GroupPtr& parent, int a);

// Left coset representatives g_1 = e, g_2, ...
std::vector<int> cosets(const GroupTable& g, const Subgroup& k);

enum class NearFieldKind { Field, Dickson9 };

struct NearFieldSpec {
    int q = 0;
    int p = 0;   // characteristic
    int degree = 0;
    NearFieldKind kind = NearFieldKind::Field;
    std::vector<int> add_table;
    std::vector<int> mul_table;
    std::vector<int> field_mul;   // underlying field product (equals mul_table for fields)
    int zero = 0;
    int one = 1;

    int add(int x, int y) const { return add_table[static_cast<size_t>(x) * q + y]; }
    int mul(int x, int y) const { return mul_table[static_cast<size_t>(x) * q + y]; }
    int neg(int x) const;
    int mul_inv(int x) const;
};

NearFieldSpec near_field(int q, NearFieldKind kind);
// Throws AxiomFailure naming the first failed axiom.
void check_near_field_axioms(const NearFieldSpec& h);
bool left_distributive(const NearFieldSpec& h);
bool right_distributive(const NearFieldSpec& h);
bool mul_commutative(const NearFieldSpec& h);

GroupPtr affine_group(const NearFieldSpec& h);
inline int affine_index(const NearFieldSpec& h, int a, int alpha) { return (alpha - 1) * h.q + a; }
inline int affine_translation(const NearFieldSpec& h, int g) { return g % h.q; }
inline int affine_scale(const NearFieldSpec& h, int g) { return g / h.q + 1; }

}  // namespace qdouble
