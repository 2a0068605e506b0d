#include "qdouble/groups.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "qdouble/error.hpp"

namespace qdouble {

namespace {

constexpr int kMaxCyclic = 1024;
constexpr int kMaxProduct = 2048;
constexpr int kMaxPermDegree = 6;
constexpr int kMaxNearField = 64;
constexpr int kFullAssocLimit = 128;
constexpr int kSampledTriples = 10000;

std::string triple(int a, int b, int c) {
    std::ostringstream os;
    os << "(" << a << ", " << b << ", " << c << ")";
    return os.str();
}

}  // namespace

GroupTable::GroupTable(int order, std::vector<int> mul, std::string label,
                       std::vector<std::string> element_labels,
                       std::shared_ptr<const ProductInfo> product)
    : order_(order),
      mul_(std::move(mul)),
      inv_(order, 0),
      elem_order_(order, 1),
      label_(std::move(label)),
      element_labels_(std::move(element_labels)),
      product_(std::move(product)) {
    for (int a = 0; a < order_; ++a) {
        for (int b = 0; b < order_; ++b) {
            if (this->mul(a, b) == 0) {
                inv_[a] = b;
                break;
            }
        }
        int x = a, k = 1;
        while (x != 0) {
            x = this->mul(x, a);
            ++k;
        }
        elem_order_[a] = k;
    }
    conj_ = conjugacy_data(*this);
}

bool GroupTable::is_abelian() const {
    for (int a = 0; a < order_; ++a)
        for (int b = a + 1; b < order_; ++b)
            if (!commute(a, b)) return false;
    return true;
}

std::string GroupTable::element_label(int a) const {
    if (a >= 0 && a < static_cast<int>(element_labels_.size())) return element_labels_[a];
    return a == 0 ? std::string("e") : std::to_string(a);
}

void require_same_group(const GroupTable& a, const GroupTable& b, const char* where) {
    if (&a == &b || a.same_table(b)) return;
    throw Error(ErrorKind::GroupMismatch, std::string(where) + ": operands live on different groups");
}

GroupPtr from_cayley(const std::vector<std::vector<int>>& table, std::string label) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw Error(ErrorKind::InvalidInput, "empty multiplication table");
    std::vector<int> flat(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(table[a].size()) != n)
            throw Error(ErrorKind::InvalidInput, "row " + std::to_string(a) + " has wrong length");
        for (int b = 0; b < n; ++b) {
            int v = table[a][b];
            if (v < 0 || v >= n)
                throw Error(ErrorKind::InvalidInput,
                            "entry (" + std::to_string(a) + ", " + std::to_string(b) + ") out of range");
            flat[static_cast<size_t>(a) * n + b] = v;
        }
    }
    auto at = [&](int a, int b) { return flat[static_cast<size_t>(a) * n + b]; };

    std::vector<int> seen(n);
    for (int a = 0; a < n; ++a) {
        std::fill(seen.begin(), seen.end(), -1);
        for (int b = 0; b < n; ++b) {
            int v = at(a, b);
            if (seen[v] >= 0)
                throw Error(ErrorKind::NotLatinSquare, "row " + std::to_string(a) + " repeats " +
                                                           std::to_string(v) + " at columns " +
                                                           std::to_string(seen[v]) + ", " + std::to_string(b));
            seen[v] = b;
        }
    }
    for (int b = 0; b < n; ++b) {
        std::fill(seen.begin(), seen.end(), -1);
        for (int a = 0; a < n; ++a) {
            int v = at(a, b);
            if (seen[v] >= 0)
                throw Error(ErrorKind::NotLatinSquare, "column " + std::to_string(b) + " repeats " +
                                                           std::to_string(v) + " at rows " +
                                                           std::to_string(seen[v]) + ", " + std::to_string(a));
            seen[v] = a;
        }
    }
    // identity must sit at index 0
    for (int x = 0; x < n; ++x) {
        if (at(0, x) != x || at(x, 0) != x)
            throw Error(ErrorKind::NoIdentity, "index 0 is not a two-sided identity (fails at element " +
                                                   std::to_string(x) + ")");
    }
    for (int x = 0; x < n; ++x) {
        bool found = false;
        for (int y = 0; y < n && !found; ++y) found = at(x, y) == 0 && at(y, x) == 0;
        if (!found) throw Error(ErrorKind::NoInverse, "element " + std::to_string(x) + " has no inverse");
    }
    auto check = [&](int a, int b, int c) {
        if (at(at(a, b), c) != at(a, at(b, c)))
            throw Error(ErrorKind::NotAssociative, "triple " + triple(a, b, c));
    };
    if (n <= kFullAssocLimit) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) check(a, b, c);
    } else {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int t = 0; t < kSampledTriples; ++t) check(pick(rng), pick(rng), pick(rng));
    }
    if (label.empty()) label = "G" + std::to_string(n);
    return std::make_shared<GroupTable>(n, std::move(flat), std::move(label));
}

GroupPtr cyclic(int n) {
    if (n < 1 || n > kMaxCyclic)
        throw Error(ErrorKind::SizeExceeded, "cyclic order " + std::to_string(n) + " outside 1.." +
                                                 std::to_string(kMaxCyclic));
    std::vector<int> mul(static_cast<size_t>(n) * n);
    std::vector<std::string> labels(n);
    for (int a = 0; a < n; ++a) {
        labels[a] = std::to_string(a);
        for (int b = 0; b < n; ++b) mul[static_cast<size_t>(a) * n + b] = (a + b) % n;
    }
    return std::make_shared<GroupTable>(n, std::move(mul), "Z" + std::to_string(n), std::move(labels));
}

namespace {

std::string cycle_label(const std::vector<int>& p) {
    const int n = static_cast<int>(p.size());
    std::vector<bool> done(n, false);
    std::string out;
    for (int i = 0; i < n; ++i) {
        if (done[i] || p[i] == i) continue;
        out += "(";
        int j = i;
        bool first = true;
        while (!done[j]) {
            done[j] = true;
            if (!first) out += ",";
            out += std::to_string(j + 1);
            first = false;
            j = p[j];
        }
        out += ")";
    }
    return out.empty() ? std::string("e") : out;
}

bool is_even(const std::vector<int>& p) {
    int inversions = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inversions;
    return inversions % 2 == 0;
}

GroupPtr permutation_group(int n, bool even_only, const std::string& label) {
    if (n < 1 || n > kMaxPermDegree)
        throw Error(ErrorKind::SizeExceeded, "permutation degree " + std::to_string(n) + " outside 1.." +
                                                 std::to_string(kMaxPermDegree));
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        if (!even_only || is_even(p)) perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    auto encode = [n](const std::vector<int>& v) {
        int code = 0;
        for (int x : v) code = code * n + x;
        return code;
    };
    int span = 1;
    for (int i = 0; i < n; ++i) span *= n;
    std::vector<int> lookup(span, -1);
    for (size_t i = 0; i < perms.size(); ++i) lookup[encode(perms[i])] = static_cast<int>(i);

    const int m = static_cast<int>(perms.size());
    std::vector<int> mul(static_cast<size_t>(m) * m);
    std::vector<int> comp(n);
    std::vector<std::string> labels(m);
    for (int a = 0; a < m; ++a) {
        labels[a] = cycle_label(perms[a]);
        for (int b = 0; b < m; ++b) {
            // (ab)(x) = a(b(x))
            for (int x = 0; x < n; ++x) comp[x] = perms[a][perms[b][x]];
            mul[static_cast<size_t>(a) * m + b] = lookup[encode(comp)];
        }
    }
    return std::make_shared<GroupTable>(m, std::move(mul), label, std::move(labels));
}

}  // namespace

GroupPtr symmetric(int n) { return permutation_group(n, false, "S" + std::to_string(n)); }
GroupPtr alternating(int n) { return permutation_group(n, true, "A" + std::to_string(n)); }

GroupPtr direct_product(const GroupPtr& left, const GroupPtr& right) {
    const int n1 = left->order(), n2 = right->order();
    if (static_cast<long>(n1) * n2 > kMaxProduct)
        throw Error(ErrorKind::SizeExceeded, "product order " + std::to_string(static_cast<long>(n1) * n2) +
                                                 " exceeds " + std::to_string(kMaxProduct));
    const int n = n1 * n2;
    std::vector<int> mul(static_cast<size_t>(n) * n);
    std::vector<std::string> labels(n);
    for (int a = 0; a < n; ++a) {
        const int a1 = a / n2, a2 = a % n2;
        labels[a] = "[" + left->element_label(a1) + "|" + right->element_label(a2) + "]";
        for (int b = 0; b < n; ++b) {
            const int b1 = b / n2, b2 = b % n2;
            mul[static_cast<size_t>(a) * n + b] = left->mul(a1, b1) * n2 + right->mul(a2, b2);
        }
    }
    auto info = std::make_shared<ProductInfo>(ProductInfo{left, right});
    return std::make_shared<GroupTable>(n, std::move(mul), left->label() + "x" + right->label(),
                                        std::move(labels), std::move(info));
}

ConjugacyData conjugacy_data(const GroupTable& g) {
    const int n = g.order();
    ConjugacyData d;
    d.class_of.assign(n, -1);
    d.transversal.assign(n, -1);
    for (int x = 0; x < n; ++x) {
        if (d.class_of[x] >= 0) continue;
        const int c = static_cast<int>(d.reps.size());
        d.reps.push_back(x);
        std::vector<int> members;
        std::vector<int> centralizer;
        for (int k = 0; k < n; ++k) {
            const int b = g.conj(k, x);
            if (b == x) centralizer.push_back(k);
            if (d.class_of[b] < 0) {
                d.class_of[b] = c;
                d.transversal[b] = k;
                members.push_back(b);
            }
        }
        std::sort(members.begin(), members.end());
        d.classes.push_back(std::move(members));
        d.centralizers.push_back(std::move(centralizer));
    }
    return d;
}

Subgroup make_subgroup(const GroupPtr& parent, std::vector<int> members) {
    const int n = parent->order();
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty() || members.front() != 0)
        throw Error(ErrorKind::NotSubgroup, "subset does not contain the identity");
    if (members.back() >= n || members.front() < 0)
        throw Error(ErrorKind::NotSubgroup, "member index out of range");
    std::vector<int> position(n, -1);
    for (size_t i = 0; i < members.size(); ++i) position[members[i]] = static_cast<int>(i);
    const int m = static_cast<int>(members.size());
    std::vector<int> mul(static_cast<size_t>(m) * m);
    std::vector<std::string> labels(m);
    for (int i = 0; i < m; ++i) {
        labels[i] = parent->element_label(members[i]);
        if (position[parent->inv(members[i])] < 0)
            throw Error(ErrorKind::NotSubgroup, "not closed under inverse at " + std::to_string(members[i]));
        for (int j = 0; j < m; ++j) {
            const int p = position[parent->mul(members[i], members[j])];
            if (p < 0)
                throw Error(ErrorKind::NotSubgroup, "not closed under product of " + std::to_string(members[i]) +
                                                        " and " + std::to_string(members[j]));
            mul[static_cast<size_t>(i) * m + j] = p;
        }
    }
    Subgroup s;
    s.parent = parent;
    s.members = std::move(members);
    s.position = std::move(position);
    s.as_group = std::make_shared<GroupTable>(m, std::move(mul), parent->label() + "<" + std::to_string(m) + ">",
                                              std::move(labels));
    return s;
}

Subgroup generated_subgroup(const GroupPtr& parent, const std::vector<int>& generators) {
    std::vector<char> in(parent->order(), 0);
    std::vector<int> members{0};
    in[0] = 1;
    for (size_t i = 0; i < members.size(); ++i) {
        for (int gen : generators) {
            const int x = parent->mul(members[i], gen);
            if (!in[x]) {
                in[x] = 1;
                members.push_back(x);
            }
        }
    }
    return make_subgroup(parent, std::move(members));
}

Subgroup whole_group(const GroupPtr& parent) {
    std::vector<int> all(parent->order());
    std::iota(all.begin(), all.end(), 0);
    return make_subgroup(parent, std::move(all));
}

Subgroup trivial_subgroup(const GroupPtr& parent) { return make_subgroup(parent, {0}); }

Subgroup centralizer_subgroup(const GroupPtr& parent, int a) {
    std::vector<int> z;
    for (int k = 0; k < parent->order(); ++k)
        if (parent->commute(k, a)) z.push_back(k);
    return make_subgroup(parent, std::move(z));
}

std::vector<int> cosets(const GroupTable& g, const Subgroup& k) {
    if (!k.parent || !(k.parent.get() == &g || k.parent->same_table(g)))
        throw Error(ErrorKind::NotSubgroup, "subgroup belongs to a different group");
    std::vector<char> covered(g.order(), 0);
    std::vector<int> reps;
    for (int x = 0; x < g.order(); ++x) {
        if (covered[x]) continue;
        reps.push_back(x);
        for (int m : k.members) covered[g.mul(x, m)] = 1;
    }
    return reps;
}

// ---- near-fields ----

int NearFieldSpec::neg(int x) const {
    for (int y = 0; y < q; ++y)
        if (add(x, y) == zero) return y;
    return -1;
}

int NearFieldSpec::mul_inv(int x) const {
    for (int y = 0; y < q; ++y)
        if (mul(x, y) == one) return y;
    return -1;
}

namespace {

struct PrimePower {
    int p = 0;
    int d = 0;
};

PrimePower prime_power(int q) {
    if (q < 2) return {};
    int p = 2;
    while (q % p != 0) ++p;
    int d = 0, r = q;
    while (r % p == 0) {
        r /= p;
        ++d;
    }
    if (r != 1) return {};
    return {p, d};
}

// coefficient vectors little-endian, index = sum c_i p^i
std::vector<int> digits(int x, int p, int d) {
    std::vector<int> c(d);
    for (int i = 0; i < d; ++i) {
        c[i] = x % p;
        x /= p;
    }
    return c;
}

int undigits(const std::vector<int>& c, int p) {
    int x = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) x = x * p + c[i];
    return x;
}

// product in F_p[x]/(f) with f monic of degree d given by low coefficients
std::vector<int> poly_mul_table(int p, int d, const std::vector<int>& low) {
    const int q = static_cast<int>(std::lround(std::pow(p, d)));
    std::vector<int> table(static_cast<size_t>(q) * q);
    for (int a = 0; a < q; ++a) {
        const auto ca = digits(a, p, d);
        for (int b = 0; b < q; ++b) {
            const auto cb = digits(b, p, d);
            std::vector<int> prod(2 * d, 0);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
            for (int k = 2 * d - 1; k >= d; --k) {
                const int c = prod[k];
                if (c == 0) continue;
                prod[k] = 0;
                // x^k = x^{k-d} * x^d and x^d = -sum low_i x^i
                for (int i = 0; i < d; ++i) prod[k - d + i] = ((prod[k - d + i] - c * low[i]) % p + p) % p;
            }
            prod.resize(d);
            table[static_cast<size_t>(a) * q + b] = undigits(prod, p);
        }
    }
    return table;
}

bool is_field_table(const std::vector<int>& mul, int q) {
    for (int a = 1; a < q; ++a) {
        bool has_inverse = false;
        for (int b = 1; b < q && !has_inverse; ++b) has_inverse = mul[static_cast<size_t>(a) * q + b] == 1;
        if (!has_inverse) return false;
    }
    return true;
}

}  // namespace

NearFieldSpec near_field(int q, NearFieldKind kind) {
    const PrimePower pp = prime_power(q);
    if (pp.p == 0) throw Error(ErrorKind::NotPrimePower, std::to_string(q) + " is not a prime power");
    if (q > kMaxNearField)
        throw Error(ErrorKind::SizeExceeded, "near-field size " + std::to_string(q) + " exceeds " +
                                                 std::to_string(kMaxNearField));
    if (kind == NearFieldKind::Dickson9 && q != 9)
        throw Error(ErrorKind::InvalidInput, "the Dickson near-field is only provided for q = 9");
    NearFieldSpec h;
    h.q = q;
    h.p = pp.p;
    h.degree = pp.d;
    h.kind = kind;
    h.add_table.resize(static_cast<size_t>(q) * q);
    for (int a = 0; a < q; ++a) {
        const auto ca = digits(a, pp.p, pp.d);
        for (int b = 0; b < q; ++b) {
            auto cb = digits(b, pp.p, pp.d);
            for (int i = 0; i < pp.d; ++i) cb[i] = (ca[i] + cb[i]) % pp.p;
            h.add_table[static_cast<size_t>(a) * q + b] = undigits(cb, pp.p);
        }
    }
    // first irreducible monic polynomial in index order of its low coefficients
    bool found = false;
    for (int t = 0; t < q && !found; ++t) {
        auto table = poly_mul_table(pp.p, pp.d, digits(t, pp.p, pp.d));
        if (is_field_table(table, q)) {
            h.field_mul = std::move(table);
            found = true;
        }
    }
    if (!found) throw Error(ErrorKind::AxiomFailure, "no irreducible polynomial found");
    h.mul_table = h.field_mul;
    if (kind == NearFieldKind::Dickson9) {
        auto fmul = [&](int x, int y) { return h.field_mul[static_cast<size_t>(x) * q + y]; };
        std::vector<char> square(q, 0);
        for (int x = 1; x < q; ++x) square[fmul(x, x)] = 1;
        for (int x = 0; x < q; ++x)
            for (int y = 0; y < q; ++y) {
                const int y3 = fmul(fmul(y, y), y);
                h.mul_table[static_cast<size_t>(x) * q + y] = (x == 0 || square[x]) ? fmul(x, y) : fmul(x, y3);
            }
    }
    check_near_field_axioms(h);
    return h;
}

void check_near_field_axioms(const NearFieldSpec& h) {
    const int q = h.q;
    // additive abelian group
    for (int x = 0; x < q; ++x) {
        if (h.add(h.zero, x) != x) throw Error(ErrorKind::AxiomFailure, "additive identity");
        if (h.neg(x) < 0) throw Error(ErrorKind::AxiomFailure, "additive inverse");
        for (int y = 0; y < q; ++y) {
            if (h.add(x, y) != h.add(y, x)) throw Error(ErrorKind::AxiomFailure, "additive commutativity");
            for (int z = 0; z < q; ++z)
                if (h.add(h.add(x, y), z) != h.add(x, h.add(y, z)))
                    throw Error(ErrorKind::AxiomFailure, "additive associativity");
        }
    }
    for (int x = 0; x < q; ++x)
        if (h.mul(h.zero, x) != h.zero || h.mul(x, h.zero) != h.zero)
            throw Error(ErrorKind::AxiomFailure, "zero absorption");
    // nonzero elements form a group
    for (int x = 0; x < q; ++x) {
        if (x == h.zero) continue;
        if (h.mul(h.one, x) != x || h.mul(x, h.one) != x)
            throw Error(ErrorKind::AxiomFailure, "multiplicative identity");
        if (h.mul_inv(x) < 0) throw Error(ErrorKind::AxiomFailure, "multiplicative inverse");
        for (int y = 0; y < q; ++y) {
            if (y == h.zero) continue;
            if (h.mul(x, y) == h.zero) throw Error(ErrorKind::AxiomFailure, "multiplicative closure");
            for (int z = 0; z < q; ++z)
                if (z != h.zero && h.mul(h.mul(x, y), z) != h.mul(x, h.mul(y, z)))
                    throw Error(ErrorKind::AxiomFailure, "multiplicative associativity");
        }
    }
    if (!left_distributive(h)) throw Error(ErrorKind::AxiomFailure, "left distributivity");
}

bool left_distributive(const NearFieldSpec& h) {
    for (int x = 0; x < h.q; ++x)
        for (int y = 0; y < h.q; ++y)
            for (int z = 0; z < h.q; ++z)
                if (h.mul(x, h.add(y, z)) != h.add(h.mul(x, y), h.mul(x, z))) return false;
    return true;
}

bool right_distributive(const NearFieldSpec& h) {
    for (int x = 0; x < h.q; ++x)
        for (int y = 0; y < h.q; ++y)
            for (int z = 0; z < h.q; ++z)
                if (h.mul(h.add(x, y), z) != h.add(h.mul(x, z), h.mul(y, z))) return false;
    return true;
}

bool mul_commutative(const NearFieldSpec& h) {
    for (int x = 0; x < h.q; ++x)
        for (int y = 0; y < h.q; ++y)
            if (h.mul(x, y) != h.mul(y, x)) return false;
    return true;
}

GroupPtr affine_group(const NearFieldSpec& h) {
    check_near_field_axioms(h);
    const int q = h.q;
    const int n = q * (q - 1);
    std::vector<int> mul(static_cast<size_t>(n) * n);
    std::vector<std::string> labels(n);
    for (int g = 0; g < n; ++g) {
        const int a = affine_translation(h, g), alpha = affine_scale(h, g);
        labels[g] = "(" + std::to_string(a) + "," + std::to_string(alpha) + ")";
        for (int k = 0; k < n; ++k) {
            const int b = affine_translation(h, k), beta = affine_scale(h, k);
            mul[static_cast<size_t>(g) * n + k] = affine_index(h, h.add(a, h.mul(alpha, b)), h.mul(alpha, beta));
        }
    }
    std::string label = h.kind == NearFieldKind::Dickson9 ? "Aff(D9)" : "Aff(F" + std::to_string(q) + ")";
    return std::make_shared<GroupTable>(n, std::move(mul), std::move(label), std::move(labels));
}

}  // namespace qdouble
