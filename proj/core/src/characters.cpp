#include "qdouble/characters.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <shared_mutex>

#include "qdouble/error.hpp"

namespace qdouble {

namespace {

constexpr int kMaxRetries = 8;

// tolerant three-way compare used for the canonical row order
int cmp_tol(double a, double b) {
    if (std::abs(a - b) <= 1e-7) return 0;
    return a < b ? -1 : 1;
}

bool row_before(const ClassFunction& a, int dim_a, const ClassFunction& b, int dim_b) {
    if (dim_a != dim_b) return dim_a < dim_b;
    for (size_t c = 0; c < a.values.size(); ++c) {
        int r = cmp_tol(a.values[c].real(), b.values[c].real());
        if (r != 0) return r > 0;
        r = cmp_tol(a.values[c].imag(), b.values[c].imag());
        if (r != 0) return r > 0;
    }
    return false;
}

void snap_rows(CharacterTable& t) {
    for (int r = 0; r < t.size(); ++r)
        for (int c = 0; c < t.group->conjugacy().class_count(); ++c) {
            CyclotomicValue v = snap_value(t, r, c);
            if (v.snapped) t.rows[r].values[c] = v.value;
        }
}

struct Attempt {
    bool ok = false;
    CharacterTable table;
};

Attempt burnside(const GroupPtr& g, std::uint64_t seed) {
    const GroupTable& G = *g;
    const ConjugacyData& cd_ = G.conjugacy();
    const int r = cd_.class_count();
    const int n = G.order();

    // class multiplication coefficients: (M_j)_{kl} = #{x in C_j : x^-1 g_l in C_k}
    std::vector<Eigen::MatrixXd> M(r, Eigen::MatrixXd::Zero(r, r));
    for (int j = 0; j < r; ++j)
        for (int x : cd_.classes[j])
            for (int l = 0; l < r; ++l) M[j](cd_.class_of[G.mul(G.inv(x), cd_.reps[l])], l) += 1.0;

    Eigen::VectorXd d(r), dinv(r);
    for (int l = 0; l < r; ++l) {
        const double sz = static_cast<double>(cd_.classes[l].size());
        d(l) = 1.0 / std::sqrt(sz);
        dinv(l) = std::sqrt(sz);
    }
    std::vector<Eigen::MatrixXcd> N(r);
    for (int j = 0; j < r; ++j)
        N[j] = (d.asDiagonal() * M[j] * dinv.asDiagonal()).cast<cd>();

    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0x1234567ULL);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(r, r);
    const cd I(0.0, 1.0);
    for (int j = 0; j < r; ++j) {
        const double a = coef(rng), b = coef(rng);
        H += a * (N[j] + N[j].adjoint()) + I * b * (N[j] - N[j].adjoint());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    if (es.info() != Eigen::Success) return {};
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (int i = 1; i < r; ++i)
        if (ev(i) - ev(i - 1) < 1e-6 * scale) return {};

    Attempt out;
    out.table.group = g;
    for (int i = 0; i < r; ++i) {
        Eigen::VectorXcd u = es.eigenvectors().col(i);
        for (int j = 0; j < r; ++j) {
            Eigen::VectorXcd nu = N[j] * u;
            const cd lambda = u.dot(nu);
            if ((nu - lambda * u).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, N[j].cwiseAbs().maxCoeff()))
                return {};
        }
        Eigen::VectorXcd w(r);
        for (int l = 0; l < r; ++l) w(l) = dinv(l) * u(l);
        if (std::abs(w(0)) < 1e-12) return {};
        w /= w(0);
        double norm = 0.0;
        for (int l = 0; l < r; ++l) norm += std::norm(w(l)) / static_cast<double>(cd_.classes[l].size());
        const double deg = std::sqrt(static_cast<double>(n) / norm);
        const int ideg = static_cast<int>(std::lround(deg));
        if (ideg < 1 || std::abs(deg - ideg) > 1e-6) return {};
        ClassFunction row{g, std::vector<cd>(r)};
        for (int l = 0; l < r; ++l)
            row.values[l] = w(l) * static_cast<double>(ideg) / static_cast<double>(cd_.classes[l].size());
        out.table.rows.push_back(std::move(row));
        out.table.dims.push_back(ideg);
    }
    int sum = 0;
    for (int dim : out.table.dims) sum += dim * dim;
    if (sum != n) return {};
    out.ok = true;
    return out;
}

}  // namespace

bool close(cd a, cd b, double tol) { return std::abs(a - b) <= tol; }

cd root_of_unity(int num, int den) {
    const int m = ((num % den) + den) % den;
    if (m == 0) return {1.0, 0.0};
    if (2 * m == den) return {-1.0, 0.0};
    if (4 * m == den) return {0.0, 1.0};
    if (4 * m == 3 * den) return {0.0, -1.0};
    const double angle = 2.0 * M_PI * static_cast<double>(m) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

void sort_rows(CharacterTable& t) {
    std::vector<int> idx(t.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return row_before(t.rows[a], t.dims[a], t.rows[b], t.dims[b]);
    });
    std::vector<ClassFunction> rows;
    std::vector<int> dims;
    for (int i : idx) {
        rows.push_back(t.rows[i]);
        dims.push_back(t.dims[i]);
    }
    t.rows = std::move(rows);
    t.dims = std::move(dims);
}

CharacterTable character_table(const GroupPtr& g, std::uint64_t seed) {
    for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
        Attempt a = burnside(g, seed + static_cast<std::uint64_t>(attempt));
        if (!a.ok) continue;
        snap_rows(a.table);
        sort_rows(a.table);
        return std::move(a.table);
    }
    throw Error(ErrorKind::NumericalDegeneracy,
                "class-sum eigenvectors not separated for " + g->label() + " after retries");
}

std::shared_ptr<const CharacterTable> cached_character_table(const GroupPtr& g) {
    struct Entry {
        std::weak_ptr<const GroupTable> owner;
        std::shared_ptr<const CharacterTable> table;
    };
    static std::shared_mutex mutex;
    static std::map<const GroupTable*, Entry> memo;
    {
        std::shared_lock lock(mutex);
        auto it = memo.find(g.get());
        if (it != memo.end() && it->second.owner.lock() == g) return it->second.table;
    }
    auto table = std::make_shared<const CharacterTable>(character_table(g));
    std::unique_lock lock(mutex);
    for (auto it = memo.begin(); it != memo.end();) {
        if (it->second.owner.expired()) it = memo.erase(it);
        else ++it;
    }
    auto& slot = memo[g.get()];
    if (slot.owner.lock() == g && slot.table) return slot.table;
    slot = Entry{g, table};
    return table;
}

CharacterTable tensor_table(const CharacterTable& left, const CharacterTable& right, const GroupPtr& product) {
    const int n2 = right.group->order();
    if (product->order() != left.group->order() * n2)
        throw Error(ErrorKind::GroupMismatch, "product order does not match factors");
    const ConjugacyData& pc = product->conjugacy();
    CharacterTable t;
    t.group = product;
    for (int i = 0; i < left.size(); ++i)
        for (int j = 0; j < right.size(); ++j) {
            ClassFunction row{product, std::vector<cd>(pc.class_count())};
            for (int c = 0; c < pc.class_count(); ++c) {
                const int rep = pc.reps[c];
                row.values[c] = left.value(i, rep / n2) * right.value(j, rep % n2);
            }
            t.rows.push_back(std::move(row));
            t.dims.push_back(left.dims[i] * right.dims[j]);
        }
    sort_rows(t);
    return t;
}

cd inner_product(const ClassFunction& a, const ClassFunction& b) {
    require_same_group(*a.group, *b.group, "inner_product");
    const ConjugacyData& c = a.group->conjugacy();
    cd sum = 0.0;
    for (int k = 0; k < c.class_count(); ++k)
        sum += static_cast<double>(c.classes[k].size()) * std::conj(a.values[k]) * b.values[k];
    return sum / static_cast<double>(a.group->order());
}

ClassFunction induced_character(const GroupPtr& g, const Subgroup& k, const ClassFunction& chi) {
    if (!k.parent || !(k.parent == g || k.parent->same_table(*g)))
        throw Error(ErrorKind::NotSubgroup, "subgroup is not contained in the target group");
    require_same_group(*chi.group, *k.as_group, "induced_character");
    const ConjugacyData& c = g->conjugacy();
    ClassFunction out{g, std::vector<cd>(c.class_count())};
    const double scale = 1.0 / static_cast<double>(k.order());
    for (int cls = 0; cls < c.class_count(); ++cls) {
        const int x = c.reps[cls];
        cd sum = 0.0;
        for (int y = 0; y < g->order(); ++y) {
            const int pos = k.index_of(g->mul(g->mul(g->inv(y), x), y));
            if (pos >= 0) sum += chi.at(pos);
        }
        out.values[cls] = sum * scale;
    }
    return out;
}

ClassFunction restrict_character(const ClassFunction& chi, const Subgroup& k) {
    require_same_group(*chi.group, *k.parent, "restrict_character");
    const ConjugacyData& c = k.as_group->conjugacy();
    ClassFunction out{k.as_group, std::vector<cd>(c.class_count())};
    for (int cls = 0; cls < c.class_count(); ++cls) out.values[cls] = chi.at(k.embed(c.reps[cls]));
    return out;
}

ClassFunction conjugate_character(const ClassFunction& chi) {
    ClassFunction out = chi;
    for (auto& v : out.values) v = std::conj(v);
    return out;
}

ClassFunction regular_character(const GroupPtr& g) {
    ClassFunction out{g, std::vector<cd>(g->conjugacy().class_count(), 0.0)};
    out.values[0] = static_cast<double>(g->order());
    return out;
}

ClassFunction trivial_character(const GroupPtr& g) {
    return ClassFunction{g, std::vector<cd>(g->conjugacy().class_count(), 1.0)};
}

ClassFunction combine(const CharacterTable& t, const std::vector<int>& multiplicities) {
    ClassFunction out{t.group, std::vector<cd>(t.group->conjugacy().class_count(), 0.0)};
    for (int r = 0; r < t.size(); ++r)
        for (size_t c = 0; c < out.values.size(); ++c)
            out.values[c] += static_cast<double>(multiplicities[r]) * t.rows[r].values[c];
    return out;
}

std::vector<int> decompose(const CharacterTable& t, const ClassFunction& chi, double tol) {
    std::vector<int> out(t.size());
    for (int r = 0; r < t.size(); ++r) {
        const cd m = inner_product(t.rows[r], chi);
        const double rounded = std::round(m.real());
        if (std::abs(m - cd(rounded, 0.0)) > tol)
            throw Error(ErrorKind::NonIntegerMultiplicity,
                        "row " + std::to_string(r) + " multiplicity " + std::to_string(m.real()) + "+" +
                            std::to_string(m.imag()) + "i");
        out[r] = static_cast<int>(rounded);
    }
    return out;
}

int find_row(const CharacterTable& t, const ClassFunction& chi, double tol) {
    for (int r = 0; r < t.size(); ++r) {
        bool same = true;
        for (size_t c = 0; c < chi.values.size() && same; ++c) same = close(t.rows[r].values[c], chi.values[c], tol);
        if (same) return r;
    }
    return -1;
}

CyclotomicValue snap_value(const CharacterTable& t, int row, int cls) {
    const GroupTable& G = *t.group;
    const int g = G.conjugacy().reps[cls];
    const int o = G.element_order(g);
    CyclotomicValue v;
    v.order = o;
    v.counts.assign(o, 0);
    v.value = t.rows[row].values[cls];
    // eigenvalue multiplicities of the representing matrix at g
    std::vector<cd> powers(o);
    int x = 0;
    for (int s = 0; s < o; ++s) {
        powers[s] = t.value(row, x);
        x = G.mul(x, g);
    }
    cd exact = 0.0;
    for (int j = 0; j < o; ++j) {
        cd m = 0.0;
        for (int s = 0; s < o; ++s) m += powers[s] * root_of_unity(-j * s, o);
        m /= static_cast<double>(o);
        const double r = std::round(m.real());
        if (r < 0 || std::abs(m - cd(r, 0.0)) > kSnapTol) return v;
        v.counts[j] = static_cast<int>(r);
        exact += r * root_of_unity(j, o);
    }
    if (std::abs(exact - v.value) > kSnapTol) return v;
    v.snapped = true;
    v.value = exact;
    return v;
}

std::string cyclotomic_string(const CyclotomicValue& v) {
    if (!v.snapped) return "";
    std::string out;
    for (int j = 0; j < v.order; ++j) {
        const int c = v.counts[j];
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (j == 0) {
            out += std::to_string(c);
            continue;
        }
        if (c != 1) out += std::to_string(c) + "*";
        out += "E(" + std::to_string(v.order) + ")";
        if (j != 1) out += "^" + std::to_string(j);
    }
    return out.empty() ? "0" : out;
}

}  // namespace qdouble
