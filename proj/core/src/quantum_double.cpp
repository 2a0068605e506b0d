#include "qdouble/quantum_double.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qdouble/error.hpp"

namespace qdouble {

const char* to_string(AnyonKind kind) {
    switch (kind) {
        case AnyonKind::Vacuum: return "vacuum";
        case AnyonKind::Chargeon: return "chargeon";
        case AnyonKind::Fluxion: return "fluxion";
        case AnyonKind::Mixed: return "mixed";
    }
    return "unknown";
}

DGClassFunction DGClassFunction::zero(const GroupPtr& g) {
    const size_t n = static_cast<size_t>(g->order());
    return DGClassFunction{g, std::vector<cd>(n * n, 0.0)};
}

DGClassFunction& DGClassFunction::operator+=(const DGClassFunction& o) {
    require_same_group(*group, *o.group, "DGClassFunction +");
    for (size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}

DGClassFunction& DGClassFunction::operator-=(const DGClassFunction& o) {
    require_same_group(*group, *o.group, "DGClassFunction -");
    for (size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
}

DGClassFunction& DGClassFunction::operator*=(cd s) {
    for (auto& v : values) v *= s;
    return *this;
}

DGClassFunction operator+(DGClassFunction a, const DGClassFunction& b) { return a += b; }
DGClassFunction operator-(DGClassFunction a, const DGClassFunction& b) { return a -= b; }
DGClassFunction operator*(cd s, DGClassFunction a) { return a *= s; }

double max_abs_diff(const DGClassFunction& a, const DGClassFunction& b) {
    require_same_group(*a.group, *b.group, "max_abs_diff");
    double m = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

QuantumDouble::QuantumDouble(GroupPtr g, Route route) : group_(std::move(g)) {
    if (route == Route::Auto && group_->product()) build_product();
    else build_generic();
    finish();
}

void QuantumDouble::build_generic() {
    const ConjugacyData& c = group_->conjugacy();
    for (int k = 0; k < c.class_count(); ++k) {
        centralizers_.push_back(make_subgroup(group_, c.centralizers[k]));
        tables_.push_back(character_table(centralizers_.back().as_group));
    }
}

void QuantumDouble::build_product() {
    const ProductInfo& p = *group_->product();
    const GroupTable& L = *p.left;
    const GroupTable& R = *p.right;
    const int n2 = R.order();
    std::map<int, CharacterTable> left_tables, right_tables;
    auto factor_table = [](const GroupPtr& f, int cls, std::map<int, CharacterTable>& memo) -> const CharacterTable& {
        auto it = memo.find(cls);
        if (it == memo.end()) {
            Subgroup z = make_subgroup(f, f->conjugacy().centralizers[cls]);
            it = memo.emplace(cls, character_table(z.as_group)).first;
        }
        return it->second;
    };
    const ConjugacyData& c = group_->conjugacy();
    for (int k = 0; k < c.class_count(); ++k) {
        const int rep = c.reps[k];
        const int c1 = L.conjugacy().class_of[rep / n2];
        const int c2 = R.conjugacy().class_of[rep % n2];
        centralizers_.push_back(make_subgroup(group_, c.centralizers[k]));
        const CharacterTable& t1 = factor_table(p.left, c1, left_tables);
        const CharacterTable& t2 = factor_table(p.right, c2, right_tables);
        tables_.push_back(tensor_table(t1, t2, centralizers_.back().as_group));
    }
}

void QuantumDouble::finish() {
    const GroupTable& G = *group_;
    const ConjugacyData& c = G.conjugacy();
    const int n = G.order();
    for (int k = 0; k < c.class_count(); ++k) {
        first_anyon_.push_back(static_cast<int>(anyons_.size()));
        const CharacterTable& t = tables_[k];
        const Subgroup& z = centralizers_[k];
        for (int i = 0; i < t.size(); ++i) {
            Anyon x;
            x.class_index = k;
            x.class_rep = c.reps[k];
            x.irrep = i;
            x.irrep_dim = t.dims[i];
            x.dim = static_cast<int>(c.classes[k].size()) * t.dims[i];
            anyons_.push_back(x);
            std::vector<cd> tr(n, 0.0);
            for (int p = 0; p < z.order(); ++p) tr[z.embed(p)] = t.value(i, p);
            traces_.push_back(std::move(tr));
        }
    }
    first_anyon_.push_back(static_cast<int>(anyons_.size()));

    for (int x = 0; x < size(); ++x) {
        const Anyon& ax = anyons_[x];
        const Subgroup& z = centralizers_[ax.class_index];
        std::vector<Entry> entries;
        entries.reserve(n);
        for (int h : c.classes[ax.class_index]) {
            const int k = c.transversal[h];
            for (int m : z.members) entries.push_back({G.conj(k, m), h, traces_[x][m]});
        }
        support_.push_back(std::move(entries));
    }

    dual_.assign(size(), -1);
    op_.assign(size(), -1);
    for (int x = 0; x < size(); ++x) {
        const Anyon& ax = anyons_[x];
        const CharacterTable& t = tables_[ax.class_index];
        ClassFunction conj_row = conjugate_character(t.rows[ax.irrep]);
        const int r = find_row(t, conj_row);
        if (r < 0) throw Error(ErrorKind::NumericalDegeneracy, "conjugate row not found");
        op_[x] = first_anyon_[ax.class_index] + r;

        // (a^-1, pi*) moved onto the canonical rep b of the inverse class
        const int ainv = G.inv(ax.class_rep);
        const int cb = c.class_of[ainv];
        const int kk = c.transversal[ainv];   // kk b kk^-1 = a^-1
        const Subgroup& zb = centralizers_[cb];
        const CharacterTable& tb = tables_[cb];
        const ConjugacyData& zc = zb.as_group->conjugacy();
        ClassFunction moved{zb.as_group, std::vector<cd>(zc.class_count())};
        for (int cls = 0; cls < zc.class_count(); ++cls)
            moved.values[cls] = std::conj(traces_[x][G.conj(kk, zb.embed(zc.reps[cls]))]);
        const int rd = find_row(tb, moved);
        if (rd < 0) throw Error(ErrorKind::NumericalDegeneracy, "dual row not found");
        dual_[x] = first_anyon_[cb] + rd;
    }
}

int QuantumDouble::index_of(int class_index, int irrep) const { return first_anyon_[class_index] + irrep; }

DGClassFunction QuantumDouble::character(int anyon) const {
    DGClassFunction out = DGClassFunction::zero(group_);
    for (const Entry& e : support_[anyon]) out.at(e.g, e.h) = e.value;
    return out;
}

DGClassFunction QuantumDouble::character_with_transversal(int anyon, const std::vector<int>& transversal) const {
    const GroupTable& G = *group_;
    const Anyon& ax = anyons_[anyon];
    DGClassFunction out = DGClassFunction::zero(group_);
    for (int h : G.conjugacy().classes[ax.class_index]) {
        const int k = transversal[h];
        if (G.conj(k, ax.class_rep) != h) throw Error(ErrorKind::InvalidInput, "transversal entry is not valid");
        const int kinv = G.inv(k);
        for (int g = 0; g < G.order(); ++g)
            if (G.commute(g, h)) out.at(g, h) = traces_[anyon][G.conj(kinv, g)];
    }
    return out;
}

AnyonKind QuantumDouble::kind(int anyon) const {
    const Anyon& a = anyons_[anyon];
    if (anyon == 0) return AnyonKind::Vacuum;
    if (a.class_rep == 0) return AnyonKind::Chargeon;
    if (a.irrep == 0) return AnyonKind::Fluxion;
    return AnyonKind::Mixed;
}

std::string QuantumDouble::label(int anyon) const {
    const Anyon& a = anyons_[anyon];
    return group_->element_label(a.class_rep) + ":" + std::to_string(a.irrep);
}

cd dg_inner_product(const DGClassFunction& a, const DGClassFunction& b) {
    require_same_group(*a.group, *b.group, "dg_inner_product");
    cd sum = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) sum += std::conj(a.values[i]) * b.values[i];
    return sum / static_cast<double>(a.group->order());
}

std::vector<int> dg_decompose(const QuantumDouble& qd, const DGClassFunction& chi, double tol) {
    require_same_group(*qd.group(), *chi.group, "dg_decompose");
    const double inv_n = 1.0 / static_cast<double>(qd.group()->order());
    std::vector<int> out(qd.size());
    for (int x = 0; x < qd.size(); ++x) {
        cd m = 0.0;
        for (const auto& e : qd.support(x)) m += std::conj(e.value) * chi(e.g, e.h);
        m *= inv_n;
        const double r = std::round(m.real());
        if (std::abs(m - cd(r, 0.0)) > tol)
            throw Error(ErrorKind::NonIntegerMultiplicity, "anyon " + qd.label(x) + " multiplicity " +
                                                               std::to_string(m.real()) + "+" +
                                                               std::to_string(m.imag()) + "i");
        out[x] = static_cast<int>(r);
    }
    return out;
}

DGClassFunction dg_combine(const QuantumDouble& qd, const std::vector<int>& multiplicities) {
    DGClassFunction out = DGClassFunction::zero(qd.group());
    for (int x = 0; x < qd.size(); ++x) {
        if (multiplicities[x] == 0) continue;
        for (const auto& e : qd.support(x)) out.at(e.g, e.h) += static_cast<double>(multiplicities[x]) * e.value;
    }
    return out;
}

DGClassFunction regular_dg_character(const GroupPtr& g) {
    // left regular action on the basis g h*: only e h* with gh = h survive
    DGClassFunction out = DGClassFunction::zero(g);
    for (int h = 0; h < g->order(); ++h) out.at(0, h) = static_cast<double>(g->order());
    return out;
}

DGClassFunction tensor_character(const DGClassFunction& x, const DGClassFunction& y) {
    require_same_group(*x.group, *y.group, "tensor_character");
    const GroupTable& G = *x.group;
    const int n = G.order();
    DGClassFunction out = DGClassFunction::zero(x.group);
    for (int g = 0; g < n; ++g)
        for (int h1 = 0; h1 < n; ++h1) {
            const cd a = x(g, h1);
            if (a == cd(0.0, 0.0)) continue;
            for (int h2 = 0; h2 < n; ++h2) {
                const cd b = y(g, h2);
                if (b != cd(0.0, 0.0)) out.at(g, G.mul(h1, h2)) += a * b;
            }
        }
    return out;
}

Eigen::MatrixXcd s_matrix(const QuantumDouble& qd) {
    const GroupTable& G = *qd.group();
    const ConjugacyData& c = G.conjugacy();
    const int m = qd.size();
    const int r = c.class_count();
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(m, m);
    std::vector<int> first(r + 1, m);
    for (int x = m - 1; x >= 0; --x) first[qd.anyon(x).class_index] = x;
    for (int k = r - 1; k >= 0; --k) first[k] = std::min(first[k], first[k + 1]);

    std::vector<std::pair<int, int>> terms;
    for (int c1 = 0; c1 < r; ++c1) {
        const int a = c.reps[c1];
        for (int c2 = 0; c2 < r; ++c2) {
            const int a2 = c.reps[c2];
            terms.clear();
            for (int h = 0; h < G.order(); ++h) {
                const int moved = G.conj(h, a2);
                if (!G.commute(moved, a)) continue;
                const int hinv = G.inv(h);
                terms.emplace_back(G.conj(h, G.inv(a2)), G.conj(hinv, G.inv(a)));
            }
            const double scale = 1.0 / (static_cast<double>(c.centralizers[c1].size()) *
                                        static_cast<double>(c.centralizers[c2].size()));
            for (int x = first[c1]; x < first[c1 + 1]; ++x)
                for (int y = first[c2]; y < first[c2 + 1]; ++y) {
                    cd sum = 0.0;
                    for (const auto& [u, v] : terms) sum += qd.centralizer_trace(x, u) * qd.centralizer_trace(y, v);
                    s(x, y) = sum * scale;
                }
        }
    }
    return s;
}

Eigen::VectorXcd t_vector(const QuantumDouble& qd) {
    Eigen::VectorXcd t(qd.size());
    for (int x = 0; x < qd.size(); ++x) {
        const Anyon& a = qd.anyon(x);
        t(x) = qd.centralizer_trace(x, a.class_rep) / static_cast<double>(a.irrep_dim);
    }
    return t;
}

FusionTensor fusion_verlinde(const QuantumDouble& qd, const Eigen::MatrixXcd& s) {
    const int m = qd.size();
    if (s.rows() != m || s.cols() != m) throw Error(ErrorKind::SizeMismatch, "S-matrix does not match the double");
    FusionTensor f;
    f.size = m;
    f.n.assign(static_cast<size_t>(m) * m * m, 0);
    std::vector<cd> w(m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            for (int u = 0; u < m; ++u) w[u] = s(x, u) * s(y, u) / s(0, u);
            for (int z = 0; z < m; ++z) {
                cd sum = 0.0;
                for (int u = 0; u < m; ++u) sum += w[u] * std::conj(s(z, u));
                const double rounded = std::round(sum.real());
                const double res = std::abs(sum - cd(rounded, 0.0));
                f.max_residual = std::max(f.max_residual, res);
                if (res > 1e-6 || rounded < 0)
                    throw Error(ErrorKind::NegativeOrNonInteger,
                                "N(" + qd.label(x) + ", " + qd.label(y) + "; " + qd.label(z) +
                                    ") = " + std::to_string(sum.real()) + "+" + std::to_string(sum.imag()) + "i");
                f.n[(static_cast<size_t>(x) * m + y) * m + z] = static_cast<int>(rounded);
            }
        }
    return f;
}

STRelation measure_st_relation(const Eigen::MatrixXcd& s, const Eigen::VectorXcd& t) {
    const Eigen::MatrixXcd st = s * t.asDiagonal();
    const Eigen::MatrixXcd lhs = st * st * st;
    const Eigen::MatrixXcd s2 = s * s;
    const cd c = (s2.adjoint() * lhs).trace() / (s2.adjoint() * s2).trace();
    return {c, (lhs - c * s2).cwiseAbs().maxCoeff()};
}

}  // namespace qdouble
