#include "qdouble/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qdouble/error.hpp"

namespace qdouble {

ModularData modular_data(const QuantumDouble& qd) { return {s_matrix(qd), t_vector(qd)}; }

InvariantVerdict is_modular_invariant(const Eigen::MatrixXd& m, const ModularData& d, double tol) {
    const Eigen::Index n = d.s.rows();
    if (m.rows() != n || m.cols() != n)
        throw Error(ErrorKind::SizeMismatch, "candidate is " + std::to_string(m.rows()) + "x" +
                                                 std::to_string(m.cols()) + ", modular data has " + std::to_string(n));
    InvariantVerdict v;
    const Eigen::MatrixXcd mc = m.cast<cd>();
    v.s_residual = (mc * d.s - d.s * mc).cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd t = d.t.asDiagonal();
    v.t_residual = (mc * t - t * mc).cwiseAbs().maxCoeff();
    v.nonnegative_integer = true;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const double x = m(i, j);
            if (x < 0 || std::abs(x - std::round(x)) > 0) v.nonnegative_integer = false;
        }
    v.vacuum_unit = n > 0 && m(0, 0) == 1.0;
    v.invariant = v.s_residual <= tol && v.t_residual <= tol && v.nonnegative_integer && v.vacuum_unit;
    return v;
}

Eigen::MatrixXd permutation_matrix(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int x = 0; x < n; ++x) m(x, perm[x]) = 1.0;
    return m;
}

std::vector<int> transposition(int size, int x, int y) {
    std::vector<int> p(size);
    std::iota(p.begin(), p.end(), 0);
    std::swap(p[x], p[y]);
    return p;
}

Eigen::MatrixXd charge_conjugation_matrix(const QuantumDouble& qd) {
    std::vector<int> p(qd.size());
    for (int x = 0; x < qd.size(); ++x) p[x] = qd.dual(x);
    return permutation_matrix(p);
}

std::vector<TranspositionHit> search_transposition_invariants(const QuantumDouble& qd, const ModularData& d) {
    const int n = qd.size();
    if (d.s.rows() != n) throw Error(ErrorKind::SizeMismatch, "modular data does not match the double");
    constexpr double tol = 1e-8;
    std::vector<TranspositionHit> hits;
    for (int x = 1; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            if (std::abs(d.t(x) - d.t(y)) > tol) continue;
            if (std::abs(d.s(x, x) - d.s(y, y)) > tol) continue;
            bool rows_match = true;
            for (int z = 0; z < n && rows_match; ++z) {
                if (z == x || z == y) continue;
                rows_match = std::abs(d.s(x, z) - d.s(y, z)) <= tol && std::abs(d.s(z, x) - d.s(z, y)) <= tol;
            }
            if (!rows_match) continue;
            const InvariantVerdict v = is_modular_invariant(permutation_matrix(transposition(n, x, y)), d, tol);
            if (!v.invariant) continue;
            hits.push_back({x, y, qd.kind(x), qd.kind(y), v.s_residual, v.t_residual});
        }
    return hits;
}

namespace {

ProofStep step(const std::string& name, bool ok, const std::string& detail) { return {name, ok, detail}; }

}  // namespace

NearFieldInvariantReport verify_near_field_invariant(const NearFieldSpec& h) {
    const GroupPtr g = affine_group(h);
    const QuantumDouble qd(g);
    const GroupTable& G = *g;
    const ConjugacyData& conj = G.conjugacy();
    NearFieldInvariantReport r;
    r.group_order = G.order();
    r.pair = near_field_pair(qd, h);
    const int c = r.pair.chargeon, f = r.pair.fluxion;
    const Anyon& fa = qd.anyon(f);
    const int a = fa.class_rep;
    const int a_class = fa.class_index;
    const std::vector<int>& abar = conj.classes[a_class];
    const CharacterTable& tg = qd.centralizer_table(0);
    const int pi_row = qd.anyon(c).irrep;
    auto tr_pi = [&](int x) { return tg.value(pi_row, x); };

    r.steps.push_back(step("(a) C and F differ from the vacuum", c != 0 && f != 0 && pi_row != 0 && a != 0,
                           "pi row " + std::to_string(pi_row) + ", a = " + G.element_label(a)));

    r.steps.push_back(step("(b) dim pi = |class of a|", tg.dims[pi_row] == static_cast<int>(abar.size()),
                           std::to_string(tg.dims[pi_row]) + " vs " + std::to_string(abar.size())));

    std::vector<int> e_abar{0};
    e_abar.insert(e_abar.end(), abar.begin(), abar.end());
    bool is_sub = true;
    try {
        make_subgroup(g, e_abar);
    } catch (const Error&) {
        is_sub = false;
    }
    r.steps.push_back(step("(c) {e} u class(a) is a subgroup", is_sub, std::to_string(e_abar.size()) + " elements"));

    bool d_ok = true;
    for (int mu = 0; mu < tg.size(); ++mu) {
        if (mu == pi_row) continue;
        if (!close(tg.value(mu, a), static_cast<double>(tg.dims[mu]), 1e-8) ||
            !close(tg.value(mu, G.inv(a)), static_cast<double>(tg.dims[mu]), 1e-8))
            d_ok = false;
    }
    r.steps.push_back(step("(d) tr_mu(a) = dim mu for mu != pi", d_ok, ""));

    std::vector<char> in_e_abar(G.order(), 0);
    for (int x : e_abar) in_e_abar[x] = 1;
    bool e_ok = close(tr_pi(a), -1.0, 1e-8) && close(tr_pi(G.inv(a)), -1.0, 1e-8);
    for (int x = 0; x < G.order(); ++x)
        if (!in_e_abar[x] && !close(tr_pi(x), 0.0, 1e-8)) e_ok = false;
    r.steps.push_back(step("(e) tr_pi vanishes off {e} u class(a), tr_pi(a) = -1", e_ok, ""));

    const std::vector<int>& za = conj.centralizers[a_class];
    r.steps.push_back(step("(f) |Z(a)| = |class(a)| + 1", za.size() == abar.size() + 1,
                           std::to_string(za.size()) + " vs " + std::to_string(abar.size() + 1)));

    std::vector<int> sorted_e_abar = e_abar;
    std::sort(sorted_e_abar.begin(), sorted_e_abar.end());
    r.steps.push_back(step("(g) Z(a) = {e} u class(a)", za == sorted_e_abar, ""));

    bool h_ok = true;
    std::string h_detail;
    {
        const int q = static_cast<int>(za.size());
        int p = 0;
        for (int x : za) {
            if (x == 0) continue;
            for (int y : za)
                if (!G.commute(x, y)) h_ok = false;
            if (p == 0) p = G.element_order(x);
            if (G.element_order(x) != p) h_ok = false;
        }
        bool prime = p > 1;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        int rem = q;
        while (prime && rem % p == 0) rem /= p;
        h_ok = h_ok && prime && rem == 1 && q == h.q && G.order() == q * (q - 1);
        h_detail = "|Z(a)| = " + std::to_string(q) + ", exponent " + std::to_string(p);
    }
    r.steps.push_back(step("(h) Z(a) elementary abelian of order q, |G| = q(q-1)", h_ok, h_detail));

    const ModularData d = modular_data(qd);
    const Eigen::MatrixXd p = permutation_matrix(transposition(qd.size(), c, f));
    r.transposition = is_modular_invariant(p, d);
    r.with_conjugation = is_modular_invariant(p * charge_conjugation_matrix(qd), d);
    r.steps.push_back(step("transposition (C F) is a modular invariant", r.transposition.invariant,
                           "S residual " + std::to_string(r.transposition.s_residual)));
    r.steps.push_back(step("(C F) J is a modular invariant", r.with_conjugation.invariant,
                           "S residual " + std::to_string(r.with_conjugation.s_residual)));
    r.passed = std::all_of(r.steps.begin(), r.steps.end(), [](const ProofStep& s) { return s.passed; });
    return r;
}

}  // namespace qdouble
