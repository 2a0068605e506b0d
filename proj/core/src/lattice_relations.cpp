#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "qdouble/error.hpp"
#include "qdouble/lattice.hpp"

namespace qdouble {

bool RelationSuiteReport::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.passed; });
}

double RelationSuiteReport::worst() const {
    double w = 0.0;
    for (const auto& c : checks) w = std::max(w, c.residual);
    return w;
}

namespace {

using Vec = Eigen::VectorXcd;
using Fn = std::function<Vec(const Vec&)>;

class Runner {
public:
    Runner(std::vector<Vec> pool, const RelationSuiteOptions& opt, RelationSuiteReport& rep)
        : pool_(std::move(pool)), opt_(opt), rep_(rep) {}

    // tuples: a lower bound on the parameter tuples of the family, so that each
    // call takes enough states for the family to see the whole pool; 0 for
    // families that feed states in themselves
    void begin(std::string name, long tuples) {
        finish();
        const long pool = static_cast<long>(pool_.size());
        per_call_ = tuples <= 0 ? 1 : std::max(1L, (pool + tuples - 1) / tuples);
        cur_ = RelationCheck{};
        cur_.name = std::move(name);
        started_ = std::chrono::steady_clock::now();
        used_.assign(pool_.size(), 0);
        open_ = true;
    }

    // lhs(v) == rhs(v) on one or all states of the pool
    void equal(const Fn& lhs, const Fn& rhs) {
        for (size_t idx : pick()) {
            const Vec& v = pool_[idx];
            record(idx, (lhs(v) - rhs(v)).norm());
        }
    }

    void zero(const Fn& op) {
        for (size_t idx : pick()) record(idx, op(pool_[idx]).norm());
    }

    // <x|A y> == <B x|y>, i.e. B is the adjoint of A
    void adjoint(const LatticeOperator& a, const LatticeOperator& b) {
        for (size_t idx : pick()) {
            const Vec& x = pool_[idx];
            const Vec& y = pool_[(idx + 1) % pool_.size()];
            record(idx, std::abs(x.dot(a.apply(y)) - b.apply(x).dot(y)));
        }
    }

    void scalar(size_t idx, double residual) { record(idx, residual); }

    void finish() {
        if (!open_) return;
        open_ = false;
        if (cur_.evaluations == 0) return;   // nothing of this kind on the patch
        cur_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
        cur_.states = static_cast<int>(std::count(used_.begin(), used_.end(), 1));
        cur_.passed = cur_.evaluations > 0 && cur_.residual < opt_.tol;
        rep_.checks.push_back(cur_);
    }

    size_t size() const { return pool_.size(); }
    const Vec& state(size_t i) const { return pool_[i]; }

private:
    std::vector<size_t> pick() {
        if (opt_.every_state) {
            std::vector<size_t> all(pool_.size());
            for (size_t i = 0; i < all.size(); ++i) all[i] = i;
            return all;
        }
        std::vector<size_t> out;
        for (long i = 0; i < per_call_; ++i) out.push_back(rot_++ % pool_.size());
        return out;
    }

    void record(size_t idx, double r) {
        used_[idx] = 1;
        ++cur_.evaluations;
        cur_.residual = std::isnan(r) ? INFINITY : std::max(cur_.residual, r);
    }

    std::vector<Vec> pool_;
    const RelationSuiteOptions& opt_;
    RelationSuiteReport& rep_;
    RelationCheck cur_;
    std::vector<char> used_;
    size_t rot_ = 0;
    long per_call_ = 1;
    bool open_ = false;
    std::chrono::steady_clock::time_point started_;
};

std::string site_name(const Site& s) {
    return "(" + std::to_string(s.vertex.x) + "," + std::to_string(s.vertex.y) + ")/(" + std::to_string(s.face.x) +
           "," + std::to_string(s.face.y) + ")";
}

template <class T>
using Table = std::vector<std::vector<T>>;

}  // namespace

RelationSuiteReport run_relation_suite(const PatchPtr& patch, const RibbonSpec& ribbon,
                                       const RelationSuiteOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    if (options.states < 1) throw Error(ErrorKind::InvalidInput, "relation suite needs at least one state");
    RelationSuiteReport rep;
    rep.patch = patch->label();
    const GroupTable& G = *patch->group();
    const int n = G.order();
    const ResolvedRibbon rr = resolve_ribbon(*patch, ribbon);
    const Site s0 = rr.start, s1 = rr.end;
    const bool wall = patch->has_boundary();

    std::vector<Vec> pool;
    for (int i = 0; i < options.states; ++i) pool.push_back(random_state(patch, options.seed + 7919ULL * i).amplitudes);
    std::vector<Vec> grounds;
    for (int i = 0; i < options.states; ++i)
        grounds.push_back(ground_state(patch, options.seed + 1000003ULL * (i + 1)).amplitudes);
    Runner run(pool, options, rep);
    const Vec zero_vec = Vec::Zero(patch->dimension());
    const long n2 = static_cast<long>(n) * n;

    // ---- local operators ----
    auto site_elements = [&](const Site& s) {
        std::vector<int> out;
        if (patch->is_wall_vertex(s.vertex)) return patch->subgroup().members;
        for (int x = 0; x < n; ++x) out.push_back(x);
        return out;
    };
    auto is_internal = [&](const Site& s) {
        return !patch->is_wall_vertex(s.vertex) && patch->vertex_complete(s.vertex) && patch->face_complete(s.face);
    };

    std::vector<Site> sites;
    for (const Site& s : {s0, s1})
        if (patch->vertex_complete(s.vertex) && patch->site_valid(s)) sites.push_back(s);

    std::vector<Table<LatticeOperator>> A_at(sites.size()), B_at(sites.size());
    for (size_t si = 0; si < sites.size(); ++si) {
        A_at[si].assign(1, std::vector<LatticeOperator>(n));
        B_at[si].assign(1, std::vector<LatticeOperator>(n));
        for (int g : site_elements(sites[si])) A_at[si][0][g] = vertex_op(patch, sites[si].vertex, g);
        for (int h = 0; h < n; ++h) B_at[si][0][h] = face_op(patch, sites[si], h);
    }

    for (size_t si = 0; si < sites.size(); ++si) {
        const Site& s = sites[si];
        const auto els = site_elements(s);
        const auto& A = A_at[si][0];
        const auto& B = B_at[si][0];
        const std::string at = " at " + site_name(s);
        const bool tilde = patch->is_wall_vertex(s.vertex);
        const long ne = static_cast<long>(els.size());
        run.begin(std::string(tilde ? "A~^k A~^l = A~^{kl}" : "A^g A^g' = A^{gg'}") + at, ne * ne);
        for (int g : els)
            for (int g2 : els)
                run.equal([&](const Vec& v) { return A[g].apply(A[g2].apply(v)); },
                          [&, g, g2](const Vec& v) { return A[G.mul(g, g2)].apply(v); });
        run.begin(std::string(tilde ? "A~^k adjoint is A~^{k^-1}" : "A^g adjoint is A^{g^-1}") + at, ne);
        for (int g : els) run.adjoint(A[g], A[G.inv(g)]);
        const std::vector<int> flux = tilde ? patch->subgroup().members : els;
        const long nf = static_cast<long>(flux.size());
        run.begin("B^h B^h' = delta B^h" + at, nf * nf);
        for (int h : flux)
            for (int h2 : flux)
                run.equal([&](const Vec& v) { return B[h].apply(B[h2].apply(v)); },
                          [&, h, h2](const Vec& v) { return h == h2 ? B[h].apply(v) : zero_vec; });
        run.begin("B^h self-adjoint" + at, nf);
        for (int h : flux) run.adjoint(B[h], B[h]);
        if (is_internal(s)) {
            run.begin("A^g B^h = B^{ghg^-1} A^g" + at, n2);
            for (int g = 0; g < n; ++g)
                for (int h = 0; h < n; ++h)
                    run.equal([&](const Vec& v) { return A[g].apply(B[h].apply(v)); },
                              [&, g, h](const Vec& v) { return B[G.conj(g, h)].apply(A[g].apply(v)); });
        }
    }
    if (sites.size() == 2 && sites[0].vertex != sites[1].vertex) {
        const auto e0 = site_elements(sites[0]), e1 = site_elements(sites[1]);
        run.begin("operators at different sites commute", 4L * static_cast<long>(e0.size() * e1.size()));
        const auto& A0 = A_at[0][0];
        const auto& A1 = A_at[1][0];
        const auto& B0 = B_at[0][0];
        const auto& B1 = B_at[1][0];
        for (int a : e0)
            for (int b : e1) {
                run.equal([&](const Vec& v) { return A0[a].apply(A1[b].apply(v)); },
                          [&](const Vec& v) { return A1[b].apply(A0[a].apply(v)); });
                run.equal([&](const Vec& v) { return A0[a].apply(B1[b].apply(v)); },
                          [&](const Vec& v) { return B1[b].apply(A0[a].apply(v)); });
                run.equal([&](const Vec& v) { return B0[a].apply(A1[b].apply(v)); },
                          [&](const Vec& v) { return A1[b].apply(B0[a].apply(v)); });
                run.equal([&](const Vec& v) { return B0[a].apply(B1[b].apply(v)); },
                          [&](const Vec& v) { return B1[b].apply(B0[a].apply(v)); });
            }
    }

    // boundary vertex operators away from s0
    if (wall) {
        const auto& K = patch->subgroup().members;
        for (GridPoint v : patch->wall_vertices()) {
            if (v == s0.vertex) continue;
            std::vector<LatticeOperator> At(n);
            for (int k : K) At[k] = boundary_vertex_op(patch, v, k);
            const std::string at = " at (" + std::to_string(v.x) + ",0)";
            run.begin("A~^k A~^l = A~^{kl}" + at, static_cast<long>(K.size() * K.size()));
            for (int k : K)
                for (int l : K)
                    run.equal([&](const Vec& x) { return At[k].apply(At[l].apply(x)); },
                              [&, k, l](const Vec& x) { return At[G.mul(k, l)].apply(x); });
            run.begin("A~^k adjoint is A~^{k^-1}" + at, static_cast<long>(K.size()));
            for (int k : K) run.adjoint(At[k], At[G.inv(k)]);
        }
    }

    // Hamiltonian projectors
    const std::vector<HamiltonianTerm> terms = hamiltonian_terms(patch);
    run.begin("Hamiltonian terms are projections", 2L * static_cast<long>(terms.size()));
    for (const auto& t : terms) {
        run.equal([&](const Vec& v) { return t.projector.apply(t.projector.apply(v)); },
                  [&](const Vec& v) { return t.projector.apply(v); });
        run.adjoint(t.projector, t.projector);
    }
    run.begin("Hamiltonian terms commute", 1);
    for (size_t i = 0; i < terms.size(); ++i)
        for (size_t j = i + 1; j < terms.size(); ++j) {
            const auto& a = terms[i].support;
            const auto& b = terms[j].support;
            if (std::none_of(a.begin(), a.end(), [&](int e) { return std::find(b.begin(), b.end(), e) != b.end(); }))
                continue;
            run.equal([&](const Vec& v) { return terms[i].projector.apply(terms[j].projector.apply(v)); },
                      [&](const Vec& v) { return terms[j].projector.apply(terms[i].projector.apply(v)); });
        }
    run.begin("ground states are fixed by every term", 0);
    for (size_t gi = 0; gi < grounds.size(); ++gi) {
        double worst = 0.0;
        for (const auto& t : terms) worst = std::max(worst, (t.projector.apply(grounds[gi]) - grounds[gi]).norm());
        run.scalar(gi, worst);
    }

    // sites off the ribbon endpoints
    std::vector<GridPoint> other_vertices;
    for (GridPoint v : patch->internal_vertices())
        if (v != s0.vertex && v != s1.vertex) other_vertices.push_back(v);
    for (GridPoint v : patch->wall_vertices())
        if (v != s0.vertex && v != s1.vertex) other_vertices.push_back(v);
    std::set<GridPoint> visited(rr.visited_faces.begin(), rr.visited_faces.end());
    std::vector<Site> quiet_faces;    // not touched by the ribbon: every B^h commutes
    std::vector<GridPoint> passed_faces;   // crossed through: the projector commutes
    std::vector<GridPoint> all_faces = patch->faces();
    for (int e = 0; e < patch->edge_count(); ++e)
        if (patch->is_wall_edge(e)) all_faces.push_back({patch->edges()[e].x, -1});
    for (GridPoint f : all_faces) {
        if (f == s0.face || f == s1.face) continue;
        const Site s = patch->is_outer_face(f) ? Site{{f.x, 0}, f} : Site{f, f};
        if (visited.count(f)) passed_faces.push_back(f);
        else quiet_faces.push_back(s);
    }
    auto face_flux = [&](const Site& s) {
        if (patch->is_outer_face(s.face)) return patch->subgroup().members;
        std::vector<int> all(n);
        for (int x = 0; x < n; ++x) all[x] = x;
        return all;
    };
    auto passed_projector = [&](GridPoint f) {
        return patch->is_outer_face(f) ? boundary_face_projector(patch, Site{{f.x, 0}, f}) : face_projector(patch, f);
    };

    const bool bulk_ok = !wall || (patch->subgroup().order() == n && patch->trivial_cocycle());
    const int e_id = 0;

    // ---- bulk ribbon operators ----
    if (bulk_ok) {
        Table<LatticeOperator> F(n, std::vector<LatticeOperator>(n));
        for (int h = 0; h < n; ++h)
            for (int g = 0; g < n; ++g) F[h][g] = ribbon_op(patch, ribbon, h, g);
        const auto& A0 = A_at[0][0];
        const auto& B0 = B_at[0][0];
        const auto& A1 = A_at[sites.size() - 1][0];
        const auto& B1 = B_at[sites.size() - 1][0];
        if (sites.size() != 2) throw Error(ErrorKind::InvalidRibbon, "ribbon endpoints must be complete sites");

        run.begin("F^{h,g} F^{h',g'} = delta_{g,g'} F^{hh',g}", n2 * n2);
        for (int h = 0; h < n; ++h)
            for (int g = 0; g < n; ++g)
                for (int h2 = 0; h2 < n; ++h2)
                    for (int g2 = 0; g2 < n; ++g2)
                        run.equal([&](const Vec& v) { return F[h][g].apply(F[h2][g2].apply(v)); },
                                  [&, h, g, h2, g2](const Vec& v) {
                                      return g == g2 ? F[G.mul(h, h2)][g].apply(v) : zero_vec;
                                  });
        run.begin("F^{h,g} adjoint is F^{h^-1,g}", n2);
        for (int h = 0; h < n; ++h)
            for (int g = 0; g < n; ++g) run.adjoint(F[h][g], F[G.inv(h)][g]);
        run.begin("sum_g F^{e,g} = 1", static_cast<long>(run.size()));
        {
            LatticeOperator sum;
            for (int g = 0; g < n; ++g) sum.add(F[e_id][g]);
            for (size_t i = 0; i < run.size(); ++i)
                run.equal([&](const Vec& v) { return sum.apply(v); }, [](const Vec& v) { return v; });
        }
        run.begin("F commutes with vertex operators off its ends", n2);
        for (GridPoint v : other_vertices) {
            const Site t{v, v};
            for (int k : site_elements(t)) {
                const LatticeOperator Ak = vertex_op(patch, v, k);
                for (int h = 0; h < n; ++h)
                    for (int g = 0; g < n; ++g)
                        run.equal([&](const Vec& x) { return Ak.apply(F[h][g].apply(x)); },
                                  [&](const Vec& x) { return F[h][g].apply(Ak.apply(x)); });
            }
        }
        run.begin("F commutes with face operators off its ends", n2);
        for (const Site& s : quiet_faces)
            for (int k : face_flux(s)) {
                const LatticeOperator Bk = face_op(patch, s, k);
                for (int h = 0; h < n; ++h)
                    for (int g = 0; g < n; ++g)
                        run.equal([&](const Vec& x) { return Bk.apply(F[h][g].apply(x)); },
                                  [&](const Vec& x) { return F[h][g].apply(Bk.apply(x)); });
            }
        for (GridPoint f : passed_faces) {
            const LatticeOperator P = passed_projector(f);
            for (int h = 0; h < n; ++h)
                for (int g = 0; g < n; ++g)
                    run.equal([&](const Vec& x) { return P.apply(F[h][g].apply(x)); },
                              [&](const Vec& x) { return F[h][g].apply(P.apply(x)); });
        }
        run.begin("A_s0^k F^{h,g} = F^{khk^-1,kg} A_s0^k", n2 * n);
        for (int k : site_elements(s0))
            for (int h = 0; h < n; ++h)
                for (int g = 0; g < n; ++g)
                    run.equal([&](const Vec& v) { return A0[k].apply(F[h][g].apply(v)); },
                              [&, k, h, g](const Vec& v) { return F[G.conj(k, h)][G.mul(k, g)].apply(A0[k].apply(v)); });
        run.begin("B_s0^k F^{h,g} = F^{h,g} B_s0^{kh}", n2 * n);
        for (int k = 0; k < n; ++k)
            for (int h = 0; h < n; ++h)
                for (int g = 0; g < n; ++g)
                    run.equal([&](const Vec& v) { return B0[k].apply(F[h][g].apply(v)); },
                              [&, k, h, g](const Vec& v) { return F[h][g].apply(B0[G.mul(k, h)].apply(v)); });
        run.begin("A_s1^k F^{h,g} = F^{h,gk^-1} A_s1^k", n2 * n);
        for (int k = 0; k < n; ++k)
            for (int h = 0; h < n; ++h)
                for (int g = 0; g < n; ++g)
                    run.equal([&](const Vec& v) { return A1[k].apply(F[h][g].apply(v)); },
                              [&, k, h, g](const Vec& v) { return F[h][G.mul(g, G.inv(k))].apply(A1[k].apply(v)); });
        run.begin("B_s1^k F^{h,g} = F^{h,g} B_s1^{g^-1h^-1gk}", n2 * n);
        for (int k = 0; k < n; ++k)
            for (int h = 0; h < n; ++h)
                for (int g = 0; g < n; ++g)
                    run.equal([&](const Vec& v) { return B1[k].apply(F[h][g].apply(v)); },
                              [&, k, h, g](const Vec& v) {
                                  const int m = G.mul(G.conj(G.inv(g), G.inv(h)), k);
                                  return F[h][g].apply(B1[m].apply(v));
                              });
        run.begin("ground expectation <F^{h,g}> = delta_{h,e}/|G|", 0);
        for (size_t gi = 0; gi < grounds.size(); ++gi) {
            double worst = 0.0;
            for (int h = 0; h < n; ++h)
                for (int g = 0; g < n; ++g) {
                    const cd val = grounds[gi].dot(F[h][g].apply(grounds[gi]));
                    worst = std::max(worst, std::abs(val - (h == e_id ? 1.0 / n : 0.0)));
                }
            run.scalar(gi, worst);
        }
        run.begin("excitation Gram matrix is identity/|G|", 0);
        for (size_t gi = 0; gi < grounds.size(); ++gi) {
            std::vector<Vec> w;
            for (int h = 0; h < n; ++h)
                for (int g = 0; g < n; ++g) w.push_back(F[G.inv(h)][g].apply(grounds[gi]));
            double worst = 0.0;
            for (size_t a = 0; a < w.size(); ++a)
                for (size_t b = a; b < w.size(); ++b)
                    worst = std::max(worst, std::abs(w[a].dot(w[b]) - (a == b ? 1.0 / n : 0.0)));
            run.scalar(gi, worst);
        }
    }

    // ---- boundary ribbon operators ----
    if (wall) {
        const Subgroup& Ks = patch->subgroup();
        const GroupTable& Kg = *Ks.as_group;
        const TwoCocycle& phi = patch->cocycle();
        const auto& K = Ks.members;
        const int m = Ks.order();
        if (sites.size() != 2) throw Error(ErrorKind::InvalidRibbon, "ribbon endpoints must be complete sites");
        const auto& A0 = A_at[0][0];
        const auto& B0 = B_at[0][0];
        const auto& A1 = A_at[1][0];
        const auto& B1 = B_at[1][0];
        // indexed by K-local k and parent g
        Table<LatticeOperator> Ft(m, std::vector<LatticeOperator>(n)), T(m, std::vector<LatticeOperator>(n));
        for (int kl = 0; kl < m; ++kl)
            for (int g = 0; g < n; ++g) {
                Ft[kl][g] = boundary_ribbon_op(patch, ribbon, K[kl], g);
                T[kl][g] = invariant_op(patch, ribbon, K[kl], g);
            }
        auto loc = [&](int k) { return Ks.index_of(k); };
        const long mn = static_cast<long>(m) * n;
        auto scaled = [](const LatticeOperator& op, cd c) {
            return [&op, c](const Vec& v) -> Vec { return c * op.apply(v); };
        };

        run.begin("F~^{k,g} F~^{k',g'} = delta_{g,g'} phi(k,k') F~^{kk',g}", mn * mn);
        for (int a = 0; a < m; ++a)
            for (int g = 0; g < n; ++g)
                for (int b = 0; b < m; ++b)
                    for (int g2 = 0; g2 < n; ++g2)
                        run.equal([&](const Vec& v) { return Ft[a][g].apply(Ft[b][g2].apply(v)); },
                                  [&, a, b, g, g2](const Vec& v) -> Vec {
                                      if (g != g2) return zero_vec;
                                      return phi(a, b) * Ft[Kg.mul(a, b)][g].apply(v);
                                  });
        run.begin("F~^{k,g} adjoint is F~^{k^-1,g}", mn);
        for (int a = 0; a < m; ++a)
            for (int g = 0; g < n; ++g) run.adjoint(Ft[a][g], Ft[Kg.inv(a)][g]);
        run.begin("F~ commutes with vertex operators off its ends", mn);
        for (GridPoint v : other_vertices) {
            const Site t{v, v};
            for (int k : site_elements(t)) {
                const LatticeOperator Ak = vertex_op(patch, v, k);
                for (int a = 0; a < m; ++a)
                    for (int g = 0; g < n; ++g)
                        run.equal([&](const Vec& x) { return Ak.apply(Ft[a][g].apply(x)); },
                                  [&](const Vec& x) { return Ft[a][g].apply(Ak.apply(x)); });
            }
        }
        run.begin("F~ commutes with face operators off its ends", mn);
        for (const Site& s : quiet_faces)
            for (int k : face_flux(s)) {
                const LatticeOperator Bk = face_op(patch, s, k);
                for (int a = 0; a < m; ++a)
                    for (int g = 0; g < n; ++g)
                        run.equal([&](const Vec& x) { return Bk.apply(Ft[a][g].apply(x)); },
                                  [&](const Vec& x) { return Ft[a][g].apply(Bk.apply(x)); });
            }
        for (GridPoint f : passed_faces) {
            const LatticeOperator P = passed_projector(f);
            for (int a = 0; a < m; ++a)
                for (int g = 0; g < n; ++g)
                    run.equal([&](const Vec& x) { return P.apply(Ft[a][g].apply(x)); },
                              [&](const Vec& x) { return Ft[a][g].apply(P.apply(x)); });
        }
        run.begin("A_s1^h F~^{k,g} = F~^{k,gh^-1} A_s1^h", mn * n);
        for (int h = 0; h < n; ++h)
            for (int a = 0; a < m; ++a)
                for (int g = 0; g < n; ++g)
                    run.equal([&](const Vec& v) { return A1[h].apply(Ft[a][g].apply(v)); },
                              [&, h, a, g](const Vec& v) { return Ft[a][G.mul(g, G.inv(h))].apply(A1[h].apply(v)); });
        run.begin("B_s1^h F~^{k,g} = F~^{k,g} B_s1^{g^-1k^-1gh}", mn * n);
        for (int h = 0; h < n; ++h)
            for (int a = 0; a < m; ++a)
                for (int g = 0; g < n; ++g)
                    run.equal([&](const Vec& v) { return B1[h].apply(Ft[a][g].apply(v)); },
                              [&, h, a, g](const Vec& v) {
                                  const int x = G.mul(G.conj(G.inv(g), G.inv(K[a])), h);
                                  return Ft[a][g].apply(B1[x].apply(v));
                              });
        run.begin("B_s0^l F~^{k,g} = F~^{k,g} B_s0^{lk}", mn * m);
        for (int l : K)
            for (int a = 0; a < m; ++a)
                for (int g = 0; g < n; ++g)
                    run.equal([&](const Vec& v) { return B0[l].apply(Ft[a][g].apply(v)); },
                              [&, l, a, g](const Vec& v) { return Ft[a][g].apply(B0[G.mul(l, K[a])].apply(v)); });
        run.begin("A~_s0^l F~^{k,g} = phi(lk,l^-1) phi(l,k) F~^{lkl^-1,lg} A~_s0^l", mn * m);
        for (int ll = 0; ll < m; ++ll)
            for (int a = 0; a < m; ++a)
                for (int g = 0; g < n; ++g)
                    run.equal([&](const Vec& v) { return A0[K[ll]].apply(Ft[a][g].apply(v)); },
                              [&, ll, a, g](const Vec& v) -> Vec {
                                  const cd c = phi(Kg.mul(ll, a), Kg.inv(ll)) * phi(ll, a);
                                  const int conj = loc(G.conj(K[ll], K[a]));
                                  return c * Ft[conj][G.mul(K[ll], g)].apply(A0[K[ll]].apply(v));
                              });

        const LatticeOperator AK = boundary_vertex_projector(patch, s0.vertex);
        const LatticeOperator BK = boundary_face_projector(patch, s0);
        run.begin("T~^{k,g} commutes with A~_s0^K and B_s0^K", 2 * mn);
        for (int a = 0; a < m; ++a)
            for (int g = 0; g < n; ++g) {
                run.equal([&](const Vec& v) { return AK.apply(T[a][g].apply(v)); },
                          [&](const Vec& v) { return T[a][g].apply(AK.apply(v)); });
                run.equal([&](const Vec& v) { return BK.apply(T[a][g].apply(v)); },
                          [&](const Vec& v) { return T[a][g].apply(BK.apply(v)); });
            }
        run.begin("T~^{k,gm} = phi(m,k) phi(mk,m^-1) T~^{mkm^-1,g}", mn * m);
        for (int a = 0; a < m; ++a)
            for (int g = 0; g < n; ++g)
                for (int mm = 0; mm < m; ++mm) {
                    const cd c = phi(mm, a) * phi(Kg.mul(mm, a), Kg.inv(mm));
                    const int conj = loc(G.conj(K[mm], K[a]));
                    run.equal([&, a, g, mm](const Vec& v) { return T[a][G.mul(g, K[mm])].apply(v); },
                              scaled(T[conj][g], c));
                }
        run.begin("T~^{k,g} T~^{k',g'} = 0 across cosets", 1);
        for (int g = 0; g < n; ++g)
            for (int g2 = 0; g2 < n; ++g2) {
                if (Ks.contains(G.mul(G.inv(g), g2))) continue;
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < m; ++b)
                        run.zero([&, a, b, g, g2](const Vec& v) { return T[a][g].apply(T[b][g2].apply(v)); });
            }
        run.begin("T~^{k,g} T~^{k',g} = phi(k,k') T~^{kk',g}", mn * m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int g = 0; g < n; ++g)
                    run.equal([&, a, b, g](const Vec& v) { return T[a][g].apply(T[b][g].apply(v)); },
                              scaled(T[Kg.mul(a, b)][g], phi(a, b)));
        run.begin("T~^{k,g} adjoint is T~^{k^-1,g}", mn);
        for (int a = 0; a < m; ++a)
            for (int g = 0; g < n; ++g) run.adjoint(T[a][g], T[Kg.inv(a)][g]);
        run.begin("ground expectation <F~^{k,g}> = delta_{k,e}/|G|", 0);
        for (size_t gi = 0; gi < grounds.size(); ++gi) {
            double worst = 0.0;
            for (int a = 0; a < m; ++a)
                for (int g = 0; g < n; ++g) {
                    const cd val = grounds[gi].dot(Ft[a][g].apply(grounds[gi]));
                    worst = std::max(worst, std::abs(val - (a == 0 ? 1.0 / n : 0.0)));
                }
            run.scalar(gi, worst);
        }
        run.begin("condensate states orthogonal across cosets", 0);
        std::vector<std::vector<Vec>> cache(grounds.size());
        for (size_t gi = 0; gi < grounds.size(); ++gi) {
            std::vector<Vec>& w = cache[gi];
            for (int a = 0; a < m; ++a)
                for (int g = 0; g < n; ++g) w.push_back(T[a][g].apply(grounds[gi]));
            double worst = 0.0;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    for (int g = 0; g < n; ++g)
                        for (int g2 = 0; g2 < n; ++g2) {
                            if (Ks.contains(G.mul(G.inv(g), g2))) continue;
                            worst = std::max(worst, std::abs(w[a * n + g].dot(w[b * n + g2])));
                        }
            run.scalar(gi, worst);
        }
        run.begin("condensate Gram matrix is |K|/|G| within a coset", 0);
        for (size_t gi = 0; gi < grounds.size(); ++gi) {
            const std::vector<Vec>& w = cache[gi];
            double worst = 0.0;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    for (int g = 0; g < n; ++g)
                        worst = std::max(worst, std::abs(w[a * n + g].dot(w[b * n + g]) -
                                                         (a == b ? static_cast<double>(m) / n : 0.0)));
            run.scalar(gi, worst);
        }
    }
    run.finish();
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

RelationCheck check_path_independence(const PatchPtr& patch, const RibbonSpec& a, const RibbonSpec& b,
                                      const RelationSuiteOptions& options) {
    const ResolvedRibbon ra = resolve_ribbon(*patch, a), rb = resolve_ribbon(*patch, b);
    if (ra.start != rb.start || ra.end != rb.end)
        throw Error(ErrorKind::InvalidRibbon, "ribbons do not share their end sites");
    const int n = patch->group()->order();
    RelationCheck c;
    c.name = "F_xi^{h,g}|ground> independent of the ribbon";
    std::vector<std::vector<LatticeOperator>> Fa(n), Fb(n);
    for (int h = 0; h < n; ++h)
        for (int g = 0; g < n; ++g) {
            Fa[h].push_back(ribbon_op(patch, a, h, g));
            Fb[h].push_back(ribbon_op(patch, b, h, g));
        }
    for (int i = 0; i < options.states; ++i) {
        const Eigen::VectorXcd psi = ground_state(patch, options.seed + 1000003ULL * (i + 1)).amplitudes;
        for (int h = 0; h < n; ++h)
            for (int g = 0; g < n; ++g) {
                c.residual = std::max(c.residual, (Fa[h][g].apply(psi) - Fb[h][g].apply(psi)).norm());
                ++c.evaluations;
            }
        ++c.states;
    }
    c.passed = c.residual < options.tol;
    return c;
}

}  // namespace qdouble
